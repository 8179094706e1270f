#ifndef MDSKIT_ERRORS_HPP
#define MDSKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mdskit {

// Malformed external input (files, CLI arguments, out-of-range ids).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A caller violated an operation's precondition.
struct ContractError : std::logic_error {
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

// Instance exceeds a configured oracle size cap.
struct LimitError : std::runtime_error {
    explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mdskit

#endif
