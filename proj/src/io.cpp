#include "mdskit/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mdskit/errors.hpp"

namespace mdskit {
namespace {

// Pre-tokenized view of the input: comment and blank lines are skipped but
// keep their line numbers for diagnostics.
struct LineReader {
    std::vector<std::pair<int, std::vector<std::string>>> lines;
    size_t pos = 0;
    int lineno = 0;

    explicit LineReader(std::istream& in) {
        std::string line;
        int no = 0;
        while (std::getline(in, line)) {
            ++no;
            std::istringstream ss(line);
            std::vector<std::string> tokens;
            std::string tok;
            while (ss >> tok) tokens.push_back(tok);
            if (tokens.empty() || tokens[0] == "c") continue;
            lines.emplace_back(no, std::move(tokens));
        }
    }
    bool next(std::vector<std::string>& tokens) {
        if (pos >= lines.size()) return false;
        lineno = lines[pos].first;
        tokens = lines[pos].second;
        ++pos;
        return true;
    }
    const std::vector<std::string>* peek() const {
        return pos < lines.size() ? &lines[pos].second : nullptr;
    }
    [[noreturn]] void fail(const std::string& msg, const std::string& tok = "") const {
        throw InputError("line " + std::to_string(lineno) + ": " + msg +
                         (tok.empty() ? "" : " (token '" + tok + "')"));
    }
    long long to_int(const std::string& tok) const {
        try {
            size_t used = 0;
            long long v = std::stoll(tok, &used);
            if (used != tok.size()) fail("expected integer", tok);
            return v;
        } catch (const InputError&) {
            throw;
        } catch (...) {
            fail("expected integer", tok);
        }
    }
};

} // namespace

Graph parse_graph(std::istream& in) {
    LineReader r(in);
    std::vector<std::string> t;
    if (!r.next(t)) r.fail("missing header");
    if (t.size() != 4 || t[0] != "p" || t[1] != "mds") r.fail("expected 'p mds <n> <m>'", t[0]);
    long long n = r.to_int(t[2]), m = r.to_int(t[3]);
    if (n < 0 || m < 0) r.fail("negative size in header");
    std::vector<std::pair<int, int>> es;
    es.reserve(m);
    for (long long i = 0; i < m; ++i) {
        if (!r.next(t)) r.fail("expected " + std::to_string(m) + " edge lines, got " + std::to_string(i));
        if (t.size() != 2) r.fail("expected '<u> <v>'");
        long long u = r.to_int(t[0]), v = r.to_int(t[1]);
        if (u < 1 || u > n || v < 1 || v > n) r.fail("endpoint out of range", t[u < 1 || u > n ? 0 : 1]);
        es.emplace_back((int)u - 1, (int)v - 1);
    }
    if (r.next(t)) r.fail("trailing content after edge list", t[0]);
    return Graph::from_edges((int)n, std::move(es));
}

void print_graph(std::ostream& out, const Graph& g) {
    out << "p mds " << g.n() << " " << g.m() << "\n";
    for (auto [u, v] : g.edges()) out << u + 1 << " " << v + 1 << "\n";
}

MixedSolution parse_solution(std::istream& in, const Graph& g) {
    LineReader r(in);
    std::vector<std::string> t;
    if (!r.next(t)) r.fail("missing solution header");
    if (t.size() != 3 || t[0] != "s" || t[1] != "mds") r.fail("expected 's mds <size>'", t[0]);
    long long size = r.to_int(t[2]);
    MixedSolution sol;
    while (r.next(t)) {
        if (t[0] == "v" && t.size() == 2) {
            long long v = r.to_int(t[1]);
            if (v < 1 || v > g.n()) r.fail("vertex out of range", t[1]);
            sol.d.push_back((int)v - 1);
        } else if (t[0] == "e" && t.size() == 3) {
            long long u = r.to_int(t[1]), v = r.to_int(t[2]);
            if (u < 1 || u > g.n() || v < 1 || v > g.n()) r.fail("endpoint out of range");
            int id = g.edge_id((int)u - 1, (int)v - 1);
            if (id < 0) r.fail("edge not in graph", t[1] + "," + t[2]);
            sol.m.push_back(id);
        } else {
            r.fail("expected 'v <id>' or 'e <u> <v>'", t[0]);
        }
    }
    sol.normalize();
    if (sol.size() != size) r.fail("declared size " + std::to_string(size) +
                                   " does not match " + std::to_string(sol.size()) + " entries");
    return sol;
}

void print_solution(std::ostream& out, const Graph& g, const MixedSolution& sol) {
    out << "s mds " << sol.size() << "\n";
    for (int v : sol.d) out << "v " << v + 1 << "\n";
    for (int e : sol.m) {
        auto [u, v] = g.edge(e);
        out << "e " << u + 1 << " " << v + 1 << "\n";
    }
}

TreeDecomposition parse_td(std::istream& in) {
    LineReader r(in);
    std::vector<std::string> t;
    if (!r.next(t)) r.fail("missing header");
    if (t.size() != 5 || t[0] != "s" || t[1] != "td") r.fail("expected 's td <#bags> <width+1> <n>'", t[0]);
    long long nb = r.to_int(t[2]), maxbag = r.to_int(t[3]), n = r.to_int(t[4]);
    if (nb < 0 || maxbag < 0 || n < 0) r.fail("negative size in header");
    TreeDecomposition td;
    td.n = (int)n;
    td.bags.assign(nb, {});
    std::vector<char> seen(nb, 0);
    for (long long i = 0; i < nb; ++i) {
        if (!r.next(t)) r.fail("expected bag line");
        if (t.size() < 2 || t[0] != "b") r.fail("expected 'b <id> <v...>'", t.empty() ? "" : t[0]);
        long long id = r.to_int(t[1]);
        if (id < 1 || id > nb) r.fail("bag id out of range", t[1]);
        if (seen[id - 1]) r.fail("duplicate bag id", t[1]);
        seen[id - 1] = 1;
        auto& bag = td.bags[id - 1];
        for (size_t j = 2; j < t.size(); ++j) {
            long long v = r.to_int(t[j]);
            if (v < 1 || v > n) r.fail("bag vertex out of range", t[j]);
            bag.push_back((int)v - 1);
        }
        std::sort(bag.begin(), bag.end());
        bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
        if ((long long)bag.size() > maxbag) r.fail("bag larger than declared width");
    }
    while (r.next(t)) {
        if (t.size() != 2) r.fail("expected '<b1> <b2>' tree edge");
        long long a = r.to_int(t[0]), b = r.to_int(t[1]);
        if (a < 1 || a > nb || b < 1 || b > nb) r.fail("tree edge endpoint out of range");
        td.tree.emplace_back((int)a - 1, (int)b - 1);
    }
    if (nb > 0 && (long long)td.tree.size() != nb - 1) r.fail("bag tree must have #bags-1 edges");
    return td;
}

void print_td(std::ostream& out, const TreeDecomposition& td) {
    size_t maxbag = 0;
    for (const auto& b : td.bags) maxbag = std::max(maxbag, b.size());
    out << "s td " << td.bags.size() << " " << maxbag << " " << td.n << "\n";
    for (size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (int v : td.bags[i]) out << " " << v + 1;
        out << "\n";
    }
    for (auto [a, b] : td.tree) out << a + 1 << " " << b + 1 << "\n";
}

Csp5Instance parse_csp(std::istream& in) {
    LineReader r(in);
    std::vector<std::string> t;
    if (!r.next(t)) r.fail("missing header");
    if (t.size() != 5 || t[0] != "p" || t[1] != "csp5") r.fail("expected 'p csp5 <n> <m> <q>'", t[0]);
    long long n = r.to_int(t[2]), m = r.to_int(t[3]), q = r.to_int(t[4]);
    if (n < 0 || m < 0 || q < 1) r.fail("bad header sizes");
    Csp5Instance csp;
    csp.num_vars = (int)n;
    csp.arity = (int)q;
    while (r.next(t)) {
        if (t[0] != "x") r.fail("expected 'x <vars...>' constraint line", t[0]);
        Csp5Constraint c;
        for (size_t j = 1; j < t.size(); ++j) {
            long long v = r.to_int(t[j]);
            if (v < 1 || v > n) r.fail("variable out of range", t[j]);
            c.vars.push_back((int)v - 1);
        }
        if ((long long)c.vars.size() > q) r.fail("constraint arity exceeds q");
        while (r.peek() && (*r.peek())[0] == "a") {
            r.next(t);
            std::vector<int> asg;
            for (size_t j = 1; j < t.size(); ++j) {
                long long v = r.to_int(t[j]);
                if (v < 0 || v > 4) r.fail("assignment value outside 0..4", t[j]);
                asg.push_back((int)v);
            }
            if (asg.size() != c.vars.size()) r.fail("assignment arity mismatch");
            c.assignments.push_back(std::move(asg));
        }
        csp.constraints.push_back(std::move(c));
    }
    if ((long long)csp.constraints.size() != m)
        r.fail("declared " + std::to_string(m) + " constraints, found " +
               std::to_string(csp.constraints.size()));
    return csp;
}

void print_csp(std::ostream& out, const Csp5Instance& csp) {
    out << "p csp5 " << csp.num_vars << " " << csp.constraints.size() << " " << csp.arity << "\n";
    for (const auto& c : csp.constraints) {
        out << "x";
        for (int v : c.vars) out << " " << v + 1;
        out << "\n";
        for (const auto& a : c.assignments) {
            out << "a";
            for (int v : a) out << " " << v;
            out << "\n";
        }
    }
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    return parse_graph(in);
}

void save_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open file for writing: " + path);
    out << content;
}

} // namespace mdskit
