#include "qhat/corpus.hpp"

#include "qhat/presentation.hpp"

#include <sstream>

namespace qhat {

namespace {

std::string linear_quiver(const std::string& name, std::uint32_t p,
                          std::size_t nverts, bool ascending,
                          const std::vector<std::pair<std::size_t, std::size_t>>&
                              monomials /* (first arrow, length) */) {
    // ascending: arrows a_i: i -> i+1; otherwise a_j: j -> j-1.
    std::ostringstream os;
    os << "algebra " << name << " field " << p << "\n";
    os << "vertices 1.." << nverts << "\n";
    if (ascending) {
        for (std::size_t i = 1; i < nverts; ++i)
            os << "arrow a" << i << " : " << i << " -> " << i + 1 << "\n";
    } else {
        for (std::size_t j = 2; j <= nverts; ++j)
            os << "arrow a" << j << " : " << j << " -> " << j - 1 << "\n";
    }
    for (auto [first, len] : monomials) {
        os << "rel ";
        for (std::size_t k = 0; k < len; ++k) {
            if (k) os << "*";
            os << "a" << (ascending ? first + k : first - k);
        }
        os << "\n";
    }
    return os.str();
}

std::string ex1_source(std::uint32_t p) {
    std::ostringstream os;
    os << "# triangle with a dead corner path\n";
    os << "algebra EX1 field " << p << "\n";
    os << "vertices 1,2,3\n";
    os << "arrow gamma : 1 -> 2\n";
    os << "arrow alpha : 1 -> 3\n";
    os << "arrow beta : 3 -> 2\n";
    os << "rel alpha*beta\n";
    os << "module X110 / dim 1 = 1 / dim 2 = 1 / map gamma = [[1]]\n";
    return os.str();
}

std::string ex2_source(std::size_t m, std::size_t n, std::uint32_t p) {
    // 1 -> 2 -> ... -> m+n+2, radical square zero.
    std::size_t nv = m + n + 2;
    std::vector<std::pair<std::size_t, std::size_t>> rels;
    for (std::size_t i = 1; i + 1 <= nv - 1; ++i) rels.push_back({i, 2});
    std::ostringstream name;
    name << "EX2_" << m << "_" << n;
    return linear_quiver(name.str(), p, nv, true, rels);
}

std::string ex3_source(std::uint32_t p) {
    std::vector<std::pair<std::size_t, std::size_t>> rels;
    for (std::size_t i = 1; i <= 3; ++i) rels.push_back({i, 5});
    return linear_quiver("EX3", p, 8, true, rels);
}

std::string ex4_source(std::uint32_t p) {
    std::vector<std::pair<std::size_t, std::size_t>> rels;
    for (std::size_t i = 1; i <= 5; ++i) rels.push_back({i, 7});
    return linear_quiver("EX4", p, 12, true, rels);
}

std::string ex5b_source(std::uint32_t p) {
    // 5 -> 4 -> 3 -> 2 -> 1 with the paths 5->4->3 and 3->2->1 dead.
    return linear_quiver("EX5B", p, 5, false, {{5, 2}, {3, 2}});
}

std::string ex5a_source(std::uint32_t p) {
    return linear_quiver("EX5A", p, 6, false, {{6, 2}, {5, 2}, {3, 2}});
}

std::string ex6b_source(std::size_t m, std::uint32_t p) {
    // m+3 -> ... -> 1; every length-two path with source in {3..m+2} dead.
    std::vector<std::pair<std::size_t, std::size_t>> rels;
    for (std::size_t j = 3; j <= m + 2; ++j) rels.push_back({j, 2});
    std::ostringstream name;
    name << "EX6B_" << m;
    return linear_quiver(name.str(), p, m + 3, false, rels);
}

std::string ex6a_source(std::size_t m, std::uint32_t p) {
    std::vector<std::pair<std::size_t, std::size_t>> rels;
    for (std::size_t j = 3; j <= m + 2; ++j) rels.push_back({j, 2});
    rels.push_back({m + 4, 2});
    std::ostringstream name;
    name << "EX6A_" << m;
    return linear_quiver(name.str(), p, m + 4, false, rels);
}

std::string ex7_source(std::size_t m, std::size_t n, std::uint32_t p) {
    // m+n+1 -> ... -> 1, radical square zero.
    std::size_t nv = m + n + 1;
    std::vector<std::pair<std::size_t, std::size_t>> rels;
    for (std::size_t j = 3; j <= nv; ++j) rels.push_back({j, 2});
    std::ostringstream name;
    name << "EX7_" << m << "_" << n;
    return linear_quiver(name.str(), p, nv, false, rels);
}

struct ParsedId {
    std::string family;
    std::vector<std::size_t> params;
};

ParsedId parse_id(const std::string& id) {
    ParsedId out;
    auto open = id.find('(');
    if (open == std::string::npos) {
        out.family = id;
        return out;
    }
    out.family = id.substr(0, open);
    std::size_t pos = open + 1;
    std::size_t cur = 0;
    bool have = false;
    for (; pos < id.size(); ++pos) {
        char c = id[pos];
        if (c >= '0' && c <= '9') {
            cur = cur * 10 + static_cast<std::size_t>(c - '0');
            have = true;
        } else if (c == ',' || c == ')') {
            if (!have) throw InputError("bad corpus id '" + id + "'");
            out.params.push_back(cur);
            cur = 0;
            have = false;
            if (c == ')') break;
        } else {
            throw InputError("bad corpus id '" + id + "'");
        }
    }
    return out;
}

} // namespace

std::string corpus_source(const std::string& id, std::uint32_t p) {
    ParsedId pid = parse_id(id);
    const auto& f = pid.family;
    const auto& a = pid.params;
    if (f == "EX1" && a.empty()) return ex1_source(p);
    if (f == "EX2" && a.size() == 2) return ex2_source(a[0], a[1], p);
    if (f == "EX3" && a.empty()) return ex3_source(p);
    if (f == "EX4" && a.empty()) return ex4_source(p);
    if (f == "EX5B" && a.empty()) return ex5b_source(p);
    if (f == "EX5A" && a.empty()) return ex5a_source(p);
    if (f == "EX6B" && a.size() == 1) return ex6b_source(a[0], p);
    if (f == "EX6A" && a.size() == 1) return ex6a_source(a[0], p);
    if (f == "EX7" && a.size() == 2) return ex7_source(a[0], a[1], p);
    throw InputError("unknown corpus id '" + id + "'");
}

bool is_corpus_id(const std::string& id) {
    try {
        corpus_source(id);
        return true;
    } catch (const InputError&) {
        return false;
    }
}

AlgebraPtr corpus_algebra(const std::string& id, std::uint32_t p) {
    return build_algebra(parse_spec(corpus_source(id, p)));
}

const std::vector<CorpusEntry>& corpus_entries() {
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> v;
        auto add = [&](const std::string& id, const std::string& title) {
            v.push_back({id, title, corpus_source(id)});
        };
        add("EX1", "triangle quiver, one dead corner");
        add("EX2(1,1)", "radical-square-zero line 1->...->4");
        add("EX3", "A_8 with length-5 monomial relations");
        add("EX4", "A_12 with length-7 monomial relations");
        add("EX5B", "line 5->...->1, relations (5,4,3) and (3,2,1)");
        add("EX5A", "line 6->...->1, relations (6,5,4), (5,4,3), (3,2,1)");
        add("EX6B(1)", "line 4->...->1, relation (3,2,1)");
        add("EX6A(1)", "line 5->...->1, relations (5,4,3) and (3,2,1)");
        add("EX6B(2)", "line 5->...->1, relations (4,3,2) and (3,2,1)");
        add("EX6A(2)", "line 6->...->1, relations (6,5,4), (4,3,2), (3,2,1)");
        add("EX7(1,1)", "radical-square-zero line 3->2->1");
        add("EX7(1,2)", "radical-square-zero line 4->...->1");
        return v;
    }();
    return entries;
}

} // namespace qhat
