#include "qhat/presentation.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <optional>

namespace qhat {

namespace {

enum class Tok { Ident, Int, Comma, Colon, ArrowTo, Equals, Star, Plus,
                 Minus, LBrack, RBrack, Range, Slash, Newline, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { next(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        next();
        return t;
    }

private:
    void next() {
        // Skip spaces and comments, but emit newlines as tokens.
        while (i_ < s_.size()) {
            char c = s_[i_];
            if (c == '#') {
                while (i_ < s_.size() && s_[i_] != '\n') ++i_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++i_; ++col_;
            } else {
                break;
            }
        }
        int line = line_, col = col_;
        if (i_ >= s_.size()) { tok_ = {Tok::End, "", line, col}; return; }
        char c = s_[i_];
        auto one = [&](Tok k) {
            tok_ = {k, std::string(1, c), line, col};
            ++i_; ++col_;
        };
        if (c == '\n') {
            tok_ = {Tok::Newline, "\\n", line, col};
            ++i_; ++line_; col_ = 1;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            tok_ = {Tok::Int, s_.substr(i_, j - i_), line, col};
            col_ += static_cast<int>(j - i_);
            i_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
            tok_ = {Tok::Ident, s_.substr(i_, j - i_), line, col};
            col_ += static_cast<int>(j - i_);
            i_ = j;
            return;
        }
        switch (c) {
        case ',': one(Tok::Comma); return;
        case ':': one(Tok::Colon); return;
        case '=': one(Tok::Equals); return;
        case '*': one(Tok::Star); return;
        case '+': one(Tok::Plus); return;
        case '[': one(Tok::LBrack); return;
        case ']': one(Tok::RBrack); return;
        case '/': one(Tok::Slash); return;
        case '-':
            if (i_ + 1 < s_.size() && s_[i_ + 1] == '>') {
                tok_ = {Tok::ArrowTo, "->", line, col};
                i_ += 2; col_ += 2;
                return;
            }
            one(Tok::Minus);
            return;
        case '.':
            if (i_ + 1 < s_.size() && s_[i_ + 1] == '.') {
                tok_ = {Tok::Range, "..", line, col};
                i_ += 2; col_ += 2;
                return;
            }
            break;
        default:
            break;
        }
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    std::size_t i_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    QuiverSpec run() {
        while (lex_.peek().kind != Tok::End) {
            if (lex_.peek().kind == Tok::Newline || lex_.peek().kind == Tok::Slash) {
                lex_.take();
                continue;
            }
            declaration();
        }
        if (spec_.name.empty())
            throw ParseError(1, 1, "missing `algebra` header");
        return std::move(spec_);
    }

private:
    Token expect(Tok k, const std::string& what) {
        Token t = lex_.take();
        if (t.kind != k)
            throw ParseError(t.line, t.col,
                             "expected " + what + ", got '" + t.text + "'");
        return t;
    }

    Token expect_name(const std::string& what) {
        Token t = lex_.take();
        if (t.kind != Tok::Ident && t.kind != Tok::Int)
            throw ParseError(t.line, t.col,
                             "expected " + what + ", got '" + t.text + "'");
        return t;
    }

    bool at_decl_end() const {
        Tok k = lex_.peek().kind;
        return k == Tok::Newline || k == Tok::Slash || k == Tok::End;
    }

    void declaration() {
        Token head = expect(Tok::Ident, "declaration keyword");
        const std::string& kw = head.text;
        if (kw == "algebra") decl_algebra();
        else if (kw == "vertices") decl_vertices();
        else if (kw == "arrow") decl_arrow();
        else if (kw == "rel") decl_rel(head);
        else if (kw == "module") decl_module();
        else if (kw == "dim") decl_dim(head);
        else if (kw == "map") decl_map(head);
        else
            throw ParseError(head.line, head.col,
                             "unknown declaration '" + kw + "'");
    }

    void decl_algebra() {
        Token name = expect(Tok::Ident, "algebra name");
        spec_.name = name.text;
        if (at_decl_end()) return; // reference header
        Token kw = expect(Tok::Ident, "`field`");
        if (kw.text != "field")
            throw ParseError(kw.line, kw.col, "expected `field`");
        Token p = expect(Tok::Int, "prime modulus");
        unsigned long v = std::stoul(p.text);
        if (v < 2 || v >= (1u << 16) || !is_prime(static_cast<std::uint32_t>(v)))
            throw ParseError(p.line, p.col, "field modulus must be a prime < 2^16");
        spec_.p = static_cast<std::uint32_t>(v);
    }

    void add_vertex(const Token& t) {
        for (const auto& v : spec_.vertex_names)
            if (v == t.text)
                throw ParseError(t.line, t.col, "duplicate vertex '" + t.text + "'");
        spec_.vertex_names.push_back(t.text);
    }

    void decl_vertices() {
        Token first = expect_name("vertex id");
        if (lex_.peek().kind == Tok::Range) {
            lex_.take();
            Token last = expect(Tok::Int, "range end");
            if (first.kind != Tok::Int)
                throw ParseError(first.line, first.col, "range bounds must be integers");
            long a = std::stol(first.text), b = std::stol(last.text);
            if (b < a)
                throw ParseError(last.line, last.col, "empty vertex range");
            for (long v = a; v <= b; ++v) {
                Token t = first;
                t.text = std::to_string(v);
                add_vertex(t);
            }
            return;
        }
        add_vertex(first);
        while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            add_vertex(expect_name("vertex id"));
        }
    }

    void decl_arrow() {
        Token name = expect(Tok::Ident, "arrow name");
        for (const auto& a : spec_.arrows)
            if (a.name == name.text)
                throw ParseError(name.line, name.col,
                                 "duplicate arrow '" + name.text + "'");
        expect(Tok::Colon, "':'");
        Token s = expect_name("source vertex");
        expect(Tok::ArrowTo, "'->'");
        Token t = expect_name("target vertex");
        spec_.arrows.push_back(
            {name.text, spec_.vertex_index(s.text, s.line, s.col),
             spec_.vertex_index(t.text, t.line, t.col)});
    }

    RelationTerm rel_term(std::uint32_t coeff) {
        RelationTerm term;
        term.coeff = coeff;
        Token a = expect(Tok::Ident, "arrow name");
        term.arrows.push_back(spec_.arrow_index(a.text, a.line, a.col));
        while (lex_.peek().kind == Tok::Star) {
            lex_.take();
            Token nxt = expect(Tok::Ident, "arrow name");
            term.arrows.push_back(spec_.arrow_index(nxt.text, nxt.line, nxt.col));
        }
        // Composability in traversal order.
        for (std::size_t i = 0; i + 1 < term.arrows.size(); ++i) {
            const Arrow& cur = spec_.arrows[term.arrows[i]];
            const Arrow& nxt = spec_.arrows[term.arrows[i + 1]];
            if (cur.target != nxt.source)
                throw ParseError(a.line, a.col,
                                 "arrows do not compose: " + cur.name + "*" +
                                     nxt.name);
        }
        if (term.arrows.size() < 2)
            throw ParseError(a.line, a.col, "relation terms need length >= 2");
        return term;
    }

    void decl_rel(const Token& head) {
        if (spec_.p == 0)
            throw ParseError(head.line, head.col,
                             "relations need a `field` header");
        Gf gf(spec_.p);
        Relation rel;
        std::uint32_t sign = 1;
        bool first = true;
        for (;;) {
            std::uint32_t coeff = 1;
            if (lex_.peek().kind == Tok::Int) {
                coeff = gf.reduce(std::stol(lex_.take().text));
                expect(Tok::Star, "'*' after coefficient");
            }
            coeff = gf.mul(coeff, sign);
            RelationTerm term = rel_term(coeff);
            if (first) {
                rel.source = spec_.arrows[term.arrows.front()].source;
                rel.target = spec_.arrows[term.arrows.back()].target;
                first = false;
            } else if (spec_.arrows[term.arrows.front()].source != rel.source ||
                       spec_.arrows[term.arrows.back()].target != rel.target) {
                throw ParseError(head.line, head.col,
                                 "relation terms are not parallel");
            }
            rel.terms.push_back(std::move(term));
            if (lex_.peek().kind == Tok::Plus) { lex_.take(); sign = 1; continue; }
            if (lex_.peek().kind == Tok::Minus) { lex_.take(); sign = gf.neg(1); continue; }
            break;
        }
        spec_.relations.push_back(std::move(rel));
    }

    void decl_module() {
        Token name = expect(Tok::Ident, "module name");
        for (const auto& m : spec_.modules)
            if (m.name == name.text)
                throw ParseError(name.line, name.col,
                                 "duplicate module '" + name.text + "'");
        spec_.modules.push_back(ModuleLiteral{name.text, {}, {}});
    }

    ModuleLiteral& current_module(const Token& head) {
        if (spec_.modules.empty())
            throw ParseError(head.line, head.col,
                             "`" + head.text + "` outside a module block");
        return spec_.modules.back();
    }

    void decl_dim(const Token& head) {
        ModuleLiteral& m = current_module(head);
        Token v = expect_name("vertex id");
        expect(Tok::Equals, "'='");
        Token d = expect(Tok::Int, "dimension");
        m.dims[spec_.vertex_index(v.text, v.line, v.col)] =
            static_cast<std::size_t>(std::stoul(d.text));
    }

    void decl_map(const Token& head) {
        ModuleLiteral& m = current_module(head);
        Token a = expect(Tok::Ident, "arrow name");
        std::size_t arrow = spec_.arrow_index(a.text, a.line, a.col);
        expect(Tok::Equals, "'='");
        // [[r,r,...],[...],...]
        Token open = expect(Tok::LBrack, "'['");
        std::vector<std::vector<std::int64_t>> rows;
        if (lex_.peek().kind == Tok::RBrack) {
            lex_.take();
        } else {
            for (;;) {
                expect(Tok::LBrack, "'['");
                std::vector<std::int64_t> row;
                if (lex_.peek().kind != Tok::RBrack) {
                    for (;;) {
                        std::int64_t sign = 1;
                        if (lex_.peek().kind == Tok::Minus) { lex_.take(); sign = -1; }
                        Token e = expect(Tok::Int, "matrix entry");
                        row.push_back(sign * std::stoll(e.text));
                        if (lex_.peek().kind == Tok::Comma) { lex_.take(); continue; }
                        break;
                    }
                }
                expect(Tok::RBrack, "']'");
                rows.push_back(std::move(row));
                if (lex_.peek().kind == Tok::Comma) { lex_.take(); continue; }
                break;
            }
            expect(Tok::RBrack, "']'");
        }
        if (spec_.p == 0)
            throw ParseError(open.line, open.col, "module maps need a `field` header");
        m.arrow_maps[arrow] = Mat::from_rows(rows, Gf(spec_.p));
    }

    Lexer lex_;
    QuiverSpec spec_;
};

} // namespace

std::size_t QuiverSpec::vertex_index(const std::string& name, int line,
                                     int col) const {
    for (std::size_t i = 0; i < vertex_names.size(); ++i)
        if (vertex_names[i] == name) return i;
    throw ParseError(line, col, "unknown vertex '" + name + "'");
}

std::size_t QuiverSpec::arrow_index(const std::string& name, int line,
                                    int col) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == name) return i;
    throw ParseError(line, col, "unknown arrow '" + name + "'");
}

QuiverSpec parse_spec(const std::string& text) { return Parser(text).run(); }

namespace {

struct Path {
    std::size_t src, tgt;
    std::vector<std::size_t> arrows; // traversal order
};

std::string path_label(const QuiverSpec& spec, const Path& p) {
    if (p.arrows.empty()) return "e" + spec.vertex_names[p.src];
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) s += "*";
        s += spec.arrows[p.arrows[i]].name;
    }
    return s;
}

} // namespace

AlgebraPtr build_algebra(const QuiverSpec& spec, const BuildOptions& opts) {
    if (spec.is_reference())
        throw InputError("cannot build from a reference header (no field)");
    if (spec.vertex_names.empty())
        throw InputError("algebra '" + spec.name + "' declares no vertices");
    Gf gf(spec.p);

    // All paths up to the current working length, grouped by length.
    std::vector<Path> paths;
    std::map<std::vector<std::size_t>, std::size_t> by_arrows; // nontrivial
    std::vector<std::size_t> len_begin{0}; // paths[len_begin[l]..len_begin[l+1])

    for (std::size_t v = 0; v < spec.vertex_names.size(); ++v)
        paths.push_back({v, v, {}});
    len_begin.push_back(paths.size());

    auto extend_to_length = [&](std::size_t len) {
        while (len_begin.size() <= len + 1) {
            std::size_t l = len_begin.size() - 1;
            std::size_t first = len_begin[l - 1], last = len_begin[l];
            for (std::size_t i = first; i < last; ++i) {
                for (std::size_t a = 0; a < spec.arrows.size(); ++a) {
                    if (spec.arrows[a].source != paths[i].tgt) continue;
                    Path q = paths[i];
                    q.arrows.push_back(a);
                    q.tgt = spec.arrows[a].target;
                    by_arrows[q.arrows] = paths.size();
                    paths.push_back(std::move(q));
                    if (paths.size() > opts.max_paths)
                        throw CapError("path count exceeds cap while building '" +
                                       spec.name + "'");
                }
            }
            len_begin.push_back(paths.size());
        }
    };

    auto path_count_at = [&](std::size_t len) {
        extend_to_length(len);
        return len_begin[len + 1] - len_begin[len];
    };

    std::size_t min_len = 2;
    for (const auto& r : spec.relations)
        for (const auto& t : r.terms)
            min_len = std::max(min_len, t.arrows.size());

    // Find the cutoff: the smallest length at which every path lies in the
    // relation ideal (admissibility), iterating the working length upward.
    std::optional<std::size_t> cutoff;
    RowSpan ideal(0, gf);
    std::vector<std::size_t> coord; // path index -> elimination coordinate
    for (std::size_t cap = min_len; cap <= opts.max_path_length; ++cap) {
        if (path_count_at(cap) == 0) { cutoff = cap; break; }
        std::size_t n_paths = len_begin[cap + 1];
        // Eliminate longer paths first so the surviving representatives
        // are the short path classes.
        std::vector<std::size_t> order(n_paths);
        for (std::size_t i = 0; i < n_paths; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return paths[a].arrows.size() > paths[b].arrows.size();
                         });
        coord.assign(n_paths, 0);
        for (std::size_t pos = 0; pos < n_paths; ++pos) coord[order[pos]] = pos;

        ideal = RowSpan(n_paths, gf);
        for (const auto& rel : spec.relations) {
            // p * r * q for all prefixes q into src(r) and suffixes s out
            // of tgt(r), with every term within the working length.
            std::size_t max_term = 0;
            for (const auto& t : rel.terms) max_term = std::max(max_term, t.arrows.size());
            for (std::size_t qi = 0; qi < n_paths; ++qi) {
                if (paths[qi].tgt != rel.source) continue;
                if (paths[qi].arrows.size() + max_term > cap) continue;
                for (std::size_t si = 0; si < n_paths; ++si) {
                    if (paths[si].src != rel.target) continue;
                    std::size_t extra = paths[qi].arrows.size() + paths[si].arrows.size();
                    if (extra + max_term > cap) continue;
                    std::vector<std::uint32_t> row(n_paths, 0);
                    for (const auto& t : rel.terms) {
                        std::vector<std::size_t> word = paths[qi].arrows;
                        word.insert(word.end(), t.arrows.begin(), t.arrows.end());
                        word.insert(word.end(), paths[si].arrows.begin(),
                                    paths[si].arrows.end());
                        auto it = by_arrows.find(word);
                        assert(it != by_arrows.end());
                        std::size_t c = coord[it->second];
                        row[c] = gf.add(row[c], t.coeff);
                    }
                    ideal.add_row(std::move(row));
                }
            }
        }
        bool all_dead = true;
        for (std::size_t i = len_begin[cap]; i < len_begin[cap + 1]; ++i) {
            if (!ideal.contains_unit(coord[i])) { all_dead = false; break; }
        }
        if (all_dead) { cutoff = cap; break; }
    }
    if (!cutoff)
        throw CapError("relation ideal of '" + spec.name +
                       "' is not admissible within length cap " +
                       std::to_string(opts.max_path_length));

    // Quotient basis: path classes of length < cutoff that are not
    // eliminated (non-pivot coordinates), in enumeration order.
    if (coord.empty()) { // no relations, and paths ran out at the cutoff
        coord.assign(len_begin.back(), 0);
        for (std::size_t i = 0; i < coord.size(); ++i) coord[i] = i;
        ideal = RowSpan(coord.size(), gf);
    }

    std::vector<std::size_t> basis; // path indices
    std::vector<std::size_t> basis_coord_of(ideal.width(), SIZE_MAX);
    {
        std::vector<bool> pivot(ideal.width(), false);
        for (std::size_t p : ideal.pivots()) pivot[p] = true;
        for (std::size_t i = 0; i < len_begin[*cutoff]; ++i)
            if (!pivot[coord[i]]) basis.push_back(i);
    }
    std::vector<std::size_t> basis_index_of_path(paths.size(), SIZE_MAX);
    for (std::size_t k = 0; k < basis.size(); ++k)
        basis_index_of_path[basis[k]] = k;
    for (std::size_t k = 0; k < basis.size(); ++k)
        basis_coord_of[coord[basis[k]]] = k;

    const std::size_t n = basis.size();

    // Reduce an arrow word to quotient-basis coordinates.
    auto reduce_word = [&](const std::vector<std::size_t>& word) {
        Mat out(n, 1, gf);
        assert(!word.empty());
        if (word.size() >= *cutoff) return out; // all long paths are dead
        auto it = by_arrows.find(word);
        assert(it != by_arrows.end());
        std::size_t pi = it->second;
        if (basis_index_of_path[pi] != SIZE_MAX) {
            out(basis_index_of_path[pi], 0) = 1;
            return out;
        }
        std::vector<std::uint32_t> row(ideal.width(), 0);
        row[coord[pi]] = 1;
        row = ideal.reduce(std::move(row));
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (!row[c]) continue;
            assert(basis_coord_of[c] != SIZE_MAX);
            out(basis_coord_of[c], 0) = row[c];
        }
        return out;
    };

    BasicAlgebra::Data d;
    d.id = spec.name;
    d.field = gf;
    d.vertex_names = spec.vertex_names;
    d.quiver = std::make_shared<QuiverSpec>(spec);
    d.left_mul.assign(n, Mat(n, n, gf));
    d.basis_words.emplace();
    for (std::size_t k = 0; k < n; ++k) {
        const Path& p = paths[basis[k]];
        d.labels.push_back(path_label(spec, p));
        d.src.push_back(p.src);
        d.tgt.push_back(p.tgt);
        d.basis_words->push_back(p.arrows);
        if (p.arrows.empty()) d.idempotents.push_back(k);
        else d.radical.push_back(k);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Path& pi = paths[basis[i]];
        for (std::size_t j = 0; j < n; ++j) {
            const Path& pj = paths[basis[j]];
            // b_i * b_j composes pj first, then pi.
            if (pj.tgt != pi.src) continue;
            Mat prod(n, 1, gf);
            if (pi.arrows.empty() && pj.arrows.empty()) {
                prod(i, 0) = 1; // e_v * e_v
            } else {
                std::vector<std::size_t> word = pj.arrows;
                word.insert(word.end(), pi.arrows.begin(), pi.arrows.end());
                prod = reduce_word(word);
            }
            for (std::size_t k = 0; k < n; ++k) d.left_mul[i](k, j) = prod(k, 0);
        }
    }

    return BasicAlgebra::create(std::move(d));
}

} // namespace qhat
