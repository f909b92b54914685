#include "qhat/tilting.hpp"

#include "qhat/decompose.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>

namespace qhat {

using ordered_json = nlohmann::ordered_json;

TiltingVerdict check_tilting(const Module& t, TiltKind kind) {
    if (kind == TiltKind::Cotilting) {
        // Cotilting = tilting over the opposite algebra applied to the dual.
        TiltingVerdict v = check_tilting(dual_module(t), TiltKind::Tilting);
        v.kind = TiltKind::Cotilting;
        return v;
    }
    TiltingVerdict v;
    v.kind = kind;
    v.rank = t.algebra()->vertex_count();

    HomDim pd = proj_dim(t);
    v.homdim_ok = pd.leq(1);
    if (!v.homdim_ok)
        v.witnesses.push_back("pd = " + pd.to_string());

    v.no_self_ext = ext_dim(1, t, t) == 0;
    if (!v.no_self_ext) v.witnesses.push_back("Ext^1(T, T) != 0");

    std::vector<Summand> pieces = decompose(t);
    v.distinct_summands = pieces.size();
    v.summand_count_ok = pieces.size() == v.rank;
    if (!v.summand_count_ok)
        v.witnesses.push_back(std::to_string(pieces.size()) +
                              " distinct summands, rank is " +
                              std::to_string(v.rank));
    return v;
}

TorsionPair torsion_pair(const Module& t, const IndecSet& inds) {
    TorsionPair out;
    for (std::size_t i = 0; i < inds.size(); ++i) {
        bool in_t = ext_dim(1, t, inds.modules[i]) == 0;
        bool in_f = hom_dim(t, inds.modules[i]) == 0;
        if (in_t && in_f) out.disjoint = false;
        if (in_t) out.torsion.push_back(i);
        if (in_f) out.torsion_free.push_back(i);
    }
    return out;
}

bool is_splitting(const Module& t, TiltKind kind, const IndecSet& inds) {
    if (kind == TiltKind::Tilting) {
        for (std::size_t i = 0; i < inds.size(); ++i)
            if (hom_dim(t, inds.modules[i]) == 0 && !inds.id[i].leq(1))
                return false;
        return true;
    }
    for (std::size_t i = 0; i < inds.size(); ++i)
        if (hom_dim(inds.modules[i], t) == 0 && !inds.pd[i].leq(1))
            return false;
    return true;
}

namespace {

// Flattened coordinates of a morphism for span arithmetic.
std::vector<std::uint32_t> flat(const Morphism& f) {
    Mat m = f.full();
    std::vector<std::uint32_t> row(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) row[r * m.cols() + c] = m(r, c);
    return row;
}

Mat flat_col(const Morphism& f, Gf gf) {
    auto row = flat(f);
    Mat m(row.size(), 1, gf);
    for (std::size_t i = 0; i < row.size(); ++i) m(i, 0) = row[i];
    return m;
}

} // namespace

EndoAlgebra endomorphism_algebra(const Module& t) {
    const AlgebraPtr& a = t.algebra();
    Gf gf = a->field();
    std::vector<Summand> pieces = decompose(t);
    std::vector<Module> u;
    for (const Summand& s : pieces) u.push_back(s.module);
    const std::size_t r = u.size();

    // Hom bases for every ordered pair.
    std::vector<std::vector<std::vector<Morphism>>> homs(
        r, std::vector<std::vector<Morphism>>(r));
    std::size_t total = 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            homs[i][j] = hom_basis(u[i], u[j]);
            total += homs[i][j].size();
        }
    if (gf.p() <= total)
        throw InputError("p too small for the trace-form radical: need p > " +
                         std::to_string(total));

    // Adapt each diagonal block to {identity} + nilpotent complement:
    // every f in End(U_i) is lambda + nilpotent since U_i is
    // indecomposable with split residue field.
    std::vector<std::vector<Morphism>> diag_nil(r);
    for (std::size_t i = 0; i < r; ++i) {
        RowSpan span(u[i].dim() * u[i].dim(), gf);
        span.add_row(flat(Morphism::identity(u[i])));
        for (const Morphism& f : homs[i][i]) {
            Mat full = f.full();
            bool split_off = false;
            for (std::uint32_t l = 0; l < gf.p(); ++l) {
                Mat shifted = full - Mat::identity(full.rows(), gf).scaled(l);
                if (is_nilpotent(shifted)) {
                    Morphism n = f - Morphism::identity(u[i]).scaled(l);
                    if (!n.is_zero() && span.add_row(flat(n)))
                        diag_nil[i].push_back(n);
                    split_off = true;
                    break;
                }
            }
            if (!split_off)
                throw InputError("endomorphism algebra is not split over GF(p)");
        }
        if (1 + diag_nil[i].size() != homs[i][i].size())
            throw InputError("local endomorphism algebra has unexpected shape");
    }

    // Basis of B: one morphism per element. Order: all idempotents first
    // (identity of each summand), then radical parts.
    struct Elt {
        Morphism f;
        std::size_t dom, cod;
    };
    std::vector<Elt> basis;
    for (std::size_t i = 0; i < r; ++i)
        basis.push_back({Morphism::identity(u[i]), i, i});
    for (std::size_t i = 0; i < r; ++i)
        for (const Morphism& n : diag_nil[i]) basis.push_back({n, i, i});
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            if (i == j) continue;
            for (const Morphism& f : homs[i][j]) basis.push_back({f, i, j});
        }
    const std::size_t n = basis.size();

    // Coordinate extraction per (dom, cod) block.
    std::vector<std::vector<std::vector<std::size_t>>> block_members(
        r, std::vector<std::vector<std::size_t>>(r));
    for (std::size_t k = 0; k < n; ++k)
        block_members[basis[k].dom][basis[k].cod].push_back(k);
    std::vector<std::vector<std::optional<ColumnSpan>>> block_span(
        r, std::vector<std::optional<ColumnSpan>>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            const auto& members = block_members[i][j];
            if (members.empty()) continue;
            Mat cols(u[j].dim() * u[i].dim(), 0, gf);
            for (std::size_t k : members) cols = cols.hcat(flat_col(basis[k].f, gf));
            block_span[i][j].emplace(cols);
        }

    BasicAlgebra::Data d;
    d.id = a->id() + ".endo";
    d.field = gf;
    for (std::size_t i = 0; i < r; ++i)
        d.vertex_names.push_back(std::to_string(i + 1));
    d.left_mul.assign(n, Mat(n, n, gf));
    for (std::size_t k = 0; k < n; ++k) {
        std::ostringstream label;
        if (k < r) label << "e" << k + 1;
        else label << "f" << k << "[" << basis[k].dom + 1 << "->"
                   << basis[k].cod + 1 << "]";
        d.labels.push_back(label.str());
        // B-source = codomain summand, B-target = domain summand.
        d.src.push_back(basis[k].cod);
        d.tgt.push_back(basis[k].dom);
        if (k < r) d.idempotents.push_back(k);
        else d.radical.push_back(k);
    }
    // Products: x * y = (y, then x) in B = composition "x first, then y"
    // of morphisms: x * y != 0 needs tgt(y) = src(x), i.e.
    // dom(y) = cod(x); the composite runs U_{dom x} -> U_{cod y}.
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (basis[y].dom != basis[x].cod) continue;
            Morphism comp = basis[x].f.then(basis[y].f);
            std::size_t bi = basis[x].dom, bj = basis[y].cod;
            if (!block_span[bi][bj]) continue;
            Mat coords = block_span[bi][bj]->coordinates(flat_col(comp, gf));
            const auto& members = block_members[bi][bj];
            for (std::size_t t2 = 0; t2 < members.size(); ++t2)
                d.left_mul[x](members[t2], y) = coords(t2, 0);
        }
    }
    AlgebraPtr b = BasicAlgebra::create(std::move(d));

    // Cross-check the radical against the regular trace form.
    {
        std::vector<Mat> lm;
        for (std::size_t k = 0; k < n; ++k) lm.push_back(b->left_mul(k));
        Mat gram(n, n, gf);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Mat prod = lm[i] * lm[j];
                std::uint32_t tr = 0;
                for (std::size_t k = 0; k < n; ++k) tr = gf.add(tr, prod(k, k));
                gram(i, j) = tr;
            }
        if (kernel_basis(gram).cols() != b->radical().size())
            throw InputError("trace-form radical disagrees with the "
                             "constructed radical basis");
    }
    return {b, u};
}

std::string TransferReport::to_json() const {
    ordered_json j;
    j["checks"] = ordered_json::array();
    for (const CheckResult& c : checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["verdict"] = c.verdict;
        cj["witnesses"] = c.witnesses;
        if (!c.note.empty()) cj["note"] = c.note;
        j["checks"].push_back(cj);
    }
    return j.dump(2);
}

TransferReport check_transfer(const IndecSet& inds, const Module& t, long m,
                              long n, const EnumOptions& opts) {
    TransferReport rep;
    const AlgebraPtr& a = inds.alg;

    TiltingVerdict tv = check_tilting(t, TiltKind::Tilting);
    bool splitting = tv.pass() && is_splitting(t, TiltKind::Tilting, inds);
    {
        CheckResult c;
        c.name = "hypothesis_splitting_tilting";
        c.verdict = tv.pass() ? (splitting ? "pass" : "fail") : "fail";
        c.witnesses = tv.witnesses;
        if (tv.pass() && !splitting) c.note = "tilting but not splitting";
        rep.checks.push_back(c);
    }
    bool dichotomy = true;
    for (std::size_t i = 0; i < inds.size(); ++i)
        if (!inds.pd[i].leq(m) && !inds.id[i].leq(n)) dichotomy = false;
    {
        CheckResult c;
        c.name = "hypothesis_dichotomy";
        c.verdict = dichotomy ? "pass" : "fail";
        rep.checks.push_back(c);
    }
    if (!tv.pass() || !splitting || !dichotomy) return rep;

    EndoAlgebra endo = endomorphism_algebra(t);
    IndecSet bind = enumerate_indecomposables(endo.algebra, opts);
    {
        CheckResult c;
        c.name = "b_enumeration_complete";
        c.verdict = bind.complete ? "pass" : "fail";
        rep.checks.push_back(c);
        if (!bind.complete) return rep;
    }
    // Conclusion: pd <= m or id <= n+1 over ind B.
    {
        CheckResult c;
        c.name = "b_modules_pd_m_or_id_n_plus_1";
        c.verdict = "pass";
        for (std::size_t i = 0; i < bind.size(); ++i)
            if (!bind.pd[i].leq(m) && !bind.id[i].leq(n + 1)) {
                c.verdict = "fail";
                c.witnesses.push_back(bind.names[i]);
            }
        rep.checks.push_back(c);
    }
    HomDim gda = global_dimension(a);
    HomDim gdb = global_dimension(endo.algebra);
    bool stair = gda.finite && gdb.finite && gda.value < gdb.value;
    // Stair step out of an (m,n)-almost hereditary algebra.
    {
        CheckResult c;
        c.name = "stair_step_gives_m_n_plus_1";
        AuditReport base_audit = audit_almost_hereditary(inds, m, n);
        if (!base_audit.pass() || !stair) {
            c.verdict = "skipped";
            c.note = !base_audit.pass()
                         ? "algebra is not (m,n)-almost hereditary"
                         : "step is not stair (gldim " + gda.to_string() +
                               " -> " + gdb.to_string() + ")";
        } else {
            AuditReport b_audit = audit_almost_hereditary(bind, m, n + 1);
            c.verdict = b_audit.pass() ? "pass" : "fail";
        }
        rep.checks.push_back(c);
    }
    // Stair splitting tilt of an algebra of global dimension d.
    {
        CheckResult c;
        c.name = "stair_step_gives_d_1";
        if (!gda.finite || !stair) {
            c.verdict = "skipped";
            c.note = "needs finite gldim and a stair step";
        } else {
            AuditReport b_audit = audit_almost_hereditary(bind, gda.value, 1);
            c.verdict = b_audit.pass() ? "pass" : "fail";
        }
        rep.checks.push_back(c);
    }
    // Brenner-Butler count for splitting tilts.
    {
        CheckResult c;
        c.name = "brenner_butler_count";
        TorsionPair tp = torsion_pair(t, inds);
        std::size_t expected = tp.torsion.size() + tp.torsion_free.size();
        c.verdict = bind.size() == expected ? "pass" : "fail";
        c.note = "|ind B| = " + std::to_string(bind.size()) + ", |T| + |F| = " +
                 std::to_string(expected);
        rep.checks.push_back(c);
    }
    return rep;
}

TiltingChain parse_chain_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw InputError(std::string("chain json: ") + e.what());
    }
    TiltingChain chain;
    if (!j.contains("base") || !j["base"].is_string())
        throw InputError("chain json: missing string field 'base'");
    chain.base = j["base"];
    if (j.contains("steps")) {
        if (!j["steps"].is_array())
            throw InputError("chain json: 'steps' must be an array");
        for (const auto& s : j["steps"]) {
            ChainStep step;
            std::string kind = s.value("kind", "");
            if (kind == "tilt") step.kind = TiltKind::Tilting;
            else if (kind == "cotilt") step.kind = TiltKind::Cotilting;
            else throw InputError("chain json: step kind must be tilt|cotilt");
            if (!s.contains("module") || !s["module"].is_string())
                throw InputError("chain json: step needs a 'module' name");
            step.module_expr = s["module"];
            chain.steps.push_back(step);
        }
    }
    return chain;
}

Module eval_module_expr(const AlgebraPtr& alg, const std::string& expr) {
    std::vector<Module> parts;
    std::size_t pos = 0;
    auto trim = [](std::string s) {
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
        return s;
    };
    while (pos <= expr.size()) {
        std::size_t next = expr.find('+', pos);
        std::string term = trim(expr.substr(
            pos, next == std::string::npos ? std::string::npos : next - pos));
        if (term.empty()) throw InputError("empty term in module expression");
        if (term.size() > 3 && term[1] == '(' && term.back() == ')') {
            std::string vname = term.substr(2, term.size() - 3);
            std::size_t v = SIZE_MAX;
            for (std::size_t w = 0; w < alg->vertex_count(); ++w)
                if (alg->vertex_name(w) == vname) v = w;
            if (v == SIZE_MAX)
                throw InputError("unknown vertex '" + vname + "' in '" + term + "'");
            switch (term[0]) {
            case 'P': parts.push_back(standard_module(alg, StandardKind::Projective, v)); break;
            case 'I': parts.push_back(standard_module(alg, StandardKind::Injective, v)); break;
            case 'S': parts.push_back(standard_module(alg, StandardKind::Simple, v)); break;
            default: throw InputError("unknown module term '" + term + "'");
            }
        } else {
            const auto& quiver = alg->quiver();
            bool found = false;
            if (quiver) {
                for (const auto& lit : quiver->modules)
                    if (lit.name == term) {
                        parts.push_back(module_from_literal(alg, lit));
                        found = true;
                    }
            }
            if (!found)
                throw InputError("unknown module name '" + term + "'");
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (parts.size() == 1) return parts[0];
    return direct_sum(parts).sum;
}

std::string ChainReport::to_json() const {
    ordered_json j;
    j["final_algebra"] = final_algebra_id;
    j["checks"] = ordered_json::array();
    for (const CheckResult& c : checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["verdict"] = c.verdict;
        cj["witnesses"] = c.witnesses;
        if (!c.note.empty()) cj["note"] = c.note;
        j["checks"].push_back(cj);
    }
    j["pass"] = pass();
    return j.dump(2);
}

ChainReport verify_chain(const AlgebraPtr& base, const TiltingChain& chain,
                         long m, long n, const EnumOptions& opts) {
    ChainReport rep;
    AlgebraPtr cur = base;

    // Base: quasitilted of global dimension two.
    {
        IndecSet inds = enumerate_indecomposables(cur, opts);
        CheckResult c;
        c.name = "base_quasitilted_gldim_2";
        if (!inds.complete) {
            c.verdict = "fail";
            c.note = "enumeration incomplete";
        } else {
            HomDim gd = global_dimension(cur);
            bool dich = true;
            for (std::size_t i = 0; i < inds.size(); ++i)
                if (!inds.pd[i].leq(1) && !inds.id[i].leq(1)) {
                    dich = false;
                    c.witnesses.push_back(inds.names[i]);
                }
            c.verdict = (gd == HomDim::of(2) && dich) ? "pass" : "fail";
            c.note = "gldim = " + gd.to_string();
        }
        rep.checks.push_back(c);
    }
    // Step counts: n-1 tilts and m-1 cotilts.
    {
        long tilts = 0, cotilts = 0;
        for (const ChainStep& s : chain.steps)
            (s.kind == TiltKind::Tilting ? tilts : cotilts)++;
        CheckResult c;
        c.name = "step_counts";
        c.verdict = (tilts == n - 1 && cotilts == m - 1) ? "pass" : "fail";
        c.note = std::to_string(tilts) + " tilts (need " + std::to_string(n - 1) +
                 "), " + std::to_string(cotilts) + " cotilts (need " +
                 std::to_string(m - 1) + ")";
        rep.checks.push_back(c);
    }

    for (std::size_t si = 0; si < chain.steps.size(); ++si) {
        const ChainStep& step = chain.steps[si];
        std::string tag = "step_" + std::to_string(si + 1);
        Module t;
        try {
            t = eval_module_expr(cur, step.module_expr);
        } catch (const InputError& e) {
            CheckResult c;
            c.name = tag + "_module";
            c.verdict = "fail";
            c.note = e.what();
            rep.checks.push_back(c);
            rep.final_algebra_id = cur->id();
            return rep;
        }
        IndecSet inds = enumerate_indecomposables(cur, opts);
        TiltingVerdict tv = check_tilting(t, step.kind);
        bool splitting = tv.pass() && is_splitting(t, step.kind, inds);
        {
            CheckResult c;
            c.name = tag + (step.kind == TiltKind::Tilting ? "_tilting" : "_cotilting");
            c.verdict = tv.pass() ? "pass" : "fail";
            c.witnesses = tv.witnesses;
            rep.checks.push_back(c);
        }
        {
            CheckResult c;
            c.name = tag + "_splitting";
            c.verdict = tv.pass() ? (splitting ? "pass" : "fail") : "skipped";
            rep.checks.push_back(c);
        }
        if (!tv.pass()) {
            rep.final_algebra_id = cur->id();
            return rep;
        }
        EndoAlgebra endo = endomorphism_algebra(t);
        HomDim before = global_dimension(cur);
        HomDim after = global_dimension(endo.algebra);
        {
            CheckResult c;
            c.name = tag + "_stair";
            bool stair = before.finite && after.finite && before.value < after.value;
            c.verdict = stair ? "pass" : "fail";
            c.note = "gldim " + before.to_string() + " -> " + after.to_string();
            rep.checks.push_back(c);
        }
        cur = endo.algebra;
    }
    rep.final_algebra_id = cur->id();
    // Conclusion: the final algebra is (m,n)-almost hereditary.
    {
        IndecSet finds = enumerate_indecomposables(cur, opts);
        AuditReport audit = audit_almost_hereditary(finds, m, n);
        CheckResult c;
        c.name = "final_audit_m_n";
        c.verdict = audit.pass() ? "pass" : "fail";
        for (const auto& chk : audit.checks)
            if (chk.failed())
                for (const auto& w : chk.witnesses) c.witnesses.push_back(w);
        rep.checks.push_back(c);
    }
    return rep;
}

} // namespace qhat
