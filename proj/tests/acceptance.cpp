// Acceptance suite: one line per criterion, all exact checks.
#include "oracles.hpp"
#include "qhat/corpus.hpp"
#include "qhat/decompose.hpp"
#include "qhat/opext.hpp"
#include "qhat/tilting.hpp"

#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace qhat;
using qhat::testing::interval_module;

namespace {

int failures = 0;

void criterion(const std::string& id, const std::string& what, bool pass,
               const std::string& detail = "") {
    std::cout << (pass ? "PASS " : "FAIL ") << id << ": " << what;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << "\n";
    if (!pass) ++failures;
}

void info(const std::string& id, const std::string& what,
          const std::string& detail = "") {
    std::cout << "INFO " << id << ": " << what;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << "\n";
}

struct Ctx {
    AlgebraPtr alg;
    IndecSet inds;
};

std::map<std::string, Ctx> ctx_cache;

Ctx& ctx(const std::string& id) {
    auto it = ctx_cache.find(id);
    if (it != ctx_cache.end()) return it->second;
    Ctx c;
    c.alg = corpus_algebra(id);
    c.inds = enumerate_indecomposables(c.alg);
    return ctx_cache.emplace(id, std::move(c)).first->second;
}

Module simple_at(const AlgebraPtr& a, const std::string& v) {
    return eval_module_expr(a, "S(" + v + ")");
}

bool audits(const std::string& id, long m, long n) {
    return audit_almost_hereditary(ctx(id).inds, m, n).pass();
}

// Internal direct decomposition of a module: inclusion morphisms of
// indecomposable summands, split off along Fitting decompositions. An
// independent route from decompose(), used by the sequence lemma check.
std::vector<Morphism> internal_summands(const Module& e, Rng& rng) {
    if (e.dim() == 0) return {};
    const Gf gf = e.algebra()->field();
    std::vector<Morphism> endos = hom_basis(e, e);
    auto try_split = [&](const Morphism& f)
        -> std::optional<std::pair<SubmoduleResult, SubmoduleResult>> {
        Mat full = f.full();
        for (std::uint32_t l = 0; l < gf.p(); ++l) {
            Mat s = full - Mat::identity(full.rows(), gf).scaled(l);
            if (rank(s) == s.rows()) continue;
            Mat q = s;
            for (std::size_t k = 0; k < e.dim() + 1; ++k) q = q * q;
            Mat ker = kernel_basis(q);
            Mat img = column_space_basis(q);
            if (ker.cols() == 0 || img.cols() == 0) continue;
            return std::make_pair(submodule_closure(e, ker),
                                  submodule_closure(e, img));
        }
        return std::nullopt;
    };
    std::optional<std::pair<SubmoduleResult, SubmoduleResult>> split;
    for (const Morphism& f : endos) {
        split = try_split(f);
        if (split) break;
    }
    for (std::size_t round = 0; !split && round < 64; ++round) {
        Morphism g = Morphism::zero(e, e);
        for (const Morphism& f : endos) g = g + f.scaled(rng.below(gf.p()));
        split = try_split(g);
    }
    if (!split) return {Morphism::identity(e)}; // indecomposable
    std::vector<Morphism> out;
    for (const SubmoduleResult* part : {&split->first, &split->second})
        for (const Morphism& inc : internal_summands(part->sub, rng))
            out.push_back(inc.then(part->inclusion));
    return out;
}

// Projections dual to a complete family of inclusions.
std::vector<Morphism> projections_of(const Module& e,
                                     const std::vector<Morphism>& incs) {
    Mat u(e.dim(), 0, e.algebra()->field());
    for (const Morphism& inc : incs) u = u.hcat(inc.full());
    auto uinv = inverse(u);
    if (!uinv) throw std::runtime_error("summand inclusions do not span");
    std::vector<Morphism> out;
    std::size_t row = 0;
    for (const Morphism& inc : incs) {
        std::size_t d = inc.source().dim();
        Mat block = uinv->block(row, 0, d, e.dim());
        out.push_back(Morphism::from_full(e, inc.source(), block));
        row += d;
    }
    return out;
}

void criterion_1() {
    AlgebraPtr alg = ctx("EX1").alg;
    QuiverSpec spec = parse_spec(corpus_source("EX1"));
    Module x = module_from_literal(alg, spec.modules[0]);
    bool gd = global_dimension(alg) == HomDim::of(2);
    bool pd2 = proj_dim(x) == HomDim::of(2);
    bool id2 = inj_dim(x) == HomDim::of(2);
    AuditReport rep = audit_almost_hereditary(ctx("EX1").inds, 1, 1);
    bool witness = false;
    for (const auto& c : rep.checks)
        if (c.name == "pd_or_id_dichotomy" && c.verdict == "fail" &&
            c.witnesses.size() == 1)
            for (const auto& row : rep.rows)
                if (row.id == c.witnesses[0] &&
                    row.dimvec == std::vector<std::size_t>{1, 1, 0})
                    witness = true;
    criterion("1", "EX1: gl.dim 2; the (1,1,0)-module has pd = id = 2 and is "
                   "the dichotomy witness at (1,1)",
              gd && pd2 && id2 && !rep.pass() && witness);
}

void criterion_2() {
    Ctx& c = ctx("EX2(1,1)");
    bool gd = global_dimension(c.alg) == HomDim::of(3);
    bool dich = true;
    for (std::size_t i = 0; i < c.inds.size(); ++i)
        if (!c.inds.pd[i].leq(1) && !c.inds.id[i].leq(1)) dich = false;
    criterion("2", "EX2(1,1): gl.dim 3; pd <= 1 or id <= 1 everywhere; audits "
                   "(1,2) and (2,1) pass",
              gd && dich && audits("EX2(1,1)", 1, 2) && audits("EX2(1,1)", 2, 1));
}

void criterion_3() {
    Ctx& c = ctx("EX3");
    bool count = c.inds.complete && c.inds.size() == 30;
    bool orbits = c.inds.orbit_sizes() == std::vector<std::size_t>{4, 5, 6, 7, 8};
    bool audit12 = audits("EX3", 1, 2);
    Module m = interval_module(c.alg, "3", "6");
    bool dims = proj_dim(m) == HomDim::of(2) && inj_dim(m) == HomDim::of(2);
    HomDigraph g(c.inds);
    auto l1 = part_L(c.inds, g, pd_at_most(1));
    auto r1 = part_R(c.inds, g, id_at_most(1));
    auto r2 = part_R(c.inds, g, id_at_most(2));
    auto mi = c.inds.find(m);
    bool outside = mi && !l1.count(*mi) && !r1.count(*mi);
    bool covers = true;
    for (std::size_t i = 0; i < c.inds.size(); ++i)
        if (!l1.count(i) && !r2.count(i)) covers = false;
    Module t =
        direct_sum({eval_module_expr(c.alg, "P(4)"), interval_module(c.alg, "4", "7"),
                    interval_module(c.alg, "4", "6"),
                    interval_module(c.alg, "4", "5"), simple_at(c.alg, "4"),
                    eval_module_expr(c.alg, "P(3)"), eval_module_expr(c.alg, "P(2)"),
                    eval_module_expr(c.alg, "P(1)")})
            .sum;
    bool tilting = check_tilting(t, TiltKind::Tilting).pass();
    criterion("3", "EX3: 30 indecomposables in rows {4..8}; audit(1,2) passes; "
                   "[3..6] has pd = id = 2, avoids L^1 and R^1; ind = L^1 cup "
                   "R^2; the figure module T is tilting",
              count && orbits && audit12 && dims && outside && covers && tilting);
}

void criterion_4() {
    Ctx& c = ctx("EX3");
    Module t =
        direct_sum({eval_module_expr(c.alg, "P(4)"), interval_module(c.alg, "4", "7"),
                    interval_module(c.alg, "4", "6"),
                    interval_module(c.alg, "4", "5"), simple_at(c.alg, "4"),
                    eval_module_expr(c.alg, "P(3)"), eval_module_expr(c.alg, "P(2)"),
                    eval_module_expr(c.alg, "P(1)")})
            .sum;
    EndoAlgebra endo = endomorphism_algebra(t);
    criterion("4", "EX3: (End T)^op has global dimension exactly 2",
              global_dimension(endo.algebra) == HomDim::of(2));
}

void criterion_5() {
    Ctx& c = ctx("EX4");
    criterion("5", "EX4: audits (1,2) and (2,1) pass; exactly 63 indecomposables",
              c.inds.complete && c.inds.size() == 63 && audits("EX4", 1, 2) &&
                  audits("EX4", 2, 1));
}

void criterion_6() {
    Ctx& b = ctx("EX5B");
    bool gd = global_dimension(b.alg) == HomDim::of(2);
    bool fails11 = !audits("EX5B", 1, 1);
    OnePointExtension ext = one_point_extension(b.alg, simple_at(b.alg, "5"));
    IndecSet ainds = enumerate_indecomposables(ext.algebra);
    bool audit21 = audit_almost_hereditary(ainds, 2, 1).pass();
    AlgebraPtr ex5a = corpus_algebra("EX5A");
    bool match = ext.algebra->dim() == ex5a->dim();
    for (std::size_t v = 0; v < ex5a->vertex_count() && match; ++v)
        match = standard_module(ext.algebra, StandardKind::Projective, v)
                    .dimension_vector() ==
                standard_module(ex5a, StandardKind::Projective, v)
                    .dimension_vector();
    criterion("6", "EX5: gl.dim B = 2; audit(B,1,1) fails; B[S_5] audits (2,1) "
                   "and its projective dimension vectors match the parsed "
                   "six-vertex algebra",
              gd && fails11 && audit21 && match);
}

void criterion_7() {
    Ctx& b = ctx("EX6B(2)");
    bool b_audit = audits("EX6B(2)", 2, 1);
    OnePointExtension ext = one_point_extension(b.alg, simple_at(b.alg, "5"));
    bool gd_eq = global_dimension(ext.algebra) == global_dimension(b.alg) &&
                 global_dimension(ext.algebra) == HomDim::of(3);
    Module s4 = simple_at(ext.algebra, "4");
    bool dims = proj_dim(s4) == HomDim::of(3) && inj_dim(s4) == HomDim::of(2);
    IndecSet ainds = enumerate_indecomposables(ext.algebra);
    bool fails = !audit_almost_hereditary(ainds, 2, 1).pass();
    criterion("7", "EX6(m=2): B audits (2,1); A = B[S_5] keeps gl.dim 3, has "
                   "pd S_4 = 3, id S_4 = 2, and fails audit(2,1)",
              b_audit && gd_eq && dims && fails);
}

void criterion_8() {
    Ctx& c = ctx("EX7(1,2)");
    HomDigraph g(c.inds);
    auto l1 = part_L(c.inds, g, pd_at_most(1));
    auto p4 = c.inds.find(eval_module_expr(c.alg, "P(4)"));
    criterion("8", "EX7(1,2): audit(1,2) passes and P(4) is not in L^1",
              audits("EX7(1,2)", 1, 2) && p4 && !l1.count(*p4));
}

const std::vector<std::string>& all_ids() {
    static std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& e : corpus_entries()) v.push_back(e.id);
        return v;
    }();
    return ids;
}

void criterion_9a() {
    bool ok = true;
    std::string detail;
    for (const auto& id : all_ids()) {
        Ctx& c = ctx(id);
        HomDim gd = global_dimension(c.alg);
        for (long m = 1; m <= 3; ++m)
            for (long n = 1; n <= 3; ++n) {
                bool dich = true;
                for (std::size_t i = 0; i < c.inds.size(); ++i)
                    if (!c.inds.pd[i].leq(m) && !c.inds.id[i].leq(n)) dich = false;
                if (dich && !gd.leq(m + n + 1)) {
                    ok = false;
                    detail = id;
                }
            }
    }
    criterion("9a", "dichotomy at (m,n) forces gl.dim <= m+n+1 across the corpus",
              ok, detail);
}

void criterion_9b() {
    bool ok = true;
    std::string detail;
    for (const auto& id : all_ids()) {
        Ctx& c = ctx(id);
        HomDim gd = global_dimension(c.alg);
        HomDigraph g(c.inds);
        for (long m = 1; m <= 3; ++m) {
            if (!(gd == HomDim::of(m + 1))) continue;
            for (long n = 1; n <= 3; ++n) {
                bool dich = true;
                for (std::size_t i = 0; i < c.inds.size(); ++i)
                    if (!c.inds.pd[i].leq(m) && !c.inds.id[i].leq(n)) dich = false;
                if (!dich) continue;
                // Hom vanishing from outside the pd-class into large id.
                for (std::size_t u = 0; u < c.inds.size(); ++u) {
                    if (c.inds.pd[u].leq(m)) continue;
                    for (std::size_t v = 0; v < c.inds.size(); ++v) {
                        if (c.inds.id[v].leq(n)) continue;
                        if (g.hom_dim_between(u, v) != 0 && u != v) {
                            ok = false;
                            detail = id + ": hom survives";
                        }
                    }
                }
                // Predecessors of large-id modules stay in the pd-class.
                for (std::size_t x = 0; x < c.inds.size(); ++x) {
                    if (c.inds.id[x].leq(n)) continue;
                    for (std::size_t pr : g.predecessors(x))
                        if (!c.inds.pd[pr].leq(m)) {
                            ok = false;
                            detail = id + ": predecessor escapes";
                        }
                }
            }
        }
    }
    criterion("9b", "pd-class Hom-vanishing and predecessor containment hold "
                    "whenever gl.dim = m+1 and the (m,n) dichotomy holds",
              ok, detail);
}

void criterion_9c() {
    bool ok = true;
    std::string detail;
    for (const auto& id : all_ids()) {
        Ctx& c = ctx(id);
        HomDigraph g(c.inds);
        for (long m = 1; m <= 2; ++m)
            for (long n = 1; n <= 2; ++n) {
                Trisection t = trisection(c.inds, g, m, n);
                if (!t.cross_hom_vanishes) {
                    ok = false;
                    detail = id;
                }
            }
    }
    criterion("9c", "trisection cross-hom vanishing across the corpus", ok,
              detail);
}

void criterion_9d() {
    bool ok = true;
    std::string detail;
    for (const auto& id : all_ids()) {
        Ctx& c = ctx(id);
        for (std::size_t i = 0; i < c.inds.size(); ++i) {
            // Stated route: pd over the opposite algebra of the dual.
            HomDim stated = proj_dim(dual_module(c.inds.modules[i]));
            // Independent route: explicit injective coresolution.
            Module cur = c.inds.modules[i];
            long steps = -1;
            while (!cur.is_zero() && steps <= 64) {
                InjectiveEnvelope env = injective_envelope(cur);
                cur = kernel_cokernel(env.mono).cokernel;
                ++steps;
            }
            if (!(stated == HomDim::of(steps))) {
                ok = false;
                detail = id + "/" + c.inds.names[i];
            }
        }
    }
    criterion("9d", "injective dimension agrees between the dual-resolution "
                    "route and explicit coresolutions for every enumerated "
                    "indecomposable",
              ok, detail);
}

void criterion_9e() {
    std::size_t sequences = 0;
    bool ok = true;
    std::string detail;
    Rng rng(0x5e95e9);
    for (const auto& id : all_ids()) {
        Ctx& c = ctx(id);
        for (std::size_t ni = 0; ni < c.inds.size() && sequences < 140; ++ni) {
            for (std::size_t mi = 0; mi < c.inds.size() && sequences < 140; ++mi) {
                const Module& n = c.inds.modules[ni];
                const Module& m = c.inds.modules[mi];
                std::size_t e = ext_dim(1, n, m);
                if (e == 0) continue;
                std::vector<std::vector<std::uint32_t>> coeff_sets;
                for (std::size_t k = 0; k < e; ++k) {
                    std::vector<std::uint32_t> cs(e, 0);
                    cs[k] = 1;
                    coeff_sets.push_back(cs);
                }
                std::vector<std::uint32_t> cs(e);
                bool nonzero = false;
                for (auto& x : cs) {
                    x = rng.below(101);
                    if (x) nonzero = true;
                }
                if (nonzero) coeff_sets.push_back(cs);
                for (const auto& coeffs : coeff_sets) {
                    ShortExactSequence ses = extension_from_cocycle(n, m, coeffs);
                    if (!ses.is_exact()) {
                        ok = false;
                        detail = id + ": sequence not exact";
                        continue;
                    }
                    ++sequences;
                    Rng splitter(0xdec0de ^ sequences);
                    std::vector<Morphism> incs =
                        internal_summands(ses.e(), splitter);
                    std::vector<Morphism> projs = projections_of(ses.e(), incs);
                    // Left end indecomposable: every coordinate of the
                    // epimorphism onto each summand is nonzero.
                    for (const Morphism& inc : incs)
                        if (inc.then(ses.right).is_zero()) {
                            ok = false;
                            detail = id + ": zero coordinate in the epi";
                        }
                    // Right end indecomposable: dual statement for the mono.
                    for (const Morphism& proj : projs)
                        if (ses.left.then(proj).is_zero()) {
                            ok = false;
                            detail = id + ": zero coordinate in the mono";
                        }
                }
            }
        }
    }
    criterion("9e", "coordinate morphisms of >= 100 nonsplit extensions with "
                    "indecomposable ends are all nonzero",
              ok && sequences >= 100,
              "sequences = " + std::to_string(sequences) +
                  (detail.empty() ? "" : "; " + detail));
}

void criterion_9f() {
    bool ok = true;
    std::string detail;
    for (const std::string id : {"EX7(1,1)", "EX1"}) {
        Ctx& c = ctx(id);
        for (std::size_t i = 0; i < c.inds.size(); ++i) {
            Module tau_m = ar_translate(c.inds.modules[i], Translate::Tau);
            for (std::size_t j = 0; j < c.inds.size(); ++j) {
                std::size_t lhs = ext_dim(1, c.inds.modules[i], c.inds.modules[j]);
                std::size_t rhs = 0;
                if (!tau_m.is_zero()) {
                    const Module& n = c.inds.modules[j];
                    std::size_t full = hom_dim(n, tau_m);
                    InjectiveEnvelope env = injective_envelope(n);
                    RowSpan span(tau_m.dim() * n.dim(), c.alg->field());
                    std::size_t through = 0;
                    for (const Morphism& g : hom_basis(env.e, tau_m)) {
                        Mat mat = env.mono.then(g).full();
                        std::vector<std::uint32_t> row(mat.rows() * mat.cols());
                        for (std::size_t r = 0; r < mat.rows(); ++r)
                            for (std::size_t cc = 0; cc < mat.cols(); ++cc)
                                row[r * mat.cols() + cc] = mat(r, cc);
                        if (span.add_row(std::move(row))) ++through;
                    }
                    rhs = full - through;
                }
                if (lhs != rhs) {
                    ok = false;
                    detail = id + ": " + c.inds.names[i] + "," + c.inds.names[j];
                }
            }
        }
    }
    criterion("9f", "dim Ext^1(M,N) matches Hom(N, tau M) modulo injectives "
                    "on every pair of EX7(1,1) and EX1",
              ok, detail);
}

void criterion_9g() {
    bool ok = true;
    std::string detail;
    for (const std::string id :
         {"EX2(1,1)", "EX3", "EX4", "EX7(1,1)", "EX7(1,2)"}) {
        Ctx& c = ctx(id);
        auto intervals = nakayama_intervals(c.alg);
        if (!intervals || intervals->size() != c.inds.size()) {
            ok = false;
            detail = id + ": count";
            continue;
        }
        for (const Module& m : *intervals)
            if (!c.inds.find(m)) {
                ok = false;
                detail = id + ": member missing";
            }
    }
    criterion("9g", "enumeration equals the interval model on the Nakayama "
                    "corpus entries",
              ok, detail);
}

void criterion_9h() {
    struct Case {
        std::string base, module;
        long m;
    };
    bool ok = true;
    std::string detail;
    for (const Case& cs : {Case{"EX5B", "S(5)", 2}, Case{"EX5B", "S(5)", 1},
                           Case{"EX6B(1)", "S(4)", 1}, Case{"EX6B(2)", "S(5)", 2}}) {
        Ctx& b = ctx(cs.base);
        OnePointExtension ext =
            one_point_extension(b.alg, eval_module_expr(b.alg, cs.module));
        PdLemmaReport rep = check_pd_lemma(ext, cs.m);
        if (!rep.pass()) {
            ok = false;
            detail = cs.base + " m=" + std::to_string(cs.m);
        }
    }
    criterion("9h", "the pd bound equivalence holds for every indecomposable "
                    "over the corpus extensions",
              ok, detail);
}

void criterion_9i() {
    bool ok = true;
    std::string detail;
    for (const std::string id : {"EX5B", "EX6B(1)", "EX6B(2)", "EX7(1,1)"}) {
        Ctx& b = ctx(id);
        std::vector<Module> mods{Module::zero(b.alg)};
        for (std::size_t v = 0; v < b.alg->vertex_count(); ++v) {
            mods.push_back(standard_module(b.alg, StandardKind::Simple, v));
            mods.push_back(standard_module(b.alg, StandardKind::Projective, v));
        }
        for (const Module& m : mods) {
            OnePointExtension ext = one_point_extension(b.alg, m);
            HomDim lhs = global_dimension(ext.algebra);
            HomDim pdm = proj_dim(m);
            HomDim rhs = pdm.finite ? hom_dim_max(global_dimension(b.alg),
                                                  HomDim::of(pdm.value + 1))
                                    : HomDim::infinite();
            if (!(lhs == rhs)) {
                ok = false;
                detail = id;
            }
        }
    }
    criterion("9i", "gl.dim B[M] = max(gl.dim B, pd M + 1) for the corpus "
                    "extensions plus zero and projective variants",
              ok, detail);
}

void criterion_9j() {
    Ctx& b = ctx("EX7(1,1)");
    OnePointExtension ext = one_point_extension(b.alg, simple_at(b.alg, "1"));
    IndecSet ainds = enumerate_indecomposables(ext.algebra);
    criterion("9j", "EX7(1,1) extended by the projective simple S_1 audits (1,1)",
              audit_almost_hereditary(ainds, 1, 1).pass());
}

void criterion_10() {
    for (const auto& id : all_ids()) {
        Ctx& c = ctx(id);
        HomDim gd = global_dimension(c.alg);
        if (!gd.finite || gd.value < 2) continue;
        long m = gd.value - 1;
        AuditReport rep = audit_almost_hereditary(c.inds, m, 1);
        if (!rep.pass()) continue;
        HomDigraph g(c.inds);
        AddLmReport add = check_add_Lm(c.inds, g, m);
        info("10", id + " is (" + std::to_string(m) + ",1)-almost hereditary; "
                       "regular module in add L^m: " +
                       (add.conjecture_holds ? "yes" : "NO"));
    }
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9a();
    criterion_9b();
    criterion_9c();
    criterion_9d();
    criterion_9e();
    criterion_9f();
    criterion_9g();
    criterion_9h();
    criterion_9i();
    criterion_9j();
    criterion_10();
    std::cout << (failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED") << " ("
              << failures << " failing criteria)\n";
    return failures ? 1 : 0;
}
