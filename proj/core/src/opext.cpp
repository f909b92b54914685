#include "qhat/opext.hpp"

#include "qhat/decompose.hpp"
#include "qhat/presentation.hpp"

#include "json.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

namespace qhat {

using ordered_json = nlohmann::ordered_json;

OnePointExtension one_point_extension(const AlgebraPtr& b, const Module& m,
                                      const std::string& name) {
    if (m.algebra() != b) throw InputError("extension module lives elsewhere");
    Gf gf = b->field();
    const std::size_t nb = b->dim();
    const std::size_t dm = m.dim();
    const std::size_t n = nb + dm + 1;
    const std::size_t omega_basis = nb + dm;
    const std::size_t rb = b->vertex_count();

    BasicAlgebra::Data d;
    d.id = name.empty() ? b->id() + "[" + std::to_string(dm) + "]" : name;
    d.field = gf;
    d.vertex_names = [&] {
        auto names = std::vector<std::string>();
        for (std::size_t v = 0; v < rb; ++v) names.push_back(b->vertex_name(v));
        std::string w = "w";
        while (std::find(names.begin(), names.end(), w) != names.end()) w += "_";
        names.push_back(w);
        return names;
    }();

    for (std::size_t i = 0; i < nb; ++i) {
        d.labels.push_back(b->label(i));
        d.src.push_back(b->src(i));
        d.tgt.push_back(b->tgt(i));
    }
    for (std::size_t v = 0; v < rb; ++v)
        for (std::size_t k = 0; k < m.vertex_dim(v); ++k) {
            d.labels.push_back("m" + std::to_string(m.offset(v) + k));
            d.src.push_back(rb); // the extension vertex
            d.tgt.push_back(v);
        }
    d.labels.push_back("e" + d.vertex_names[rb]);
    d.src.push_back(rb);
    d.tgt.push_back(rb);

    for (std::size_t e : b->idempotents()) d.idempotents.push_back(e);
    d.idempotents.push_back(omega_basis);
    for (std::size_t x : b->radical()) d.radical.push_back(x);
    for (std::size_t k = 0; k < dm; ++k) d.radical.push_back(nb + k);

    d.left_mul.assign(n, Mat(n, n, gf));
    // B on B.
    for (std::size_t i = 0; i < nb; ++i) {
        const Mat& lm = b->left_mul(i);
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                d.left_mul[i](k, j) = lm(k, j);
        // B acting on the M part: b_i . m_k = rho_M(b_i) column k.
        const Mat& act = m.action(i);
        for (std::size_t j = 0; j < dm; ++j)
            for (std::size_t k = 0; k < dm; ++k)
                d.left_mul[i](nb + k, nb + j) = act(k, j);
    }
    // m_k . e_omega = m_k; e_omega . e_omega = e_omega.
    for (std::size_t k = 0; k < dm; ++k)
        d.left_mul[nb + k](nb + k, omega_basis) = 1;
    d.left_mul[omega_basis](omega_basis, omega_basis) = 1;

    OnePointExtension ext;
    ext.algebra = BasicAlgebra::create(std::move(d));
    ext.base = b;
    ext.m = m;
    ext.ext_vertex = rb;
    return ext;
}

Module triple_to_module(const OnePointExtension& ext, const TripleModule& t) {
    const AlgebraPtr& a = ext.algebra;
    const AlgebraPtr& b = ext.base;
    const Module& m = ext.m;
    Gf gf = a->field();
    if (t.x.algebra() != b) throw InputError("triple X must be a base module");
    const std::size_t dm = m.dim();
    if (t.f.rows() != t.x.dim() || t.f.cols() != dm * t.y_dim)
        throw InputError("triple map has the wrong shape");
    // B-linearity of f: f . diag_Y(rho_M(b)) = rho_X(b) . f.
    for (std::size_t i = 0; i < b->dim(); ++i) {
        Mat lhs(t.x.dim(), dm * t.y_dim, gf);
        for (std::size_t j = 0; j < t.y_dim; ++j) {
            Mat fj = t.f.block(0, j * dm, t.x.dim(), dm);
            lhs.set_block(0, j * dm, fj * m.action(i));
        }
        Mat rhs = t.x.action(i) * t.f;
        if (!(lhs == rhs))
            throw InputError("triple map is not base-linear at " + b->label(i));
    }

    const std::size_t rb = b->vertex_count();
    std::vector<std::size_t> dimvec(rb + 1, 0);
    for (std::size_t v = 0; v < rb; ++v) dimvec[v] = t.x.vertex_dim(v);
    dimvec[rb] = t.y_dim;
    const std::size_t dtot = t.x.dim() + t.y_dim;
    // Coordinates: X first (its own vertex-major layout is preserved since
    // the new vertex comes last), then Y.
    std::vector<Mat> action(a->dim(), Mat(dtot, dtot, gf));
    for (std::size_t i = 0; i < b->dim(); ++i)
        action[i].set_block(0, 0, t.x.action(i));
    for (std::size_t k = 0; k < dm; ++k) {
        // m_k sends y_j to f(m_k tensor y_j).
        for (std::size_t j = 0; j < t.y_dim; ++j)
            for (std::size_t rix = 0; rix < t.x.dim(); ++rix)
                action[b->dim() + k](rix, t.x.dim() + j) = t.f(rix, j * dm + k);
    }
    for (std::size_t j = 0; j < t.y_dim; ++j)
        action[b->dim() + dm](t.x.dim() + j, t.x.dim() + j) = 1;
    return Module::from_graded(a, std::move(dimvec), std::move(action));
}

TripleModule module_to_triple(const OnePointExtension& ext, const Module& amod) {
    const AlgebraPtr& a = ext.algebra;
    const AlgebraPtr& b = ext.base;
    const Module& m = ext.m;
    if (amod.algebra() != a) throw InputError("module lives elsewhere");
    Gf gf = a->field();
    const std::size_t rb = b->vertex_count();
    TripleModule t;
    t.y_dim = amod.vertex_dim(rb);
    // X: restriction to the base coordinates (they come first).
    std::vector<std::size_t> dimvec(rb, 0);
    for (std::size_t v = 0; v < rb; ++v) dimvec[v] = amod.vertex_dim(v);
    const std::size_t dx = amod.dim() - t.y_dim;
    std::vector<Mat> action(b->dim(), Mat(dx, dx, gf));
    for (std::size_t i = 0; i < b->dim(); ++i)
        action[i] = amod.action(i).block(0, 0, dx, dx);
    t.x = Module::from_graded(b, std::move(dimvec), std::move(action));
    // f from the action of the M-part basis.
    t.f = Mat(dx, m.dim() * t.y_dim, gf);
    for (std::size_t k = 0; k < m.dim(); ++k) {
        const Mat& act = amod.action(b->dim() + k);
        for (std::size_t j = 0; j < t.y_dim; ++j)
            for (std::size_t rix = 0; rix < dx; ++rix)
                t.f(rix, j * m.dim() + k) = act(rix, dx + j);
    }
    return t;
}

Module inflate(const OnePointExtension& ext, const Module& x) {
    TripleModule t;
    t.y_dim = 0;
    t.x = x;
    t.f = Mat(x.dim(), 0, ext.algebra->field());
    return triple_to_module(ext, t);
}

Module restrict_to_base(const OnePointExtension& ext, const Module& amod) {
    return module_to_triple(ext, amod).x;
}

namespace {

std::string checks_json(const std::vector<CheckResult>& checks) {
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

// Morphism M tensor Y -> X from the triple data.
Morphism tensor_map_morphism(const OnePointExtension& ext, const TripleModule& t,
                             const SumResult& my) {
    const Module& m = ext.m;
    const AlgebraPtr& b = ext.base;
    Gf gf = b->field();
    std::vector<Mat> blocks;
    for (std::size_t v = 0; v < b->vertex_count(); ++v) {
        std::size_t mv = m.vertex_dim(v);
        Mat blk(t.x.vertex_dim(v), t.y_dim * mv, gf);
        for (std::size_t j = 0; j < t.y_dim; ++j)
            for (std::size_t c = 0; c < mv; ++c)
                for (std::size_t rix = 0; rix < t.x.vertex_dim(v); ++rix)
                    blk(rix, j * mv + c) =
                        t.f(t.x.offset(v) + rix, j * m.dim() + m.offset(v) + c);
        blocks.push_back(std::move(blk));
    }
    return Morphism(my.sum, t.x, std::move(blocks));
}

} // namespace

std::string PdLemmaReport::to_json() const { return checks_json(checks); }
std::string OpextTheoremsReport::to_json() const { return checks_json(checks); }

PdLemmaReport check_pd_lemma(const OnePointExtension& ext, long m,
                             const EnumOptions& opts) {
    if (m < 1) throw InputError("the bound m must be a positive integer");
    PdLemmaReport rep;
    const AlgebraPtr& b = ext.base;
    HomDim gdb = global_dimension(b);
    {
        CheckResult c;
        c.name = "hypothesis_gldim_base";
        if (gdb == HomDim::of(m + 1)) {
            c.verdict = "pass";
            c.note = "gl.dim base = m+1";
        } else if (gdb.leq(m + 1)) {
            c.verdict = "pass";
            c.note = "hypothesis relaxed: gl.dim base = " + gdb.to_string() +
                     " <= m+1";
        } else {
            c.verdict = "fail";
            c.note = "gl.dim base = " + gdb.to_string() + " > m+1";
        }
        rep.checks.push_back(c);
        if (c.failed()) return rep;
    }

    IndecSet ainds = enumerate_indecomposables(ext.algebra, opts);
    IndecSet binds = enumerate_indecomposables(b, opts);
    {
        CheckResult c;
        c.name = "enumerations_complete";
        c.verdict = (ainds.complete && binds.complete) ? "pass" : "fail";
        rep.checks.push_back(c);
        if (c.failed()) return rep;
    }

    CheckResult eq;
    eq.name = "pd_bound_equivalence";
    eq.verdict = "pass";
    for (std::size_t idx = 0; idx < ainds.size(); ++idx) {
        const Module& amod = ainds.modules[idx];
        TripleModule t = module_to_triple(ext, amod);
        bool lhs = ainds.pd[idx].leq(m);

        // Kernel and cokernel of f: M tensor Y -> X over the base.
        Module mty;
        Morphism fmor;
        if (t.y_dim == 0) {
            mty = Module::zero(b);
            fmor = Morphism::zero(mty, t.x);
        } else {
            std::vector<Module> copies(t.y_dim, ext.m);
            SumResult my = direct_sum(copies);
            mty = my.sum;
            fmor = tensor_map_morphism(ext, t, my);
        }
        KernelImageCokernel kk = kernel_cokernel(fmor);
        bool cond1 = proj_dim(kk.kernel).leq(m - 1);

        bool cond2 = true;
        {
            // K = ker((f, eps): M tensor Y (+) P_coker -> X) with eps a lift
            // of the projective cover of coker f through X.
            ProjectiveCover cov = projective_cover(kk.cokernel);
            std::vector<Mat> eps_blocks;
            for (std::size_t v = 0; v < b->vertex_count(); ++v) {
                auto sol = solve(kk.cokernel_projection.block(v), cov.epi.block(v));
                if (!sol) throw InputError("internal: cover lift failed");
                eps_blocks.push_back(sol->particular);
            }
            Morphism eps(cov.p.mod, t.x, std::move(eps_blocks));
            SumResult s = direct_sum({mty, cov.p.mod});
            Morphism h = s.projections[0].then(fmor) + s.projections[1].then(eps);
            KernelImageCokernel hk = kernel_cokernel(h);
            const Module& kmod = hk.kernel;

            // ker f -> K (through M tensor Y).
            Morphism into_s = kk.kernel_inclusion.then(s.injections[0]);
            std::vector<Mat> kf_blocks;
            for (std::size_t v = 0; v < b->vertex_count(); ++v) {
                ColumnSpan span(hk.kernel_inclusion.block(v));
                kf_blocks.push_back(span.coordinates(into_s.block(v)));
            }
            Morphism kerf_to_k(kk.kernel, kmod, std::move(kf_blocks));

            // K -> Omega^1(coker f) inside P_coker.
            KernelImageCokernel ok = kernel_cokernel(cov.epi);
            Morphism to_pc = hk.kernel_inclusion.then(s.projections[1]);
            std::vector<Mat> kw_blocks;
            for (std::size_t v = 0; v < b->vertex_count(); ++v) {
                ColumnSpan span(ok.kernel_inclusion.block(v));
                kw_blocks.push_back(span.coordinates(to_pc.block(v)));
            }
            Morphism k_to_omega(kmod, ok.kernel, std::move(kw_blocks));

            ShortExactSequence snake{kerf_to_k, k_to_omega};
            ShortExactSequence cover_seq{ok.kernel_inclusion, cov.epi};
            if (!snake.is_exact())
                throw InputError("internal: snake sequence not exact");

            for (std::size_t w = 0; w < binds.size() && cond2; ++w) {
                const Module& test = binds.modules[w];
                std::size_t target = ext_dim(static_cast<std::size_t>(m) + 1,
                                             kk.cokernel, test);
                if (target == 0) continue;
                Mat g = connecting_ext_map(snake, static_cast<std::size_t>(m) - 1,
                                           test);
                Mat delta = connecting_ext_map(cover_seq,
                                               static_cast<std::size_t>(m), test);
                Mat theta = delta * g;
                if (rank(theta) != target) cond2 = false;
            }
        }
        bool rhs = cond1 && cond2;
        if (lhs != rhs) {
            eq.verdict = "fail";
            eq.witnesses.push_back(ainds.names[idx]);
        }
    }
    eq.note = "checked " + std::to_string(ainds.size()) + " indecomposables";
    rep.checks.push_back(eq);
    return rep;
}

OpextTheoremsReport check_opext_theorems(const OnePointExtension& ext, long m,
                                         const EnumOptions& opts) {
    OpextTheoremsReport rep;
    const AlgebraPtr& a = ext.algebra;
    const AlgebraPtr& b = ext.base;

    IndecSet ainds = enumerate_indecomposables(a, opts);
    IndecSet binds = enumerate_indecomposables(b, opts);
    {
        CheckResult c;
        c.name = "enumerations_complete";
        c.verdict = (ainds.complete && binds.complete) ? "pass" : "fail";
        rep.checks.push_back(c);
        if (c.failed()) return rep;
    }

    HomDim gda = global_dimension(a);
    HomDim gdb = global_dimension(b);
    HomDim pdm = proj_dim(ext.m);
    // (a) gl.dim A = max(gl.dim B, pd_B M + 1).
    {
        CheckResult c;
        c.name = "gldim_formula";
        HomDim rhs = pdm.finite
                         ? hom_dim_max(gdb, HomDim::of(pdm.value + 1))
                         : HomDim::infinite();
        c.verdict = (gda == rhs) ? "pass" : "fail";
        c.note = "gl.dim A = " + gda.to_string() + ", max(gl.dim B, pd M + 1) = " +
                 rhs.to_string();
        rep.checks.push_back(c);
    }
    AuditReport a_audit = audit_almost_hereditary(ainds, m, 1);
    AuditReport b_audit = audit_almost_hereditary(binds, m, 1);
    // (b) A (m,1)-almost hereditary and gl.dim B = m+1 force B (m,1).
    {
        CheckResult c;
        c.name = "base_inherits_m1";
        if (!a_audit.pass() || !(gdb == HomDim::of(m + 1))) {
            c.verdict = "skipped";
            c.note = !a_audit.pass() ? "extension is not (m,1)-almost hereditary"
                                     : "gl.dim base != m+1";
        } else {
            c.verdict = b_audit.pass() ? "pass" : "fail";
        }
        rep.checks.push_back(c);
    }
    bool m_projective = proj_dim(ext.m).leq(0);
    // (c) Projective M + per-triple dichotomy give an (m,1) extension.
    {
        CheckResult c;
        c.name = "projective_extension_dichotomy";
        if (!m_projective || !b_audit.pass()) {
            c.verdict = "skipped";
            c.note = !m_projective ? "hypothesis not met: M is not projective"
                                   : "hypothesis not met: base is not (m,1)";
        } else {
            bool triple_hyp = true;
            std::vector<std::string> wit;
            for (std::size_t i = 0; i < ainds.size(); ++i) {
                TripleModule t = module_to_triple(ext, ainds.modules[i]);
                if (t.x.is_zero()) continue;
                if (!proj_dim(t.x).leq(m) && !inj_dim(t.x).leq(1)) {
                    triple_hyp = false;
                    wit.push_back(ainds.names[i]);
                }
            }
            if (!triple_hyp) {
                c.verdict = "skipped";
                c.note = "per-triple dichotomy fails";
                c.witnesses = wit;
            } else {
                c.verdict = a_audit.pass() ? "pass" : "fail";
            }
        }
        rep.checks.push_back(c);
    }
    // (d) Projective M with Hom(M, R_B \ L^m_B) = 0 over an (m,1) base.
    {
        CheckResult c;
        c.name = "hom_vanishing_extension";
        if (!m_projective || !b_audit.pass()) {
            c.verdict = "skipped";
            c.note = !m_projective ? "hypothesis not met: M is not projective"
                                   : "hypothesis not met: base is not (m,1)";
        } else {
            HomDigraph g(binds);
            std::set<std::size_t> l = part_L(binds, g, pd_at_most(m));
            std::set<std::size_t> r = part_R(binds, g, id_at_most(1));
            bool vanishes = true;
            for (std::size_t i = 0; i < binds.size(); ++i) {
                if (!r.count(i) || l.count(i)) continue;
                if (hom_dim(ext.m, binds.modules[i]) != 0) vanishes = false;
            }
            if (!vanishes) {
                c.verdict = "skipped";
                c.note = "hypothesis not met: Hom(M, R \\ L^m) != 0";
            } else {
                c.verdict = a_audit.pass() ? "pass" : "fail";
            }
        }
        rep.checks.push_back(c);
    }
    return rep;
}

EmittedPresentation emit_extension(const OnePointExtension& ext) {
    const AlgebraPtr& b = ext.base;
    const Module& m = ext.m;
    const auto& quiver = b->quiver();
    const auto& words = b->basis_words();
    EmittedPresentation out;
    auto fallback = [&] {
        out.is_dsl = false;
        out.text = algebra_structure_json(ext.algebra);
        return out;
    };
    if (!quiver || !words || m.is_zero()) return fallback();

    // Simple top: the extension corresponds to a single new arrow.
    std::vector<Mat> tops = top_complement(m);
    std::size_t top_total = 0, top_vertex = 0;
    for (std::size_t v = 0; v < b->vertex_count(); ++v) {
        top_total += tops[v].cols();
        if (tops[v].cols()) top_vertex = v;
    }
    if (top_total != 1) return fallback();

    // Path-alive structure: M must be spanned by path images of the top
    // generator for a monomial presentation.
    Mat gen(m.dim(), 1, b->field());
    for (std::size_t k = 0; k < m.vertex_dim(top_vertex); ++k)
        gen(m.offset(top_vertex) + k, 0) = tops[top_vertex](k, 0);
    std::vector<std::size_t> alive;
    for (std::size_t i = 0; i < b->dim(); ++i) {
        if (b->src(i) != top_vertex) continue;
        if (!(m.action(i) * gen).is_zero()) alive.push_back(i);
    }
    if (alive.size() != m.dim()) return fallback();

    // Minimal dead words: dead with an alive parent.
    std::ostringstream os;
    std::string arrow = "w0";
    std::string ident;
    for (char c : ext.algebra->id())
        ident += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    if (ident.empty() || std::isdigit(static_cast<unsigned char>(ident[0])))
        ident = "A" + ident;
    os << "algebra " << ident << " field " << b->field().p() << "\n";
    os << "vertices ";
    for (std::size_t v = 0; v < b->vertex_count(); ++v)
        os << quiver->vertex_names[v] << ",";
    os << ext.algebra->vertex_name(ext.ext_vertex) << "\n";
    for (const auto& ar : quiver->arrows)
        os << "arrow " << ar.name << " : " << quiver->vertex_names[ar.source]
           << " -> " << quiver->vertex_names[ar.target] << "\n";
    os << "arrow " << arrow << " : " << ext.algebra->vertex_name(ext.ext_vertex)
       << " -> " << quiver->vertex_names[top_vertex] << "\n";
    for (const auto& rel : quiver->relations) {
        os << "rel ";
        bool first_term = true;
        for (const auto& term : rel.terms) {
            if (!first_term) os << " + ";
            first_term = false;
            if (term.coeff != 1) os << term.coeff << "*";
            for (std::size_t k = 0; k < term.arrows.size(); ++k)
                os << (k ? "*" : "") << quiver->arrows[term.arrows[k]].name;
        }
        os << "\n";
    }
    for (std::size_t i = 0; i < b->dim(); ++i) {
        if (b->src(i) != top_vertex) continue;
        const auto& word = (*words)[i];
        if (word.empty()) continue;
        if (!(m.action(i) * gen).is_zero()) continue;
        // Parent path (drop the last arrow) must be alive.
        bool parent_alive = false;
        if (word.size() == 1) {
            parent_alive = true;
        } else {
            std::vector<std::size_t> parent(word.begin(), word.end() - 1);
            for (std::size_t j = 0; j < b->dim(); ++j)
                if ((*words)[j] == parent && !(m.action(j) * gen).is_zero())
                    parent_alive = true;
        }
        if (!parent_alive) continue;
        os << "rel " << arrow;
        for (std::size_t a : word) os << "*" << quiver->arrows[a].name;
        os << "\n";
    }
    // Self-validate: rebuild and compare the homological fingerprint.
    try {
        AlgebraPtr rebuilt = build_algebra(parse_spec(os.str()));
        if (rebuilt->dim() != ext.algebra->dim()) return fallback();
        for (std::size_t v = 0; v < ext.algebra->vertex_count(); ++v) {
            Module p1 = standard_module(rebuilt, StandardKind::Projective, v);
            Module p2 = standard_module(ext.algebra, StandardKind::Projective, v);
            if (p1.dimension_vector() != p2.dimension_vector()) return fallback();
        }
        if (!(global_dimension(rebuilt) == global_dimension(ext.algebra)))
            return fallback();
    } catch (const std::exception&) {
        return fallback();
    }
    out.is_dsl = true;
    out.text = os.str();
    return out;
}

std::string algebra_structure_json(const AlgebraPtr& alg) {
    ordered_json j;
    j["id"] = alg->id();
    j["p"] = alg->field().p();
    j["dim"] = alg->dim();
    j["vertices"] = ordered_json::array();
    for (std::size_t v = 0; v < alg->vertex_count(); ++v)
        j["vertices"].push_back(alg->vertex_name(v));
    j["labels"] = alg->labels();
    j["idempotents"] = alg->idempotents();
    j["radical"] = alg->radical();
    ordered_json src = ordered_json::array(), tgt = ordered_json::array();
    for (std::size_t i = 0; i < alg->dim(); ++i) {
        src.push_back(alg->src(i));
        tgt.push_back(alg->tgt(i));
    }
    j["src"] = src;
    j["tgt"] = tgt;
    ordered_json products = ordered_json::array();
    for (std::size_t i = 0; i < alg->dim(); ++i)
        for (std::size_t k = 0; k < alg->dim(); ++k) {
            Mat c = alg->mul_basis(i, k);
            if (c.is_zero()) continue;
            ordered_json entry;
            entry["i"] = i;
            entry["j"] = k;
            ordered_json coeffs = ordered_json::array();
            for (std::size_t t = 0; t < alg->dim(); ++t) coeffs.push_back(c(t, 0));
            entry["coeffs"] = coeffs;
            products.push_back(entry);
        }
    j["products"] = products;
    return j.dump(2);
}

} // namespace qhat
