#include "qhat/resolution.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>

namespace qhat {

HomDim hom_dim_max(const HomDim& a, const HomDim& b) {
    if (!a.finite || !b.finite) return HomDim::infinite();
    return HomDim::of(std::max(a.value, b.value));
}

FreeModule make_free(const AlgebraPtr& alg, const std::vector<std::size_t>& verts) {
    const std::size_t r = alg->vertex_count();
    const std::size_t n = alg->dim();
    Gf gf = alg->field();
    FreeModule fm;
    fm.verts = verts;

    // Coordinates: for each vertex block w, all pairs (j, b) with
    // src(b) = verts[j] and tgt(b) = w, ordered by (j, b).
    std::vector<std::size_t> dimvec(r, 0);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> blocks(r);
    for (std::size_t w = 0; w < r; ++w)
        for (std::size_t j = 0; j < verts.size(); ++j)
            for (std::size_t b = 0; b < n; ++b)
                if (alg->src(b) == verts[j] && alg->tgt(b) == w)
                    blocks[w].emplace_back(j, b);
    for (std::size_t w = 0; w < r; ++w) dimvec[w] = blocks[w].size();

    std::vector<std::size_t> off(r + 1, 0);
    for (std::size_t w = 0; w < r; ++w) off[w + 1] = off[w] + dimvec[w];
    const std::size_t d = off[r];

    fm.coord_info.resize(d);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> coord_of;
    for (std::size_t w = 0; w < r; ++w)
        for (std::size_t t = 0; t < blocks[w].size(); ++t) {
            fm.coord_info[off[w] + t] = blocks[w][t];
            coord_of[blocks[w][t]] = off[w] + t;
        }
    fm.gen_coord.resize(verts.size());
    for (std::size_t j = 0; j < verts.size(); ++j)
        fm.gen_coord[j] = coord_of.at({j, alg->idempotents()[verts[j]]});

    std::vector<Mat> action(n, Mat(d, d, gf));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t c = 0; c < d; ++c) {
            auto [j, b] = fm.coord_info[c];
            Mat prod = alg->mul_basis(a, b);
            for (std::size_t k = 0; k < n; ++k) {
                std::uint32_t cv = prod(k, 0);
                if (!cv) continue;
                auto it = coord_of.find({j, k});
                assert(it != coord_of.end());
                action[a](it->second, c) = cv;
            }
        }
    }
    fm.mod = Module::from_graded(alg, std::move(dimvec), std::move(action));
    return fm;
}

Morphism free_map(const FreeModule& p, const Module& n, const Mat& gen_values) {
    assert(gen_values.cols() == p.gens());
    assert(gen_values.rows() == n.dim());
    Mat full(n.dim(), p.mod.dim(), n.algebra()->field());
    for (std::size_t c = 0; c < p.mod.dim(); ++c) {
        auto [j, b] = p.coord_info[c];
        Mat val = n.action(b) * gen_values.col(j); // rho_N(b) . gen_j
        for (std::size_t rix = 0; rix < n.dim(); ++rix) full(rix, c) = val(rix, 0);
    }
    return Morphism::from_full(p.mod, n, full);
}

ProjectiveCover projective_cover(const Module& m) {
    const AlgebraPtr& alg = m.algebra();
    Gf gf = alg->field();
    std::vector<Mat> tops = top_complement(m);
    std::vector<std::size_t> verts;
    for (std::size_t v = 0; v < alg->vertex_count(); ++v)
        for (std::size_t c = 0; c < tops[v].cols(); ++c) verts.push_back(v);
    FreeModule p = make_free(alg, verts);
    Mat gen_values(m.dim(), verts.size(), gf);
    std::size_t j = 0;
    for (std::size_t v = 0; v < alg->vertex_count(); ++v)
        for (std::size_t c = 0; c < tops[v].cols(); ++c, ++j)
            for (std::size_t k = 0; k < m.vertex_dim(v); ++k)
                gen_values(m.offset(v) + k, j) = tops[v](k, c);
    Morphism epi = free_map(p, m, gen_values);
    return {std::move(p), std::move(epi)};
}

InjectiveEnvelope injective_envelope(const Module& m) {
    Module dm = dual_module(m);
    ProjectiveCover cov = projective_cover(dm);
    Morphism dmono = dual_morphism(cov.epi); // DD(m) -> D(P)
    assert(dmono.source().strictly_equal(m));
    std::vector<Mat> blocks;
    for (std::size_t v = 0; v < m.algebra()->vertex_count(); ++v)
        blocks.push_back(dmono.block(v));
    Morphism mono(m, dmono.target(), std::move(blocks));
    return {dmono.target(), std::move(mono)};
}

const FreeModule& Resolution::step(std::size_t i) const {
    if (i < steps_.size()) return steps_[i];
    return empty_;
}

Mat Resolution::differential_gens(std::size_t i) const {
    if (i < d_gen_.size()) return d_gen_[i];
    return Mat(step(i).mod.dim(), step(i + 1).gens(), module_.algebra()->field());
}

Morphism Resolution::differential(std::size_t i) const {
    return free_map(steps_[i + 1], steps_[i].mod, d_gen_[i]);
}

HomDim Resolution::length() const {
    if (status_ == Status::Truncated)
        throw CapError("projective resolution exceeded the step cap");
    if (status_ == Status::Periodic) return HomDim::infinite();
    long last = -1;
    for (std::size_t i = 0; i < steps_.size(); ++i)
        if (steps_[i].gens() > 0) last = static_cast<long>(i);
    return HomDim::of(last);
}

Resolution resolve(const Module& m, const ResolveOptions& opts) {
    Resolution res;
    res.module_ = m;
    res.empty_ = make_free(m.algebra(), {});

    ProjectiveCover cov = projective_cover(m);
    res.steps_.push_back(cov.p);
    res.aug_ = cov.epi;

    KernelImageCokernel k = kernel_cokernel(cov.epi);
    Module syz = k.kernel;
    Morphism incl = k.kernel_inclusion; // into P_{i-1}
    std::vector<Module> seen_syzygies{};

    while (true) {
        if (syz.is_zero()) {
            res.status_ = Resolution::Status::Finite;
            break;
        }
        // Syzygy repetition = infinite projective dimension.
        bool repeated = false;
        for (const Module& old : seen_syzygies) {
            if (old.dim() != syz.dim() ||
                old.dimension_vector() != syz.dimension_vector())
                continue;
            try {
                if (is_isomorphic(old, syz)) { repeated = true; break; }
            } catch (const InconclusiveError&) {
                // Treat as distinct; the step cap still bounds the loop.
            }
        }
        if (repeated) {
            res.status_ = Resolution::Status::Periodic;
            break;
        }
        if (res.steps_.size() > opts.max_steps) {
            res.status_ = Resolution::Status::Truncated;
            break;
        }
        seen_syzygies.push_back(syz);

        ProjectiveCover cov_i = projective_cover(syz);
        // d = inclusion o epi, recorded by generator images.
        Mat incl_full = incl.full();
        Mat gen_in_prev(incl_full.rows(), cov_i.p.gens(), m.algebra()->field());
        Mat epi_full = cov_i.epi.full();
        for (std::size_t j = 0; j < cov_i.p.gens(); ++j) {
            Mat val = incl_full * epi_full.col(cov_i.p.gen_coord[j]);
            for (std::size_t rix = 0; rix < val.rows(); ++rix)
                gen_in_prev(rix, j) = val(rix, 0);
        }
        res.d_gen_.push_back(std::move(gen_in_prev));
        res.steps_.push_back(cov_i.p);

        KernelImageCokernel ki = kernel_cokernel(cov_i.epi);
        syz = ki.kernel;
        incl = ki.kernel_inclusion;
    }
    return res;
}

std::shared_ptr<const Resolution> resolved(const Module& m,
                                           const ResolveOptions& opts) {
    static std::mutex mu;
    static std::map<std::pair<const void*, std::size_t>,
                    std::vector<std::pair<Module, std::shared_ptr<const Resolution>>>>
        cache;
    std::size_t h = m.content_hash();
    std::pair<const void*, std::size_t> key{m.algebra().get(), h};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end())
            for (auto& [mod, res] : it->second)
                if (mod.strictly_equal(m) &&
                    (res->status() != Resolution::Status::Truncated ||
                     res->computed_steps() > opts.max_steps))
                    return res;
    }
    auto res = std::make_shared<const Resolution>(resolve(m, opts));
    {
        std::lock_guard<std::mutex> lock(mu);
        cache[key].emplace_back(m, res);
    }
    return res;
}

HomDim proj_dim(const Module& m, const ResolveOptions& opts) {
    return resolved(m, opts)->length();
}

HomDim inj_dim(const Module& m, const ResolveOptions& opts) {
    return proj_dim(dual_module(m), opts);
}

HomDim global_dimension(const AlgebraPtr& alg, const ResolveOptions& opts) {
    HomDim g = HomDim::of(0);
    for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
        HomDim d = proj_dim(standard_module(alg, StandardKind::Simple, v), opts);
        g = hom_dim_max(g, d);
    }
    return g;
}

namespace {

std::vector<std::size_t> cochain_offsets(const FreeModule& p, const Module& n) {
    std::vector<std::size_t> off(p.gens() + 1, 0);
    for (std::size_t j = 0; j < p.gens(); ++j)
        off[j + 1] = off[j] + n.vertex_dim(p.verts[j]);
    return off;
}

// C(from) -> C(to): psi |-> psi o u, where u maps to's generators into
// from.mod via the columns of gen_images.
Mat cochain_map(const FreeModule& from, const FreeModule& to,
                const Mat& gen_images, const Module& n) {
    const AlgebraPtr& alg = n.algebra();
    Gf gf = alg->field();
    auto coff_from = cochain_offsets(from, n);
    auto coff_to = cochain_offsets(to, n);
    Mat out(coff_to.back(), coff_from.back(), gf);
    for (std::size_t k = 0; k < to.gens(); ++k) {
        std::size_t w = to.verts[k];
        for (std::size_t c = 0; c < from.mod.dim(); ++c) {
            std::uint32_t xc = gen_images(c, k);
            if (!xc) continue;
            auto [j, b] = from.coord_info[c];
            assert(alg->tgt(b) == w);
            std::size_t vj = from.verts[j];
            assert(alg->src(b) == vj);
            Mat blk = n.action(b).block(n.offset(w), n.offset(vj),
                                        n.vertex_dim(w), n.vertex_dim(vj));
            for (std::size_t rix = 0; rix < blk.rows(); ++rix)
                for (std::size_t cx = 0; cx < blk.cols(); ++cx)
                    out(coff_to[k] + rix, coff_from[j] + cx) =
                        gf.add(out(coff_to[k] + rix, coff_from[j] + cx),
                               gf.mul(xc, blk(rix, cx)));
        }
    }
    return out;
}

Mat delta_matrix(const Resolution& res, std::size_t i, const Module& n) {
    const FreeModule& from = res.step(i);
    const FreeModule& to = res.step(i + 1);
    if (to.gens() == 0 || from.gens() == 0) {
        auto coff_from = cochain_offsets(from, n);
        auto coff_to = cochain_offsets(to, n);
        return Mat(coff_to.back(), coff_from.back(), n.algebra()->field());
    }
    return cochain_map(from, to, res.differential_gens(i), n);
}

// Generator-value columns (full N coordinates) from cochain coordinates.
Mat genvalues_from_cochain(const FreeModule& p, const Module& n,
                           const Mat& cochain_col) {
    auto coff = cochain_offsets(p, n);
    assert(cochain_col.cols() == 1);
    Mat vals(n.dim(), p.gens(), n.algebra()->field());
    for (std::size_t j = 0; j < p.gens(); ++j) {
        std::size_t v = p.verts[j];
        for (std::size_t t = 0; t < n.vertex_dim(v); ++t)
            vals(n.offset(v) + t, j) = cochain_col(coff[j] + t, 0);
    }
    return vals;
}

Mat cochain_from_genvalues(const FreeModule& p, const Module& n,
                           const Mat& gen_values) {
    auto coff = cochain_offsets(p, n);
    Mat out(coff.back(), 1, n.algebra()->field());
    for (std::size_t j = 0; j < p.gens(); ++j) {
        std::size_t v = p.verts[j];
        for (std::size_t t = 0; t < n.vertex_dim(v); ++t)
            out(coff[j] + t, 0) = gen_values(n.offset(v) + t, j);
    }
    return out;
}

// Solve map_full * x = rhs with x supported on the coordinates of p whose
// basis element has target vertex `vertex` (the e_vertex block of p).
Mat solve_free_block(const Mat& map_full, const FreeModule& p,
                     std::size_t vertex, const Mat& rhs) {
    const AlgebraPtr& alg = p.mod.algebra();
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < p.mod.dim(); ++c)
        if (alg->tgt(p.coord_info[c].second) == vertex) cols.push_back(c);
    Mat sub = map_full.cols_slice(cols);
    auto sol = solve(sub, rhs);
    if (!sol)
        throw InputError("internal: chain lifting system inconsistent");
    Mat x(p.mod.dim(), rhs.cols(), p.mod.algebra()->field());
    for (std::size_t k = 0; k < cols.size(); ++k)
        for (std::size_t j = 0; j < rhs.cols(); ++j)
            x(cols[k], j) = sol->particular(k, j);
    return x;
}

// Solve map_full * x = rhs with x in the e_vertex block of module coords.
Mat solve_module_block(const Mat& map_full, const Module& m, std::size_t vertex,
                       const Mat& rhs) {
    std::vector<std::size_t> cols;
    for (std::size_t c = m.offset(vertex); c < m.offset(vertex + 1); ++c)
        cols.push_back(c);
    Mat sub = map_full.cols_slice(cols);
    auto sol = solve(sub, rhs);
    if (!sol) throw InputError("internal: block lifting system inconsistent");
    Mat x(m.dim(), rhs.cols(), m.algebra()->field());
    for (std::size_t k = 0; k < cols.size(); ++k)
        for (std::size_t j = 0; j < rhs.cols(); ++j)
            x(cols[k], j) = sol->particular(k, j);
    return x;
}

// Chain maps u_j: P'_j -> P_j (generator images) lifting g: M' -> M.
std::vector<Mat> chain_lift(const Resolution& rsrc, const Resolution& rtgt,
                            const Morphism& g, std::size_t upto) {
    const Module& mtgt = rtgt.module();
    Gf gf = mtgt.algebra()->field();
    std::vector<Mat> u;
    Mat gfull = g.full();
    for (std::size_t j = 0; j <= upto; ++j) {
        const FreeModule& psrc = rsrc.step(j);
        const FreeModule& ptgt = rtgt.step(j);
        Mat uj(ptgt.mod.dim(), psrc.gens(), gf);
        if (psrc.gens() == 0 || ptgt.gens() == 0) {
            // Beyond either resolution the lift is forced to be zero.
            u.push_back(std::move(uj));
            continue;
        }
        if (j == 0) {
            Mat augfull = rtgt.augmentation().full();
            Mat srcaug = rsrc.augmentation().full();
            for (std::size_t k = 0; k < psrc.gens(); ++k) {
                Mat rhs = gfull * srcaug.col(psrc.gen_coord[k]);
                Mat x = solve_free_block(augfull, ptgt, psrc.verts[k], rhs);
                for (std::size_t rix = 0; rix < x.rows(); ++rix) uj(rix, k) = x(rix, 0);
            }
        } else {
            Mat dfull = free_map(rtgt.step(j), rtgt.step(j - 1).mod,
                                 rtgt.differential_gens(j - 1))
                            .full();
            Mat uprev_full = free_map(rsrc.step(j - 1), rtgt.step(j - 1).mod,
                                      u[j - 1])
                                 .full();
            const Mat& dsrc = rsrc.differential_gens(j - 1);
            for (std::size_t k = 0; k < psrc.gens(); ++k) {
                Mat rhs = uprev_full * dsrc.col(k);
                Mat x = solve_free_block(dfull, ptgt, psrc.verts[k], rhs);
                for (std::size_t rix = 0; rix < x.rows(); ++rix) uj(rix, k) = x(rix, 0);
            }
        }
        u.push_back(std::move(uj));
    }
    return u;
}

} // namespace

std::size_t ext_dim(std::size_t i, const Module& m, const Module& n) {
    auto res = resolved(m);
    Mat di = delta_matrix(*res, i, n);
    std::size_t kerdim = di.cols() - rank(di);
    if (i == 0) return kerdim;
    Mat dprev = delta_matrix(*res, i - 1, n);
    return kerdim - rank(dprev);
}

ExtGroup ext_group(std::size_t i, const Module& m, const Module& n) {
    auto res = resolved(m);
    Gf gf = m.algebra()->field();
    Mat di = delta_matrix(*res, i, n);
    Mat ker = kernel_basis(di);
    Mat bound = i == 0 ? Mat(di.cols(), 0, gf)
                       : column_space_basis(delta_matrix(*res, i - 1, n));
    ExtGroup out;
    out.degree = i;
    out.cochain_dim = di.cols();
    out.boundaries = bound;
    RowSpan span(di.cols(), gf);
    for (std::size_t c = 0; c < bound.cols(); ++c) {
        std::vector<std::uint32_t> row(di.cols());
        for (std::size_t k = 0; k < di.cols(); ++k) row[k] = bound(k, c);
        span.add_row(std::move(row));
    }
    std::vector<std::size_t> reps;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        std::vector<std::uint32_t> row(di.cols());
        for (std::size_t k = 0; k < di.cols(); ++k) row[k] = ker(k, c);
        if (span.add_row(std::move(row))) reps.push_back(c);
    }
    out.representatives = ker.cols_slice(reps);
    return out;
}

Mat ExtGroup::reduce(const Mat& cocycle) const {
    Mat basis = representatives.hcat(boundaries);
    ColumnSpan span(basis);
    Mat coords = span.coordinates(cocycle);
    return coords.block(0, 0, representatives.cols(), cocycle.cols());
}

Mat induced_ext_map(const Morphism& g, std::size_t i, const Module& n) {
    auto rsrc = resolved(g.source()); // M'
    auto rtgt = resolved(g.target()); // M
    ExtGroup from = ext_group(i, g.target(), n); // Ext^i(M, N)
    ExtGroup to = ext_group(i, g.source(), n);   // Ext^i(M', N)
    if (from.dim() == 0) return Mat(to.dim(), 0, n.algebra()->field());
    std::vector<Mat> u = chain_lift(*rsrc, *rtgt, g, i);
    Mat t = cochain_map(rtgt->step(i), rsrc->step(i), u[i], n);
    return to.reduce(t * from.representatives);
}

bool ShortExactSequence::is_exact() const {
    const Morphism& f = left;
    const Morphism& g = right;
    if (f.source().dim() + g.target().dim() != f.target().dim()) return false;
    Mat ff = f.full(), gg = g.full();
    if (rank(ff) != f.source().dim()) return false;       // mono
    if (rank(gg) != g.target().dim()) return false;       // epi
    if (!(gg * ff).is_zero()) return false;               // complex
    return rank(ff) + rank(gg) == f.target().dim();       // exact middle
}

Mat connecting_ext_map(const ShortExactSequence& ses, std::size_t i,
                       const Module& n) {
    const Module& x = ses.x();
    const Module& y = ses.y();
    const Module& e = ses.e();
    Gf gf = x.algebra()->field();
    auto rx = resolved(x);
    auto ry = resolved(y);

    ExtGroup from = ext_group(i, x, n);
    ExtGroup to = ext_group(i + 1, y, n);
    if (from.dim() == 0) return Mat(to.dim(), 0, gf);

    // sigma: P^Y_0 -> E lifting the augmentation through E ->> Y.
    const FreeModule& py0 = ry->step(0);
    Mat gfull = ses.right.full();
    Mat augy = ry->augmentation().full();
    Mat sigma(e.dim(), py0.gens(), gf);
    for (std::size_t j = 0; j < py0.gens(); ++j) {
        Mat rhs = augy.col(py0.gen_coord[j]);
        Mat s = solve_module_block(gfull, e, py0.verts[j], rhs);
        for (std::size_t rix = 0; rix < e.dim(); ++rix) sigma(rix, j) = s(rix, 0);
    }
    Mat sigma_full = free_map(py0, e, sigma).full();

    // xi: P^Y_1 -> X with left o xi = sigma o d^Y_1.
    const FreeModule& py1 = ry->step(1);
    Mat ffull = ses.left.full();
    Mat xi(x.dim(), py1.gens(), gf);
    for (std::size_t k = 0; k < py1.gens(); ++k) {
        Mat val = sigma_full * ry->differential_gens(0).col(k);
        Mat s = solve_module_block(ffull, x, py1.verts[k], val);
        for (std::size_t rix = 0; rix < x.dim(); ++rix) xi(rix, k) = s(rix, 0);
    }

    // Chain maps u_j: P^Y_{j+1} -> P^X_j starting from xi.
    std::vector<Mat> u;
    for (std::size_t j = 0; j <= i; ++j) {
        const FreeModule& psrc = ry->step(j + 1);
        const FreeModule& ptgt = rx->step(j);
        Mat uj(ptgt.mod.dim(), psrc.gens(), gf);
        if (psrc.gens() > 0 && ptgt.gens() > 0) {
            if (j == 0) {
                Mat augx = rx->augmentation().full();
                for (std::size_t k = 0; k < psrc.gens(); ++k) {
                    Mat s = solve_free_block(augx, ptgt, psrc.verts[k], xi.col(k));
                    for (std::size_t rix = 0; rix < s.rows(); ++rix)
                        uj(rix, k) = s(rix, 0);
                }
            } else {
                Mat dfull = free_map(rx->step(j), rx->step(j - 1).mod,
                                     rx->differential_gens(j - 1))
                                .full();
                Mat uprev_full =
                    free_map(ry->step(j), rx->step(j - 1).mod, u[j - 1]).full();
                for (std::size_t k = 0; k < psrc.gens(); ++k) {
                    Mat rhs = uprev_full * ry->differential_gens(j).col(k);
                    Mat s = solve_free_block(dfull, ptgt, psrc.verts[k], rhs);
                    for (std::size_t rix = 0; rix < s.rows(); ++rix)
                        uj(rix, k) = s(rix, 0);
                }
            }
        }
        u.push_back(std::move(uj));
    }

    Mat t = cochain_map(rx->step(i), ry->step(i + 1), u[i], n);
    return to.reduce(t * from.representatives);
}

ShortExactSequence extension_from_cocycle(const Module& n, const Module& m,
                                          const std::vector<std::uint32_t>& coeffs) {
    Gf gf = n.algebra()->field();
    auto res = resolved(n);
    ExtGroup e1 = ext_group(1, n, m);
    if (coeffs.size() != e1.dim())
        throw InputError("coefficient count does not match dim Ext^1 = " +
                         std::to_string(e1.dim()));
    Mat z(e1.cochain_dim, 1, gf);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        z = z + e1.representatives.col(k).scaled(coeffs[k] % gf.p());

    const FreeModule& p0 = res->step(0);
    const FreeModule& p1 = res->step(1);
    Morphism phi = free_map(p1, m, genvalues_from_cochain(p1, m, z));

    // Omega^1 = ker(augmentation), with pi: P_1 ->> Omega and iota into P_0.
    KernelImageCokernel kk = kernel_cokernel(res->augmentation());
    const Module& omega = kk.kernel;
    Morphism iota = kk.kernel_inclusion;
    // pi: coordinates of d_1 images inside omega.
    Morphism d1 = p1.gens() > 0 ? free_map(p1, p0.mod, res->differential_gens(0))
                                : Morphism::zero(p1.mod, p0.mod);
    std::vector<Mat> pi_blocks;
    for (std::size_t v = 0; v < n.algebra()->vertex_count(); ++v) {
        ColumnSpan span(iota.block(v));
        pi_blocks.push_back(span.coordinates(d1.block(v)));
    }
    Morphism pi(p1.mod, omega, std::move(pi_blocks));

    // psi: Omega -> M with psi o pi = phi (phi kills ker pi = im d_2).
    std::vector<Mat> psi_blocks;
    for (std::size_t v = 0; v < n.algebra()->vertex_count(); ++v) {
        // Solve X * pi_v = phi_v  <=>  pi_v^T X^T = phi_v^T.
        auto sol = solve(pi.block(v).transposed(), phi.block(v).transposed());
        if (!sol)
            throw InputError("internal: cocycle does not factor through the syzygy");
        psi_blocks.push_back(sol->particular.transposed());
    }
    Morphism psi(omega, m, std::move(psi_blocks));

    // E = (M (+) P_0) / {(psi w, -iota w)}.
    SumResult sum = direct_sum({m, p0.mod});
    Morphism graph = psi.then(sum.injections[0]) -
                     iota.then(sum.injections[1]);
    std::vector<Mat> wbases;
    for (std::size_t v = 0; v < n.algebra()->vertex_count(); ++v)
        wbases.push_back(column_space_basis(graph.block(v)));
    QuotientResult q = quotient_module(sum.sum, wbases);

    Morphism left = sum.injections[0].then(q.projection); // M -> E
    // right: E -> N induced by (0, aug) via the linear section.
    Morphism zero_aug =
        sum.projections[1].then(res->augmentation()); // M+P0 -> N
    Morphism right = q.section.then(zero_aug);
    return {std::move(left), std::move(right)};
}

std::vector<std::uint32_t> extension_class(const ShortExactSequence& ses) {
    const Module& n = ses.y();
    const Module& m = ses.x();
    const Module& e = ses.e();
    Gf gf = n.algebra()->field();
    auto res = resolved(n);
    const FreeModule& p0 = res->step(0);
    const FreeModule& p1 = res->step(1);

    Mat gfull = ses.right.full();
    Mat augn = res->augmentation().full();
    Mat sigma(e.dim(), p0.gens(), gf);
    for (std::size_t j = 0; j < p0.gens(); ++j) {
        Mat s = solve_module_block(gfull, e, p0.verts[j],
                                   augn.col(p0.gen_coord[j]));
        for (std::size_t rix = 0; rix < e.dim(); ++rix) sigma(rix, j) = s(rix, 0);
    }
    Mat sigma_full = free_map(p0, e, sigma).full();
    Mat ffull = ses.left.full();
    Mat xi(m.dim(), p1.gens(), gf);
    for (std::size_t k = 0; k < p1.gens(); ++k) {
        Mat val = sigma_full * res->differential_gens(0).col(k);
        Mat s = solve_module_block(ffull, m, p1.verts[k], val);
        for (std::size_t rix = 0; rix < m.dim(); ++rix) xi(rix, k) = s(rix, 0);
    }
    ExtGroup e1 = ext_group(1, n, m);
    Mat coeffs = e1.reduce(cochain_from_genvalues(p1, m, xi));
    std::vector<std::uint32_t> out(coeffs.rows());
    for (std::size_t k = 0; k < coeffs.rows(); ++k) out[k] = coeffs(k, 0);
    return out;
}

} // namespace qhat
