#include "qhat/decompose.hpp"

#include <algorithm>
#include <cassert>

namespace qhat {

namespace {

// Stable part of phi: M = ker(phi^N) + im(phi^N) for N >= dim.
struct Fitting {
    Mat ker, img; // column bases
};

Fitting fitting_of(const Mat& phi) {
    Mat q = phi;
    std::size_t d = phi.rows();
    // Square until the rank stabilizes.
    std::size_t r = rank(q);
    for (std::size_t step = 0; step < d + 2; ++step) {
        Mat q2 = q * q;
        std::size_t r2 = rank(q2);
        if (r2 == r) break;
        q = std::move(q2);
        r = r2;
    }
    return {kernel_basis(q), column_space_basis(q)};
}

// Splits M along a non-nilpotent, non-invertible endomorphism.
std::pair<Module, Module> split_along(const Module& m, const Morphism& phi) {
    Mat f = phi.full();
    Fitting fit = fitting_of(f);
    assert(fit.ker.cols() > 0 && fit.img.cols() > 0);
    auto part = [&](const Mat& global_basis) {
        return submodule_closure(m, global_basis).sub;
    };
    return {part(fit.ker), part(fit.img)};
}

// Eigenvalue sweep: returns an endomorphism suitable for splitting, or
// certifies that every element of the span is lambda + nilpotent.
struct Probe {
    enum class Kind { Split, LocalPart, NoEigenvalue } kind;
    Mat nilpotent_part; // for LocalPart: full-matrix nilpotent summand
    Morphism splitter;
};

Probe probe_endo(const Module& m, const Morphism& phi) {
    const Gf gf = m.algebra()->field();
    Mat f = phi.full();
    std::size_t d = f.rows();
    std::size_t found = 0;
    std::uint32_t lambda = 0;
    for (std::uint32_t l = 0; l < gf.p(); ++l) {
        Mat shifted = f - Mat::identity(d, gf).scaled(l);
        if (rank(shifted) < d) {
            ++found;
            lambda = l;
            if (found > 1) break;
        }
    }
    if (found == 0) return {Probe::Kind::NoEigenvalue, Mat(), Morphism()};
    Mat shifted = f - Mat::identity(d, gf).scaled(lambda);
    if (found == 1 && is_nilpotent(shifted))
        return {Probe::Kind::LocalPart, shifted, Morphism()};
    // Two eigenvalues, or one eigenvalue with non-nilpotent shift: the
    // shifted map is neither nilpotent nor invertible.
    Morphism splitter = phi - Morphism::identity(m).scaled(lambda);
    return {Probe::Kind::Split, Mat(), splitter};
}

// Certifies End(M) local: the nilpotent parts span a codimension-one
// subspace closed under multiplication and nilpotent as an ideal.
bool certify_local(const Module& m, const std::vector<Morphism>& endos,
                   const std::vector<Mat>& nilpotent_parts) {
    const Gf gf = m.algebra()->field();
    std::size_t d = m.dim();
    std::size_t d2 = d * d;
    auto flatten = [&](const Mat& f) {
        std::vector<std::uint32_t> row(d2);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) row[i * d + j] = f(i, j);
        return row;
    };
    RowSpan radical(d2, gf);
    for (const Mat& n : nilpotent_parts) radical.add_row(flatten(n));
    if (radical.dim() != endos.size() - 1) return false;
    if (radical.contains(flatten(Mat::identity(d, gf)))) return false;
    // Closed under multiplication.
    std::vector<Mat> basis;
    for (std::size_t i = 0; i < radical.dim(); ++i) {
        Mat b(d, d, gf);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) b(r, c) = radical.rows()[i][r * d + c];
        basis.push_back(std::move(b));
    }
    for (const Mat& x : basis)
        for (const Mat& y : basis)
            if (!radical.contains(flatten(x * y))) return false;
    // Nilpotent as an ideal: powers of the span shrink to zero.
    std::vector<Mat> power = basis;
    for (std::size_t step = 0; step <= d + 1; ++step) {
        RowSpan span(d2, gf);
        std::vector<Mat> next;
        for (const Mat& x : power)
            for (const Mat& y : basis) {
                Mat prod = x * y;
                if (span.add_row(flatten(prod))) next.push_back(prod);
            }
        if (next.empty()) return true;
        power = std::move(next);
    }
    return false;
}

Morphism random_endo(const Module& m, const std::vector<Morphism>& endos,
                     Rng& rng) {
    const Gf gf = m.algebra()->field();
    Morphism acc = Morphism::zero(m, m);
    for (const Morphism& e : endos) acc = acc + e.scaled(rng.below(gf.p()));
    return acc;
}

// nullopt = could not certify either way.
std::optional<bool> try_indecomposable(const Module& m,
                                       std::vector<Module>& split_out,
                                       const DecomposeOptions& opts) {
    if (m.dim() == 0) return true;
    std::vector<Morphism> endos = hom_basis(m, m);
    if (endos.size() == 1) return true; // End = k
    std::vector<Mat> nilpotent_parts;
    bool all_local_shape = true;
    for (const Morphism& e : endos) {
        Probe p = probe_endo(m, e);
        switch (p.kind) {
        case Probe::Kind::Split: {
            auto [a, b] = split_along(m, p.splitter);
            split_out = {a, b};
            return std::nullopt; // caller treats split_out as the answer
        }
        case Probe::Kind::LocalPart:
            nilpotent_parts.push_back(p.nilpotent_part);
            break;
        case Probe::Kind::NoEigenvalue:
            all_local_shape = false;
            break;
        }
    }
    if (all_local_shape && certify_local(m, endos, nilpotent_parts)) return true;
    // Randomized fallback.
    Rng rng(opts.seed ^ (m.content_hash() | 1));
    for (std::size_t round = 0; round < opts.rounds; ++round) {
        Morphism g = random_endo(m, endos, rng);
        Probe p = probe_endo(m, g);
        if (p.kind == Probe::Kind::Split) {
            auto [a, b] = split_along(m, p.splitter);
            split_out = {a, b};
            return std::nullopt;
        }
    }
    return std::nullopt; // no split found, no certificate: inconclusive
}

} // namespace

bool is_indecomposable(const Module& m, const DecomposeOptions& opts) {
    if (m.dim() == 0) return false;
    std::vector<Module> split;
    auto verdict = try_indecomposable(m, split, opts);
    if (verdict.has_value()) return *verdict;
    if (!split.empty()) return false;
    throw InconclusiveError("indecomposability test inconclusive after " +
                            std::to_string(opts.rounds) + " rounds");
}

std::vector<Summand> decompose(const Module& m, const DecomposeOptions& opts) {
    std::vector<Module> work{m};
    std::vector<Module> pieces;
    while (!work.empty()) {
        Module cur = work.back();
        work.pop_back();
        if (cur.dim() == 0) continue;
        std::vector<Module> split;
        auto verdict = try_indecomposable(cur, split, opts);
        if (verdict.has_value() && *verdict) {
            pieces.push_back(cur);
        } else if (!split.empty()) {
            work.push_back(split[0]);
            work.push_back(split[1]);
        } else {
            throw InconclusiveError(
                "decomposition inconclusive: endomorphism sampling stalled");
        }
    }
    // Deterministic order, then group by isomorphism.
    std::stable_sort(pieces.begin(), pieces.end(),
                     [](const Module& a, const Module& b) {
                         if (a.dim() != b.dim()) return a.dim() < b.dim();
                         return a.dimension_vector() < b.dimension_vector();
                     });
    std::vector<Summand> out;
    for (const Module& p : pieces) {
        bool merged = false;
        for (Summand& s : out) {
            if (s.module.dim() == p.dim() &&
                s.module.dimension_vector() == p.dimension_vector() &&
                is_isomorphic(s.module, p, opts)) {
                ++s.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back({p, 1});
    }
    return out;
}

bool is_isomorphic(const Module& m, const Module& n,
                   const DecomposeOptions& opts) {
    if (m.algebra() != n.algebra())
        throw InputError("isomorphism test across different algebras");
    if (m.dim() != n.dim()) return false;
    if (m.dimension_vector() != n.dimension_vector()) return false;
    if (m.dim() == 0) return true;
    if (m.strictly_equal(n)) return true;
    std::vector<Morphism> homs = hom_basis(m, n);
    if (homs.empty()) return false;
    if (hom_dim(n, m) != homs.size()) return false;
    if (hom_dim(m, m) != hom_dim(n, n)) return false;

    const Gf gf = m.algebra()->field();
    auto invertible = [&](const Morphism& f) {
        for (std::size_t v = 0; v < m.algebra()->vertex_count(); ++v) {
            if (f.block(v).rows() != f.block(v).cols()) return false;
            if (rank(f.block(v)) != f.block(v).rows()) return false;
        }
        return true;
    };
    for (const Morphism& h : homs)
        if (invertible(h)) return true;
    if (homs.size() == 1) return false; // scalar multiples change nothing
    if (homs.size() == 2) {
        // Exhaustive up to scalar: (1, t) for all t, plus (0, 1).
        for (std::uint32_t t = 0; t < gf.p(); ++t)
            if (invertible(homs[0] + homs[1].scaled(t))) return true;
        return false; // basis element homs[1] alone was already tested
    }
    Rng rng(opts.seed ^ 0x15addad ^ (m.content_hash() * 3 + n.content_hash()));
    for (std::size_t round = 0; round < opts.rounds; ++round) {
        Morphism g = Morphism::zero(m, n);
        for (const Morphism& h : homs) g = g + h.scaled(rng.below(gf.p()));
        if (invertible(g)) return true;
    }
    throw InconclusiveError("isomorphism test inconclusive after " +
                            std::to_string(opts.rounds) + " random combinations");
}

} // namespace qhat
