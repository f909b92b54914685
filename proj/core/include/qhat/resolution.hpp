// Minimal projective resolutions, homological dimensions, Ext groups in
// generator coordinates, induced and connecting maps, and extension
// construction from cocycles.
#pragma once

#include "qhat/decompose.hpp"
#include "qhat/module.hpp"

#include <memory>

namespace qhat {

// Homological dimension: finite value, or infinite. The zero module has
// dimension -1, which makes pd/id additive formulas degenerate correctly.
struct HomDim {
    bool finite = true;
    long value = -1;

    static HomDim infinite() { return {false, 0}; }
    static HomDim of(long v) { return {true, v}; }
    bool leq(long k) const { return finite && value <= k; }
    bool gt(long k) const { return !finite || value > k; }
    bool operator==(const HomDim& o) const {
        return finite == o.finite && (!finite || value == o.value);
    }
    std::string to_string() const {
        return finite ? std::to_string(value) : "infinite";
    }
};

HomDim hom_dim_max(const HomDim& a, const HomDim& b);

// Free module with tracked generators: P = (+)_j P(verts[j]).
struct FreeModule {
    Module mod;
    std::vector<std::size_t> verts;     // generator vertices
    std::vector<std::size_t> gen_coord; // global coordinate of generator j
    // global coordinate -> (summand j, algebra basis element b)
    std::vector<std::pair<std::size_t, std::size_t>> coord_info;

    std::size_t gens() const { return verts.size(); }
};

FreeModule make_free(const AlgebraPtr& alg, const std::vector<std::size_t>& verts);

// The module morphism P -> N whose generator values are the columns of
// gen_values (N-coordinates; column j must lie in the verts[j]-block).
Morphism free_map(const FreeModule& p, const Module& n, const Mat& gen_values);

struct ProjectiveCover {
    FreeModule p;
    Morphism epi;   // P -> M, kernel inside rad P
};
ProjectiveCover projective_cover(const Module& m);

// Injective envelope: dual of the projective cover of the dual.
struct InjectiveEnvelope {
    Module e;
    Morphism mono; // M -> E
};
InjectiveEnvelope injective_envelope(const Module& m);

struct ResolveOptions {
    std::size_t max_steps = 64;
};

class Resolution {
public:
    enum class Status { Finite, Periodic, Truncated };

    const Module& module() const { return module_; }
    Status status() const { return status_; }
    std::size_t computed_steps() const { return steps_.size(); }
    // Steps beyond the end come back as the empty free module.
    const FreeModule& step(std::size_t i) const;
    // Generator images of d_{i+1}: P_i-coordinates of P_{i+1}'s generators;
    // zero-sized beyond the computed steps.
    Mat differential_gens(std::size_t i) const;
    Morphism differential(std::size_t i) const; // d_{i+1}: P_{i+1} -> P_i
    const Morphism& augmentation() const { return aug_; }

    // Largest i with P_i nonzero; -1 for the zero module; infinite when a
    // syzygy repeats. Throws CapError when truncated.
    HomDim length() const;

    friend Resolution resolve(const Module& m, const ResolveOptions& opts);

private:
    Module module_;
    std::vector<FreeModule> steps_;
    std::vector<Mat> d_gen_;
    Morphism aug_;
    Status status_ = Status::Finite;
    FreeModule empty_;
};

Resolution resolve(const Module& m, const ResolveOptions& opts = {});

// Memoized resolutions (keyed by module content).
std::shared_ptr<const Resolution> resolved(const Module& m,
                                           const ResolveOptions& opts = {});

HomDim proj_dim(const Module& m, const ResolveOptions& opts = {});
HomDim inj_dim(const Module& m, const ResolveOptions& opts = {});
HomDim global_dimension(const AlgebraPtr& alg, const ResolveOptions& opts = {});

std::size_t ext_dim(std::size_t i, const Module& m, const Module& n);

// Cohomology of Hom(P_., N) at degree i in generator-value coordinates.
struct ExtGroup {
    std::size_t degree = 0;
    std::size_t cochain_dim = 0;
    Mat representatives;  // cochain_dim x k cocycle representatives
    Mat boundaries;       // cochain_dim x (rank of im delta^{i-1})
    std::size_t dim() const { return representatives.cols(); }
    // Coefficients of a cocycle in the representative basis, mod boundaries.
    Mat reduce(const Mat& cocycle) const;
};
ExtGroup ext_group(std::size_t i, const Module& m, const Module& n);

// Matrix of Ext^i(g, N): Ext^i(M, N) -> Ext^i(M', N) for g: M' -> M,
// computed by lifting g to a chain map between minimal resolutions.
Mat induced_ext_map(const Morphism& g, std::size_t i, const Module& n);

struct ShortExactSequence {
    Morphism left;  // X -> E
    Morphism right; // E -> Y
    const Module& x() const { return left.source(); }
    const Module& e() const { return left.target(); }
    const Module& y() const { return right.target(); }
    bool is_exact() const;
};

// Connecting map Ext^i(X, N) -> Ext^{i+1}(Y, N) of Hom(-, N) applied to
// 0 -> X -> E -> Y -> 0.
Mat connecting_ext_map(const ShortExactSequence& ses, std::size_t i,
                       const Module& n);

// Builds 0 -> M -> E -> N -> 0 with class Sum coeffs[k] * basis_k in
// Ext^1(N, M); zero coefficients give the split extension.
ShortExactSequence extension_from_cocycle(const Module& n, const Module& m,
                                          const std::vector<std::uint32_t>& coeffs);

// Recovers the class coefficients of a short exact sequence with respect
// to the same basis that extension_from_cocycle uses.
std::vector<std::uint32_t> extension_class(const ShortExactSequence& ses);

} // namespace qhat
