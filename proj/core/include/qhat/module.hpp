// Finite-dimensional left modules over a BasicAlgebra, morphisms between
// them, and the structural operations everything else builds on.
//
// Module coordinates are vertex-major: the e_v-eigenspaces sit in
// consecutive blocks, in idempotent order. A morphism is one block per
// vertex; off-vertex blocks vanish because morphisms commute with the
// idempotents.
#pragma once

#include "qhat/algebra.hpp"
#include "qhat/presentation.hpp"

#include <memory>
#include <string>
#include <vector>

namespace qhat {

class Module {
public:
    Module() = default;

    // Graded constructor: one action matrix per algebra basis element in
    // vertex-major coordinates.
    static Module from_graded(AlgebraPtr alg, std::vector<std::size_t> dimvec,
                              std::vector<Mat> action);
    // Regrades arbitrary commuting-projection coordinates by the images
    // of the idempotent actions.
    static Module from_raw(AlgebraPtr alg, const std::vector<Mat>& action);
    static Module zero(AlgebraPtr alg);

    const AlgebraPtr& algebra() const { return d_->alg; }
    std::size_t dim() const { return d_->offset.back(); }
    bool is_zero() const { return dim() == 0; }
    const std::vector<std::size_t>& dimension_vector() const { return d_->dimvec; }
    std::size_t vertex_dim(std::size_t v) const { return d_->dimvec[v]; }
    std::size_t offset(std::size_t v) const { return d_->offset[v]; }

    const Mat& action(std::size_t basis_index) const {
        return d_->action[basis_index];
    }
    // The only possibly-nonzero block of the action, src(b) -> tgt(b).
    Mat action_block(std::size_t basis_index) const;
    Mat act_by(const Mat& algebra_coords) const; // sum of actions, d x d

    // Composition length via the radical series.
    std::size_t length() const;

    // Full invariant check: actions respect the structure constants and
    // the idempotents are the coordinate projections.
    void validate() const;

    bool strictly_equal(const Module& o) const;
    std::size_t content_hash() const;

private:
    struct Data {
        AlgebraPtr alg;
        std::vector<std::size_t> dimvec;
        std::vector<std::size_t> offset; // size r+1
        std::vector<Mat> action;         // per basis element, d x d
    };
    explicit Module(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

class Morphism {
public:
    Morphism() = default;
    Morphism(Module source, Module target, std::vector<Mat> blocks);

    static Morphism identity(const Module& m);
    static Morphism zero(const Module& source, const Module& target);
    static Morphism from_full(const Module& source, const Module& target,
                              const Mat& full);

    const Module& source() const { return src_; }
    const Module& target() const { return tgt_; }
    const Mat& block(std::size_t v) const { return blocks_[v]; }
    Mat full() const;

    Morphism then(const Morphism& g) const; // g after *this
    Morphism operator+(const Morphism& o) const;
    Morphism operator-(const Morphism& o) const;
    Morphism scaled(std::uint32_t c) const;
    bool is_zero() const;

    // Checks the intertwining equations against every basis element.
    bool intertwines() const;

private:
    Module src_, tgt_;
    std::vector<Mat> blocks_; // one per vertex
};

enum class StandardKind { Simple, Projective, Injective };

Module standard_module(const AlgebraPtr& alg, StandardKind kind,
                       std::size_t vertex);

Module module_from_literal(const AlgebraPtr& alg, const ModuleLiteral& lit);
std::string module_to_dsl(const Module& m, const std::string& name);

std::size_t hom_dim(const Module& m, const Module& n);
std::vector<Morphism> hom_basis(const Module& m, const Module& n);

// Left module over the opposite algebra; applying it twice gives back the
// original module on the nose.
Module dual_module(const Module& m);
// Transport of f: M -> N to D(f): D(N) -> D(M).
Morphism dual_morphism(const Morphism& f);

struct SumResult {
    Module sum;
    std::vector<Morphism> injections;
    std::vector<Morphism> projections;
};
SumResult direct_sum(const std::vector<Module>& parts);

struct SubmoduleResult {
    Module sub;
    Morphism inclusion;
};
// vertex_bases[v]: columns spanning the v-component; must be action-stable.
SubmoduleResult submodule_from_vertex_bases(const Module& m,
                                            const std::vector<Mat>& vertex_bases);
// Closes arbitrary global column vectors under the action.
SubmoduleResult submodule_closure(const Module& m, const Mat& global_vectors);

struct QuotientResult {
    Module quotient;
    Morphism projection;
    Morphism section; // linear section (not a module map in general)
};
QuotientResult quotient_module(const Module& m,
                               const std::vector<Mat>& sub_vertex_bases);

struct KernelImageCokernel {
    Module kernel;
    Morphism kernel_inclusion; // ker -> M
    Module image;
    Morphism image_inclusion; // im -> N
    Morphism onto_image;      // M -> im
    Module cokernel;
    Morphism cokernel_projection; // N -> coker
};
KernelImageCokernel kernel_cokernel(const Morphism& f);

// rad M = (radical of A) . M, as per-vertex column bases.
std::vector<Mat> radical_vertex_bases(const Module& m);
// Per-vertex columns spanning a complement of rad M (dim = top dims).
std::vector<Mat> top_complement(const Module& m);

} // namespace qhat
