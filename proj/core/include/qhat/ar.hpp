// Transpose, the translates tau and tau^{-1}, enumeration of the
// indecomposables of a representation-directed algebra, and DOT export
// of the resulting quiver of irreducible maps.
#pragma once

#include "qhat/resolution.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qhat {

// Cokernel of Hom(-, A) applied to a minimal projective presentation;
// zero for projectives. Lives over the opposite algebra.
Module transpose(const Module& m);

enum class Translate { Tau, TauInverse };

// tau = D Tr, tau^{-1} = Tr D. Zero on projectives / injectives
// respectively; otherwise indecomposable for indecomposable input.
Module ar_translate(const Module& m, Translate dir);

struct EnumOptions {
    std::size_t max_modules = 10000;
    std::size_t max_dim = 512;
    std::uint64_t seed = 0xA1;
};

struct IndecSet {
    AlgebraPtr alg;
    std::vector<Module> modules;       // canonical representatives
    std::vector<std::string> names;    // display names (P/I/S aliases)
    std::vector<HomDim> pd, id;
    // tau_of[i]: index of tau(M_i), or nullopt when projective; dually.
    std::vector<std::optional<std::size_t>> tau_of, tau_inv_of;
    std::vector<std::size_t> orbit;    // tau-orbit index per module
    bool complete = true;
    std::vector<std::string> notes;

    std::size_t size() const { return modules.size(); }
    // Index of a module isomorphic to m, if present.
    std::optional<std::size_t> find(const Module& m) const;
    std::vector<std::size_t> orbit_sizes() const;
};

// The almost split sequence ending at a non-projective indecomposable:
// 0 -> tau M -> E -> M -> 0. The class spans the socle of Ext^1(M, tau M)
// under the End(M)-action.
ShortExactSequence almost_split_sequence(const Module& m);

// Knitting closure of the projectives: tau^{+-1}, radical summands of
// projectives, and middle terms of almost split sequences. Completeness
// checks: every injective and simple appears, the set is tau-closed, and
// on linear Nakayama presentations it equals the interval model.
// Failures mark the set incomplete rather than throwing.
IndecSet enumerate_indecomposables(const AlgebraPtr& alg,
                                   const EnumOptions& opts = {});

// The interval model for linearly ordered monomial quivers: one
// indecomposable per surviving path. nullopt when the presentation is
// not of that shape.
std::optional<std::vector<Module>> nakayama_intervals(const AlgebraPtr& alg);

// Graphviz export; nodes carry dimension vectors and P/I/S tags, edges
// the dimension of rad/rad^2 computed over the finite set.
std::string ar_quiver_dot(const IndecSet& inds);

} // namespace qhat
