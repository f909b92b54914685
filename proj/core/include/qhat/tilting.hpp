// Tilting and cotilting verification, torsion pairs, the splitting and
// stair conditions, endomorphism algebra extraction, and verification of
// iterated (co)tilting chains.
#pragma once

#include "qhat/parts.hpp"

namespace qhat {

enum class TiltKind { Tilting, Cotilting };

struct TiltingVerdict {
    TiltKind kind = TiltKind::Tilting;
    // (1) pd <= 1 (id <= 1 for cotilting), (2) no self-extensions,
    // (3) as many pairwise non-isomorphic summands as simples.
    bool homdim_ok = false;
    bool no_self_ext = false;
    bool summand_count_ok = false;
    std::size_t distinct_summands = 0;
    std::size_t rank = 0; // number of simples
    std::vector<std::string> witnesses;
    bool pass() const { return homdim_ok && no_self_ext && summand_count_ok; }
};

TiltingVerdict check_tilting(const Module& t, TiltKind kind);

struct TorsionPair {
    std::vector<std::size_t> torsion;      // T(T): Ext^1(T, X) = 0
    std::vector<std::size_t> torsion_free; // F(T): Hom(T, X) = 0
    bool disjoint = true;
};
TorsionPair torsion_pair(const Module& t, const IndecSet& inds);

// Splitting: for tilting T, id X <= 1 on F(T); for cotilting C, pd X <= 1
// whenever Hom(X, C) = 0.
bool is_splitting(const Module& t, TiltKind kind, const IndecSet& inds);

struct EndoAlgebra {
    AlgebraPtr algebra;            // B = (End T)^op on the distinct summands
    std::vector<Module> summands;  // summand i corresponds to vertex i
};
// Requires p > dim B (radical via the regular trace form).
EndoAlgebra endomorphism_algebra(const Module& t);

struct TransferReport {
    std::vector<CheckResult> checks;
    bool pass() const {
        return std::none_of(checks.begin(), checks.end(),
                            [](const CheckResult& c) { return c.failed(); });
    }
    std::string to_json() const;
};

// For a splitting tilting module over an algebra satisfying the (m,n)
// dichotomy: every indecomposable B-module has pd <= m or id <= n+1; when
// the algebra is (m,n)-almost hereditary and the step is stair, B is
// (m,n+1)-almost hereditary; a stair splitting tilt of an algebra of
// global dimension d gives a (d,1)-almost hereditary B.
TransferReport check_transfer(const IndecSet& inds, const Module& t, long m,
                              long n, const EnumOptions& opts = {});

struct ChainStep {
    TiltKind kind = TiltKind::Tilting;
    std::string module_expr;
};
struct TiltingChain {
    std::string base;
    std::vector<ChainStep> steps;
};
TiltingChain parse_chain_json(const std::string& text);

// "P(v)", "I(v)", "S(v)", a module name declared in the input file, or sums of
// these joined with '+'.
Module eval_module_expr(const AlgebraPtr& alg, const std::string& expr);

struct ChainReport {
    std::vector<CheckResult> checks;
    std::string final_algebra_id;
    bool pass() const {
        return std::none_of(checks.begin(), checks.end(),
                            [](const CheckResult& c) { return c.failed(); });
    }
    std::string to_json() const;
};

// Verifies: the base is quasitilted of global dimension two; each step is
// a stair splitting (co)tilting module; the chain has n-1 tilts and m-1
// cotilts; the final algebra audits (m,n)-almost hereditary.
ChainReport verify_chain(const AlgebraPtr& base, const TiltingChain& chain,
                         long m, long n, const EnumOptions& opts = {});

} // namespace qhat
