// One-point extensions B[M], the triple description of their modules,
// and the checkers tying extension homology back to the base algebra.
#pragma once

#include "qhat/parts.hpp"

namespace qhat {

struct OnePointExtension {
    AlgebraPtr algebra;        // A = B[M]
    AlgebraPtr base;           // B
    Module m;                  // the extending B-module
    std::size_t ext_vertex;    // index of the new vertex in A
    // Old vertex v of B corresponds to vertex v of A (same order).
};

// dim A = dim B + dim M + 1; rad P(ext_vertex) is M inflated.
OnePointExtension one_point_extension(const AlgebraPtr& b, const Module& m,
                                      const std::string& name = "");

struct TripleModule {
    std::size_t y_dim = 0; // the space Y over the extension vertex
    Module x;              // a B-module
    Mat f;                 // (M tensor Y -> X): dim X rows, dim M * y_dim cols
};

// Columns of f are indexed by (basis of M) x (basis of Y), M-major:
// column j * dim M + c is the image of (m_c tensor y_j).
Module triple_to_module(const OnePointExtension& ext, const TripleModule& t);
TripleModule module_to_triple(const OnePointExtension& ext, const Module& a_mod);

// Inflation of a B-module to an A-module with trivial extension part.
Module inflate(const OnePointExtension& ext, const Module& x);
// Restriction of an A-module to B (drops the extension vertex).
Module restrict_to_base(const OnePointExtension& ext, const Module& a_mod);

struct PdLemmaReport {
    std::vector<CheckResult> checks;
    bool pass() const {
        return std::none_of(checks.begin(), checks.end(),
                            [](const CheckResult& c) { return c.failed(); });
    }
    std::string to_json() const;
};

// For every indecomposable A-module (Y, X, f): pd_A <= m holds exactly
// when pd_B ker f <= m-1 and the induced map
// Ext^{m-1}(ker f, -) -> Ext^{m+1}(coker f, -) is onto, the latter tested
// by evaluation at every indecomposable B-module. Hypothesis:
// gl.dim B = m+1 (accepted when <= m+1, flagged as relaxed).
PdLemmaReport check_pd_lemma(const OnePointExtension& ext, long m,
                             const EnumOptions& opts = {});

struct OpextTheoremsReport {
    std::vector<CheckResult> checks;
    bool pass() const {
        return std::none_of(checks.begin(), checks.end(),
                            [](const CheckResult& c) { return c.failed(); });
    }
    std::string to_json() const;
};

// (a) gl.dim A = max(gl.dim B, pd_B M + 1); (b) if A is (m,1)-almost
// hereditary and gl.dim B = m+1, then B must audit (m,1); (c) for
// projective M with the per-triple dichotomy, A is (m,1); (d) for
// projective M with Hom(M, R_B minus L^m_B) = 0 over an (m,1) base,
// A is (m,1).
OpextTheoremsReport check_opext_theorems(const OnePointExtension& ext, long m,
                                         const EnumOptions& opts = {});

// DSL emission when the extension admits a monomial one-arrow
// presentation (simple top); otherwise a JSON structure-constant dump.
struct EmittedPresentation {
    bool is_dsl = false;
    std::string text;
};
EmittedPresentation emit_extension(const OnePointExtension& ext);

// Structure constants of any algebra as JSON.
std::string algebra_structure_json(const AlgebraPtr& alg);

} // namespace qhat
