#include "doctest.h"

#include "oracles.hpp"
#include "qhat/ar.hpp"
#include "qhat/corpus.hpp"
#include "qhat/decompose.hpp"

using namespace qhat;
using qhat::testing::interval_module;

namespace {

Module simple(const AlgebraPtr& a, std::size_t v) {
    return standard_module(a, StandardKind::Simple, v);
}
Module projective(const AlgebraPtr& a, std::size_t v) {
    return standard_module(a, StandardKind::Projective, v);
}
Module injective(const AlgebraPtr& a, std::size_t v) {
    return standard_module(a, StandardKind::Injective, v);
}

// dim Hom(N, T) modulo maps factoring through the injective envelope of N.
std::size_t hom_mod_injectives(const Module& n, const Module& t) {
    std::size_t full = hom_dim(n, t);
    if (full == 0) return 0;
    InjectiveEnvelope env = injective_envelope(n);
    std::vector<Morphism> through = hom_basis(env.e, t);
    Gf gf = n.algebra()->field();
    RowSpan span(t.dim() * n.dim(), gf);
    std::size_t factoring = 0;
    for (const Morphism& g : through) {
        Mat m = env.mono.then(g).full();
        std::vector<std::uint32_t> row(m.rows() * m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                row[r * m.cols() + c] = m(r, c);
        if (span.add_row(std::move(row))) ++factoring;
    }
    return full - factoring;
}

} // namespace

TEST_CASE("transpose") {
    AlgebraPtr ex7 = corpus_algebra("EX7(1,1)");
    SUBCASE("projectives transpose to zero") {
        for (std::size_t v = 0; v < 3; ++v)
            CHECK(transpose(projective(ex7, v)).is_zero());
    }
    SUBCASE("Tr S_3 has total dimension one") {
        Module t = transpose(simple(ex7, 2));
        CHECK(t.algebra().get() == ex7->opposite().get());
        CHECK(t.dim() == 1);
    }
    SUBCASE("Tr Tr is the identity on modules without projective summands") {
        for (std::size_t v = 0; v < 2; ++v) {
            Module s = simple(ex7, v + 1); // S_2, S_3 are not projective here
            if (proj_dim(s) == HomDim::of(0)) continue;
            Module tt = transpose(transpose(s));
            CHECK(is_isomorphic(tt, s));
        }
    }
}

TEST_CASE("ar translates") {
    AlgebraPtr ex3 = corpus_algebra("EX3");
    SUBCASE("tau kills projectives, tau^{-1} kills injectives") {
        for (std::size_t v = 0; v < 8; ++v) {
            CHECK(ar_translate(projective(ex3, v), Translate::Tau).is_zero());
            CHECK(ar_translate(injective(ex3, v), Translate::TauInverse).is_zero());
        }
    }
    SUBCASE("tau shifts the figure interval") {
        Module m = interval_module(ex3, "3", "6");
        Module t = ar_translate(m, Translate::Tau);
        CHECK(is_isomorphic(t, interval_module(ex3, "4", "7")));
    }
    SUBCASE("tau^{-1} tau is the identity on non-projectives") {
        for (const char* desc : {"2", "3"}) {
            Module m = interval_module(ex3, desc, std::to_string(std::stoi(desc) + 2));
            if (proj_dim(m) == HomDim::of(0)) continue;
            Module round = ar_translate(ar_translate(m, Translate::Tau),
                                        Translate::TauInverse);
            CHECK(is_isomorphic(round, m));
        }
    }
}

TEST_CASE("enumeration of indecomposables") {
    SUBCASE("EX3 has exactly 30, with the expected orbit sizes") {
        IndecSet s = enumerate_indecomposables(corpus_algebra("EX3"));
        CHECK(s.complete);
        CHECK(s.size() == 30);
        CHECK(s.orbit_sizes() == std::vector<std::size_t>{4, 5, 6, 7, 8});
    }
    SUBCASE("EX4 has exactly 63") {
        IndecSet s = enumerate_indecomposables(corpus_algebra("EX4"));
        CHECK(s.complete);
        CHECK(s.size() == 63);
    }
    SUBCASE("EX7(1,2) has exactly 7") {
        IndecSet s = enumerate_indecomposables(corpus_algebra("EX7(1,2)"));
        CHECK(s.complete);
        CHECK(s.size() == 7);
    }
    SUBCASE("enumeration equals the interval model on Nakayama corpus") {
        for (const char* id : {"EX2(1,1)", "EX3", "EX7(1,1)", "EX7(1,2)"}) {
            AlgebraPtr alg = corpus_algebra(id);
            IndecSet s = enumerate_indecomposables(alg);
            auto intervals = nakayama_intervals(alg);
            REQUIRE(intervals.has_value());
            CHECK(s.size() == intervals->size());
            for (const Module& m : *intervals) CHECK(s.find(m).has_value());
        }
    }
    SUBCASE("projectives and injectives always appear") {
        AlgebraPtr alg = corpus_algebra("EX5A");
        IndecSet s = enumerate_indecomposables(alg);
        CHECK(s.complete);
        for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
            CHECK(s.find(projective(alg, v)).has_value());
            CHECK(s.find(injective(alg, v)).has_value());
        }
    }
}

TEST_CASE("dot export") {
    SUBCASE("hereditary A_2: three nodes, two arrows") {
        AlgebraPtr a2 = build_algebra(parse_spec(
            "algebra A2 field 101\nvertices 1,2\narrow a : 1 -> 2\n"));
        IndecSet s = enumerate_indecomposables(a2);
        CHECK(s.size() == 3);
        std::string dot = ar_quiver_dot(s);
        std::size_t edges = 0;
        for (std::size_t pos = dot.find("->"); pos != std::string::npos;
             pos = dot.find("->", pos + 2))
            ++edges;
        CHECK(edges == 2);
    }
    SUBCASE("single vertex: one node, no edges") {
        AlgebraPtr k = build_algebra(parse_spec("algebra k field 101\nvertices 1\n"));
        IndecSet s = enumerate_indecomposables(k);
        CHECK(s.size() == 1);
        std::string dot = ar_quiver_dot(s);
        CHECK(dot.find("->") == std::string::npos);
    }
    SUBCASE("node ids are stable across runs") {
        AlgebraPtr alg = corpus_algebra("EX7(1,2)");
        std::string a = ar_quiver_dot(enumerate_indecomposables(alg));
        std::string b = ar_quiver_dot(enumerate_indecomposables(alg));
        CHECK(a == b);
    }
}

TEST_CASE("ar duality on EX7(1,1) and EX1") {
    for (const char* id : {"EX7(1,1)", "EX1"}) {
        AlgebraPtr alg = corpus_algebra(id);
        IndecSet s = enumerate_indecomposables(alg);
        REQUIRE(s.complete);
        for (std::size_t i = 0; i < s.size(); ++i) {
            Module tau_m = ar_translate(s.modules[i], Translate::Tau);
            for (std::size_t j = 0; j < s.size(); ++j) {
                std::size_t lhs = ext_dim(1, s.modules[i], s.modules[j]);
                std::size_t rhs = tau_m.is_zero()
                                      ? 0
                                      : hom_mod_injectives(s.modules[j], tau_m);
                CHECK_MESSAGE(lhs == rhs, id << " pair (" << s.names[i] << ", "
                                             << s.names[j] << ")");
            }
        }
    }
}
