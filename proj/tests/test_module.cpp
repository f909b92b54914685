#include "doctest.h"

#include "oracles.hpp"
#include "qhat/corpus.hpp"
#include "qhat/decompose.hpp"
#include "qhat/module.hpp"

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

} // namespace

TEST_CASE("standard modules have the expected shapes") {
    AlgebraPtr ex5a = corpus_algebra("EX5A");
    // Vertices are named 1..6, indices 0..5.
    Module p4 = projective(ex5a, 3);
    CHECK(p4.dim() == 3);
    CHECK(p4.dimension_vector() == std::vector<std::size_t>{0, 1, 1, 1, 0, 0});
    p4.validate();

    AlgebraPtr ex6a2 = corpus_algebra("EX6A(2)");
    Module i4 = injective(ex6a2, 3);
    CHECK(i4.dim() == 2);
    CHECK(i4.dimension_vector() == std::vector<std::size_t>{0, 0, 0, 1, 1, 0});
    i4.validate();

    for (std::size_t v = 0; v < 3; ++v) {
        Module s = simple(corpus_algebra("EX1"), v);
        std::vector<std::size_t> expect(3, 0);
        expect[v] = 1;
        CHECK(s.dimension_vector() == expect);
    }
}

TEST_CASE("hom dimensions") {
    AlgebraPtr ex1 = corpus_algebra("EX1");
    QuiverSpec spec = parse_spec(corpus_source("EX1"));
    Module x110 = module_from_literal(ex1, spec.modules[0]);

    SUBCASE("Hom(P(v), M) counts the fibre dimension") {
        std::vector<Module> mods{x110, simple(ex1, 0), simple(ex1, 1),
                                 projective(ex1, 0), injective(ex1, 1)};
        for (std::size_t v = 0; v < 3; ++v)
            for (const Module& m : mods)
                CHECK(hom_dim(projective(ex1, v), m) == m.vertex_dim(v));
    }
    SUBCASE("Hom between simples") {
        for (std::size_t v = 0; v < 3; ++v)
            for (std::size_t w = 0; w < 3; ++w)
                CHECK(hom_dim(simple(ex1, v), simple(ex1, w)) ==
                      (v == w ? 1u : 0u));
    }
    SUBCASE("socle embedding in EX7(1,2)") {
        AlgebraPtr ex7 = corpus_algebra("EX7(1,2)");
        // P(4) = [4,3] has socle S_3.
        Module p4 = projective(ex7, 3);
        CHECK(hom_dim(simple(ex7, 2), p4) == 1);
    }
    SUBCASE("hom_basis returns intertwiners matching hom_dim") {
        Module p1 = projective(ex1, 0);
        auto hb = hom_basis(p1, x110);
        CHECK(hb.size() == hom_dim(p1, x110));
        for (const auto& f : hb) CHECK(f.intertwines());
    }
    SUBCASE("bilinearity in the first argument") {
        Module s2 = simple(ex1, 1);
        SumResult sum = direct_sum({x110, projective(ex1, 0)});
        CHECK(hom_dim(sum.sum, s2) ==
              hom_dim(x110, s2) + hom_dim(projective(ex1, 0), s2));
    }
}

TEST_CASE("duality") {
    AlgebraPtr ex1 = corpus_algebra("EX1");
    for (std::size_t v = 0; v < 3; ++v) {
        Module s = simple(ex1, v);
        Module ds = dual_module(s);
        CHECK(ds.algebra().get() == ex1->opposite().get());
        CHECK(ds.strictly_equal(simple(ex1->opposite(), v)));
        // Double dual is literally the identity here.
        CHECK(dual_module(ds).strictly_equal(s));
        // D(P(v)) is the injective at v over the opposite algebra.
        CHECK(is_isomorphic(dual_module(projective(ex1, v)),
                            injective(ex1->opposite(), v)));
    }
}

TEST_CASE("kernels, images, cokernels") {
    AlgebraPtr ex5b = corpus_algebra("EX5B");
    SUBCASE("identity and zero") {
        Module p = projective(ex5b, 2);
        KernelImageCokernel k1 = kernel_cokernel(Morphism::identity(p));
        CHECK(k1.kernel.is_zero());
        CHECK(k1.cokernel.is_zero());
        Module s = simple(ex5b, 0);
        KernelImageCokernel k0 = kernel_cokernel(Morphism::zero(p, s));
        CHECK(k0.kernel.dim() == p.dim());
        CHECK(k0.cokernel.dim() == s.dim());
    }
    SUBCASE("radical of P(3) in EX5B is S_2") {
        // The cover P(3) ->> S_3 has kernel S_2.
        Module p3 = projective(ex5b, 2);
        Module s3 = simple(ex5b, 2);
        auto hb = hom_basis(p3, s3);
        REQUIRE(hb.size() == 1);
        KernelImageCokernel k = kernel_cokernel(hb[0]);
        CHECK(k.image.dim() == 1);
        CHECK(is_isomorphic(k.kernel, simple(ex5b, 1)));
        // Exactness of 0 -> ker -> M -> im -> 0 numerically.
        CHECK(k.kernel.dim() + k.image.dim() == p3.dim());
        CHECK(k.kernel_inclusion.then(hb[0]).is_zero());
        CHECK(k.onto_image.then(k.image_inclusion).full() == hb[0].full());
    }
}

TEST_CASE("direct sums") {
    AlgebraPtr ex1 = corpus_algebra("EX1");
    Module p1 = projective(ex1, 0);
    SUBCASE("sum with zero changes nothing") {
        SumResult s = direct_sum({p1, Module::zero(ex1)});
        CHECK(s.sum.dim() == p1.dim());
        CHECK(is_isomorphic(s.sum, p1));
    }
    SUBCASE("dimension vectors add") {
        Module s2 = simple(ex1, 1);
        SumResult s = direct_sum({p1, s2});
        for (std::size_t v = 0; v < 3; ++v)
            CHECK(s.sum.vertex_dim(v) == p1.vertex_dim(v) + s2.vertex_dim(v));
        // Injections and projections compose to identities.
        CHECK(s.injections[0].then(s.projections[0]).full().is_identity());
        CHECK(s.injections[1].then(s.projections[1]).full().is_identity());
        CHECK(s.injections[0].then(s.projections[1]).is_zero());
    }
    SUBCASE("rad P(1) of the triangle splits as S_2 + S_3") {
        SubmoduleResult rad = submodule_from_vertex_bases(p1, radical_vertex_bases(p1));
        CHECK(rad.sub.dim() == 2);
        auto pieces = decompose(rad.sub);
        REQUIRE(pieces.size() == 2);
        bool s2 = false, s3 = false;
        for (const auto& piece : pieces) {
            CHECK(piece.multiplicity == 1);
            if (is_isomorphic(piece.module, simple(ex1, 1))) s2 = true;
            if (is_isomorphic(piece.module, simple(ex1, 2))) s3 = true;
        }
        CHECK(s2);
        CHECK(s3);
    }
}

TEST_CASE("decompose") {
    AlgebraPtr ex1 = corpus_algebra("EX1");
    SUBCASE("a square of a simple groups with multiplicity") {
        Module s = simple(ex1, 1);
        auto pieces = decompose(direct_sum({s, s}).sum);
        REQUIRE(pieces.size() == 1);
        CHECK(pieces[0].multiplicity == 2);
        CHECK(is_isomorphic(pieces[0].module, s));
    }
    SUBCASE("projectives are indecomposable") {
        for (std::size_t v = 0; v < 3; ++v) {
            auto pieces = decompose(projective(ex1, v));
            CHECK(pieces.size() == 1);
            CHECK(pieces[0].multiplicity == 1);
            CHECK(is_indecomposable(projective(ex1, v)));
        }
    }
    SUBCASE("decompose then sum is isomorphic to the input") {
        QuiverSpec spec = parse_spec(corpus_source("EX1"));
        Module x110 = module_from_literal(ex1, spec.modules[0]);
        Module big = direct_sum({x110, projective(ex1, 2), simple(ex1, 1),
                                 simple(ex1, 1)})
                         .sum;
        auto pieces = decompose(big);
        std::vector<Module> parts;
        for (const auto& piece : pieces)
            for (std::size_t k = 0; k < piece.multiplicity; ++k)
                parts.push_back(piece.module);
        CHECK(is_isomorphic(direct_sum(parts).sum, big));
    }
}

TEST_CASE("is_isomorphic") {
    AlgebraPtr ex1 = corpus_algebra("EX1");
    Module p1 = projective(ex1, 0);
    CHECK(is_isomorphic(p1, p1));
    CHECK_FALSE(is_isomorphic(simple(ex1, 0), simple(ex1, 1)));
    AlgebraPtr ex7 = corpus_algebra("EX7(1,1)");
    // I(2) = P(3) in the radical-square-zero line 3->2->1.
    CHECK(is_isomorphic(injective(ex7, 1), projective(ex7, 2)));
    CHECK_FALSE(is_isomorphic(injective(ex7, 1), projective(ex7, 1)));
}

TEST_CASE("interval oracle matches standard modules on EX3") {
    AlgebraPtr ex3 = corpus_algebra("EX3");
    Module p3 = interval_module(ex3, "3", "7");
    CHECK(is_isomorphic(p3, projective(ex3, 2)));
    Module m = interval_module(ex3, "3", "6");
    CHECK(m.dim() == 4);
}

TEST_CASE("module length counts radical layers") {
    AlgebraPtr ex1 = corpus_algebra("EX1");
    CHECK(projective(ex1, 0).length() == 3);
    CHECK(simple(ex1, 1).length() == 1);
    AlgebraPtr ex3 = corpus_algebra("EX3");
    CHECK(interval_module(ex3, "3", "6").length() == 4);
}
