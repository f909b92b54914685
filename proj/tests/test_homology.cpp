#include "doctest.h"

#include "oracles.hpp"
#include "qhat/ar.hpp"
#include "qhat/corpus.hpp"
#include "qhat/decompose.hpp"
#include "qhat/resolution.hpp"

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

// Injective dimension via an explicit injective coresolution; an
// independent route used to cross-check inj_dim.
HomDim inj_dim_by_coresolution(const Module& m, std::size_t cap = 64) {
    Module cur = m;
    long steps = -1;
    while (!cur.is_zero()) {
        if (static_cast<std::size_t>(steps + 1) > cap)
            return HomDim::infinite();
        InjectiveEnvelope env = injective_envelope(cur);
        KernelImageCokernel k = kernel_cokernel(env.mono);
        cur = k.cokernel;
        ++steps;
    }
    return HomDim::of(steps < 0 ? -1 : steps);
}

} // namespace

TEST_CASE("projective covers") {
    AlgebraPtr ex1 = corpus_algebra("EX1");
    SUBCASE("cover of a projective is itself") {
        Module p1 = projective(ex1, 0);
        ProjectiveCover c = projective_cover(p1);
        CHECK(c.p.mod.dim() == p1.dim());
        CHECK(kernel_cokernel(c.epi).kernel.is_zero());
    }
    SUBCASE("cover of the figure module on EX3") {
        AlgebraPtr ex3 = corpus_algebra("EX3");
        Module m = interval_module(ex3, "3", "6");
        ProjectiveCover c = projective_cover(m);
        CHECK(is_isomorphic(c.p.mod, projective(ex3, 2))); // P(3) = [3..7]
        Module ker = kernel_cokernel(c.epi).kernel;
        CHECK(is_isomorphic(ker, simple(ex3, 6))); // S_7
    }
    SUBCASE("cover of S_1 on the triangle") {
        Module s1 = simple(ex1, 0);
        ProjectiveCover c = projective_cover(s1);
        CHECK(is_isomorphic(c.p.mod, projective(ex1, 0)));
        Module ker = kernel_cokernel(c.epi).kernel;
        CHECK(is_isomorphic(ker, direct_sum({simple(ex1, 1), simple(ex1, 2)}).sum));
    }
    SUBCASE("cover epi is onto and minimal") {
        AlgebraPtr ex5b = corpus_algebra("EX5B");
        for (std::size_t v = 0; v < 5; ++v) {
            Module s = simple(ex5b, v);
            ProjectiveCover c = projective_cover(s);
            CHECK(rank(c.epi.full()) == s.dim());
            CHECK(ColumnSpan(c.epi.full().transposed()).dim() == s.dim());
            Module ker = kernel_cokernel(c.epi).kernel;
            // Minimality: kernel inside rad P, i.e. the kernel has no
            // component at the generator coordinates.
            Mat kin = kernel_cokernel(c.epi).kernel_inclusion.full();
            for (std::size_t g : c.p.gen_coord)
                for (std::size_t j = 0; j < kin.cols(); ++j)
                    CHECK(kin(g, j) == 0);
        }
    }
}

TEST_CASE("projective and injective dimensions on the corpus") {
    AlgebraPtr ex1 = corpus_algebra("EX1");
    QuiverSpec spec = parse_spec(corpus_source("EX1"));
    Module x110 = module_from_literal(ex1, spec.modules[0]);
    CHECK(proj_dim(x110) == HomDim::of(2));
    CHECK(inj_dim(x110) == HomDim::of(2));
    for (std::size_t v = 0; v < 3; ++v) {
        CHECK(proj_dim(projective(ex1, v)) == HomDim::of(0));
        CHECK(inj_dim(injective(ex1, v)) == HomDim::of(0));
    }
    AlgebraPtr ex6a2 = corpus_algebra("EX6A(2)");
    CHECK(proj_dim(simple(ex6a2, 3)) == HomDim::of(3)); // S_4
    CHECK(inj_dim(simple(ex6a2, 3)) == HomDim::of(2));
}

TEST_CASE("global dimension on the corpus") {
    CHECK(global_dimension(corpus_algebra("EX1")) == HomDim::of(2));
    CHECK(global_dimension(corpus_algebra("EX2(1,1)")) == HomDim::of(3));
    CHECK(global_dimension(corpus_algebra("EX5B")) == HomDim::of(2));
    CHECK(global_dimension(corpus_algebra("EX3")) == HomDim::of(3));
}

TEST_CASE("infinite projective dimension is detected") {
    AlgebraPtr dual = build_algebra(parse_spec(
        "algebra dual field 101\nvertices 1\narrow a : 1 -> 1\nrel a*a\n"));
    CHECK_FALSE(proj_dim(simple(dual, 0)).finite);
    CHECK_FALSE(global_dimension(dual).finite);
}

TEST_CASE("ext dimensions") {
    AlgebraPtr ex1 = corpus_algebra("EX1");
    QuiverSpec spec = parse_spec(corpus_source("EX1"));
    Module x110 = module_from_literal(ex1, spec.modules[0]);
    SUBCASE("degree zero is Hom") {
        for (std::size_t v = 0; v < 3; ++v) {
            Module s = simple(ex1, v);
            CHECK(ext_dim(0, x110, s) == hom_dim(x110, s));
            CHECK(ext_dim(0, s, x110) == hom_dim(s, x110));
        }
    }
    SUBCASE("projectives have no higher ext") {
        for (std::size_t v = 0; v < 3; ++v)
            for (std::size_t i = 1; i <= 3; ++i)
                CHECK(ext_dim(i, projective(ex1, v), x110) == 0);
    }
    SUBCASE("Ext^2(S_1, S_2) on the triangle is one dimensional") {
        CHECK(ext_dim(2, simple(ex1, 0), simple(ex1, 1)) == 1);
        // Consistency probe: dim Ext^i(S_a, S_b) equals the multiplicity
        // of P(b) in step i of the minimal resolution of S_a.
        auto res = resolved(simple(ex1, 0));
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t b = 0; b < 3; ++b) {
                std::size_t mult = 0;
                for (std::size_t v : res->step(i).verts)
                    if (v == b) ++mult;
                CHECK(ext_dim(i, simple(ex1, 0), simple(ex1, b)) == mult);
            }
        }
    }
}

TEST_CASE("resolution structural properties") {
    AlgebraPtr ex3 = corpus_algebra("EX3");
    Module m = interval_module(ex3, "3", "6");
    auto res = resolved(m);
    REQUIRE(res->status() == Resolution::Status::Finite);
    // d o d = 0 and exactness via ranks.
    for (std::size_t i = 0; i + 1 < res->computed_steps() - 1; ++i) {
        Mat d1 = res->differential(i).full();
        Mat d2 = res->differential(i + 1).full();
        CHECK((d1 * d2).is_zero());
        CHECK(rank(d1) + rank(d2) == res->step(i + 1).mod.dim());
    }
    // Minimality: differentials land in the radical.
    for (std::size_t i = 0; i + 1 < res->computed_steps(); ++i) {
        Mat dg = res->differential_gens(i);
        for (std::size_t g : res->step(i).gen_coord)
            for (std::size_t c = 0; c < dg.cols(); ++c) CHECK(dg(g, c) == 0);
    }
    // pd(M + N) = max(pd M, pd N).
    AlgebraPtr ex1 = corpus_algebra("EX1");
    Module s1 = simple(ex1, 0), s2 = simple(ex1, 1);
    CHECK(proj_dim(direct_sum({s1, s2}).sum) ==
          hom_dim_max(proj_dim(s1), proj_dim(s2)));
}

TEST_CASE("injective dimension agrees with the coresolution route") {
    for (const char* id : {"EX1", "EX7(1,1)", "EX5B"}) {
        AlgebraPtr alg = corpus_algebra(id);
        for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
            Module s = simple(alg, v);
            CHECK(inj_dim(s) == inj_dim_by_coresolution(s));
            Module p = projective(alg, v);
            CHECK(inj_dim(p) == inj_dim_by_coresolution(p));
        }
    }
}

TEST_CASE("induced maps on Ext") {
    AlgebraPtr ex1 = corpus_algebra("EX1");
    Module s1 = simple(ex1, 0), s2 = simple(ex1, 1);
    SUBCASE("identity induces the identity") {
        for (std::size_t i = 0; i <= 2; ++i) {
            Mat m = induced_ext_map(Morphism::identity(s1), i, s2);
            CHECK(m.rows() == ext_dim(i, s1, s2));
            CHECK(m.is_identity());
        }
    }
    SUBCASE("functoriality on a nontrivial morphism") {
        // P(1) ->> S_1 induces maps compatible with composition.
        Module p1 = projective(ex1, 0);
        auto hb = hom_basis(p1, s1);
        REQUIRE(hb.size() == 1);
        Mat via = induced_ext_map(hb[0], 0, s2);
        Mat ident = induced_ext_map(Morphism::identity(s1), 0, s2);
        CHECK(via.rows() == ext_dim(0, p1, s2));
        // Ext^0(S_1, S_2) = 0 here, so the matrix is empty but shaped.
        CHECK(via.cols() == ext_dim(0, s1, s2));
        CHECK(ident.cols() == via.cols());
    }
    SUBCASE("composition of induced maps") {
        // Over the (1,1,2) string module the endomorphism algebra is two
        // dimensional, giving nonzero composable test morphisms on a
        // module with Ext^1 != 0.
        IndecSet inds = enumerate_indecomposables(ex1);
        const Module* x1 = nullptr;
        for (const Module& m : inds.modules)
            if (m.dimension_vector() == std::vector<std::size_t>{1, 1, 2})
                x1 = &m;
        REQUIRE(x1 != nullptr);
        auto endos = hom_basis(*x1, *x1);
        REQUIRE(endos.size() == 2);
        bool some_nonzero_ext = false;
        for (std::size_t v = 0; v < 3; ++v) {
            Module w = simple(ex1, v);
            if (ext_dim(1, *x1, w) == 0) continue;
            some_nonzero_ext = true;
            for (const Morphism& f : endos)
                for (const Morphism& gm : endos) {
                    Mat lhs = induced_ext_map(f.then(gm), 1, w);
                    Mat rhs = induced_ext_map(f, 1, w) * induced_ext_map(gm, 1, w);
                    CHECK(lhs == rhs);
                }
        }
        CHECK(some_nonzero_ext);
    }
}

TEST_CASE("extensions from cocycles") {
    AlgebraPtr ex7 = corpus_algebra("EX7(1,1)");
    Module s3 = simple(ex7, 2), s2 = simple(ex7, 1);
    SUBCASE("zero cocycle splits") {
        std::size_t e = ext_dim(1, s3, s2);
        REQUIRE(e == 1);
        ShortExactSequence ses =
            extension_from_cocycle(s3, s2, std::vector<std::uint32_t>(e, 0));
        CHECK(ses.is_exact());
        CHECK(is_isomorphic(ses.e(), direct_sum({s2, s3}).sum));
    }
    SUBCASE("the nonsplit extension of S_3 by S_2 is P(3)") {
        ShortExactSequence ses = extension_from_cocycle(s3, s2, {1});
        CHECK(ses.is_exact());
        CHECK(is_isomorphic(ses.e(), projective(ex7, 2)));
    }
    SUBCASE("split connecting map vanishes") {
        ShortExactSequence split =
            extension_from_cocycle(s3, s2, std::vector<std::uint32_t>(1, 0));
        Mat delta = connecting_ext_map(split, 0, s2);
        CHECK(delta.is_zero());
    }
    SUBCASE("class round trip over the corpus") {
        for (const char* id : {"EX1", "EX7(1,2)", "EX5B"}) {
            AlgebraPtr alg = corpus_algebra(id);
            std::size_t r = alg->vertex_count();
            Rng rng(0xC0FFEE);
            for (std::size_t a = 0; a < r; ++a) {
                for (std::size_t b = 0; b < r; ++b) {
                    Module n = simple(alg, a), m = simple(alg, b);
                    std::size_t e = ext_dim(1, n, m);
                    if (e == 0) continue;
                    std::vector<std::uint32_t> coeffs(e);
                    for (auto& c : coeffs) c = rng.below(alg->field().p());
                    ShortExactSequence ses = extension_from_cocycle(n, m, coeffs);
                    CHECK(ses.is_exact());
                    CHECK(extension_class(ses) == coeffs);
                }
            }
        }
    }
}
