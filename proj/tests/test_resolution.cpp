#include <doctest.h>

#include <random>

#include "dgk/semifree.hpp"
#include "helpers.hpp"

using namespace dgk;
using namespace dgk::testing;

namespace {

SemifreeResolution resolve(const Presentation& p, int dmax = 8, int smax = 8, uint64_t seed = 0) {
    auto A = std::make_shared<DGAlgebra>(p);
    return minimal_resolution(A, ResolutionWindow{dmax, smax}, seed);
}

/* H^n of the augmented complex must vanish for 0 < n <= through, and the
   augmentation must be an iso on H^0 */
void check_exactness(const SemifreeResolution& r, int through) {
    const SemifreeModule& p = *r.p;
    for (int n = 0; n <= through; ++n) {
        Subspace ker = kernel_basis(p.d_matrix(n));
        SemifreeModule::Slice sp = p.slice(n - 1);
        Subspace im = sp.dim == 0 ? Subspace::zero(p.slice(n).dim, p.dga().field())
                                  : column_space(p.d_matrix(n - 1));
        if (n == 0) {
            CHECK(ker.dim() - im.dim() == 1);
        } else {
            CHECK(ker.dim() == im.dim());
            CHECK(ker == im);
        }
    }
}

} // namespace

TEST_CASE("minimal resolution of k over k[x]") {
    SemifreeResolution r = resolve(poly_one_var());
    REQUIRE(r.p->size() == 2);
    CHECK(r.complete_within_window());
    CHECK(r.p->elt(0).cdeg == 0);
    CHECK(r.p->elt(1).cdeg == 0);
    CHECK(r.p->elt(1).stage == 1);
    CHECK(r.p->to_string(r.p->differential_of(1)) == "(x)*e0");
    check_exactness(r, 7);
}

TEST_CASE("example A resolves with all semibasis degrees zero") {
    SemifreeResolution r = resolve(example_a(), 8, 8);
    for (int i = 0; i < r.p->size(); ++i) CHECK(r.p->elt(i).cdeg == 0);
    REQUIRE(r.stages.size() == 9); /* one rank-1 stage per degree-1 failure */
    for (const auto& s : r.stages) CHECK(s.size() == 1);
    /* the trivial module is not compact here: the stage window must exhaust
       with the next failure still sitting in degree 1 */
    CHECK(r.window_exhausted);
    CHECK(r.acyclic_through == 0);
    for (int i = 1; i < r.p->size(); ++i)
        CHECK(r.p->to_string(r.p->differential_of(i)) == "(y)*e" + std::to_string(i - 1));
}

TEST_CASE("k<x>/(x^3) has a semibasis element of degree 1 at stage 2") {
    SemifreeResolution r = resolve(truncated_poly(3), 8, 6);
    REQUIRE(r.stages.size() >= 3);
    REQUIRE(r.stages[2].size() == 1);
    const SemibasisElt& e2 = r.p->elt(r.stages[2][0]);
    CHECK(e2.cdeg == 1);
    /* stage 1 kills x, stage 2 kills the x^2-witnessed class one degree up */
    CHECK(r.p->elt(r.stages[1][0]).cdeg == 0);
}

TEST_CASE("minimality, stage order and rank uniqueness") {
    for (const Presentation& pr : {example_a(6), poly_one_var(6), truncated_poly(3, 6)}) {
        SemifreeResolution r = resolve(pr, 6, 8, 0);
        const SemifreeModule& p = *r.p;
        for (int i = 0; i < p.size(); ++i) {
            /* d(e) has no scalar coefficients and points to earlier stages */
            CHECK(p.scalar_part(p.differential_of(i)).is_zero());
            for (const auto& [j, c] : p.differential_of(i).comps) {
                (void)c;
                CHECK(p.elt(j).stage < p.elt(i).stage);
            }
        }
        SemifreeResolution r2 = resolve(pr, 6, 8, 42);
        SemifreeResolution r3 = resolve(pr, 6, 8, 1729);
        CHECK(r.rank_table() == r2.rank_table());
        CHECK(r.rank_table() == r3.rank_table());
        CHECK(r2.acyclic_through == r.acyclic_through);
        check_exactness(r2, r2.acyclic_through);
    }
}

TEST_CASE("window exhaustion is flagged, not hidden") {
    SemifreeResolution r = resolve(example_a(), 8, 2);
    CHECK(r.window_exhausted);
    CHECK(r.acyclic_through < 7);
}

TEST_CASE("standard filtration") {
    SUBCASE("stage-built resolutions have index = stage") {
        for (const Presentation& pr : {example_a(6), poly_one_var(6), truncated_poly(3, 6)}) {
            SemifreeResolution r = resolve(pr, 6, 6);
            std::vector<int> idx = standard_filtration(*r.p);
            for (int i = 0; i < r.p->size(); ++i) CHECK(idx[i] == r.p->elt(i).stage);
        }
    }
    SUBCASE("the two-semibasis example from the filtration discussion") {
        auto A = std::make_shared<DGAlgebra>(example_a());
        /* P = A e0 + A e1 with d(e1) = d(x) e0 = (x*y) e0 */
        SemifreeModule m(A);
        m.add_element(0, 0, m.zero(1));
        Element dx = A->differentiate(A->algebra().reduce_poly(parse_expr("x", A->pres(), "t")));
        PElement de1 = m.act(dx, m.generator(0));
        m.add_element(1, 1, de1);
        CHECK(standard_filtration(m) == std::vector<int>{0, 1});

        /* same module on the semibasis {e0, e1 - x e0}: both differentials 0 */
        SemifreeModule m2(A);
        m2.add_element(0, 0, m2.zero(1));
        m2.add_element(0, 1, m2.zero(2));
        CHECK(standard_filtration(m2) == std::vector<int>{0, 0});
    }
    SUBCASE("zero differential module is all index 0") {
        auto A = std::make_shared<DGAlgebra>(example_a());
        SemifreeModule m(A);
        m.add_element(0, 0, m.zero(1));
        CHECK(standard_filtration(m) == std::vector<int>{0});
    }
}

TEST_CASE("lift_functional") {
    SemifreeResolution r = resolve(poly_one_var());
    const Field q = Field::Q();
    SUBCASE("x = epsilon lifts to the identity") {
        ModuleMorphism f = lift_functional(r, 0, {{0, Scalar::one(q)}}, r);
        CHECK(is_dg_morphism(f));
        for (int e = 0; e < r.p->size(); ++e)
            CHECK(r.p->epsilon(f.images[e]) ==
                  (e == 0 ? Scalar::one(q) : Scalar::zero(q)));
        CHECK(r.p->to_string(f.images[0]) == "(1)*e0");
        CHECK(r.p->to_string(f.images[1]) == "(1)*e1");
    }
    SUBCASE("x = e1^* lifts to ebar1 -> e0") {
        ModuleMorphism f = lift_functional(r, 1, {{1, Scalar::one(q)}}, r);
        CHECK(is_dg_morphism(f));
        CHECK(f.images[0].is_zero());
        CHECK(r.p->to_string(f.images[1]) == "(1)*e0");
    }
    SUBCASE("x = 0 lifts to 0") {
        ModuleMorphism f = lift_functional(r, 1, {}, r);
        for (const auto& img : f.images) CHECK(img.is_zero());
    }
}

TEST_CASE("filtration preservation for lifted morphisms") {
    std::mt19937_64 rng(2024);
    for (const Presentation& pr : {example_a(6), poly_one_var(6)}) {
        SemifreeResolution m = resolve(pr, 6, 6, 0);
        SemifreeResolution n = resolve(pr, 6, 6, 9001); /* different representatives */
        int lifts = 0;
        int attempts = 0;
        while (lifts < 20 && attempts < 200) {
            ++attempts;
            int smax = (int)m.stages.size() - 1;
            int stage = (int)(rng() % (smax + 1));
            std::map<int, Scalar> x;
            bool nonzero = false;
            for (int e : m.stages[stage]) {
                if (m.p->elt(e).cdeg != 0) continue;
                long c = (long)(rng() % 7) - 3;
                if (c != 0) {
                    x.emplace(e, Scalar(c, Field::Q()));
                    nonzero = true;
                }
            }
            if (!nonzero) continue;
            ModuleMorphism f = lift_functional(m, stage, x, n);
            CHECK(is_dg_morphism(f));
            CHECK(check_filtration_preservation(f));
            ++lifts;
        }
        CHECK(lifts >= 20);
    }
}

TEST_CASE("a corrupted map fails the filtration check") {
    SemifreeResolution r = resolve(poly_one_var());
    ModuleMorphism f;
    f.src = r.p.get();
    f.dst = r.p.get();
    f.degree = 0;
    f.images.assign(r.p->size(), r.p->zero(0));
    /* send the stage-0 generator into stage-1 span: not a DG morphism and
       not filtration preserving */
    f.images[0] = r.p->generator(1);
    f.images[1] = r.p->zero(0);
    CHECK(!is_dg_morphism(f));
    CHECK(!check_filtration_preservation(f));
}
