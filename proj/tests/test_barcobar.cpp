#include <doctest.h>

#include "dgk/barcobar.hpp"
#include "helpers.hpp"

using namespace dgk;
using namespace dgk::testing;

namespace {
const Field Q = Field::Q();

std::shared_ptr<DGAlgebra> dga_of(const Presentation& p) {
    return std::make_shared<DGAlgebra>(p);
}

FinCoalgebra dual_of_truncated(int n, const std::string& field = "Q") {
    Presentation p = truncated_poly(n);
    if (field != "Q")
        p = Presentation::from_json_text(p.to_json_text(), Field::parse(field));
    return FinCoalgebra::dual_of(FinAlgebra::from_graded(GradedAlgebra(p)));
}
} // namespace

TEST_CASE("bar differential signs are the stated ones") {
    SUBCASE("delta_1([x|x]) = +[x^2] over k[x]") {
        auto a = dga_of(poly_one_var(12));
        BarCoalgebra bar(a, 4, 4);
        BarCoalgebra::WordT xx{{1, 0}, {1, 0}};
        auto im = bar.delta(xx);
        REQUIRE(im.terms.size() == 1);
        CHECK(im.terms.begin()->first == BarCoalgebra::WordT{{2, 0}});
        CHECK(im.terms.begin()->second == Scalar::one(Q));
    }
    SUBCASE("delta_1 on single letters vanishes and delta_0 picks up -[d a]") {
        auto a = dga_of(example_a(12));
        BarCoalgebra bar(a, 4, 3);
        /* letters of degree 1: x = (1,0), y = (1,1); d(x) = xy = word index 1
           in degree 2 (basis x^2, x*y) */
        auto dx = bar.delta({{1, 0}});
        REQUIRE(dx.terms.size() == 1);
        CHECK(dx.terms.begin()->first == BarCoalgebra::WordT{{2, 1}});
        CHECK(dx.terms.begin()->second == Scalar(-1, Q));
        CHECK(bar.delta({{1, 1}}).terms.empty());
    }
    SUBCASE("zero differential kills delta_0") {
        auto a = dga_of(truncated_poly(2, 12));
        BarCoalgebra bar(a, 2, 3);
        auto im = bar.delta({{1, 0}});
        CHECK(im.terms.empty());
    }
}

TEST_CASE("bar delta squared vanishes exhaustively") {
    for (const Presentation& p : {example_a(12), poly_one_var(12)}) {
        auto a = dga_of(p);
        BarCoalgebra bar(a, 4, 4);
        int checked = 0;
        CHECK(bar.delta_squared_vanishes(&checked));
        CHECK(checked == bar.size());
        CHECK(bar.coproduct_is_coassociative());
    }
}

TEST_CASE("bar coproduct matches the three-part formula") {
    auto a = dga_of(example_a(12));
    BarCoalgebra bar(a, 3, 3);
    for (int i = 0; i < bar.size(); ++i) {
        auto full = bar.coproduct(i);
        auto proper = bar.proper_splits(i);
        /* 1 (x) w + w (x) 1 + proper splits; both trivial cuts coincide on
           the empty word */
        CHECK(full.size() == proper.size() + (bar.word(i).empty() ? 1 : 2));
        CHECK(full.front() == std::make_pair(0, i));
        CHECK(full.back() == std::make_pair(i, 0));
    }
}

TEST_CASE("cobar of small dual coalgebras") {
    SUBCASE("(k[eps]/eps^2)^# gives one degree-1 generator with d = 0") {
        FinCoalgebra c = dual_of_truncated(2);
        Presentation p = cobar(c, 8);
        REQUIRE(p.n_generators() == 1);
        CHECK(p.generators[0].degree == 1);
        CHECK(!p.has_differential());
        CHECK(DGAlgebra(p).validate().ok());
        CHECK(GradedAlgebra(p).hilbert(4) == std::vector<int>{1, 1, 1, 1, 1});
    }
    SUBCASE("(k[t]/t^4)^# gives the three-generator quadratic differential") {
        FinCoalgebra c = dual_of_truncated(4);
        Presentation p = cobar(c, 6);
        REQUIRE(p.n_generators() == 3);
        DGAlgebra b(p);
        CHECK(b.validate().ok());
        /* d(s_t) = 0, d(s_t2) = -s_t*s_t, d(s_t3) = -(s_t*s_t2 + s_t2*s_t) */
        CHECK(p.differential[0].is_zero());
        CHECK(p.poly_to_string(p.differential[1]) == "-" + p.generators[0].name + "^2");
        NCPoly expected;
        expected.add_term({0, 1}, Scalar(-1, Q));
        expected.add_term({1, 0}, Scalar(-1, Q));
        CHECK(p.differential[2].terms == expected.terms);
    }
    SUBCASE("cobar of k is k") {
        std::vector<std::vector<SVec>> table(1, std::vector<SVec>(1));
        table[0][0] = {{0, Scalar::one(Q)}};
        FinAlgebra k(Q, {"1"}, std::move(table));
        Presentation p = cobar(FinCoalgebra::dual_of(k), 4);
        CHECK(p.n_generators() == 0);
        CHECK(GradedAlgebra(p).hilbert(3) == std::vector<int>{1, 0, 0, 0});
    }
}

TEST_CASE("dual coalgebra structure") {
    SUBCASE("Delta(eps^*) = 1^* (x) eps^* + eps^* (x) 1^*") {
        FinCoalgebra c = dual_of_truncated(2);
        auto t = c.coproduct(1);
        std::map<std::pair<int, int>, Scalar> m(t.begin(), t.end());
        REQUIRE(m.size() == 2);
        CHECK(m.at({0, 1}) == Scalar::one(Q));
        CHECK(m.at({1, 0}) == Scalar::one(Q));
    }
    SUBCASE("re-dualizing recovers the structure constants") {
        FinAlgebra e = FinAlgebra::from_graded(GradedAlgebra(truncated_poly(4)));
        FinAlgebra e2 = FinCoalgebra::dual_of(e).dual_algebra();
        REQUIRE(e2.dim() == e.dim());
        for (int i = 0; i < e.dim(); ++i)
            for (int j = 0; j < e.dim(); ++j) CHECK(e2.mult(i, j) == e.mult(i, j));
    }
    SUBCASE("a non-cocomplete coalgebra is rejected") {
        std::vector<FinCoalgebra::Tensor> coprod(2);
        coprod[0].push_back({{0, 0}, Scalar::one(Q)});
        coprod[1].push_back({{0, 1}, Scalar::one(Q)});
        coprod[1].push_back({{1, 0}, Scalar::one(Q)});
        coprod[1].push_back({{1, 1}, Scalar::one(Q)});
        CHECK_THROWS_WITH_AS(FinCoalgebra(Q, {"1", "x"}, {0, 0}, std::move(coprod)),
                             doctest::Contains("NotCocomplete"), Error);
    }
}

TEST_CASE("canonical twisting cochain satisfies its identity") {
    for (int n : {2, 3, 4}) {
        FinCoalgebra c = dual_of_truncated(n);
        auto b = std::make_shared<DGAlgebra>(cobar(c, 6));
        TwistingCochain tau = canonical_twisting_cochain(c, b);
        CHECK(twisting_identity_holds(tau));
    }
}

TEST_CASE("twisted tensor products") {
    SUBCASE("C (x)_tau Omega(C) is a resolution of k within the window") {
        for (int n : {2, 4}) {
            FinCoalgebra c = dual_of_truncated(n);
            auto b = std::make_shared<DGAlgebra>(cobar(c, 6));
            TwistingCochain tau = canonical_twisting_cochain(c, b);
            CochainComplex cx = comodule_twisted_complex(tau, 4);
            CHECK(cx.differentials_compose_to_zero());
            for (int t = 0; t <= 3; ++t) CHECK(cx.cohomology(t).dim() == (t == 0 ? 1 : 0));
        }
    }
    SUBCASE("Omega(C) (x)_tau C has delta^2 = 0") {
        FinCoalgebra c = dual_of_truncated(4);
        auto b = std::make_shared<DGAlgebra>(cobar(c, 6));
        TwistingCochain tau = canonical_twisting_cochain(c, b);
        CochainComplex cx = module_twisted_complex(tau, 4);
        CHECK(cx.differentials_compose_to_zero());
        CHECK(cx.cohomology(0).dim() == 1);
    }
    SUBCASE("tau = 0 against a zero-differential algebra gives the plain tensor") {
        FinCoalgebra c = dual_of_truncated(2);
        auto b = std::make_shared<DGAlgebra>(truncated_poly(2, 8));
        TwistingCochain tau{&c, b, {b->algebra().zero(1), b->algebra().zero(1)}};
        CochainComplex cx = comodule_twisted_complex(tau, 3);
        CHECK(cx.differentials_compose_to_zero());
        /* no differential at all: H dims = slice dims */
        for (int t = 0; t <= 2; ++t) CHECK(cx.cohomology(t).dim() == cx.dim(t));
    }
}

TEST_CASE("module bar homotopy certificate") {
    for (const Presentation& p : {example_a(8), poly_one_var(8)}) {
        auto a = dga_of(p);
        AugmentationReport rep = bar_augmentation_check(a, 2, 3);
        CHECK(rep.ok());
        CHECK(rep.words_checked > 0);
    }
}

TEST_CASE("phi is a multiplicative cochain map") {
    SUBCASE("counit functional acts as the identity") {
        auto a = dga_of(poly_one_var(12));
        ModuleBarWord w{{0, 0}, {{1, 0}, {1, 0}}};
        ModuleBarElt img = phi_of_dual_word(*a, {}, w);
        REQUIRE(img.size() == 1);
        CHECK(img.begin()->first.m == w.m);
        CHECK(img.begin()->first.letters == w.letters);
        CHECK(img.begin()->second == Scalar::one(Q));
    }
    SUBCASE("f = [x]^* applied to 1[x] gives the unit word") {
        auto a = dga_of(poly_one_var(12));
        ModuleBarWord w{{0, 0}, {{1, 0}}};
        ModuleBarElt img = phi_of_dual_word(*a, {{1, 0}}, w);
        REQUIRE(img.size() == 1);
        CHECK(img.begin()->first.m == std::make_pair(0, 0));
        CHECK(img.begin()->first.letters.empty());
        CHECK(img.begin()->second == Scalar::one(Q));
    }
    SUBCASE("zero functional gives the zero endomorphism") {
        auto a = dga_of(poly_one_var(12));
        ModuleBarWord w{{0, 0}, {{1, 0}}};
        /* a dual word that never matches any suffix of w */
        ModuleBarElt img = phi_of_dual_word(*a, {{2, 0}, {2, 0}}, w);
        CHECK(img.empty());
    }
    SUBCASE("cochain and multiplicativity hold exhaustively in bounds") {
        for (const Presentation& p : {example_a(8), poly_one_var(8)}) {
            auto a = dga_of(p);
            PhiReport rep = phi_check(a, 2, 2, 3);
            CHECK(rep.ok());
            CHECK(rep.cochain_checked > 0);
            CHECK(rep.multiplicative_checked > 0);
        }
    }
}

TEST_CASE("adjunction check") {
    SUBCASE("C = k") {
        std::vector<std::vector<SVec>> table(1, std::vector<SVec>(1));
        table[0][0] = {{0, Scalar::one(Q)}};
        FinAlgebra k(Q, {"1"}, std::move(table));
        AdjunctionReport rep = adjunction_check(FinCoalgebra::dual_of(k), 3, 6);
        CHECK(rep.delta_squared_ok);
        CHECK(rep.chain_map_ok);
        CHECK(rep.iso_per_degree);
        CHECK(rep.h_b == std::vector<int>{1, 0, 0});
    }
    SUBCASE("C = (k[eps]/eps^2)^#: both sides are k[t]") {
        AdjunctionReport rep = adjunction_check(dual_of_truncated(2), 4, 7);
        CHECK(rep.delta_squared_ok);
        CHECK(rep.chain_map_ok);
        CHECK(rep.iso_per_degree);
        CHECK(rep.h_b == std::vector<int>{1, 1, 1, 1});
        CHECK(rep.h_triple == rep.h_b);
    }
    SUBCASE("C = (k[t]/t^4)^#: iso within the window") {
        AdjunctionReport rep = adjunction_check(dual_of_truncated(4), 4, 7);
        CHECK(rep.delta_squared_ok);
        CHECK(rep.chain_map_ok);
        CHECK(rep.iso_per_degree);
        CHECK(rep.h_b == std::vector<int>{1, 1, 1, 1});
    }
}

TEST_CASE("Koszul duality roundtrip on k[x]") {
    auto a = dga_of(poly_one_var(8));
    RoundtripReport rep = koszul_duality_roundtrip(a, {8, 8}, 5);
    CHECK(rep.compact);
    CHECK(rep.h_a_dims == std::vector<int>(8, 1));
    CHECK(rep.h_cobar_dims == std::vector<int>(8, 1));
    CHECK(rep.ext_over_e == std::vector<int>(9, 1));
    CHECK(rep.dims_match);
    CHECK(rep.iso_found);
}

TEST_CASE("Koszul duality roundtrip on the trivial algebra") {
    Presentation p = Presentation::from_json_text(
        R"({"field": "Q", "generators": [], "truncation_degree": 6})");
    RoundtripReport rep = koszul_duality_roundtrip(dga_of(p), {6, 6}, 5);
    CHECK(rep.compact);
    CHECK(rep.h_a_dims == std::vector<int>{1, 0, 0, 0, 0, 0});
    CHECK(rep.dims_match);
    CHECK(rep.iso_found);
}

TEST_CASE("local dual pipeline on k[eps]/(eps^2)") {
    FinAlgebra r = FinAlgebra::from_graded(GradedAlgebra(truncated_poly(2)));
    LocalPipelineReport rep = local_dual_pipeline(r, {6, 8}, 3);
    CHECK(rep.cobar_koszul.yes());
    CHECK(rep.ext_complete);
    CHECK(rep.ext_dim == 2);
    CHECK(rep.ext_iso_to_r);
    CHECK(rep.strongly_quasi_koszul_r.yes());
    CHECK(rep.quasi_koszul_r.yes());
    CHECK(rep.h_koszul.yes());
    CHECK(rep.h_generated_in_one.yes());
    CHECK(rep.corollary_consistent);
}
