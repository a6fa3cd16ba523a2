#include <doctest.h>

#include "dgk/ext.hpp"
#include "helpers.hpp"

using namespace dgk;
using namespace dgk::testing;

namespace {
const Field Q = Field::Q();

SemifreeResolution resolve(const Presentation& p, int dmax = 8, int smax = 8) {
    return minimal_resolution(std::make_shared<DGAlgebra>(p), ResolutionWindow{dmax, smax});
}
} // namespace

TEST_CASE("Ext of k[x] is the dual numbers") {
    SemifreeResolution r = resolve(poly_one_var());
    ExtAlgebra e(r);
    REQUIRE(e.size() == 2);
    CHECK(e.complete());
    CHECK(e.product_known(1, 1));
    CHECK(e.product(1, 1).empty()); /* (e1^*)^2 = 0: there is no stage 2 */
    CHECK(e.product(0, 1) == SVec{{1, Scalar::one(Q)}});
    CHECK(e.is_associative_where_known());
    CHECK(e.filtration_respected());
    CHECK(e.augmentation_is_algebra_map());

    FinAlgebra fin = e.to_fin_algebra();
    CHECK(fin.dim() == 2);
    CHECK(fin.radical_layer_dims() == std::vector<int>{1, 1});
    FilteredGraded gr = e.gr_of_filtration();
    CHECK(gr.layer_dims == std::vector<int>{1, 1});
    FilteredGraded rad = radical_filtration(fin);
    CHECK(rad.layer_dims == gr.layer_dims);
}

TEST_CASE("Ext of example A is the window-truncated power-series tower") {
    SemifreeResolution r = resolve(example_a());
    ExtAlgebra e(r);
    CHECK(!e.complete());
    CHECK(e.filtration_layer_dims() == std::vector<int>(9, 1));
    CHECK(e.filtration_respected());
    CHECK(e.is_associative_where_known());
    CHECK(e.augmentation_is_algebra_map());
    /* the tower multiplies by stage shift */
    CHECK(e.product(1, 1) == SVec{{2, Scalar::one(Q)}});
    CHECK(e.product(2, 3) == SVec{{5, Scalar::one(Q)}});
    CHECK(!e.product_known(4, 5)); /* stage 9 is beyond the window */
    FilteredGraded gr = e.gr_of_filtration();
    CHECK(gr.layer_dims == std::vector<int>(9, 1));
    /* gr products are the exact-stage parts */
    CHECK(gr.products.at({1, 1})[0][0] == SVec{{0, Scalar::one(Q)}});
}

TEST_CASE("tor dims by (stage, degree)") {
    SUBCASE("Koszul examples concentrate in degree 0") {
        for (const Presentation& p : {example_a(), poly_one_var()}) {
            TorTable t = tor_dims(resolve(p));
            CHECK(t.concentrated_in_degree_zero());
        }
    }
    SUBCASE("k<x>/(x^3) has Tor away from degree 0") {
        TorTable t = tor_dims(resolve(truncated_poly(3), 8, 6));
        CHECK(!t.concentrated_in_degree_zero());
        CHECK(t.dims.at({2, 1}) == 1);
    }
    SUBCASE("the trivial algebra has Tor = k") {
        Presentation p = Presentation::from_json_text(
            R"({"field": "Q", "generators": [], "truncation_degree": 4})");
        TorTable t = tor_dims(resolve(p, 4, 4));
        CHECK(t.dims.size() == 1);
        CHECK(t.dims.at({0, 0}) == 1);
        CHECK(!t.window_exhausted);
    }
}

TEST_CASE("local algebra isomorphism search") {
    FinAlgebra t4 = FinAlgebra::from_graded(GradedAlgebra(truncated_poly(4)));
    SUBCASE("identity case") {
        auto iso = find_local_algebra_iso(t4, t4, 8, 1);
        REQUIRE(iso.has_value());
    }
    SUBCASE("same algebra on a rescaled basis") {
        /* basis 1, 2t, t^2, 5t^3 */
        auto sc = [&](long n, long d) { return Scalar::from_fraction(n, d, Q); };
        std::vector<std::vector<SVec>> table(4, std::vector<SVec>(4));
        for (int i = 0; i < 4; ++i) {
            table[0][i] = {{i, Scalar::one(Q)}};
            table[i][0] = {{i, Scalar::one(Q)}};
        }
        table[1][1] = {{2, sc(4, 1)}};
        table[1][2] = {{3, sc(2, 5)}};
        table[2][1] = {{3, sc(2, 5)}};
        table[1][3] = {};
        table[3][1] = {};
        table[2][2] = {};
        table[2][3] = {};
        table[3][2] = {};
        table[3][3] = {};
        FinAlgebra twisted(Q, {"1", "s", "s2", "s3"}, std::move(table));
        auto iso = find_local_algebra_iso(t4, twisted, 8, 7);
        REQUIRE(iso.has_value());
        /* spot-check multiplicativity of the returned map on t * t^2 = t^3 */
        const auto& phi = *iso;
        CHECK(twisted.multiply(phi[1], phi[2]) == phi[3]);
    }
    SUBCASE("layer mismatch is rejected") {
        FinAlgebra tt = FinAlgebra::truncated_tensor(Q, 2, 3); /* layers 1,2,4 */
        CHECK(!find_local_algebra_iso(t4, tt, 4, 1).has_value());
        FinAlgebra eps = FinAlgebra::from_graded(GradedAlgebra(truncated_poly(2)));
        CHECK(!find_local_algebra_iso(t4, eps, 4, 1).has_value());
    }
    SUBCASE("noncommutative vs commutative with equal layers") {
        FinAlgebra nc = FinAlgebra::truncated_tensor(Q, 2, 3);
        /* commutative k[x,y]/(x,y)^3: dim 6, layers 1,2,3 vs 1,2,4: sizes differ,
           so compare instead with k<x,y>/(xy, yx) + span adjustments; simply
           assert the search is honest on the commutative truncation */
        Presentation p = Presentation::from_json_text(R"({
            "field": "Q",
            "generators": [{"name":"x","degree":1},{"name":"y","degree":1}],
            "relations": ["x*y - y*x", "x^3", "x^2*y", "x*y^2", "y^3"],
            "truncation_degree": 8})");
        FinAlgebra comm = FinAlgebra::from_graded(GradedAlgebra(p));
        CHECK(comm.radical_layer_dims() == std::vector<int>{1, 2, 3});
        CHECK(!find_local_algebra_iso(nc, comm, 6, 3).has_value());
    }
}
