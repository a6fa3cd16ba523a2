#include <doctest.h>

#include <random>

#include "dgk/koszul.hpp"
#include "helpers.hpp"

using namespace dgk;
using namespace dgk::testing;

namespace {
const Field Q = Field::Q();

std::shared_ptr<DGAlgebra> dga_of(const Presentation& p) {
    return std::make_shared<DGAlgebra>(p);
}
} // namespace

TEST_CASE("is_koszul_dg") {
    SUBCASE("example A is Koszul DG") {
        Verdict v = is_koszul_dg(dga_of(example_a()), {8, 8});
        CHECK(v.yes());
        CHECK(v.details.at("tor_concentrated_in_degree_0") == "true");
    }
    SUBCASE("k<x>/(x^3) is not, witnessed at stage 2") {
        Verdict v = is_koszul_dg(dga_of(truncated_poly(3)), {8, 6});
        CHECK(v.no());
        CHECK(v.witness.find("stage 2") != std::string::npos);
        CHECK(v.witness.find("degree 1") != std::string::npos);
    }
    SUBCASE("k[x] is Koszul with a terminating resolution") {
        Verdict v = is_koszul_dg(dga_of(poly_one_var()), {8, 8});
        CHECK(v.yes());
        CHECK(v.details.at("resolution_complete_within_window") == "true");
    }
}

TEST_CASE("is_koszul_graded") {
    SUBCASE("k<x>/(x^2) yes") {
        CHECK(is_koszul_graded(truncated_poly(2), 6).yes());
    }
    SUBCASE("k[x,y] yes") {
        CHECK(is_koszul_graded(poly_two_vars(), 6).yes());
    }
    SUBCASE("free quadratic algebra yes") {
        Presentation p = Presentation::from_json_text(R"({
            "field": "Q",
            "generators": [{"name":"x","degree":1},{"name":"y","degree":1}],
            "truncation_degree": 6})");
        Verdict v = is_koszul_graded(p, 6);
        CHECK(v.yes());
        CHECK(v.details.at("resolution_terminated") == "true");
    }
    SUBCASE("k<x>/(x^3) no with a degree-3 syzygy at stage 2") {
        Verdict v = is_koszul_graded(truncated_poly(3), 6);
        CHECK(v.no());
        CHECK(v.witness.find("stage 2") != std::string::npos);
        CHECK(v.witness.find("degree 3") != std::string::npos);
    }
    SUBCASE("graded verdict equals the DG verdict with trivial differential") {
        for (const Presentation& p : {truncated_poly(2), truncated_poly(3), poly_two_vars()}) {
            Verdict g = is_koszul_graded(p, 6);
            Verdict d = is_koszul_dg(dga_of(p), {6, 8});
            /* both definite answers must agree; { yes-within-window } counts as yes */
            CHECK(g.no() == d.no());
        }
    }
}

TEST_CASE("quadratic dual") {
    SUBCASE("free algebra dualizes to the trivial quadratic extension") {
        Presentation free2 = Presentation::from_json_text(R"({
            "field": "Q",
            "generators": [{"name":"x","degree":1},{"name":"y","degree":1}],
            "truncation_degree": 6})");
        Presentation dual = quadratic_dual_presentation(quadratic_data(free2), Q, 6);
        GradedAlgebra d(dual);
        CHECK(d.hilbert(4) == std::vector<int>{1, 2, 0, 0, 0});
    }
    SUBCASE("k[x,y]! is the exterior algebra") {
        Presentation dual = quadratic_dual_presentation(quadratic_data(poly_two_vars()), Q, 6);
        GradedAlgebra d(dual);
        CHECK(d.hilbert(4) == std::vector<int>{1, 2, 1, 0, 0});
        /* relations span {x*x, y*y, x*y + y*x} */
        QuadraticData qd = quadratic_data(dual);
        CHECK(qd.relation_space.dim() == 3);
        SVec xx{{0, Scalar::one(Q)}};
        SVec yy{{3, Scalar::one(Q)}};
        SVec mixed{{1, Scalar::one(Q)}, {2, Scalar::one(Q)}};
        CHECK(qd.relation_space.contains(xx));
        CHECK(qd.relation_space.contains(yy));
        CHECK(qd.relation_space.contains(mixed));
    }
    SUBCASE("k[x]! = k[eps]/(eps^2)") {
        Presentation dual = quadratic_dual_presentation(quadratic_data(poly_one_var()), Q, 6);
        GradedAlgebra d(dual);
        CHECK(d.hilbert(3) == std::vector<int>{1, 1, 0, 0});
    }
    SUBCASE("the dual is involutive on random quadratic data") {
        std::mt19937_64 rng(31337);
        int tested = 0;
        while (tested < 10) {
            int nv = 1 + (int)(rng() % 3);
            int nrel = (int)(rng() % (nv * nv + 1));
            std::vector<SVec> rows;
            for (int r = 0; r < nrel; ++r) {
                SVec v;
                for (int i = 0; i < nv * nv; ++i) {
                    long c = (long)(rng() % 5) - 2;
                    if (c != 0) v.emplace_back(i, Scalar(c, Q));
                }
                if (!v.empty()) rows.push_back(std::move(v));
            }
            QuadraticData q;
            q.nvars = nv;
            for (int i = 0; i < nv; ++i) q.names.push_back("g" + std::to_string(i + 1));
            q.relation_space = Subspace::span(rows, nv * nv, Q);
            QuadraticData qdd = quadratic_dual_data(quadratic_dual_data(q, Q), Q);
            CHECK(qdd.relation_space == q.relation_space);
            ++tested;
        }
    }
}

TEST_CASE("quasi-Koszul and strongly quasi-Koszul") {
    SUBCASE("k[eps]/(eps^2) is strongly quasi-Koszul") {
        FinAlgebra e = FinAlgebra::from_graded(GradedAlgebra(truncated_poly(2)));
        CHECK(is_quasi_koszul(e, 6).yes());
        CHECK(is_strongly_quasi_koszul(e, 6).yes());
    }
    SUBCASE("k[t]/(t^4) fails with witness (n=1, i=2)") {
        FinAlgebra e = FinAlgebra::from_graded(GradedAlgebra(truncated_poly(4)));
        Verdict v = is_strongly_quasi_koszul(e, 6);
        CHECK(v.no());
        CHECK(v.details.at("witness_stage") == "1");
        CHECK(v.details.at("witness_power") == "2");
        CHECK(is_quasi_koszul(e, 6).no());
    }
    SUBCASE("E = k is vacuously strongly quasi-Koszul") {
        std::vector<std::vector<SVec>> table(1, std::vector<SVec>(1));
        table[0][0] = {{0, Scalar::one(Q)}};
        FinAlgebra e(Q, {"1"}, std::move(table));
        Verdict v = is_strongly_quasi_koszul(e, 4);
        CHECK(v.yes());
        CHECK(v.details.at("resolution_terminated") == "true");
    }
}

TEST_CASE("generated in degree one") {
    SUBCASE("H(example A) = k + k[y]") {
        CohomologyAlgebra h = DGAlgebra(example_a()).cohomology(5);
        CHECK(generated_in_degree_one(h).yes());
    }
    SUBCASE("H(k[x]) = k[x]") {
        CohomologyAlgebra h = DGAlgebra(poly_one_var()).cohomology(6);
        CHECK(generated_in_degree_one(h).yes());
    }
    SUBCASE("a fresh degree-2 class is a witness") {
        Presentation p = Presentation::from_json_text(R"({
            "field": "Q",
            "generators": [{"name":"u","degree":2}],
            "truncation_degree": 6})");
        CohomologyAlgebra h = DGAlgebra(p).cohomology(4);
        Verdict v = generated_in_degree_one(h);
        CHECK(v.no());
        CHECK(v.details.at("witness_degree") == "2");
    }
}

TEST_CASE("AS-Gorenstein") {
    SUBCASE("k[x] is AS-Gorenstein with shift 0 and rank-1 top stage") {
        Verdict v = as_gorenstein(dga_of(poly_one_var()), {8, 8});
        CHECK(v.yes());
        REQUIRE(v.shift.has_value());
        CHECK(*v.shift == 0);
        CHECK(v.details.at("top_stage_rank") == "1");
        CHECK(v.details.at("top_stage_matches_shift") == "true");
    }
    SUBCASE("the free algebra on two generators is not") {
        Presentation p = Presentation::from_json_text(R"({
            "field": "Q",
            "generators": [{"name":"u","degree":1},{"name":"v","degree":1}],
            "truncation_degree": 6})");
        Verdict v = as_gorenstein(dga_of(p), {6, 8});
        CHECK(v.no());
    }
    SUBCASE("example A yields a windowed verdict without a crash") {
        Verdict v = as_gorenstein(dga_of(example_a()), {6, 6});
        CHECK(v.outcome == "inconclusive"); /* k is not compact here */
    }
}

TEST_CASE("Frobenius") {
    SUBCASE("k[eps]/(eps^2): yes via the hyperbolic form") {
        FinAlgebra e = FinAlgebra::from_graded(GradedAlgebra(truncated_poly(2)));
        Verdict v = is_frobenius(e);
        CHECK(v.yes());
    }
    SUBCASE("k[t]/(t^4): yes via the Hankel form") {
        FinAlgebra e = FinAlgebra::from_graded(GradedAlgebra(truncated_poly(4)));
        CHECK(is_frobenius(e).yes());
    }
    SUBCASE("k[u,v]/(u,v)^2: no, socle dimension 2") {
        std::vector<std::vector<SVec>> table(3, std::vector<SVec>(3));
        for (int i = 0; i < 3; ++i) {
            table[0][i] = {{i, Scalar::one(Q)}};
            table[i][0] = {{i, Scalar::one(Q)}};
        }
        FinAlgebra e(Q, {"1", "u", "v"}, std::move(table));
        Verdict v = is_frobenius(e);
        CHECK(v.no());
        CHECK(v.witness.find("socle") != std::string::npos);
        CHECK(v.witness.find("2") != std::string::npos);
    }
    SUBCASE("GF(p) exhaustive fallback still finds the functional") {
        Presentation p2 = truncated_poly(4);
        Presentation pf = Presentation::from_json_text(p2.to_json_text(), Field::GF(2));
        FinAlgebra e2 = FinAlgebra::from_graded(GradedAlgebra(pf));
        CHECK(is_frobenius(e2).yes());
    }
}

TEST_CASE("cohomology Koszulity via the quadratic cover") {
    SUBCASE("H(example A) is Koszul") {
        CohomologyAlgebra h = DGAlgebra(example_a()).cohomology(5);
        CHECK(cohomology_koszul(h).yes());
    }
    SUBCASE("H of the cobar-style algebra with d(y) = x^2 is not generated in degree 1") {
        Presentation p = Presentation::from_json_text(R"({
            "field": "Q",
            "generators": [{"name":"x","degree":1},{"name":"y","degree":1}],
            "differential": {"y": "x^2"},
            "truncation_degree": 7})");
        CohomologyAlgebra h = DGAlgebra(p).cohomology(5);
        Verdict v = cohomology_koszul(h);
        CHECK(v.no());
    }
    SUBCASE("H(k[x]) is Koszul") {
        CohomologyAlgebra h = DGAlgebra(poly_one_var()).cohomology(6);
        CHECK(cohomology_koszul(h).yes());
    }
}

TEST_CASE("graded isomorphism search") {
    CohomologyAlgebra h1 = DGAlgebra(poly_one_var()).cohomology(5);
    CohomologyAlgebra h2 = DGAlgebra(poly_one_var()).cohomology(5);
    CHECK(graded_iso_search(h1, h2, 4, 11));
    /* different Hilbert functions are rejected immediately */
    CohomologyAlgebra h3 = DGAlgebra(example_a()).cohomology(5);
    CHECK(!graded_iso_search(h1, h3, 4, 11));
}

TEST_CASE("Prop 2 style three-way equivalence on every test algebra") {
    for (const Presentation& p :
         {example_a(6), poly_one_var(6), truncated_poly(2, 6), truncated_poly(3, 6)}) {
        SemifreeResolution r =
            minimal_resolution(dga_of(p), ResolutionWindow{6, 8});
        Verdict v = is_koszul_dg(r);
        TorTable t = tor_dims(r);
        bool semibasis_route = true;
        for (int i = 0; i < r.p->size(); ++i)
            if (r.p->elt(i).cdeg != 0) semibasis_route = false;
        CHECK(t.concentrated_in_degree_zero() == semibasis_route);
        if (v.no()) CHECK(!semibasis_route);
        if (v.yes()) CHECK(semibasis_route);
    }
}
