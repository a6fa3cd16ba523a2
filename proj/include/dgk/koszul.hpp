#pragma once

#include <optional>

#include "dgk/ext.hpp"

namespace dgk {

struct Window {
    int max_degree = 8;
    int max_stage = 8;
};

/* outcome of a decision procedure; "yes" for window-bounded properties is a
   claim about the window only, and "no" always carries a witness */
struct Verdict {
    std::string outcome; /* "yes" | "no" | "inconclusive" */
    std::string witness;
    Window window;
    std::optional<int> shift;                    /* as_gorenstein */
    std::map<std::string, std::string> details;

    bool yes() const { return outcome == "yes"; }
    bool no() const { return outcome == "no"; }
};

/* Koszul DG test via the minimal semifree resolution: "no" when a semibasis
   element of nonzero degree appears; cross-checked against the Tor and Ext
   concentration read-offs of the same resolution. */
Verdict is_koszul_dg(std::shared_ptr<DGAlgebra> a, Window w);
Verdict is_koszul_dg(const SemifreeResolution& r);

/* classical graded Koszulity (zero differential) by degreewise syzygies */
struct GradedResolutionStage {
    std::vector<int> gen_degrees; /* internal degrees of the stage generators */
};
struct GradedFreeResolution {
    std::vector<GradedResolutionStage> stages;
    int max_degree = 0;
    bool terminated = false; /* kernel vanished identically within the window */
};
GradedFreeResolution graded_minimal_resolution(const GradedAlgebra& r, int dmax);
Verdict is_koszul_graded(const Presentation& r, int dmax);

/* quadratic data (V, U) of a presentation with all generators in degree 1
   and all relations in degree 2 */
struct QuadraticData {
    std::vector<std::string> names;
    int nvars = 0;
    Subspace relation_space; /* U inside V (x) V, coordinates i*nvars+j */
};
QuadraticData quadratic_data(const Presentation& p); /* NotQuadratic */
Presentation quadratic_dual_presentation(const QuadraticData& q, const Field& f, int trunc);
QuadraticData quadratic_dual_data(const QuadraticData& q, const Field& f);

/* Green-Martinez-Villa conditions over a finite-dimensional local algebra:
   ker delta_n cap J^i P_n = J^{i-1} ker delta_n */
Verdict is_quasi_koszul(const FinAlgebra& e, int smax);
Verdict is_strongly_quasi_koszul(const FinAlgebra& e, int smax);

Verdict generated_in_degree_one(const CohomologyAlgebra& h);

/* RHom_{A^op}(k, A) through the window; yes with the shift when it is one
   dimensional and concentrated; compact case cross-checks the rank-1 top
   stage of the right resolution */
Verdict as_gorenstein(std::shared_ptr<DGAlgebra> a, Window w);

/* nondegenerate associated bilinear form search + socle criterion */
Verdict is_frobenius(const FinAlgebra& e, int random_trials = 64, uint64_t seed = 1);

/* Koszulity of a window-realized cohomology algebra via its quadratic cover:
   not generated in degree one or not quadratic within the window -> no;
   otherwise the graded test runs on the cover */
Verdict cohomology_koszul(const CohomologyAlgebra& h);

/* graded algebra isomorphism search between two window-realized algebras,
   built degree by degree from a seeded family of degree-1 maps */
bool graded_iso_search(const CohomologyAlgebra& a, const CohomologyAlgebra& b, int trials,
                       uint64_t seed);

} // namespace dgk
