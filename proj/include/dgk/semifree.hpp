#pragma once

#include "dgk/dga.hpp"

namespace dgk {

struct SemibasisElt {
    int stage = 0;
    int cdeg = 0; /* cohomological degree */
};

/* element of a semifree module P = (+) A*e: coefficient per semibasis elt */
struct PElement {
    int degree = 0;
    std::map<int, Element> comps; /* elt id -> coefficient of degree (degree - cdeg) */
    bool is_zero() const { return comps.empty(); }
};

/* Semifree DG module over a connected DG algebra, presented by a semibasis
   whose differentials point to strictly earlier stages. */
class SemifreeModule {
  public:
    explicit SemifreeModule(std::shared_ptr<DGAlgebra> a) : A_(std::move(a)) {}

    const DGAlgebra& dga() const { return *A_; }
    std::shared_ptr<DGAlgebra> dga_ptr() const { return A_; }
    int size() const { return (int)elts_.size(); }
    const SemibasisElt& elt(int i) const { return elts_[i]; }
    const PElement& differential_of(int i) const { return dimages_[i]; }

    /* returns the new element id; d must live on strictly earlier stages */
    int add_element(int stage, int cdeg, PElement d);

    struct Slice {
        int degree = 0;
        std::vector<std::pair<int, int>> items; /* (elt id, A-basis index) */
        std::vector<int> offset;                /* per elt id; -1 if absent */
        int dim = 0;
    };
    Slice slice(int n) const;

    PElement zero(int degree) const { return PElement{degree, {}}; }
    PElement generator(int i) const; /* 1 * e_i */
    SVec to_coords(const PElement& z, const Slice& s) const;
    PElement from_coords(int degree, const SVec& v) const;
    PElement add(const PElement& a, const PElement& b) const;
    PElement scaled(const PElement& a, const Scalar& c) const;
    PElement act(const Element& a, const PElement& z) const; /* left action */
    PElement differentiate(const PElement& z) const;
    SparseMatrix d_matrix(int n) const; /* P^n -> P^{n+1} */

    /* augmentation P -> k sending e_0 to 1, all other elts to 0 */
    Scalar epsilon(const PElement& z) const;

    /* component with stage < stage_min dropped (the quotient P/P(stage_min-1)) */
    PElement drop_below_stage(const PElement& z, int stage_min) const;
    /* the part with scalar (degree-0) coefficients; zero iff z is in I*P */
    PElement scalar_part(const PElement& z) const;

    std::string to_string(const PElement& z) const;

  private:
    std::shared_ptr<DGAlgebra> A_;
    std::vector<SemibasisElt> elts_;
    std::vector<PElement> dimages_;
};

struct ResolutionWindow {
    int max_degree = 8;
    int max_stage = 8;
};

struct SemifreeResolution {
    std::shared_ptr<SemifreeModule> p;
    std::vector<std::vector<int>> stages; /* stage -> elt ids */
    ResolutionWindow window;
    bool window_exhausted = false;
    int acyclic_through = 0; /* augmented acyclicity verified through here */

    bool complete_within_window() const { return !window_exhausted; }
    /* semibasis counts by (stage, cdeg) */
    std::map<std::pair<int, int>, int> rank_table() const;
};

/* Minimal semifree resolution of the trivial module, built by stagewise
   killing of the lowest-degree cohomology failure. `seed` != 0 perturbs each
   chosen representative by a coboundary inside I*P (the resulting ranks must
   not depend on it). Throws RepresentativeNotInIP when a representative
   cannot be adjusted into I*P. */
SemifreeResolution minimal_resolution(std::shared_ptr<DGAlgebra> a, ResolutionWindow w,
                                      uint64_t seed = 0);

/* graded A-module morphism f of (graded) degree deg between semifree modules,
   determined on the source semibasis; f(a m) = (-1)^{|a||f|} a f(m) */
struct ModuleMorphism {
    const SemifreeModule* src = nullptr;
    const SemifreeModule* dst = nullptr;
    int degree = 0;
    std::vector<PElement> images; /* per src elt id */
};

PElement apply_morphism(const ModuleMorphism& f, const PElement& z);
/* d_N f = (-1)^{|f|} f d_M on every semibasis element */
bool is_dg_morphism(const ModuleMorphism& f);

/* standard semifree filtration: for each semibasis element the least n with
   d(e) in F(n-1) = A (x) V_{<=n-1}, computed by iterating the subspaces
   V_{<=n} = {v in kE : d(v) in F(n-1)} */
std::vector<int> standard_filtration(const SemifreeModule& m);

/* f(F_M(n)) <= F_N(n) for every semibasis element of M */
bool check_filtration_preservation(const ModuleMorphism& f);

/* Lift a homogeneous functional x on the quotient P/P(n-1) (values on the
   source semibasis, zero below stage n) through the augmentation of dst:
   produces a DG morphism f with eps_dst(f(e)) = x(e) and d f = +/- f dbar.
   Throws LiftFailed when the stagewise linear systems are inconsistent. */
ModuleMorphism lift_functional(const SemifreeResolution& src, int stage_min,
                               const std::map<int, Scalar>& x,
                               const SemifreeResolution& dst);

} // namespace dgk
