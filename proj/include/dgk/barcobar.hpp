#pragma once

#include <array>
#include <functional>

#include "dgk/koszul.hpp"

namespace dgk {

/* Finite-dimensional coaugmented coalgebra on a coaugmentation-adapted
   basis: element 0 is grouplike (the coaugmentation image) and the counit is
   the coordinate-0 functional. Differentials are zero (every coalgebra the
   pipelines need is E^# or R^* in degree 0, or graded with d = 0). */
class FinCoalgebra {
  public:
    using Tensor = std::vector<std::pair<std::pair<int, int>, Scalar>>;

    FinCoalgebra(Field f, std::vector<std::string> names, std::vector<int> degrees,
                 std::vector<Tensor> coproduct);

    static FinCoalgebra dual_of(const FinAlgebra& e);
    /* re-dualize: the algebra with multiplication transpose to the coproduct */
    FinAlgebra dual_algebra() const;

    const Field& field() const { return field_; }
    int dim() const { return (int)names_.size(); }
    const std::string& name(int i) const { return names_[i]; }
    int degree(int i) const { return degrees_[i]; }
    const Tensor& coproduct(int i) const { return coprod_[i]; }
    /* reduced coproduct of a basis element of Cbar (entries inside Cbar) */
    Tensor reduced_coproduct(int i) const;

    bool is_coassociative() const;
    /* every element of Cbar is killed by some iterate of the reduced
       coproduct applied to the first factor */
    bool is_cocomplete() const;
    void require_valid() const; /* counit axioms + the two checks above */

  private:
    Field field_;
    std::vector<std::string> names_;
    std::vector<int> degrees_;
    std::vector<Tensor> coprod_;
};

/* Omega(C) = T(s Cbar) as a presentation: generators s_c of degree |c|+1 and
   the derivation generated by the reduced coproduct with the cobar sign */
Presentation cobar(const FinCoalgebra& c, int trunc);

/* ---- bar construction ---- */

/* word-length and letter-degree truncated piece of B(A) = T(s^{-1} I(A)) */
class BarCoalgebra {
  public:
    /* letters are reduced basis elements of A^1..A^dwin; needs
       2*dwin <= trunc(A) so merged letters stay computable */
    BarCoalgebra(std::shared_ptr<DGAlgebra> a, int dwin, int maxlen);

    using Letter = std::pair<int, int>; /* (degree, basis index) */
    using WordT = std::vector<Letter>;

    const DGAlgebra& dga() const { return *a_; }
    int max_len() const { return maxlen_; }
    int letter_window() const { return dwin_; }
    int size() const { return (int)words_.size(); }
    const WordT& word(int i) const { return words_[i]; }
    int index_of(const WordT& w) const; /* -1 when outside the materialized set */
    int bar_degree(int i) const;        /* sum of (letter degree - 1) */

    /* delta = delta_0 + delta_1 on formal words; entries may leave the
       materialized set (exceed dwin), reported with in_bounds = false */
    struct Image {
        bool in_bounds = true;
        std::map<WordT, Scalar> terms;
    };
    Image delta(const WordT& w) const;

    /* deconcatenation: all cuts, the two trivial splits included */
    std::vector<std::pair<int, int>> coproduct(int i) const;
    /* the proper cuts only */
    std::vector<std::pair<int, int>> proper_splits(int i) const;

    /* exhaustive delta^2 = 0 over materialized words (formally exact) */
    bool delta_squared_vanishes(int* checked = nullptr) const;
    bool coproduct_is_coassociative() const;

  private:
    std::shared_ptr<DGAlgebra> a_;
    int dwin_, maxlen_;
    std::vector<WordT> words_;
    std::map<WordT, int> index_;
};

/* ---- module bar complex B(A;A) = A (x) B(A) ---- */

/* formal elements m[a_1|...|a_n]; all operations are exact on formal sums */
struct ModuleBarWord {
    std::pair<int, int> m; /* algebra basis element, degree may be 0 */
    BarCoalgebra::WordT letters;
    bool operator<(const ModuleBarWord& o) const {
        return std::tie(m, letters) < std::tie(o.m, o.letters);
    }
    bool operator==(const ModuleBarWord& o) const = default;
};
using ModuleBarElt = std::map<ModuleBarWord, Scalar>;

ModuleBarElt module_bar_delta(const DGAlgebra& a, const ModuleBarWord& w);
/* contracting homotopy m[a_1|...] -> 1[mbar|a_1|...] */
ModuleBarElt module_bar_homotopy(const DGAlgebra& a, const ModuleBarWord& w);

/* exact certificate that A (x) B(A) -> k is a quasi-isomorphism: the
   homotopy identity delta h + h delta = id - eta eps checked word by word */
struct AugmentationReport {
    int words_checked = 0;
    int homotopy_failures = 0;
    int delta_squared_failures = 0;
    bool ok() const { return homotopy_failures == 0 && delta_squared_failures == 0; }
};
AugmentationReport bar_augmentation_check(std::shared_ptr<DGAlgebra> a, int dwin, int maxlen);

/* ---- phi: B(A)^# -> End_A(A (x) B(A)) ---- */

struct PhiReport {
    int cochain_checked = 0;
    int cochain_failures = 0;
    int multiplicative_checked = 0;
    int multiplicative_failures = 0;
    bool ok() const { return cochain_failures == 0 && multiplicative_failures == 0; }
};

/* phi([u]^*) applied to one module-bar word, following
   phi(f)(1[a_1|..|a_n]) = sum_i (-1)^{|f| omega_i} 1[a_1|..|a_i] f([a_{i+1}|..|a_n])
   with omega_i = |a_1|+...+|a_i| - i */
ModuleBarElt phi_of_dual_word(const DGAlgebra& a, const BarCoalgebra::WordT& u,
                              const ModuleBarWord& w);
/* functionals run over duals of bar words of length <= flen; arguments over
   words of length <= maxlen */
PhiReport phi_check(std::shared_ptr<DGAlgebra> a, int dwin, int flen, int maxlen);

/* ---- twisting cochains and twisted tensor products ---- */

/* tau as images of the Cbar basis inside a DG algebra (tau(c_0) = 0) */
struct TwistingCochain {
    const FinCoalgebra* c = nullptr;
    std::shared_ptr<DGAlgebra> b;
    std::vector<Element> images; /* per coalgebra basis element; [0] is zero */
};

TwistingCochain canonical_twisting_cochain(const FinCoalgebra& c,
                                           std::shared_ptr<DGAlgebra> omega);
/* m_B (tau (x) tau) Delta + d_B tau + tau d_C = 0 on every basis element */
bool twisting_identity_holds(const TwistingCochain& tau);

/* C (x)_tau B (the comodule side, N = C) through total degrees <= dmax+1 */
CochainComplex comodule_twisted_complex(const TwistingCochain& tau, int dmax);
/* B (x)_tau C (the module side, M = B) */
CochainComplex module_twisted_complex(const TwistingCochain& tau, int dmax);

/* B (x)_tau C (x)_tau B with the adjunction map to B */
struct AdjunctionReport {
    std::vector<int> h_triple;
    std::vector<int> h_b;
    bool chain_map_ok = false;
    bool iso_per_degree = false;
    int dmax = 0;
    bool delta_squared_ok = false;
};
AdjunctionReport adjunction_check(const FinCoalgebra& c, int dmax, int trunc);

/* ---- duality pipelines ---- */

struct RoundtripReport {
    Window window;
    bool compact = false;
    std::vector<int> h_a_dims;       /* dim H^n(A) */
    std::vector<int> h_cobar_dims;   /* dim H^n(Omega(E^#)) */
    std::vector<int> ext_over_e;     /* classical Ext^n_E(k,k) = resolution ranks */
    bool dims_match = false;
    bool iso_found = false;
    bool ext_ranks_window_exhausted = false;
};
RoundtripReport koszul_duality_roundtrip(std::shared_ptr<DGAlgebra> a, Window w, uint64_t seed);

struct LocalPipelineReport {
    Window window;
    Verdict cobar_koszul;        /* is_koszul_dg(Omega(R^*)) */
    bool ext_complete = false;
    int ext_dim = 0;
    bool ext_iso_to_r = false;
    Verdict strongly_quasi_koszul_r;
    Verdict quasi_koszul_r;
    Verdict h_koszul;            /* Koszulity of H(Omega(R^*)) via the cover */
    Verdict h_generated_in_one;
    bool corollary_consistent = false; /* strongly UK(R) <-> H Koszul */
};
LocalPipelineReport local_dual_pipeline(const FinAlgebra& r, Window w, uint64_t seed);

} // namespace dgk
