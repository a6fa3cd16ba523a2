#pragma once

#include <memory>

#include "dgk/complex.hpp"
#include "dgk/graded.hpp"

namespace dgk {

struct ValidationCheck {
    std::string name;
    bool ok = true;
    std::string witness; /* offending element, when !ok */
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

/* H(A) realized through a degree window: dimensions, chosen cocycle
   representatives, and the induced products re-expressed in the H-basis. */
struct CohomologyAlgebra {
    Field field;
    int dmax = 0;
    std::vector<int> dims;                       /* 0..dmax */
    std::vector<std::vector<Element>> reps;      /* per degree */
    /* products[(n,m)][i][j] = coordinates of [rep_i * rep_j] in H^{n+m} */
    std::map<std::pair<int, int>, std::vector<std::vector<SVec>>> products;

    const SVec& product(int n, int i, int m, int j) const {
        return products.at({n, m})[i][j];
    }
};

/* Differential structure on a presented algebra: the derivation extended by
   the graded Leibniz rule d(a b) = d(a) b + (-1)^{|a|} a d(b). */
class DGAlgebra {
  public:
    explicit DGAlgebra(Presentation p);

    const GradedAlgebra& algebra() const { return *alg_; }
    const Presentation& pres() const { return alg_->pres(); }
    const Field& field() const { return alg_->field(); }
    int trunc() const { return alg_->trunc(); }
    bool has_differential() const { return pres().has_differential(); }

    /* derivation at the tensor-algebra level (no reduction) */
    NCPoly d_tensor(const NCPoly& p) const;
    /* matrix of d : A^n -> A^{n+1} over the reduced bases, memoized */
    const SparseMatrix& d_matrix(int n) const;
    /* image of each reduced basis word under d, memoized */
    const std::vector<Element>& d_columns(int n) const;
    Element differentiate(const Element& e) const;

    ValidationReport validate() const;
    void require_valid() const; /* throws InvalidDGAlgebra on failure */

    /* H^0..H^dmax with products; dmax <= D-1. perturb_seed != 0 shifts every
       representative by a random coboundary (used by the representative-
       independence property test). */
    CohomologyAlgebra cohomology(int dmax, uint64_t perturb_seed = 0) const;

    /* the underlying cochain complex A^0 -> ... -> A^D */
    CochainComplex complex(int dmax) const;

    Presentation opposite() const;

  private:
    std::shared_ptr<GradedAlgebra> alg_;
    mutable std::mutex mu_;
    mutable std::map<int, std::vector<Element>> dcols_;
    mutable std::map<int, SparseMatrix> dmat_;
    mutable bool validated_ = false;
};

/* reversal antiautomorphism: word -> +/- reversed word */
NCPoly reverse_poly(const Presentation& p, const NCPoly& q);

} // namespace dgk
