#pragma once

#include "dgk/finalg.hpp"
#include "dgk/semifree.hpp"

namespace dgk {

/* Tor_A(k,k) read off a minimal resolution: by minimality the induced
   differential on k (x)_A P vanishes, so the dimensions are the semibasis
   counts by (stage, cohomological degree). */
struct TorTable {
    std::map<std::pair<int, int>, int> dims; /* (stage, cdeg) -> count */
    bool window_exhausted = false;
    bool concentrated_in_degree_zero() const {
        for (const auto& [key, n] : dims)
            if (key.second != 0 && n > 0) return false;
        return true;
    }
};

TorTable tor_dims(const SemifreeResolution& r);

/* associated graded data of a decreasing filtration: layer dimensions and
   the induced products between layers */
struct FilteredGraded {
    std::vector<int> layer_dims;
    /* products[(n,m)][i][j] = coords in layer n+m */
    std::map<std::pair<int, int>, std::vector<std::vector<SVec>>> products;
};

/* E = Ext_A(k,k) realized on the dual semibasis of a minimal resolution.
   Products are Yoneda compositions computed through lifts; the product
   (e_i)^* . (e_j)^* is known when stage(i) + stage(j) fits inside the stage
   window, and lands in dual stages >= stage(i) + stage(j). */
class ExtAlgebra {
  public:
    explicit ExtAlgebra(const SemifreeResolution& r);

    const SemifreeResolution& resolution() const { return *res_; }
    const Field& field() const { return res_->p->dga().field(); }
    int size() const { return res_->p->size(); }
    int stage_of(int i) const { return res_->p->elt(i).stage; }
    int cdeg_of(int i) const { return res_->p->elt(i).cdeg; }
    int max_stage() const { return (int)res_->stages.size() - 1; }
    /* true when the resolution closed up inside the window (compact case) */
    bool complete() const { return res_->complete_within_window(); }

    bool product_known(int i, int j) const;
    const SVec& product(int i, int j) const; /* throws on unknown products */

    /* dim V(n)^* per stage n (the filtration layer F_n / F_{n+1}) */
    std::vector<int> filtration_layer_dims() const;
    /* F_m . F_n <= F_{m+n} on every known product */
    bool filtration_respected() const;
    bool is_associative_where_known() const;
    bool augmentation_is_algebra_map() const;

    /* gr of the stage filtration: products truncated to the exact layer */
    FilteredGraded gr_of_filtration() const;

    /* the full finite-dimensional algebra (complete case only) */
    FinAlgebra to_fin_algebra() const;

  private:
    const SemifreeResolution* res_;
    std::vector<std::vector<SVec>> table_; /* table_[i][j] = (e_i)^* . (e_j)^* */
    std::vector<std::vector<bool>> known_;
};

ExtAlgebra ext_algebra(const SemifreeResolution& r);

/* radical filtration of a finite-dimensional local algebra, with induced
   products on the layers J^i / J^{i+1} */
FilteredGraded radical_filtration(const FinAlgebra& e);

/* Search for an algebra isomorphism between two finite-dimensional local
   algebras: deterministic sweep first, then `trials` random generator images
   (seeded); any found map is verified exactly on the whole multiplication
   table. Returns the images of a's basis in b, or nullopt. */
std::optional<std::vector<SVec>> find_local_algebra_iso(const FinAlgebra& a, const FinAlgebra& b,
                                                        int trials, uint64_t seed);

} // namespace dgk
