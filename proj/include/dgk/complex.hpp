#pragma once

#include <map>

#include "dgk/linalg.hpp"

namespace dgk {

/* A finite slice of a cochain complex: per-degree dimensions and the
   differential matrices d_n : C^n -> C^{n+1} (rows index the target basis).
   Degrees absent from `dims` are zero. */
struct CochainComplex {
    Field field;
    std::map<int, int> dims;
    std::map<int, SparseMatrix> diff;

    int dim(int n) const {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    }

    void set_diff(int n, SparseMatrix m) { diff.emplace(n, std::move(m)); }

    const SparseMatrix* diff_at(int n) const {
        auto it = diff.find(n);
        return it == diff.end() ? nullptr : &it->second;
    }

    struct Cohomology {
        int degree = 0;
        Subspace kernel;
        Subspace image;
        std::vector<SVec> reps; /* cocycles whose classes form a basis */
        int dim() const { return (int)reps.size(); }
    };

    /* H^n; requires the adjacent differentials to be stored (a missing d is
       only legal when the adjacent slice is zero) */
    Cohomology cohomology(int n) const {
        Cohomology h;
        h.degree = n;
        const int dn = dim(n);
        if (dn == 0) {
            h.kernel = Subspace::zero(0, field);
            h.image = Subspace::zero(0, field);
            return h;
        }
        if (const SparseMatrix* d = diff_at(n)) {
            h.kernel = kernel_basis(*d);
        } else if (dim(n + 1) == 0) {
            h.kernel = Subspace::full(dn, field);
        } else {
            fail("Internal", "missing differential at degree " + std::to_string(n));
        }
        if (const SparseMatrix* d = diff_at(n - 1)) {
            h.image = column_space(*d);
        } else if (dim(n - 1) == 0) {
            h.image = Subspace::zero(dn, field);
        } else {
            fail("Internal", "missing differential at degree " + std::to_string(n - 1));
        }
        h.reps = subspace_quotient(h.kernel, h.image);
        return h;
    }

    /* exactness of d * d wherever both matrices exist */
    bool differentials_compose_to_zero() const {
        for (const auto& [n, d] : diff) {
            const SparseMatrix* d2 = diff_at(n + 1);
            if (!d2) continue;
            for (int c = 0; c < d.cols(); ++c) {
                std::vector<Scalar> col(d.rows(), Scalar::zero(field));
                for (int r = 0; r < d.rows(); ++r) col[r] = d.get(r, c);
                for (const Scalar& s : d2->apply(col))
                    if (!s.is_zero()) return false;
            }
        }
        return true;
    }
};

} // namespace dgk
