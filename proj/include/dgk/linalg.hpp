#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dgk/scalar.hpp"

namespace dgk {

/* sparse vector: (index, nonzero value), strictly increasing indices */
using SVec = std::vector<std::pair<int, Scalar>>;

SVec svec_add(const SVec& a, const SVec& b);
SVec svec_scaled(const SVec& a, const Scalar& c);
/* a + c*b */
SVec svec_axpy(const SVec& a, const Scalar& c, const SVec& b);
Scalar svec_get(const SVec& a, int i, const Field& f);
bool svec_is_zero(const SVec& a);
SVec svec_from_dense(const std::vector<Scalar>& v);
std::vector<Scalar> svec_to_dense(const SVec& v, int n, const Field& f);

/* Sparse row-major matrix over an exact field. No zero entries are stored. */
class SparseMatrix {
  public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols, const Field& f);

    int rows() const { return nrows_; }
    int cols() const { return ncols_; }
    const Field& field() const { return field_; }

    void set(int r, int c, const Scalar& v);
    void add_to(int r, int c, const Scalar& v);
    Scalar get(int r, int c) const;
    const SVec& row(int r) const { return rows_[r]; }
    void set_row(int r, SVec v);
    int nnz() const;

    /* y = M x */
    std::vector<Scalar> apply(const std::vector<Scalar>& x) const;
    SparseMatrix transpose() const;

    static SparseMatrix identity(int n, const Field& f);
    static SparseMatrix from_rows(const std::vector<SVec>& rows, int cols, const Field& f);
    static SparseMatrix from_dense(const std::vector<std::vector<long>>& a, const Field& f);

    bool operator==(const SparseMatrix& o) const;

  private:
    int nrows_ = 0, ncols_ = 0;
    Field field_;
    std::vector<SVec> rows_;
};

struct RrefResult {
    SparseMatrix mat;
    std::vector<int> pivots; /* pivot columns, strictly increasing */
    int rank() const { return (int)pivots.size(); }
};

/* Reduced row echelon form with deterministic pivoting: columns are
   processed left to right and the first remaining row with a nonzero
   entry becomes the pivot. Dense elimination is used below `dense_threshold`
   (rows and cols), sparse row elimination above it; both produce identical
   output. */
RrefResult rref(const SparseMatrix& m, int dense_threshold = 64);

/* A subspace of k^ambient held as a reduced-echelon row basis. */
struct Subspace {
    int ambient = 0;
    Field field;
    std::vector<SVec> basis;  /* rref rows, linearly independent */
    std::vector<int> pivots;  /* strictly increasing */

    int dim() const { return (int)basis.size(); }
    static Subspace zero(int ambient, const Field& f) { return Subspace{ambient, f, {}, {}}; }
    static Subspace full(int ambient, const Field& f);
    static Subspace span(const std::vector<SVec>& vectors, int ambient, const Field& f);

    /* residual of v after reduction against the basis; zero iff v lies in
       the subspace */
    SVec reduce(const SVec& v) const;
    bool contains(const SVec& v) const { return svec_is_zero(reduce(v)); }
    bool contains(const Subspace& w) const;
    bool operator==(const Subspace& o) const;
};

/* {v : Mv = 0}; vectors live in k^cols */
Subspace kernel_basis(const SparseMatrix& m);
Subspace row_space(const SparseMatrix& m);
Subspace column_space(const SparseMatrix& m);

/* sum and intersection (Zassenhaus) of subspaces of the same ambient */
Subspace subspace_sum(const Subspace& u, const Subspace& w);
Subspace subspace_intersect(const Subspace& u, const Subspace& w);

/* representatives of a basis of U/W; requires W <= U (else NotContained) */
std::vector<SVec> subspace_quotient(const Subspace& u, const Subspace& w);

/* some x with Mx = b, or nullopt when inconsistent */
std::optional<std::vector<Scalar>> solve(const SparseMatrix& m, const std::vector<Scalar>& b);

} // namespace dgk
