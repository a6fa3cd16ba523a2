#include "dgk/linalg.hpp"

#include <algorithm>
#include <map>

namespace dgk {

SVec svec_add(const SVec& a, const SVec& b) {
    SVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            Scalar s = a[i].second + b[j].second;
            if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    return out;
}

SVec svec_scaled(const SVec& a, const Scalar& c) {
    SVec out;
    if (c.is_zero()) return out;
    out.reserve(a.size());
    for (const auto& [i, v] : a) out.emplace_back(i, v * c);
    return out;
}

SVec svec_axpy(const SVec& a, const Scalar& c, const SVec& b) {
    if (c.is_zero()) return a;
    SVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, c * b[j].second);
            ++j;
        } else {
            Scalar s = a[i].second + c * b[j].second;
            if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    return out;
}

Scalar svec_get(const SVec& a, int i, const Field& f) {
    auto it = std::lower_bound(a.begin(), a.end(), i,
                               [](const auto& p, int k) { return p.first < k; });
    if (it != a.end() && it->first == i) return it->second;
    return Scalar::zero(f);
}

bool svec_is_zero(const SVec& a) { return a.empty(); }

SVec svec_from_dense(const std::vector<Scalar>& v) {
    SVec out;
    for (int i = 0; i < (int)v.size(); ++i)
        if (!v[i].is_zero()) out.emplace_back(i, v[i]);
    return out;
}

std::vector<Scalar> svec_to_dense(const SVec& v, int n, const Field& f) {
    std::vector<Scalar> out(n, Scalar::zero(f));
    for (const auto& [i, s] : v) out[i] = s;
    return out;
}

SparseMatrix::SparseMatrix(int rows, int cols, const Field& f)
    : nrows_(rows), ncols_(cols), field_(f), rows_(rows) {}

void SparseMatrix::set(int r, int c, const Scalar& v) {
    if (r < 0 || r >= nrows_ || c < 0 || c >= ncols_) fail("IndexOutOfRange", "matrix index");
    SVec& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& p, int k) { return p.first < k; });
    if (it != row.end() && it->first == c) {
        if (v.is_zero()) row.erase(it);
        else it->second = v;
    } else if (!v.is_zero()) {
        row.insert(it, {c, v});
    }
}

void SparseMatrix::add_to(int r, int c, const Scalar& v) {
    set(r, c, get(r, c) + v);
}

Scalar SparseMatrix::get(int r, int c) const {
    if (r < 0 || r >= nrows_ || c < 0 || c >= ncols_) fail("IndexOutOfRange", "matrix index");
    return svec_get(rows_[r], c, field_);
}

void SparseMatrix::set_row(int r, SVec v) { rows_[r] = std::move(v); }

int SparseMatrix::nnz() const {
    int n = 0;
    for (const auto& r : rows_) n += (int)r.size();
    return n;
}

std::vector<Scalar> SparseMatrix::apply(const std::vector<Scalar>& x) const {
    if ((int)x.size() != ncols_) fail("DimensionMismatch", "apply: expected length " + std::to_string(ncols_));
    std::vector<Scalar> y(nrows_, Scalar::zero(field_));
    for (int r = 0; r < nrows_; ++r)
        for (const auto& [c, v] : rows_[r]) y[r] += v * x[c];
    return y;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(ncols_, nrows_, field_);
    for (int r = 0; r < nrows_; ++r)
        for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(r, v);
    return t;
}

SparseMatrix SparseMatrix::identity(int n, const Field& f) {
    SparseMatrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.rows_[i].emplace_back(i, Scalar::one(f));
    return m;
}

SparseMatrix SparseMatrix::from_rows(const std::vector<SVec>& rows, int cols, const Field& f) {
    SparseMatrix m((int)rows.size(), cols, f);
    for (int r = 0; r < (int)rows.size(); ++r) m.rows_[r] = rows[r];
    return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<long>>& a, const Field& f) {
    int rows = (int)a.size();
    int cols = rows ? (int)a[0].size() : 0;
    SparseMatrix m(rows, cols, f);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (a[r][c] != 0) m.rows_[r].emplace_back(c, Scalar(a[r][c], f));
    return m;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
    return nrows_ == o.nrows_ && ncols_ == o.ncols_ && field_ == o.field_ && rows_ == o.rows_;
}

namespace {

/* The reduced row echelon form is a unique canonical form, so the pivot-row
   choice below is free; rows are bucketed by leading column to avoid
   quadratic scans. */
RrefResult rref_sparse(const SparseMatrix& m) {
    const Field f = m.field();
    std::vector<SVec> pending;
    pending.reserve(m.rows());
    std::map<int, std::vector<int>> by_lead;
    for (int r = 0; r < m.rows(); ++r) {
        if (m.row(r).empty()) continue;
        by_lead[m.row(r).front().first].push_back((int)pending.size());
        pending.push_back(m.row(r));
    }
    std::vector<SVec> done;
    std::vector<int> pivots;
    while (!by_lead.empty()) {
        auto it = by_lead.begin();
        const int c = it->first;
        std::vector<int> ids = std::move(it->second);
        by_lead.erase(it);
        /* pivot: first row of this bucket; normalize */
        SVec piv = std::move(pending[ids[0]]);
        if (!piv.front().second.is_one()) piv = svec_scaled(piv, piv.front().second.inv());
        /* eliminate inside the bucket, requeue survivors by their new lead */
        for (size_t k = 1; k < ids.size(); ++k) {
            SVec& row = pending[ids[k]];
            row = svec_axpy(row, -row.front().second, piv);
            if (!row.empty()) by_lead[row.front().first].push_back(ids[k]);
        }
        /* reduced form: clear column c in the finished rows */
        for (SVec& row : done) {
            Scalar v = svec_get(row, c, f);
            if (!v.is_zero()) row = svec_axpy(row, -v, piv);
        }
        done.push_back(std::move(piv));
        pivots.push_back(c);
    }
    done.resize(m.rows());
    return {SparseMatrix::from_rows(done, m.cols(), f), pivots};
}

RrefResult rref_dense(const SparseMatrix& m) {
    const Field f = m.field();
    const int nr = m.rows(), nc = m.cols();
    std::vector<std::vector<Scalar>> a(nr, std::vector<Scalar>(nc, Scalar::zero(f)));
    for (int r = 0; r < nr; ++r)
        for (const auto& [c, v] : m.row(r)) a[r][c] = v;
    std::vector<int> pivots;
    int next = 0;
    for (int c = 0; c < nc && next < nr; ++c) {
        int p = -1;
        for (int r = next; r < nr; ++r)
            if (!a[r][c].is_zero()) { p = r; break; }
        if (p < 0) continue;
        std::swap(a[next], a[p]);
        Scalar piv = a[next][c].inv();
        for (int j = c; j < nc; ++j) a[next][j] *= piv;
        for (int r = 0; r < nr; ++r) {
            if (r == next || a[r][c].is_zero()) continue;
            Scalar v = a[r][c];
            for (int j = c; j < nc; ++j) a[r][j] -= v * a[next][j];
        }
        pivots.push_back(c);
        ++next;
    }
    SparseMatrix out(nr, nc, f);
    for (int r = 0; r < nr; ++r) out.set_row(r, svec_from_dense(a[r]));
    return {std::move(out), pivots};
}

} // namespace

RrefResult rref(const SparseMatrix& m, int dense_threshold) {
    if (m.rows() <= dense_threshold && m.cols() <= dense_threshold) return rref_dense(m);
    return rref_sparse(m);
}

Subspace Subspace::full(int ambient, const Field& f) {
    Subspace s{ambient, f, {}, {}};
    for (int i = 0; i < ambient; ++i) {
        s.basis.push_back({{i, Scalar::one(f)}});
        s.pivots.push_back(i);
    }
    return s;
}

Subspace Subspace::span(const std::vector<SVec>& vectors, int ambient, const Field& f) {
    RrefResult r = rref(SparseMatrix::from_rows(vectors, ambient, f));
    Subspace s{ambient, f, {}, r.pivots};
    for (int i = 0; i < r.rank(); ++i) s.basis.push_back(r.mat.row(i));
    return s;
}

SVec Subspace::reduce(const SVec& v) const {
    SVec w = v;
    for (int i = 0; i < (int)basis.size(); ++i) {
        Scalar c = svec_get(w, pivots[i], field);
        if (!c.is_zero()) w = svec_axpy(w, -c, basis[i]);
    }
    return w;
}

bool Subspace::contains(const Subspace& w) const {
    for (const auto& v : w.basis)
        if (!contains(v)) return false;
    return true;
}

bool Subspace::operator==(const Subspace& o) const {
    return ambient == o.ambient && pivots == o.pivots && basis == o.basis;
}

Subspace kernel_basis(const SparseMatrix& m) {
    const Field f = m.field();
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : r.pivots) is_pivot[c] = true;
    std::vector<SVec> vectors;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        /* kernel vector for free column c: x_c = 1, pivot vars balance */
        SVec v;
        for (int i = 0; i < r.rank(); ++i) {
            Scalar a = svec_get(r.mat.row(i), c, f);
            if (!a.is_zero()) v.emplace_back(r.pivots[i], -a);
        }
        v.emplace_back(c, Scalar::one(f));
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        vectors.push_back(std::move(v));
    }
    /* canonicalize so kernels compare equal to spans of the same space */
    return Subspace::span(vectors, m.cols(), f);
}

Subspace row_space(const SparseMatrix& m) {
    std::vector<SVec> rows;
    for (int r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    return Subspace::span(rows, m.cols(), m.field());
}

Subspace column_space(const SparseMatrix& m) { return row_space(m.transpose()); }

Subspace subspace_sum(const Subspace& u, const Subspace& w) {
    if (u.ambient != w.ambient) fail("DimensionMismatch", "subspace_sum ambient");
    std::vector<SVec> rows = u.basis;
    rows.insert(rows.end(), w.basis.begin(), w.basis.end());
    return Subspace::span(rows, u.ambient, u.field);
}

/* Zassenhaus: rref of [U U; W 0]; rows with zero left block carry the
   intersection in the right block. */
Subspace subspace_intersect(const Subspace& u, const Subspace& w) {
    if (u.ambient != w.ambient) fail("DimensionMismatch", "subspace_intersect ambient");
    const int n = u.ambient;
    std::vector<SVec> rows;
    for (const auto& v : u.basis) {
        SVec r = v;
        for (const auto& [i, s] : v) r.emplace_back(i + n, s);
        rows.push_back(std::move(r));
    }
    for (const auto& v : w.basis) rows.push_back(v);
    RrefResult rr = rref(SparseMatrix::from_rows(rows, 2 * n, u.field));
    std::vector<SVec> inter;
    for (int i = 0; i < rr.rank(); ++i) {
        const SVec& row = rr.mat.row(i);
        if (row.empty() || row.front().first >= n) {
            SVec v;
            for (const auto& [c, s] : row) v.emplace_back(c - n, s);
            if (!v.empty()) inter.push_back(std::move(v));
        }
    }
    return Subspace::span(inter, n, u.field);
}

std::vector<SVec> subspace_quotient(const Subspace& u, const Subspace& w) {
    if (u.ambient != w.ambient) fail("DimensionMismatch", "subspace_quotient ambient");
    if (!u.contains(w)) fail("NotContained", "W is not contained in U");
    std::vector<SVec> reps;
    Subspace acc = w;
    for (const auto& v : u.basis) {
        SVec res = acc.reduce(v);
        if (!svec_is_zero(res)) {
            reps.push_back(v);
            std::vector<SVec> rows = acc.basis;
            rows.push_back(v);
            acc = Subspace::span(rows, u.ambient, u.field);
        }
    }
    return reps;
}

std::optional<std::vector<Scalar>> solve(const SparseMatrix& m, const std::vector<Scalar>& b) {
    if ((int)b.size() != m.rows()) fail("DimensionMismatch", "solve: |b| != rows");
    const Field f = m.field();
    std::vector<SVec> rows;
    for (int r = 0; r < m.rows(); ++r) {
        SVec row = m.row(r);
        if (!b[r].is_zero()) row.emplace_back(m.cols(), b[r]);
        rows.push_back(std::move(row));
    }
    RrefResult rr = rref(SparseMatrix::from_rows(rows, m.cols() + 1, f));
    std::vector<Scalar> x(m.cols(), Scalar::zero(f));
    for (int i = 0; i < rr.rank(); ++i) {
        if (rr.pivots[i] == m.cols()) return std::nullopt; /* 0 = 1 row */
        x[rr.pivots[i]] = svec_get(rr.mat.row(i), m.cols(), f);
    }
    return x;
}

} // namespace dgk
