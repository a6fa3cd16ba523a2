#include "dgk/finalg.hpp"

namespace dgk {

FinAlgebra::FinAlgebra(Field f, std::vector<std::string> names,
                       std::vector<std::vector<SVec>> table)
    : field_(f), names_(std::move(names)), table_(std::move(table)) {
    const int m = (int)names_.size();
    if (m == 0) fail("BadAlgebra", "empty basis");
    if ((int)table_.size() != m) fail("BadAlgebra", "multiplication table size mismatch");
    for (const auto& row : table_)
        if ((int)row.size() != m) fail("BadAlgebra", "multiplication table size mismatch");
    /* unit checks */
    for (int i = 0; i < m; ++i) {
        if (table_[0][i] != SVec{{i, Scalar::one(field_)}})
            fail("BadAlgebra", "basis element 0 is not a left unit");
        if (table_[i][0] != SVec{{i, Scalar::one(field_)}})
            fail("BadAlgebra", "basis element 0 is not a right unit");
    }
    /* augmentation (coordinate 0) must be an algebra map */
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Scalar lhs = svec_get(table_[i][j], 0, field_);
            Scalar rhs = (i == 0 ? Scalar::one(field_) : Scalar::zero(field_)) *
                         (j == 0 ? Scalar::one(field_) : Scalar::zero(field_));
            if (lhs != rhs)
                fail("NotAugmented", "coordinate 0 is not an algebra map on " + names_[i] + "*" +
                                         names_[j] + "; present the algebra on a unit-adapted basis");
        }
    /* associativity on basis triples */
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                SVec lhs = multiply(table_[i][j], SVec{{k, Scalar::one(field_)}});
                SVec rhs = multiply(SVec{{i, Scalar::one(field_)}}, table_[j][k]);
                if (lhs != rhs)
                    fail("BadAlgebra", "associativity fails on (" + names_[i] + "," + names_[j] +
                                           "," + names_[k] + ")");
            }
}

SVec FinAlgebra::multiply(const SVec& a, const SVec& b) const {
    std::map<int, Scalar> acc;
    for (const auto& [i, ci] : a)
        for (const auto& [j, cj] : b) {
            Scalar c = ci * cj;
            for (const auto& [k, ck] : table_[i][j]) {
                auto it = acc.find(k);
                if (it == acc.end()) acc.emplace(k, c * ck);
                else {
                    it->second += c * ck;
                    if (it->second.is_zero()) acc.erase(it);
                }
            }
        }
    return SVec(acc.begin(), acc.end());
}

FinAlgebra FinAlgebra::from_graded(const GradedAlgebra& g) {
    const int d = g.trunc();
    int maxgen = 1;
    for (const auto& gen : g.pres().generators) maxgen = std::max(maxgen, gen.degree);
    /* find the vanishing wall: dims zero on a run of maxgen degrees */
    int m = -1;
    for (int n = 1; n + maxgen - 1 <= d; ++n) {
        bool allzero = true;
        for (int j = n; j < n + maxgen; ++j)
            if (g.dim(j) != 0) allzero = false;
        if (allzero) { m = n; break; }
    }
    if (m < 0)
        fail("NotFiniteDimensional",
             "no vanishing run of length " + std::to_string(maxgen) +
                 " inside the truncation window; cannot certify finite dimension");
    if (2 * (m - 1) > d)
        fail("DegreeOutOfRange", "flattening needs products through degree " +
                                     std::to_string(2 * (m - 1)) + " > wall " + std::to_string(d));
    std::vector<std::pair<int, int>> basis; /* (degree, index) */
    std::vector<std::string> names;
    for (int n = 0; n < m; ++n)
        for (int i = 0; i < g.dim(n); ++i) {
            basis.emplace_back(n, i);
            names.push_back(g.pres().word_to_string(g.basis(n).words[i]));
        }
    std::map<std::pair<int, int>, int> pos;
    for (int i = 0; i < (int)basis.size(); ++i) pos.emplace(basis[i], i);
    std::vector<std::vector<SVec>> table(basis.size(), std::vector<SVec>(basis.size()));
    for (int i = 0; i < (int)basis.size(); ++i)
        for (int j = 0; j < (int)basis.size(); ++j) {
            Element p = g.multiply(g.basis_element(basis[i].first, basis[i].second),
                                   g.basis_element(basis[j].first, basis[j].second));
            SVec out;
            if (p.degree < m)
                for (const auto& [k, v] : p.c) out.emplace_back(pos.at({p.degree, k}), v);
            else if (!p.is_zero())
                fail("Internal", "nonzero product above the vanishing wall");
            table[i][j] = std::move(out);
        }
    return FinAlgebra(g.field(), std::move(names), std::move(table));
}

FinAlgebra FinAlgebra::truncated_tensor(const Field& f, int nvars, int nil) {
    std::vector<Word> words;
    std::map<Word, int> idx;
    std::vector<std::string> names;
    /* breadth-first by length for a degree-adapted order */
    std::vector<Word> frontier{{}};
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const Word& u : frontier) {
            idx.emplace(u, (int)words.size());
            words.push_back(u);
            if ((int)u.size() < nil - 1)
                for (int g = 0; g < nvars; ++g) {
                    Word v = u;
                    v.push_back(g);
                    next.push_back(std::move(v));
                }
        }
        frontier = std::move(next);
    }
    for (const Word& u : words) {
        if (u.empty()) { names.push_back("1"); continue; }
        std::string s;
        for (int g : u) s += (char)('a' + g);
        names.push_back(s);
    }
    std::vector<std::vector<SVec>> table(words.size(), std::vector<SVec>(words.size()));
    for (int i = 0; i < (int)words.size(); ++i)
        for (int j = 0; j < (int)words.size(); ++j) {
            Word u = words[i];
            u.insert(u.end(), words[j].begin(), words[j].end());
            if ((int)u.size() < nil) table[i][j] = {{idx.at(u), Scalar::one(f)}};
        }
    return FinAlgebra(f, std::move(names), std::move(table));
}

Subspace FinAlgebra::augmentation_ideal() const {
    std::vector<SVec> rows;
    for (int i = 1; i < dim(); ++i) rows.push_back({{i, Scalar::one(field_)}});
    return Subspace::span(rows, dim(), field_);
}

std::vector<Subspace> FinAlgebra::radical_powers() const {
    std::vector<Subspace> powers;
    powers.push_back(Subspace::full(dim(), field_)); /* J^0 = E */
    Subspace j = augmentation_ideal();
    powers.push_back(j);
    while (powers.back().dim() > 0) {
        if ((int)powers.size() > dim() + 1)
            fail("NotLocal", "ker eps is not nilpotent; the algebra is not local with residue field k");
        const Subspace& prev = powers.back();
        std::vector<SVec> rows;
        for (const SVec& a : j.basis)
            for (const SVec& b : prev.basis) rows.push_back(multiply(a, b));
        Subspace next = Subspace::span(rows, dim(), field_);
        if (next.dim() == prev.dim())
            fail("NotLocal", "ker eps is not nilpotent; the algebra is not local with residue field k");
        powers.push_back(std::move(next));
    }
    return powers;
}

std::vector<int> FinAlgebra::radical_layer_dims() const {
    std::vector<Subspace> powers = radical_powers();
    std::vector<int> out;
    for (size_t i = 0; i + 1 < powers.size(); ++i)
        out.push_back(powers[i].dim() - powers[i + 1].dim());
    return out;
}

SparseMatrix FinAlgebra::left_mult_matrix(const SVec& a) const {
    SparseMatrix m(dim(), dim(), field_);
    for (int j = 0; j < dim(); ++j) {
        SVec col = multiply(a, {{j, Scalar::one(field_)}});
        for (const auto& [i, v] : col) m.add_to(i, j, v);
    }
    return m;
}

SparseMatrix FinAlgebra::right_mult_matrix(const SVec& a) const {
    SparseMatrix m(dim(), dim(), field_);
    for (int j = 0; j < dim(); ++j) {
        SVec col = multiply({{j, Scalar::one(field_)}}, a);
        for (const auto& [i, v] : col) m.add_to(i, j, v);
    }
    return m;
}

Subspace FinAlgebra::right_socle() const {
    /* {a : a b = 0 for every b in J}: stack the right-multiplication maps */
    Subspace j = augmentation_ideal();
    int stride = 0;
    SparseMatrix big((int)j.basis.size() * dim(), dim(), field_);
    for (const SVec& b : j.basis) {
        SparseMatrix rb = right_mult_matrix(b);
        for (int r = 0; r < dim(); ++r)
            for (const auto& [c, v] : rb.row(r)) big.set(stride + r, c, v);
        stride += dim();
    }
    return kernel_basis(big);
}

Subspace FinAlgebra::left_socle() const {
    Subspace j = augmentation_ideal();
    int stride = 0;
    SparseMatrix big((int)j.basis.size() * dim(), dim(), field_);
    for (const SVec& b : j.basis) {
        SparseMatrix lb = left_mult_matrix(b);
        for (int r = 0; r < dim(); ++r)
            for (const auto& [c, v] : lb.row(r)) big.set(stride + r, c, v);
        stride += dim();
    }
    return kernel_basis(big);
}

std::string FinAlgebra::to_string(const SVec& a) const {
    if (a.empty()) return "0";
    std::string out;
    for (const auto& [i, c] : a) {
        if (!out.empty()) out += " + ";
        std::string cs = c.to_string();
        if (cs == "1") out += names_[i];
        else out += cs + "*" + names_[i];
    }
    return out;
}

Subspace radical_power_module(const FinAlgebra& e, const Subspace& jpow, int rank) {
    std::vector<SVec> rows;
    for (int g = 0; g < rank; ++g)
        for (const SVec& v : jpow.basis) {
            SVec row;
            for (const auto& [i, c] : v) row.emplace_back(g * e.dim() + i, c);
            rows.push_back(std::move(row));
        }
    return Subspace::span(rows, rank * e.dim(), e.field());
}

Subspace radical_times(const FinAlgebra& e, const Subspace& jpow, const Subspace& v, int rank) {
    std::vector<SVec> rows;
    for (const SVec& b : jpow.basis) {
        SparseMatrix lb = e.left_mult_matrix(b);
        for (const SVec& x : v.basis) {
            /* apply blockwise */
            SVec out;
            for (int g = 0; g < rank; ++g) {
                std::vector<Scalar> block(e.dim(), Scalar::zero(e.field()));
                bool nonzero = false;
                for (const auto& [i, c] : x) {
                    if (i / e.dim() != g) continue;
                    block[i % e.dim()] = c;
                    nonzero = true;
                }
                if (!nonzero) continue;
                std::vector<Scalar> y = lb.apply(block);
                for (int i = 0; i < e.dim(); ++i)
                    if (!y[i].is_zero()) out.emplace_back(g * e.dim() + i, y[i]);
            }
            std::sort(out.begin(), out.end(),
                      [](const auto& a, const auto& b2) { return a.first < b2.first; });
            if (!out.empty()) rows.push_back(std::move(out));
        }
    }
    return Subspace::span(rows, rank * e.dim(), e.field());
}

LocalResolution local_minimal_resolution(const FinAlgebra& e, int smax) {
    e.radical_powers(); /* NotLocal check */
    LocalResolution r;
    r.e = &e;
    const Field& f = e.field();
    const int m = e.dim();

    /* stage 0: P_0 = E, delta_0 = augmentation, kernel = J */
    r.ranks.push_back(1);
    r.kernels.push_back(e.augmentation_ideal());
    Subspace j = e.augmentation_ideal();

    for (int n = 1; n <= smax; ++n) {
        const Subspace& k = r.kernels.back();
        const int prev_rank = r.ranks.back();
        if (k.dim() == 0) return r; /* resolution terminated */
        /* minimal generators: K / J K */
        Subspace jk = radical_times(e, j, k, prev_rank);
        std::vector<SVec> gens = subspace_quotient(k, jk);
        const int rank = (int)gens.size();
        /* delta_n: E^rank -> E^prev_rank, generator g -> gens[g] */
        SparseMatrix delta(prev_rank * m, rank * m, f);
        for (int g = 0; g < rank; ++g) {
            for (int b = 0; b < m; ++b) {
                /* column (g, b): image b * gens[g], blockwise left action */
                SparseMatrix lb = e.left_mult_matrix({{b, Scalar::one(f)}});
                for (int blk = 0; blk < prev_rank; ++blk) {
                    std::vector<Scalar> block(m, Scalar::zero(f));
                    bool nonzero = false;
                    for (const auto& [i, c] : gens[g]) {
                        if (i / m != blk) continue;
                        block[i % m] = c;
                        nonzero = true;
                    }
                    if (!nonzero) continue;
                    std::vector<Scalar> y = lb.apply(block);
                    for (int i = 0; i < m; ++i)
                        if (!y[i].is_zero()) delta.set(blk * m + i, g * m + b, y[i]);
                }
            }
        }
        r.kernels.push_back(kernel_basis(delta));
        r.delta.push_back(std::move(delta));
        r.ranks.push_back(rank);
    }
    r.window_exhausted = r.kernels.back().dim() > 0;
    return r;
}

} // namespace dgk
