#include "dgk/graded.hpp"

#include <algorithm>

namespace dgk {

/* all words of the given degree, shorter words first, then lexicographic */
std::vector<Word> enumerate_words(const Presentation& p, int degree) {
    std::vector<Word> out;
    if (degree == 0) {
        out.push_back({});
        return out;
    }
    std::vector<std::vector<Word>> by_len(degree + 1);
    Word w;
    auto rec = [&](auto&& self, int remaining, int len) -> void {
        if (remaining == 0) {
            by_len[len].push_back(w);
            return;
        }
        if (len >= degree) return; /* degrees >= 1 bound the length */
        for (int g = 0; g < p.n_generators(); ++g) {
            if (p.generators[g].degree > remaining) continue;
            w.push_back(g);
            self(self, remaining - p.generators[g].degree, len + 1);
            w.pop_back();
        }
    };
    rec(rec, degree, 0);
    for (auto& bucket : by_len)
        for (auto& word : bucket) out.push_back(std::move(word));
    return out;
}

GradedAlgebra::GradedAlgebra(Presentation p) : pres_(std::move(p)) {
    pres_.validate_structure();
}

const DegreeBasis& GradedAlgebra::basis(int n) const {
    if (n < 0 || n > pres_.truncation_degree)
        fail("DegreeOutOfRange", "degree " + std::to_string(n) + " outside [0, " +
                                     std::to_string(pres_.truncation_degree) + "]");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = bases_.find(n);
    if (it != bases_.end()) return it->second;
    /* idempotent fill: the value only depends on (presentation, n) */
    DegreeBasis b = build_basis(n);
    return bases_.emplace(n, std::move(b)).first->second;
}

DegreeBasis GradedAlgebra::build_basis(int n) const {
    DegreeBasis b;
    b.degree = n;
    std::vector<Word> all = enumerate_words(pres_, n);

    /* spanning set of the ideal slice: w1 * r * w2 over all degree splits */
    std::vector<SVec> rows;
    std::map<Word, int> all_index;
    for (int i = 0; i < (int)all.size(); ++i) all_index.emplace(all[i], i);
    for (const NCPoly& r : pres_.relations) {
        int d = *pres_.poly_degree(r);
        if (d > n) continue;
        for (int a = 0; a + d <= n; ++a) {
            int bdeg = n - d - a;
            std::vector<Word> left = enumerate_words(pres_, a);
            std::vector<Word> right = enumerate_words(pres_, bdeg);
            for (const Word& w1 : left) {
                for (const Word& w2 : right) {
                    std::map<int, Scalar> acc;
                    for (const auto& [t, c] : r.terms) {
                        Word w = w1;
                        w.insert(w.end(), t.begin(), t.end());
                        w.insert(w.end(), w2.begin(), w2.end());
                        int id = all_index.at(w);
                        auto it = acc.find(id);
                        if (it == acc.end()) acc.emplace(id, c);
                        else {
                            it->second += c;
                            if (it->second.is_zero()) acc.erase(it);
                        }
                    }
                    if (!acc.empty()) rows.push_back(SVec(acc.begin(), acc.end()));
                }
            }
        }
    }

    if (rows.empty()) {
        b.free_slice = true;
        b.words = std::move(all);
        for (int i = 0; i < (int)b.words.size(); ++i) b.index.emplace(b.words[i], i);
        return b;
    }

    b.free_slice = false;
    /* Singleton rows (monomial relations expand to single words) pin their
       word to zero outright; peeling them first empties or shrinks the
       elimination drastically. Iterate: dropping dead columns can expose new
       singletons. */
    std::vector<bool> dead(all.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<SVec> keep;
        for (SVec& row : rows) {
            SVec filtered;
            for (auto& [c, v] : row)
                if (!dead[c]) filtered.emplace_back(c, v);
            if (filtered.empty()) continue;
            if (filtered.size() == 1) {
                dead[filtered[0].first] = true;
                changed = true;
            } else {
                keep.push_back(std::move(filtered));
            }
        }
        rows = std::move(keep);
    }
    for (int c = 0; c < (int)all.size(); ++c)
        if (dead[c]) rows.push_back({{c, Scalar::one(pres_.field)}});
    RrefResult rr = rref(SparseMatrix::from_rows(rows, (int)all.size(), pres_.field));
    std::vector<bool> is_pivot(all.size(), false);
    for (int c : rr.pivots) is_pivot[c] = true;
    b.reduced_pos.assign(all.size(), -1);
    for (int i = 0; i < (int)all.size(); ++i) {
        if (is_pivot[i]) continue;
        b.reduced_pos[i] = (int)b.words.size();
        b.index.emplace(all[i], (int)b.words.size());
        b.words.push_back(all[i]);
    }
    for (int i = 0; i < rr.rank(); ++i) {
        b.ideal_rows.push_back(rr.mat.row(i));
        b.pivot_row.emplace(rr.pivots[i], i);
    }
    b.all_words = std::move(all);
    b.all_index = std::move(all_index);
    return b;
}

std::vector<int> GradedAlgebra::hilbert(int dmax) const {
    std::vector<int> out;
    for (int n = 0; n <= dmax; ++n) out.push_back(dim(n));
    return out;
}

Element GradedAlgebra::unit() const { return Element{0, {{0, Scalar::one(field())}}}; }

Element GradedAlgebra::basis_element(int degree, int i) const {
    if (i < 0 || i >= basis(degree).dim()) fail("IndexOutOfRange", "basis element");
    return Element{degree, {{i, Scalar::one(field())}}};
}

Element GradedAlgebra::reduce_word(const Word& w) const {
    int n = pres_.word_degree(w);
    const DegreeBasis& b = basis(n);
    if (b.free_slice) return Element{n, {{b.index.at(w), Scalar::one(field())}}};
    int id = b.all_index.at(w);
    if (b.reduced_pos[id] >= 0)
        return Element{n, {{b.reduced_pos[id], Scalar::one(field())}}};
    /* pivot word: its rref row says  w + sum(c_j * word_j) in ideal */
    const SVec& row = b.ideal_rows[b.pivot_row.at(id)];
    SVec c;
    for (const auto& [j, v] : row) {
        if (j == id) continue;
        if (b.reduced_pos[j] < 0)
            fail("Internal", "rref row touches a second pivot column");
        c.emplace_back(b.reduced_pos[j], -v);
    }
    std::sort(c.begin(), c.end(), [](const auto& a, const auto& z) { return a.first < z.first; });
    return Element{n, std::move(c)};
}

Element GradedAlgebra::reduce_poly(const NCPoly& p) const {
    if (p.is_zero()) return zero(0);
    auto d = pres_.poly_degree(p);
    if (!d) fail("InhomogeneousRelation", "reduce_poly needs a homogeneous polynomial");
    Element acc = zero(*d);
    for (const auto& [w, c] : p.terms) acc = add(acc, scaled(reduce_word(w), c));
    return acc;
}

NCPoly GradedAlgebra::poly_of(const Element& e) const {
    const DegreeBasis& b = basis(e.degree);
    NCPoly p;
    for (const auto& [i, c] : e.c) p.add_term(b.words[i], c);
    return p;
}

std::string GradedAlgebra::to_string(const Element& e) const {
    return pres_.poly_to_string(poly_of(e));
}

Element GradedAlgebra::add(const Element& a, const Element& b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree != b.degree) fail("DegreeOutOfRange", "adding mixed degrees");
    return Element{a.degree, svec_add(a.c, b.c)};
}

Element GradedAlgebra::scaled(const Element& a, const Scalar& s) const {
    return Element{a.degree, svec_scaled(a.c, s)};
}

Element GradedAlgebra::multiply(const Element& a, const Element& b) const {
    int n = a.degree + b.degree;
    if (n > trunc())
        fail("DegreeOutOfRange", "product degree " + std::to_string(n) + " beyond the wall");
    const DegreeBasis& ba = basis(a.degree);
    const DegreeBasis& bb = basis(b.degree);
    Element acc = zero(n);
    for (const auto& [i, ci] : a.c) {
        for (const auto& [j, cj] : b.c) {
            Word w = ba.words[i];
            const Word& wj = bb.words[j];
            w.insert(w.end(), wj.begin(), wj.end());
            acc = add(acc, scaled(reduce_word(w), ci * cj));
        }
    }
    return acc;
}

Subspace GradedAlgebra::ideal_slice(int n) const {
    const DegreeBasis& b = basis(n);
    if (b.free_slice) return Subspace::zero((int)b.words.size(), field());
    Subspace s{(int)b.all_words.size(), field(), b.ideal_rows, {}};
    for (const auto& [piv, row] : b.pivot_row) {
        (void)row;
        s.pivots.push_back(piv);
    }
    return s;
}

long GradedAlgebra::word_count(int n) const { return (long)enumerate_words(pres_, n).size(); }

} // namespace dgk
