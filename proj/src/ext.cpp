#include "dgk/ext.hpp"

#include <random>

namespace dgk {

TorTable tor_dims(const SemifreeResolution& r) {
    TorTable t;
    t.window_exhausted = r.window_exhausted;
    t.dims = r.rank_table();
    return t;
}

ExtAlgebra::ExtAlgebra(const SemifreeResolution& r) : res_(&r) {
    const SemifreeModule& p = *r.p;
    const Field& f = field();
    const int n = p.size();
    table_.assign(n, std::vector<SVec>(n));
    known_.assign(n, std::vector<bool>(n, false));
    for (int j = 0; j < n; ++j) {
        /* one lift per right factor x = (e_j)^*; every product (e_i)^* . x
           reads off the scalar coefficients of the lift images */
        ModuleMorphism fx =
            lift_functional(r, p.elt(j).stage, {{j, Scalar::one(f)}}, r);
        for (int t = 0; t < n; ++t) {
            if (p.elt(t).stage < p.elt(j).stage) continue;
            for (const auto& [e, c] : fx.images[t].comps) {
                if (c.degree != 0) continue;
                Scalar s = svec_get(c.c, 0, f);
                if (!s.is_zero()) table_[e][j].emplace_back(t, s);
            }
        }
        for (int i = 0; i < n; ++i) {
            std::sort(table_[i][j].begin(), table_[i][j].end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            known_[i][j] = complete() || p.elt(i).stage + p.elt(j).stage <= max_stage();
        }
    }
}

bool ExtAlgebra::product_known(int i, int j) const { return known_[i][j]; }

const SVec& ExtAlgebra::product(int i, int j) const {
    if (!known_[i][j])
        fail("WindowExhausted", "product of stages " + std::to_string(stage_of(i)) + " and " +
                                    std::to_string(stage_of(j)) + " exceeds the stage window");
    return table_[i][j];
}

std::vector<int> ExtAlgebra::filtration_layer_dims() const {
    std::vector<int> dims(res_->stages.size(), 0);
    for (int i = 0; i < size(); ++i) ++dims[stage_of(i)];
    return dims;
}

bool ExtAlgebra::filtration_respected() const {
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j)
            for (const auto& [t, c] : table_[i][j]) {
                (void)c;
                if (stage_of(t) < stage_of(i) + stage_of(j)) return false;
            }
    return true;
}

bool ExtAlgebra::is_associative_where_known() const {
    /* coordinates inside the stage window receive no contribution from the
       truncated tails, so raw-table composition is exact there */
    const int n = size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                std::map<int, Scalar> lhs, rhs;
                for (const auto& [t, c] : table_[i][j])
                    for (const auto& [u, d] : table_[t][k]) {
                        auto it = lhs.find(u);
                        if (it == lhs.end()) lhs.emplace(u, c * d);
                        else it->second += c * d;
                    }
                for (const auto& [t, c] : table_[j][k])
                    for (const auto& [u, d] : table_[i][t]) {
                        auto it = rhs.find(u);
                        if (it == rhs.end()) rhs.emplace(u, c * d);
                        else it->second += c * d;
                    }
                for (auto it = lhs.begin(); it != lhs.end();) {
                    if (it->second.is_zero()) it = lhs.erase(it);
                    else ++it;
                }
                for (auto it = rhs.begin(); it != rhs.end();) {
                    if (it->second.is_zero()) it = rhs.erase(it);
                    else ++it;
                }
                if (lhs != rhs) return false;
            }
    return true;
}

bool ExtAlgebra::augmentation_is_algebra_map() const {
    const Field& f = field();
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j) {
            if (!known_[i][j]) continue;
            Scalar lhs = svec_get(table_[i][j], 0, f);
            Scalar rhs = (i == 0 && j == 0) ? Scalar::one(f) : Scalar::zero(f);
            if (lhs != rhs) return false;
        }
    return true;
}

FilteredGraded ExtAlgebra::gr_of_filtration() const {
    FilteredGraded g;
    g.layer_dims = filtration_layer_dims();
    /* per-stage positions */
    std::vector<std::vector<int>> layer(res_->stages.size());
    std::vector<int> pos(size());
    for (int i = 0; i < size(); ++i) {
        pos[i] = (int)layer[stage_of(i)].size();
        layer[stage_of(i)].push_back(i);
    }
    const int smax = max_stage();
    for (int sn = 0; sn <= smax; ++sn)
        for (int sm = 0; sn + sm <= smax; ++sm) {
            std::vector<std::vector<SVec>> tbl(layer[sn].size(),
                                               std::vector<SVec>(layer[sm].size()));
            for (size_t a = 0; a < layer[sn].size(); ++a)
                for (size_t b = 0; b < layer[sm].size(); ++b) {
                    if (!known_[layer[sn][a]][layer[sm][b]]) continue;
                    SVec v;
                    for (const auto& [t, c] : table_[layer[sn][a]][layer[sm][b]])
                        if (stage_of(t) == sn + sm) v.emplace_back(pos[t], c);
                    tbl[a][b] = std::move(v);
                }
            g.products.emplace(std::make_pair(sn, sm), std::move(tbl));
        }
    return g;
}

FinAlgebra ExtAlgebra::to_fin_algebra() const {
    if (!complete())
        fail("WindowExhausted", "the Ext algebra is window-truncated; no finite table");
    std::vector<std::string> names;
    for (int i = 0; i < size(); ++i) names.push_back(i == 0 ? "1" : "E" + std::to_string(i));
    std::vector<std::vector<SVec>> table(size(), std::vector<SVec>(size()));
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j) table[i][j] = table_[i][j];
    return FinAlgebra(field(), std::move(names), std::move(table));
}

ExtAlgebra ext_algebra(const SemifreeResolution& r) { return ExtAlgebra(r); }

FilteredGraded radical_filtration(const FinAlgebra& e) {
    std::vector<Subspace> powers = e.radical_powers();
    FilteredGraded g;
    std::vector<std::vector<SVec>> reps;
    for (size_t i = 0; i + 1 < powers.size(); ++i) {
        reps.push_back(subspace_quotient(powers[i], powers[i + 1]));
        g.layer_dims.push_back((int)reps.back().size());
    }
    const int layers = (int)g.layer_dims.size();
    const Field& f = e.field();
    for (int n = 0; n < layers; ++n)
        for (int m = 0; n + m < layers; ++m) {
            std::vector<std::vector<SVec>> tbl(reps[n].size(), std::vector<SVec>(reps[m].size()));
            /* solve against [layer reps | next power] to project */
            const auto& target = reps[n + m];
            const Subspace& next = powers[n + m + 1];
            SparseMatrix mat(e.dim(), (int)target.size() + next.dim(), f);
            for (int k = 0; k < (int)target.size(); ++k)
                for (const auto& [r, v] : target[k]) mat.set(r, k, v);
            for (int k = 0; k < next.dim(); ++k)
                for (const auto& [r, v] : next.basis[k]) mat.set(r, (int)target.size() + k, v);
            for (size_t a = 0; a < reps[n].size(); ++a)
                for (size_t b = 0; b < reps[m].size(); ++b) {
                    SVec prod = e.multiply(reps[n][a], reps[m][b]);
                    auto x = solve(mat, svec_to_dense(prod, e.dim(), f));
                    if (!x) fail("Internal", "product escaped its radical layer");
                    SVec coords;
                    for (int k = 0; k < (int)target.size(); ++k)
                        if (!(*x)[k].is_zero()) coords.emplace_back(k, (*x)[k]);
                    tbl[a][b] = std::move(coords);
                }
            g.products.emplace(std::make_pair(n, m), std::move(tbl));
        }
    return g;
}

namespace {

struct WordRecipe {
    /* basis_expr[t] = (s, g): b_t = b_s * gen_g; b_0 = 1 */
    std::vector<std::pair<int, int>> expr;
};

/* a monomial basis of a local algebra in terms of radical generators */
std::optional<WordRecipe> monomial_basis(const FinAlgebra& a, const std::vector<SVec>& gens) {
    const Field& f = a.field();
    WordRecipe rec;
    rec.expr.push_back({-1, -1});
    std::vector<SVec> vals{a.unit()};
    Subspace span = Subspace::span({a.unit()}, a.dim(), f);
    size_t head = 0;
    while (span.dim() < a.dim() && head < vals.size()) {
        const size_t snapshot = vals.size();
        for (size_t s = head; s < snapshot; ++s) {
            for (int g = 0; g < (int)gens.size(); ++g) {
                SVec v = a.multiply(vals[s], gens[g]);
                if (svec_is_zero(v) || span.contains(v)) continue;
                rec.expr.push_back({(int)s, g});
                vals.push_back(v);
                std::vector<SVec> rows = span.basis;
                rows.push_back(v);
                span = Subspace::span(rows, a.dim(), f);
                if (span.dim() == a.dim()) return rec;
            }
        }
        if (vals.size() == snapshot) break; /* no progress */
        head = snapshot;
    }
    return span.dim() == a.dim() ? std::optional<WordRecipe>(rec) : std::nullopt;
}

} // namespace

std::optional<std::vector<SVec>> find_local_algebra_iso(const FinAlgebra& a, const FinAlgebra& b,
                                                        int trials, uint64_t seed) {
    if (a.dim() != b.dim()) return std::nullopt;
    if (a.radical_layer_dims() != b.radical_layer_dims()) return std::nullopt;
    const Field& f = a.field();
    std::vector<Subspace> pa = a.radical_powers();
    std::vector<Subspace> pb = b.radical_powers();
    std::vector<SVec> agens = subspace_quotient(pa[1], pa.size() > 2 ? pa[2] : Subspace::zero(a.dim(), f));
    std::vector<SVec> bgens = subspace_quotient(pb[1], pb.size() > 2 ? pb[2] : Subspace::zero(b.dim(), f));
    if (agens.size() != bgens.size()) return std::nullopt;
    auto rec = monomial_basis(a, agens);
    if (!rec) return std::nullopt;
    const int r = (int)agens.size();

    std::mt19937_64 rng(seed);
    auto attempt = [&](const std::vector<SVec>& images) -> std::optional<std::vector<SVec>> {
        /* evaluate the monomial basis in b */
        std::vector<SVec> phi_words(rec->expr.size());
        phi_words[0] = b.unit();
        for (size_t t = 1; t < rec->expr.size(); ++t)
            phi_words[t] = b.multiply(phi_words[rec->expr[t].first], images[rec->expr[t].second]);
        /* independence: phi extends linearly over the basis words of a */
        SparseMatrix m(a.dim(), a.dim(), f);
        for (int c = 0; c < a.dim(); ++c)
            for (const auto& [i, v] : phi_words[c]) m.set(i, c, v);
        if ((int)rref(m).rank() != a.dim()) return std::nullopt;
        /* the monomial basis expressed in a's coordinates */
        std::vector<SVec> avals(rec->expr.size());
        avals[0] = a.unit();
        for (size_t t = 1; t < rec->expr.size(); ++t)
            avals[t] = a.multiply(avals[rec->expr[t].first], agens[rec->expr[t].second]);
        SparseMatrix am(a.dim(), a.dim(), f);
        for (int c = 0; c < a.dim(); ++c)
            for (const auto& [i, v] : avals[c]) am.set(i, c, v);
        /* phi on a's standard basis: solve a-change-of-basis, then map */
        std::vector<SVec> phi_std(a.dim());
        for (int i = 0; i < a.dim(); ++i) {
            std::vector<Scalar> ei(a.dim(), Scalar::zero(f));
            ei[i] = Scalar::one(f);
            auto x = solve(am, ei);
            if (!x) return std::nullopt;
            SVec acc;
            for (int t = 0; t < a.dim(); ++t)
                if (!(*x)[t].is_zero()) acc = svec_axpy(acc, (*x)[t], phi_words[t]);
            phi_std[i] = std::move(acc);
        }
        /* exact multiplicativity on every basis pair */
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j) {
                SVec lhs;
                for (const auto& [k, c] : a.mult(i, j)) lhs = svec_axpy(lhs, c, phi_std[k]);
                SVec rhs = b.multiply(phi_std[i], phi_std[j]);
                if (lhs != rhs) return std::nullopt;
            }
        return phi_std;
    };

    /* deterministic sweep: match generator layers directly */
    if (auto got = attempt(bgens)) return got;
    for (int t = 0; t < trials; ++t) {
        std::vector<SVec> images(r);
        for (int i = 0; i < r; ++i) {
            SVec v;
            for (int g = 0; g < r; ++g) {
                long c = (long)(rng() % 7) - 3;
                if (c != 0) v = svec_axpy(v, Scalar(c, f), bgens[g]);
            }
            /* a random tail deeper in the radical */
            for (const SVec& w : (pb.size() > 2 ? pb[2].basis : std::vector<SVec>{})) {
                long c = (long)(rng() % 5) - 2;
                if (c != 0) v = svec_axpy(v, Scalar(c, f), w);
            }
            images[i] = std::move(v);
        }
        if (auto got = attempt(images)) return got;
    }
    return std::nullopt;
}

} // namespace dgk
