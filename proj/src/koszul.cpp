#include "dgk/koszul.hpp"

#include <random>

namespace dgk {

Verdict is_koszul_dg(const SemifreeResolution& r) {
    Verdict v;
    v.window = {r.window.max_degree, r.window.max_stage};
    TorTable tor = tor_dims(r);
    bool tor_conc = tor.concentrated_in_degree_zero();
    for (int i = 0; i < r.p->size(); ++i) {
        const SemibasisElt& e = r.p->elt(i);
        if (e.cdeg != 0) {
            v.outcome = "no";
            v.witness = "semibasis element e" + std::to_string(i) + " at stage " +
                        std::to_string(e.stage) + " has cohomological degree " +
                        std::to_string(e.cdeg);
            break;
        }
    }
    if (v.outcome.empty()) {
        if (r.window_exhausted && r.acyclic_through + 1 != 1) {
            /* the cut-off failure would adjoin a nonzero-degree element */
            v.outcome = "inconclusive";
            v.witness = "stage window exhausted with the pending failure at degree " +
                        std::to_string(r.acyclic_through + 1);
        } else {
            v.outcome = "yes";
        }
    }
    /* Ext^n(k,k) read off the same resolution vanishes for n != 0 exactly
       when every dual generator has degree 0, i.e. exactly when Tor does */
    bool ext_conc = true;
    for (int i = 0; i < r.p->size(); ++i)
        if (r.p->elt(i).cdeg != 0) ext_conc = false;
    v.details["tor_concentrated_in_degree_0"] = tor_conc ? "true" : "false";
    v.details["ext_concentrated_in_degree_0"] = ext_conc ? "true" : "false";
    v.details["resolution_complete_within_window"] = r.complete_within_window() ? "true" : "false";
    if (tor_conc != ext_conc || (v.outcome == "no") == tor_conc)
        fail("Internal", "semibasis/Ext/Tor concentration read-offs disagree");
    return v;
}

Verdict is_koszul_dg(std::shared_ptr<DGAlgebra> a, Window w) {
    SemifreeResolution r = minimal_resolution(a, ResolutionWindow{w.max_degree, w.max_stage});
    return is_koszul_dg(r);
}

namespace {

/* free graded module over a graded algebra, presented by generator degrees */
struct FreeSlice {
    int degree = 0;
    std::vector<std::pair<int, int>> items; /* (generator, algebra basis index) */
    std::vector<int> offset;
    int dim = 0;
};

FreeSlice free_slice(const GradedAlgebra& r, const std::vector<int>& gdeg, int t) {
    FreeSlice s;
    s.degree = t;
    s.offset.assign(gdeg.size(), -1);
    for (int g = 0; g < (int)gdeg.size(); ++g) {
        int adeg = t - gdeg[g];
        if (adeg < 0 || adeg > r.trunc()) continue;
        s.offset[g] = s.dim;
        for (int j = 0; j < r.dim(adeg); ++j) s.items.emplace_back(g, j);
        s.dim += r.dim(adeg);
    }
    return s;
}

/* multiply a slice vector by an algebra basis element on the left */
SVec free_mult(const GradedAlgebra& r, const std::vector<int>& gdeg, const Element& a,
               const SVec& v, const FreeSlice& src, const FreeSlice& dst) {
    std::map<int, Scalar> acc;
    for (const auto& [i, c] : v) {
        auto [g, j] = src.items[i];
        Element prod = r.multiply(a, r.basis_element(src.degree - gdeg[g], j));
        for (const auto& [k, pc] : prod.c) {
            int pos = dst.offset[g] + k;
            Scalar val = c * pc;
            auto it = acc.find(pos);
            if (it == acc.end()) acc.emplace(pos, val);
            else {
                it->second += val;
                if (it->second.is_zero()) acc.erase(it);
            }
        }
    }
    return SVec(acc.begin(), acc.end());
}

} // namespace

GradedFreeResolution graded_minimal_resolution(const GradedAlgebra& r, int dmax) {
    if (r.pres().has_differential())
        fail("InvalidDGAlgebra", "the graded Koszul test expects a zero differential");
    if (dmax > r.trunc()) fail("DegreeOutOfRange", "graded resolution beyond the wall");
    const Field& f = r.field();
    GradedFreeResolution out;
    out.max_degree = dmax;
    out.stages.push_back({{0}});

    /* current stage data: generator degrees plus, per internal degree, the
       kernel of the map to the previous stage */
    std::vector<int> gdeg{0};
    std::map<int, Subspace> kernel; /* internal degree -> subspace of slice */
    for (int t = 1; t <= dmax; ++t) kernel.emplace(t, Subspace::full(r.dim(t), f));
    kernel.emplace(0, Subspace::zero(1, f));

    for (int stage = 1; stage <= dmax; ++stage) {
        /* minimal generators of the kernel: K_t / (R_+ K)_t */
        std::vector<int> new_gdeg;
        std::vector<SVec> new_images; /* in stage-(n-1) free-module coordinates */
        std::vector<int> image_degree;
        bool kernel_empty = true;
        for (int t = 0; t <= dmax; ++t) {
            const Subspace& kt = kernel.at(t);
            if (kt.dim() == 0) continue;
            kernel_empty = false;
            FreeSlice st = free_slice(r, gdeg, t);
            std::vector<SVec> lower;
            for (int s = 1; t - s >= 0; ++s) {
                auto it = kernel.find(t - s);
                if (it == kernel.end() || it->second.dim() == 0) continue;
                FreeSlice ss = free_slice(r, gdeg, t - s);
                for (int b = 0; b < r.dim(s); ++b)
                    for (const SVec& v : it->second.basis) {
                        SVec prod = free_mult(r, gdeg, r.basis_element(s, b), v, ss, st);
                        if (!prod.empty()) lower.push_back(std::move(prod));
                    }
            }
            Subspace plus = Subspace::span(lower, st.dim, f);
            for (const SVec& rep : subspace_quotient(kt, plus)) {
                new_gdeg.push_back(t);
                new_images.push_back(rep);
                image_degree.push_back(t);
            }
        }
        if (kernel_empty) {
            out.terminated = true;
            return out;
        }
        if (new_gdeg.empty()) return out; /* kernel invisible inside the window */
        out.stages.push_back({new_gdeg});

        /* next kernel: degreewise kernel of delta(b g_i) = b image_i */
        std::map<int, Subspace> next_kernel;
        for (int t = 0; t <= dmax; ++t) {
            FreeSlice src = free_slice(r, new_gdeg, t);
            if (src.dim == 0) {
                next_kernel.emplace(t, Subspace::zero(0, f));
                continue;
            }
            FreeSlice dst = free_slice(r, gdeg, t);
            SparseMatrix m(dst.dim, src.dim, f);
            for (int col = 0; col < src.dim; ++col) {
                auto [g, j] = src.items[col];
                FreeSlice gsrc = free_slice(r, gdeg, new_gdeg[g]);
                SVec img = free_mult(r, gdeg, r.basis_element(t - new_gdeg[g], j), new_images[g],
                                     gsrc, dst);
                for (const auto& [row, v] : img) m.set(row, col, v);
            }
            next_kernel.emplace(t, kernel_basis(m));
        }
        gdeg = new_gdeg;
        kernel = std::move(next_kernel);
    }
    return out;
}

Verdict is_koszul_graded(const Presentation& p, int dmax) {
    GradedAlgebra r(p);
    GradedFreeResolution res = graded_minimal_resolution(r, dmax);
    Verdict v;
    v.window = {dmax, dmax};
    v.outcome = "yes";
    for (int n = 0; n < (int)res.stages.size(); ++n) {
        for (int t : res.stages[n].gen_degrees) {
            if (t != n) {
                v.outcome = "no";
                v.witness = "stage " + std::to_string(n) + " has a generator of internal degree " +
                            std::to_string(t);
                v.details["nonlinear_syzygy"] = "Q_" + std::to_string(n) +
                                                " generated in degree " + std::to_string(t);
                break;
            }
        }
        if (v.outcome == "no") break;
    }
    v.details["resolution_terminated"] = res.terminated ? "true" : "false";
    return v;
}

QuadraticData quadratic_data(const Presentation& p) {
    for (const auto& g : p.generators)
        if (g.degree != 1) fail("NotQuadratic", "generator '" + g.name + "' has degree != 1");
    QuadraticData q;
    q.nvars = p.n_generators();
    for (const auto& g : p.generators) q.names.push_back(g.name);
    std::vector<SVec> rows;
    for (const NCPoly& rel : p.relations) {
        auto d = p.poly_degree(rel);
        if (!d || *d != 2)
            fail("NotQuadratic", "relation " + p.poly_to_string(rel) + " is not quadratic");
        SVec row;
        for (const auto& [w, c] : rel.terms) row.emplace_back(w[0] * q.nvars + w[1], c);
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        rows.push_back(std::move(row));
    }
    q.relation_space = Subspace::span(rows, q.nvars * q.nvars, p.field);
    return q;
}

QuadraticData quadratic_dual_data(const QuadraticData& q, const Field& f) {
    QuadraticData out;
    out.nvars = q.nvars;
    for (const auto& n : q.names) out.names.push_back(n + "_star");
    /* U^perp = kernel of the evaluation pairing against U */
    SparseMatrix m((int)q.relation_space.basis.size(), q.nvars * q.nvars, f);
    for (int r = 0; r < (int)q.relation_space.basis.size(); ++r)
        for (const auto& [c, v] : q.relation_space.basis[r]) m.set(r, c, v);
    out.relation_space = kernel_basis(m);
    return out;
}

Presentation quadratic_dual_presentation(const QuadraticData& q, const Field& f, int trunc) {
    QuadraticData dual = quadratic_dual_data(q, f);
    Presentation p;
    p.field = f;
    p.truncation_degree = trunc;
    for (const auto& n : dual.names) p.generators.push_back({n, 1});
    for (const SVec& v : dual.relation_space.basis) {
        NCPoly rel;
        for (const auto& [idx, c] : v)
            rel.add_term({idx / q.nvars, idx % q.nvars}, c);
        p.relations.push_back(std::move(rel));
    }
    p.differential.assign(p.generators.size(), NCPoly{});
    p.validate_structure();
    return p;
}

namespace {

Verdict quasi_koszul_impl(const FinAlgebra& e, int smax, bool strongly) {
    std::vector<Subspace> powers = e.radical_powers(); /* NotLocal check */
    LocalResolution res = local_minimal_resolution(e, smax);
    Verdict v;
    v.window = {smax, smax};
    v.outcome = "yes";
    const int nil = (int)powers.size() - 1;
    for (int n = 0; n < (int)res.kernels.size(); ++n) {
        const Subspace& ker = res.kernels[n];
        const int rank = res.ranks[n];
        /* powers beyond the nilpotency index vanish and both sides are zero */
        const int itop = std::min(strongly ? nil : 2, nil);
        for (int i = 2; i <= itop; ++i) {
            Subspace jip = radical_power_module(e, powers[i], rank);
            Subspace lhs = subspace_intersect(ker, jip);
            Subspace rhs = radical_times(e, powers[i - 1], ker, rank);
            if (!(lhs == rhs)) {
                v.outcome = "no";
                v.witness = "ker delta_" + std::to_string(n) + " cap J^" + std::to_string(i) +
                            " P_" + std::to_string(n) + " != J^" + std::to_string(i - 1) +
                            " ker delta_" + std::to_string(n) + " (dims " +
                            std::to_string(lhs.dim()) + " vs " + std::to_string(rhs.dim()) + ")";
                v.details["witness_stage"] = std::to_string(n);
                v.details["witness_power"] = std::to_string(i);
                return v;
            }
        }
    }
    v.details["resolution_terminated"] = res.window_exhausted ? "false" : "true";
    return v;
}

} // namespace

Verdict is_quasi_koszul(const FinAlgebra& e, int smax) { return quasi_koszul_impl(e, smax, false); }

Verdict is_strongly_quasi_koszul(const FinAlgebra& e, int smax) {
    return quasi_koszul_impl(e, smax, true);
}

Verdict generated_in_degree_one(const CohomologyAlgebra& h) {
    Verdict v;
    v.window = {h.dmax, h.dmax};
    v.outcome = "yes";
    const Field& f = h.field;
    /* S^n = H^1 . S^{n-1} */
    std::vector<Subspace> s;
    s.push_back(Subspace::full(h.dims[0], f));
    if (h.dmax >= 1) s.push_back(Subspace::full(h.dims[1], f));
    for (int n = 2; n <= h.dmax; ++n) {
        std::vector<SVec> span;
        const auto& table = h.products.at({1, n - 1});
        for (int i = 0; i < h.dims[1]; ++i)
            for (const SVec& prev : s[n - 1].basis) {
                SVec acc;
                for (const auto& [j, c] : prev) acc = svec_axpy(acc, c, table[i][j]);
                if (!acc.empty()) span.push_back(std::move(acc));
            }
        s.push_back(Subspace::span(span, h.dims[n], f));
        if (s[n].dim() != h.dims[n]) {
            v.outcome = "no";
            v.witness = "H^" + std::to_string(n) + " has dimension " + std::to_string(h.dims[n]) +
                        " but products from degree 1 span only " + std::to_string(s[n].dim());
            v.details["witness_degree"] = std::to_string(n);
            return v;
        }
    }
    return v;
}

Verdict as_gorenstein(std::shared_ptr<DGAlgebra> a, Window w) {
    auto b = std::make_shared<DGAlgebra>(a->opposite());
    SemifreeResolution res = minimal_resolution(b, ResolutionWindow{w.max_degree, w.max_stage});
    const SemifreeModule& p = *res.p;
    const Field& f = b->field();
    const GradedAlgebra& g = b->algebra();
    Verdict v;
    v.window = w;

    int maxc = 0;
    for (int i = 0; i < p.size(); ++i) maxc = std::max(maxc, p.elt(i).cdeg);
    const int lmin = -maxc;
    const int lmax = w.max_degree - maxc - 1;

    /* Hom_{A^op}(P, A) slices: one block of B^{cdeg(e)+l} per semibasis elt */
    struct HomSlice {
        std::vector<std::pair<int, int>> items; /* (elt, algebra index) */
        std::vector<int> offset;
        int dim = 0;
    };
    auto hom_slice = [&](int l) {
        HomSlice s;
        s.offset.assign(p.size(), -1);
        for (int e = 0; e < p.size(); ++e) {
            int adeg = p.elt(e).cdeg + l;
            if (adeg < 0 || adeg > g.trunc()) continue;
            s.offset[e] = s.dim;
            for (int j = 0; j < g.dim(adeg); ++j) s.items.emplace_back(e, j);
            s.dim += g.dim(adeg);
        }
        return s;
    };

    CochainComplex cx;
    cx.field = f;
    std::map<int, HomSlice> slices;
    for (int l = lmin; l <= lmax + 1; ++l) {
        slices.emplace(l, hom_slice(l));
        cx.dims[l] = slices.at(l).dim;
    }
    for (int l = lmin; l <= lmax; ++l) {
        const HomSlice& src = slices.at(l);
        const HomSlice& dst = slices.at(l + 1);
        SparseMatrix m(dst.dim, src.dim, f);
        for (int col = 0; col < src.dim; ++col) {
            auto [e, j] = src.items[col];
            Element bb = g.basis_element(p.elt(e).cdeg + l, j);
            /* d_B o g */
            Element dbb = b->differentiate(bb);
            for (const auto& [k, c] : dbb.c) m.add_to(dst.offset[e] + k, col, c);
            /* -(-1)^{|g|} g o d_P: scan every element whose differential hits e */
            for (int ep = 0; ep < p.size(); ++ep) {
                const PElement& de = p.differential_of(ep);
                auto it = de.comps.find(e);
                if (it == de.comps.end()) continue;
                const Element& coeff = it->second; /* in B^{cdeg(ep)+1-cdeg(e)} */
                long sgn = ((long)l * (1 + coeff.degree)) % 2;
                Scalar sign = Scalar(sgn == 0 ? -1 : 1, f);
                Element prod = g.multiply(coeff, bb);
                if (dst.offset[ep] < 0 && !prod.is_zero())
                    fail("Internal", "Hom slice misses a target block");
                for (const auto& [k, c] : prod.c) m.add_to(dst.offset[ep] + k, col, sign * c);
            }
        }
        cx.set_diff(l, std::move(m));
    }

    std::vector<std::pair<int, int>> nonzero; /* (degree, dim) */
    for (int l = lmin; l <= lmax; ++l) {
        auto h = cx.cohomology(l);
        if (h.dim() > 0) nonzero.emplace_back(l, h.dim());
    }
    std::string dims_str;
    for (const auto& [l, d] : nonzero)
        dims_str += (dims_str.empty() ? "" : ", ") + std::to_string(l) + ":" + std::to_string(d);
    v.details["rhom_nonzero_degrees"] = dims_str.empty() ? "none" : dims_str;
    v.details["rhom_window"] = "[" + std::to_string(lmin) + ", " + std::to_string(lmax) + "]";
    v.details["resolution_complete_within_window"] =
        res.complete_within_window() ? "true" : "false";

    if (!res.complete_within_window()) {
        v.outcome = "inconclusive";
        v.witness = "the right resolution of k did not close inside the stage window";
        return v;
    }
    /* compact case: cross-check the rank-1 top stage */
    const auto& top = res.stages.back();
    v.details["top_stage_rank"] = std::to_string(top.size());
    if (nonzero.size() == 1 && nonzero[0].second == 1) {
        int l0 = nonzero[0].first;
        if (l0 == lmax) {
            v.outcome = "inconclusive";
            v.witness = "the only RHom class sits on the window boundary";
            return v;
        }
        v.outcome = "yes";
        v.shift = l0;
        bool top_ok = top.size() == 1 && p.elt(top[0]).cdeg == -l0;
        v.details["top_stage_matches_shift"] = top_ok ? "true" : "false";
        if (!top_ok) {
            v.outcome = "inconclusive";
            v.witness = "RHom is one dimensional but the top stage does not match the shift";
        }
        return v;
    }
    if (nonzero.empty()) {
        v.outcome = "inconclusive";
        v.witness = "no RHom classes inside the window";
        return v;
    }
    v.outcome = "no";
    v.witness = "RHom_{A^op}(k, A) has total dimension " + [&] {
        int t = 0;
        for (const auto& [l, d] : nonzero) t += d;
        return std::to_string(t);
    }() + " inside the window (degrees " + dims_str + ")";
    return v;
}

Verdict is_frobenius(const FinAlgebra& e, int random_trials, uint64_t seed) {
    e.radical_powers(); /* NotLocal check */
    Verdict v;
    v.window = {0, 0};
    const Field& f = e.field();
    const int m = e.dim();

    Subspace rsoc = e.right_socle();
    Subspace lsoc = e.left_socle();
    v.details["right_socle_dim"] = std::to_string(rsoc.dim());
    v.details["left_socle_dim"] = std::to_string(lsoc.dim());
    if (rsoc.dim() >= 2 || lsoc.dim() >= 2) {
        v.outcome = "no";
        v.witness = (rsoc.dim() >= 2 ? "right" : "left") +
                    std::string(" socle has dimension ") +
                    std::to_string(std::max(rsoc.dim(), lsoc.dim()));
        return v;
    }

    auto nondegenerate = [&](const std::vector<Scalar>& lambda) {
        SparseMatrix gram(m, m, f);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                Scalar s = Scalar::zero(f);
                for (const auto& [k, c] : e.mult(i, j)) s += lambda[k] * c;
                if (!s.is_zero()) gram.set(i, j, s);
            }
        return rref(gram).rank() == m;
    };
    auto found = [&](const std::vector<Scalar>& lambda) {
        v.outcome = "yes";
        std::string ls;
        for (int i = 0; i < m; ++i) {
            if (lambda[i].is_zero()) continue;
            if (!ls.empty()) ls += " + ";
            ls += lambda[i].to_string() + "*" + e.name(i) + "^*";
        }
        v.details["functional"] = ls;
        return v;
    };

    /* deterministic sweep: dual basis vectors and their pairwise sums */
    std::vector<Scalar> lambda(m, Scalar::zero(f));
    for (int i = 0; i < m; ++i) {
        std::fill(lambda.begin(), lambda.end(), Scalar::zero(f));
        lambda[i] = Scalar::one(f);
        if (nondegenerate(lambda)) return found(lambda);
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            std::fill(lambda.begin(), lambda.end(), Scalar::zero(f));
            lambda[i] = Scalar::one(f);
            lambda[j] = Scalar::one(f);
            if (nondegenerate(lambda)) return found(lambda);
        }

    if (!f.is_q()) {
        /* exhaustive enumeration over tiny search spaces */
        double space = 1;
        for (int i = 0; i < m && space <= 65536.0; ++i) space *= (double)f.p;
        if (space <= 65536.0) {
            std::vector<uint64_t> digits(m, 0);
            while (true) {
                for (int i = 0; i < m; ++i) lambda[i] = Scalar((long)digits[i], f);
                if (nondegenerate(lambda)) return found(lambda);
                int pos = 0;
                while (pos < m && ++digits[pos] == f.p) digits[pos++] = 0;
                if (pos == m) break;
            }
            v.outcome = "no";
            v.witness = "no nondegenerate functional exists (exhausted GF(" +
                        std::to_string(f.p) + ")^" + std::to_string(m) + ")";
            return v;
        }
    }

    std::mt19937_64 rng(seed);
    for (int t = 0; t < random_trials; ++t) {
        for (int i = 0; i < m; ++i)
            lambda[i] = f.is_q() ? Scalar((long)(rng() % 19) - 9, f)
                                 : Scalar((long)(rng() % f.p), f);
        if (nondegenerate(lambda)) return found(lambda);
    }
    v.outcome = "inconclusive";
    v.witness = "socles are simple but no nondegenerate functional was found within the budget";
    return v;
}

Verdict cohomology_koszul(const CohomologyAlgebra& h) {
    Verdict gen = generated_in_degree_one(h);
    if (!gen.yes()) {
        gen.details["reason"] = "not generated in degree 1";
        return gen;
    }
    Verdict v;
    v.window = {h.dmax, h.dmax};
    const Field& f = h.field;
    const int nv = h.dmax >= 1 ? h.dims[1] : 0;
    if (nv == 0) {
        /* H = k inside the window */
        v.outcome = "yes";
        v.details["cover"] = "k";
        return v;
    }
    /* quadratic cover T(H^1)/(ker of multiplication into H^2) */
    Presentation cover;
    cover.field = f;
    cover.truncation_degree = std::max(h.dmax, 2);
    for (int i = 0; i < nv; ++i) cover.generators.push_back({"h" + std::to_string(i + 1), 1});
    if (h.dmax >= 2) {
        const auto& table = h.products.at({1, 1});
        SparseMatrix mult(h.dims[2], nv * nv, f);
        for (int i = 0; i < nv; ++i)
            for (int j = 0; j < nv; ++j)
                for (const auto& [k, c] : table[i][j]) mult.set(k, i * nv + j, c);
        for (const SVec& u : kernel_basis(mult).basis) {
            NCPoly rel;
            for (const auto& [idx, c] : u) rel.add_term({idx / nv, idx % nv}, c);
            cover.relations.push_back(std::move(rel));
        }
    }
    cover.differential.assign(cover.generators.size(), NCPoly{});
    cover.validate_structure();
    GradedAlgebra cov(cover);
    for (int n = 2; n <= h.dmax; ++n) {
        if (cov.dim(n) != h.dims[n]) {
            v.outcome = "no";
            v.witness = "H is not quadratic: the quadratic cover has dimension " +
                        std::to_string(cov.dim(n)) + " in degree " + std::to_string(n) +
                        " but H has " + std::to_string(h.dims[n]);
            v.details["witness_degree"] = std::to_string(n);
            return v;
        }
    }
    Verdict graded = is_koszul_graded(cover, h.dmax >= 2 ? h.dmax : 2);
    graded.details["cover_matches_H_through"] = std::to_string(h.dmax);
    return graded;
}

bool graded_iso_search(const CohomologyAlgebra& a, const CohomologyAlgebra& b, int trials,
                       uint64_t seed) {
    if (a.dmax != b.dmax || a.dims != b.dims) return false;
    const Field& f = a.field;
    std::mt19937_64 rng(seed);
    const int dmax = a.dmax;

    for (int trial = 0; trial <= trials; ++trial) {
        /* phi_1: identity first, then random invertible */
        const int d1 = dmax >= 1 ? a.dims[1] : 0;
        std::vector<std::vector<Scalar>> phi1(d1, std::vector<Scalar>(d1, Scalar::zero(f)));
        if (trial == 0) {
            for (int i = 0; i < d1; ++i) phi1[i][i] = Scalar::one(f);
        } else {
            SparseMatrix chk(d1, d1, f);
            for (int i = 0; i < d1; ++i)
                for (int j = 0; j < d1; ++j) {
                    phi1[i][j] = Scalar((long)(rng() % 7) - 3, f);
                    if (!phi1[i][j].is_zero()) chk.set(i, j, phi1[i][j]);
                }
            if (rref(chk).rank() != d1) continue;
        }
        /* phi_n columns stored per degree: phi[n] is dims x dims */
        std::vector<std::vector<std::vector<Scalar>>> phi(dmax + 1);
        phi[0] = {{Scalar::one(f)}};
        if (dmax >= 1) phi[1] = phi1;
        bool ok = true;
        for (int n = 2; n <= dmax && ok; ++n) {
            const int dn = a.dims[n];
            if (dn == 0) { phi[n] = {}; continue; }
            /* unknown matrix X: dn x dn (target x source); constraints:
               X . prodA(i,j) = phiB-product for every split p+q = n */
            std::vector<SVec> rows;    /* lhs rows over dn*dn unknowns */
            std::vector<Scalar> rhs;
            for (int p = 1; p < n; ++p) {
                int q = n - p;
                const auto& ta = a.products.at({p, q});
                const auto& tb = b.products.at({p, q});
                for (int i = 0; i < a.dims[p]; ++i)
                    for (int j = 0; j < a.dims[q]; ++j) {
                        /* rhs vector: product of images in b */
                        std::vector<Scalar> rv(dn, Scalar::zero(f));
                        for (int ii = 0; ii < b.dims[p]; ++ii)
                            for (int jj = 0; jj < b.dims[q]; ++jj) {
                                Scalar c = phi[p][ii][i] * phi[q][jj][j];
                                if (c.is_zero()) continue;
                                for (const auto& [k, v] : tb[ii][jj]) rv[k] += c * v;
                            }
                        /* lhs: X applied to the a-product vector */
                        const SVec& av = ta[i][j];
                        for (int row = 0; row < dn; ++row) {
                            SVec eq;
                            for (const auto& [k, v] : av) eq.emplace_back(row * dn + k, v);
                            rows.push_back(std::move(eq));
                            rhs.push_back(rv[row]);
                        }
                    }
            }
            SparseMatrix sys = SparseMatrix::from_rows(rows, dn * dn, f);
            auto sol = solve(sys, rhs);
            if (!sol) { ok = false; break; }
            /* particular solution plus random kernel shifts until invertible */
            Subspace ker = kernel_basis(sys);
            bool inv = false;
            for (int attempt = 0; attempt < 8 && !inv; ++attempt) {
                std::vector<Scalar> x = *sol;
                if (attempt > 0)
                    for (const SVec& kv : ker.basis) {
                        long c = (long)(rng() % 5) - 2;
                        if (c != 0)
                            for (const auto& [idx, v] : kv) x[idx] += Scalar(c, f) * v;
                    }
                SparseMatrix chk(dn, dn, f);
                std::vector<std::vector<Scalar>> cand(dn, std::vector<Scalar>(dn, Scalar::zero(f)));
                for (int r2 = 0; r2 < dn; ++r2)
                    for (int c2 = 0; c2 < dn; ++c2) {
                        cand[r2][c2] = x[r2 * dn + c2];
                        if (!cand[r2][c2].is_zero()) chk.set(r2, c2, cand[r2][c2]);
                    }
                if (rref(chk).rank() == dn) {
                    phi[n] = std::move(cand);
                    inv = true;
                }
            }
            if (!inv) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

} // namespace dgk
