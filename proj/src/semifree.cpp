#include "dgk/semifree.hpp"

#include <random>

namespace dgk {

int SemifreeModule::add_element(int stage, int cdeg, PElement d) {
    const int id = (int)elts_.size();
    if (!d.is_zero() && d.degree != cdeg + 1)
        fail("Internal", "differential image must sit one degree up");
    for (const auto& [j, c] : d.comps) {
        (void)c;
        if (j < 0 || j >= id) fail("Internal", "differential must hit existing elements");
        if (elts_[j].stage >= stage) fail("Internal", "differential must point to earlier stages");
    }
    elts_.push_back({stage, cdeg});
    dimages_.push_back(std::move(d));
    return id;
}

SemifreeModule::Slice SemifreeModule::slice(int n) const {
    Slice s;
    s.degree = n;
    s.offset.assign(elts_.size(), -1);
    const GradedAlgebra& g = A_->algebra();
    for (int e = 0; e < (int)elts_.size(); ++e) {
        int adeg = n - elts_[e].cdeg;
        if (adeg < 0) continue;
        if (adeg > g.trunc())
            fail("DegreeOutOfRange", "module slice at degree " + std::to_string(n) +
                                         " needs coefficients beyond the wall");
        s.offset[e] = s.dim;
        for (int j = 0; j < g.dim(adeg); ++j) s.items.emplace_back(e, j);
        s.dim += g.dim(adeg);
    }
    return s;
}

PElement SemifreeModule::generator(int i) const {
    PElement z;
    z.degree = elts_[i].cdeg;
    z.comps.emplace(i, A_->algebra().unit());
    return z;
}

SVec SemifreeModule::to_coords(const PElement& z, const Slice& s) const {
    SVec out;
    for (const auto& [e, c] : z.comps) {
        if (s.offset[e] < 0) fail("Internal", "component outside the slice");
        for (const auto& [j, v] : c.c) out.emplace_back(s.offset[e] + j, v);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

PElement SemifreeModule::from_coords(int degree, const SVec& v) const {
    Slice s = slice(degree);
    PElement z = zero(degree);
    for (const auto& [i, c] : v) {
        auto [e, j] = s.items[i];
        auto it = z.comps.find(e);
        if (it == z.comps.end())
            it = z.comps.emplace(e, A_->algebra().zero(degree - elts_[e].cdeg)).first;
        it->second.c.emplace_back(j, c);
    }
    for (auto it = z.comps.begin(); it != z.comps.end();) {
        if (it->second.is_zero()) it = z.comps.erase(it);
        else ++it;
    }
    return z;
}

PElement SemifreeModule::add(const PElement& a, const PElement& b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree != b.degree) fail("Internal", "adding mixed module degrees");
    PElement out = a;
    const GradedAlgebra& g = A_->algebra();
    for (const auto& [e, c] : b.comps) {
        auto it = out.comps.find(e);
        if (it == out.comps.end()) out.comps.emplace(e, c);
        else {
            it->second = g.add(it->second, c);
            if (it->second.is_zero()) out.comps.erase(it);
        }
    }
    return out;
}

PElement SemifreeModule::scaled(const PElement& a, const Scalar& c) const {
    if (c.is_zero()) return zero(a.degree);
    PElement out = a;
    for (auto& [e, v] : out.comps) v = A_->algebra().scaled(v, c);
    return out;
}

PElement SemifreeModule::act(const Element& a, const PElement& z) const {
    PElement out = zero(a.degree + z.degree);
    const GradedAlgebra& g = A_->algebra();
    for (const auto& [e, c] : z.comps) {
        Element prod = g.multiply(a, c);
        if (prod.is_zero()) continue;
        auto it = out.comps.find(e);
        if (it == out.comps.end()) out.comps.emplace(e, std::move(prod));
        else it->second = g.add(it->second, prod);
    }
    for (auto it = out.comps.begin(); it != out.comps.end();) {
        if (it->second.is_zero()) it = out.comps.erase(it);
        else ++it;
    }
    return out;
}

PElement SemifreeModule::differentiate(const PElement& z) const {
    /* d(a e) = d(a) e + (-1)^{|a|} a d(e) */
    PElement out = zero(z.degree + 1);
    const GradedAlgebra& g = A_->algebra();
    for (const auto& [e, c] : z.comps) {
        Element dc = A_->differentiate(c);
        if (!dc.is_zero()) {
            PElement t = zero(z.degree + 1);
            t.comps.emplace(e, dc);
            out = add(out, t);
        }
        const PElement& de = dimages_[e];
        if (!de.is_zero()) {
            PElement t = act(c, de);
            if (c.degree % 2 != 0) t = scaled(t, Scalar(-1, g.field()));
            out = add(out, t);
        }
    }
    return out;
}

SparseMatrix SemifreeModule::d_matrix(int n) const {
    Slice src = slice(n);
    Slice dst = slice(n + 1);
    SparseMatrix m(dst.dim, src.dim, A_->field());
    const GradedAlgebra& g = A_->algebra();
    for (int col = 0; col < src.dim; ++col) {
        auto [e, j] = src.items[col];
        PElement z = zero(n);
        z.comps.emplace(e, g.basis_element(n - elts_[e].cdeg, j));
        PElement dz = differentiate(z);
        for (const auto& [i, v] : to_coords(dz, dst)) m.set(i, col, v);
    }
    return m;
}

Scalar SemifreeModule::epsilon(const PElement& z) const {
    const Field& f = A_->field();
    if (elts_.empty() || z.degree != elts_[0].cdeg) return Scalar::zero(f);
    auto it = z.comps.find(0);
    if (it == z.comps.end() || it->second.degree != 0) return Scalar::zero(f);
    return svec_get(it->second.c, 0, f);
}

PElement SemifreeModule::drop_below_stage(const PElement& z, int stage_min) const {
    PElement out = zero(z.degree);
    for (const auto& [e, c] : z.comps)
        if (elts_[e].stage >= stage_min) out.comps.emplace(e, c);
    return out;
}

PElement SemifreeModule::scalar_part(const PElement& z) const {
    PElement out = zero(z.degree);
    for (const auto& [e, c] : z.comps)
        if (c.degree == 0 && !c.is_zero()) out.comps.emplace(e, c);
    return out;
}

std::string SemifreeModule::to_string(const PElement& z) const {
    if (z.is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : z.comps) {
        if (!out.empty()) out += " + ";
        out += "(" + A_->algebra().to_string(c) + ")*e" + std::to_string(e);
    }
    return out;
}

std::map<std::pair<int, int>, int> SemifreeResolution::rank_table() const {
    std::map<std::pair<int, int>, int> t;
    for (int i = 0; i < p->size(); ++i) {
        const SemibasisElt& e = p->elt(i);
        ++t[{e.stage, e.cdeg}];
    }
    return t;
}

namespace {

struct DegreeHomology {
    Subspace kernel;
    Subspace image;
    std::vector<SVec> failures; /* classes to kill (mod [e0] at degree 0) */
};

DegreeHomology augmented_failures(const SemifreeModule& p, int j) {
    DegreeHomology h;
    const Field& f = p.dga().field();
    SemifreeModule::Slice sj = p.slice(j);
    if (sj.dim == 0) {
        h.kernel = Subspace::zero(0, f);
        h.image = Subspace::zero(0, f);
        return h;
    }
    h.kernel = kernel_basis(p.d_matrix(j));
    SemifreeModule::Slice sprev = p.slice(j - 1);
    h.image = sprev.dim == 0 ? Subspace::zero(sj.dim, f) : column_space(p.d_matrix(j - 1));
    Subspace base = h.image;
    if (j == 0 && p.size() > 0) {
        /* quotient additionally by the augmentation line [e0] */
        std::vector<SVec> rows = base.basis;
        rows.push_back(p.to_coords(p.generator(0), sj));
        base = Subspace::span(rows, sj.dim, f);
    }
    h.failures = subspace_quotient(h.kernel, base);
    return h;
}

} // namespace

SemifreeResolution minimal_resolution(std::shared_ptr<DGAlgebra> a, ResolutionWindow w, uint64_t seed) {
    a->require_valid();
    if (w.max_degree > a->trunc())
        fail("DegreeOutOfRange", "resolution window exceeds the algebra truncation wall");
    SemifreeResolution res;
    res.window = w;
    res.p = std::make_shared<SemifreeModule>(a);
    res.p->add_element(0, 0, res.p->zero(1));
    res.stages.push_back({0});

    SemifreeModule& p = *res.p;
    const Field& f = a->field();
    std::mt19937_64 rng(seed);

    /* cache of failure classes per degree; adding a stage at cdeg c only
       disturbs degrees >= c */
    std::map<int, DegreeHomology> cache;
    const int jmax = w.max_degree - 1;

    while (true) {
        int jfail = -1;
        int minc = 0;
        for (int i = 0; i < p.size(); ++i) minc = std::min(minc, p.elt(i).cdeg);
        for (int j = minc; j <= jmax; ++j) {
            auto it = cache.find(j);
            if (it == cache.end()) it = cache.emplace(j, augmented_failures(p, j)).first;
            if (!it->second.failures.empty()) { jfail = j; break; }
        }
        if (jfail < 0) {
            res.acyclic_through = jmax;
            return res;
        }
        if ((int)res.stages.size() > w.max_stage) {
            res.window_exhausted = true;
            res.acyclic_through = jfail - 1;
            return res;
        }

        const DegreeHomology& h = cache.at(jfail);
        SemifreeModule::Slice sj = p.slice(jfail);
        SemifreeModule::Slice sprev = p.slice(jfail - 1);

        /* matrix sending w in P^{j-1} to the scalar parts of d(w) */
        std::vector<int> scalar_rows; /* slice coords carrying degree-0 coefficients */
        for (int i = 0; i < sj.dim; ++i) {
            auto [e, bj] = sj.items[i];
            (void)bj;
            if (p.elt(e).cdeg == jfail) scalar_rows.push_back(i);
        }
        SparseMatrix dmat = sprev.dim > 0 ? p.d_matrix(jfail - 1) : SparseMatrix(sj.dim, 0, f);
        SparseMatrix proj((int)scalar_rows.size(), sprev.dim, f);
        for (int r = 0; r < (int)scalar_rows.size(); ++r)
            for (const auto& [c, v] : dmat.row(scalar_rows[r])) proj.set(r, c, v);

        std::vector<int> new_elts;
        for (const SVec& cls : h.failures) {
            PElement z = p.from_coords(jfail, cls);
            /* adjust modulo coboundaries so the representative lies in I*P */
            PElement sp = p.scalar_part(z);
            if (!sp.is_zero()) {
                std::vector<Scalar> rhs((int)scalar_rows.size(), Scalar::zero(f));
                SVec zc = p.to_coords(z, sj);
                for (int r = 0; r < (int)scalar_rows.size(); ++r)
                    rhs[r] = svec_get(zc, scalar_rows[r], f);
                auto sol = solve(proj, rhs);
                if (!sol)
                    fail("RepresentativeNotInIP",
                         "no coboundary adjustment moves the representative into I*P at degree " +
                             std::to_string(jfail));
                PElement corr = p.from_coords(jfail - 1, svec_from_dense(*sol));
                z = p.add(z, p.scaled(p.differentiate(corr), Scalar(-1, f)));
                if (!p.scalar_part(z).is_zero())
                    fail("Internal", "representative adjustment failed to clear scalar parts");
            }
            if (seed != 0 && sprev.dim > 0) {
                /* shift by d(v) for a random v in I*P^{j-1}: same class, still in I*P */
                SVec v;
                for (int i = 0; i < sprev.dim; ++i) {
                    auto [e, bj] = sprev.items[i];
                    if (jfail - 1 - p.elt(e).cdeg == 0) continue; /* keep v inside I*P */
                    (void)bj;
                    long k = (long)(rng() % 5) - 2;
                    if (k != 0) v.emplace_back(i, Scalar(k, f));
                }
                if (!v.empty()) {
                    PElement pb = p.differentiate(p.from_coords(jfail - 1, v));
                    z = p.add(z, pb);
                }
            }
            new_elts.push_back(p.add_element((int)res.stages.size(), jfail - 1, z));
        }
        res.stages.push_back(new_elts);

        /* invalidate the degrees the new stage can touch */
        for (auto it = cache.begin(); it != cache.end();) {
            if (it->first >= jfail - 1) it = cache.erase(it);
            else ++it;
        }
    }
}

PElement apply_morphism(const ModuleMorphism& f, const PElement& z) {
    const SemifreeModule& src = *f.src;
    const SemifreeModule& dst = *f.dst;
    PElement out = dst.zero(z.degree + f.degree);
    for (const auto& [e, c] : z.comps) {
        if (f.images[e].is_zero()) continue;
        PElement t = dst.act(c, f.images[e]);
        if (f.degree % 2 != 0 && c.degree % 2 != 0) t = dst.scaled(t, Scalar(-1, src.dga().field()));
        out = dst.add(out, t);
    }
    return out;
}

bool is_dg_morphism(const ModuleMorphism& f) {
    const SemifreeModule& src = *f.src;
    const SemifreeModule& dst = *f.dst;
    const Field& k = src.dga().field();
    for (int e = 0; e < src.size(); ++e) {
        PElement lhs = dst.differentiate(f.images[e]);
        PElement rhs = apply_morphism(f, src.differential_of(e));
        if (f.degree % 2 != 0) rhs = dst.scaled(rhs, Scalar(-1, k));
        PElement diff = dst.add(lhs, dst.scaled(rhs, Scalar(-1, k)));
        if (!diff.is_zero()) return false;
    }
    return true;
}

namespace {

/* V_{<=n} chain of the standard filtration: per level n, a basis of the
   subspace of kE, grouped by cohomological degree in by_cdeg order */
struct FiltrationChain {
    std::vector<int> index;                                /* per elt */
    std::map<int, std::vector<int>> by_cdeg;               /* cdeg -> elt ids */
    std::vector<std::map<int, std::vector<SVec>>> levels;  /* per n: cdeg -> V_{<=n} basis */
};

/* slice of F(n) = A (x) V_{<=n} inside P^deg */
Subspace filtration_slice(const SemifreeModule& p, const FiltrationChain& ch, int level, int deg) {
    const GradedAlgebra& g = p.dga().algebra();
    SemifreeModule::Slice s = p.slice(deg);
    std::vector<SVec> rows;
    if (level >= 0) {
        const auto& v_le = ch.levels[std::min(level, (int)ch.levels.size() - 1)];
        for (const auto& [cdeg, vecs] : v_le) {
            int adeg = deg - cdeg;
            if (adeg < 0 || adeg > g.trunc()) continue;
            const std::vector<int>& ids = ch.by_cdeg.at(cdeg);
            for (const SVec& v : vecs) {
                for (int b = 0; b < g.dim(adeg); ++b) {
                    PElement z = p.zero(deg);
                    for (const auto& [pos, coef] : v) {
                        PElement t = p.zero(deg);
                        t.comps.emplace(ids[pos], g.scaled(g.basis_element(adeg, b), coef));
                        z = p.add(z, t);
                    }
                    if (!z.is_zero()) rows.push_back(p.to_coords(z, s));
                }
            }
        }
    }
    return Subspace::span(rows, s.dim, g.field());
}

FiltrationChain filtration_chain(const SemifreeModule& p) {
    const Field& f = p.dga().field();
    FiltrationChain ch;
    ch.index.assign(p.size(), -1);
    for (int e = 0; e < p.size(); ++e) ch.by_cdeg[p.elt(e).cdeg].push_back(e);

    for (int n = 0; n <= p.size(); ++n) {
        std::map<int, std::vector<SVec>> v_next;
        for (const auto& [cdeg, ids] : ch.by_cdeg) {
            /* v = sum c_e e lies in V_{<=n} iff d(v) reduces to zero against
               the F(n-1) slice at degree cdeg+1 */
            SemifreeModule::Slice starget = p.slice(cdeg + 1);
            Subspace fs = filtration_slice(p, ch, n - 1, cdeg + 1);
            SparseMatrix m(starget.dim, (int)ids.size(), f);
            for (int c = 0; c < (int)ids.size(); ++c) {
                SVec res = fs.reduce(p.to_coords(p.differential_of(ids[c]), starget));
                for (const auto& [r, v] : res) m.set(r, c, v);
            }
            Subspace ker = kernel_basis(m);
            v_next[cdeg] = ker.basis;
            for (int c = 0; c < (int)ids.size(); ++c) {
                if (ch.index[ids[c]] >= 0) continue;
                if (ker.contains(SVec{{c, Scalar::one(f)}})) ch.index[ids[c]] = n;
            }
        }
        ch.levels.push_back(std::move(v_next));
        bool done = true;
        for (int v : ch.index)
            if (v < 0) done = false;
        if (done) return ch;
    }
    fail("Internal", "standard filtration did not stabilize; the module is not semifree");
}

} // namespace

std::vector<int> standard_filtration(const SemifreeModule& p) {
    return filtration_chain(p).index;
}

bool check_filtration_preservation(const ModuleMorphism& f) {
    FiltrationChain fm = filtration_chain(*f.src);
    FiltrationChain fn = filtration_chain(*f.dst);
    const SemifreeModule& dst = *f.dst;
    for (int e = 0; e < f.src->size(); ++e) {
        const PElement& img = f.images[e];
        if (img.is_zero()) continue;
        SemifreeModule::Slice s = dst.slice(img.degree);
        Subspace fslice = filtration_slice(dst, fn, fm.index[e], img.degree);
        if (!fslice.contains(dst.to_coords(img, s))) return false;
    }
    return true;
}

ModuleMorphism lift_functional(const SemifreeResolution& src, int stage_min,
                               const std::map<int, Scalar>& x, const SemifreeResolution& dst) {
    const SemifreeModule& p = *src.p;
    const SemifreeModule& n = *dst.p;
    const Field& f = p.dga().field();

    /* the functional must be homogeneous: all supported elts share a cdeg */
    int xdeg = 0;
    bool found = false;
    for (const auto& [e, v] : x) {
        if (v.is_zero()) continue;
        if (p.elt(e).stage < stage_min) fail("LiftFailed", "functional supported below the quotient stage");
        if (!found) { xdeg = -p.elt(e).cdeg; found = true; }
        else if (-p.elt(e).cdeg != xdeg) fail("LiftFailed", "functional mixes degrees");
    }

    ModuleMorphism fm;
    fm.src = &p;
    fm.dst = &n;
    fm.degree = xdeg;
    fm.images.assign(p.size(), n.zero(0));

    /* process source elements stage by stage */
    std::vector<int> order;
    for (int e = 0; e < p.size(); ++e)
        if (p.elt(e).stage >= stage_min) order.push_back(e);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (p.elt(a).stage != p.elt(b).stage) return p.elt(a).stage < p.elt(b).stage;
        return a < b;
    });

    for (int e : order) {
        const int target_deg = p.elt(e).cdeg + xdeg;
        SemifreeModule::Slice st = n.slice(target_deg);
        /* equations: d(f(e)) = (-1)^{|f|} f(dbar e) and eps(f(e)) = x(e) */
        PElement dbar = p.drop_below_stage(p.differential_of(e), stage_min);
        PElement rhs_el = apply_morphism(fm, dbar);
        if (xdeg % 2 != 0) rhs_el = n.scaled(rhs_el, Scalar(-1, f));
        SemifreeModule::Slice st1 = n.slice(target_deg + 1);
        SparseMatrix dm = n.d_matrix(target_deg);
        /* stack the epsilon row under the differential matrix */
        SparseMatrix sys(st1.dim + 1, st.dim, f);
        for (int r = 0; r < st1.dim; ++r)
            for (const auto& [c, v] : dm.row(r)) sys.set(r, c, v);
        if (target_deg == 0 && n.size() > 0) {
            SVec e0 = n.to_coords(n.generator(0), st);
            for (const auto& [c, v] : e0) sys.set(st1.dim, c, v);
        }
        std::vector<Scalar> rhs(st1.dim + 1, Scalar::zero(f));
        SVec rc = n.to_coords(rhs_el, st1);
        for (const auto& [i, v] : rc) rhs[i] = v;
        auto xit = x.find(e);
        if (xit != x.end() && target_deg == 0) rhs[st1.dim] = xit->second;
        else if (xit != x.end() && !xit->second.is_zero())
            fail("LiftFailed", "functional value on an element of the wrong degree");
        auto sol = solve(sys, rhs);
        if (!sol) fail("LiftFailed", "no lift at element e" + std::to_string(e));
        fm.images[e] = n.from_coords(target_deg, svec_from_dense(*sol));
    }
    return fm;
}

} // namespace dgk
