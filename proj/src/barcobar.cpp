#include "dgk/barcobar.hpp"

#include <random>
#include <set>
#include <tuple>

namespace dgk {

FinCoalgebra::FinCoalgebra(Field f, std::vector<std::string> names, std::vector<int> degrees,
                           std::vector<Tensor> coproduct)
    : field_(f), names_(std::move(names)), degrees_(std::move(degrees)),
      coprod_(std::move(coproduct)) {
    if (names_.empty() || degrees_.size() != names_.size() || coprod_.size() != names_.size())
        fail("BadCoalgebra", "basis/degree/coproduct size mismatch");
    if (degrees_[0] != 0) fail("BadCoalgebra", "the grouplike element must sit in degree 0");
    require_valid();
}

FinCoalgebra FinCoalgebra::dual_of(const FinAlgebra& e) {
    /* coproduct = transpose of multiplication on the dual basis */
    std::vector<std::string> names;
    for (int i = 0; i < e.dim(); ++i) names.push_back(e.name(i) + "^*");
    std::vector<int> degrees(e.dim(), 0);
    std::vector<Tensor> coprod(e.dim());
    for (int i = 0; i < e.dim(); ++i)
        for (int j = 0; j < e.dim(); ++j)
            for (const auto& [k, c] : e.mult(i, j)) coprod[k].push_back({{i, j}, c});
    return FinCoalgebra(e.field(), std::move(names), std::move(degrees), std::move(coprod));
}

FinAlgebra FinCoalgebra::dual_algebra() const {
    std::vector<std::string> names;
    for (int i = 0; i < dim(); ++i) {
        std::string n = names_[i];
        if (n.size() > 2 && n.substr(n.size() - 2) == "^*") n = n.substr(0, n.size() - 2);
        names.push_back(n);
    }
    std::vector<std::vector<SVec>> table(dim(), std::vector<SVec>(dim()));
    for (int k = 0; k < dim(); ++k)
        for (const auto& [jk, c] : coprod_[k]) {
            auto [i, j] = jk;
            table[i][j].emplace_back(k, c);
        }
    for (auto& row : table)
        for (auto& v : row)
            std::sort(v.begin(), v.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
    return FinAlgebra(field_, std::move(names), std::move(table));
}

FinCoalgebra::Tensor FinCoalgebra::reduced_coproduct(int i) const {
    if (i == 0) fail("BadCoalgebra", "reduced coproduct lives on Cbar");
    Tensor out;
    for (const auto& [jk, c] : coprod_[i]) {
        if (jk.first == 0 || jk.second == 0) continue;
        out.push_back({jk, c});
    }
    return out;
}

void FinCoalgebra::require_valid() const {
    const Field& f = field_;
    /* grouplike coaugmentation */
    {
        std::map<std::pair<int, int>, Scalar> acc;
        for (const auto& [jk, c] : coprod_[0]) {
            auto it = acc.find(jk);
            if (it == acc.end()) acc.emplace(jk, c);
            else it->second += c;
        }
        for (auto it = acc.begin(); it != acc.end();) {
            if (it->second.is_zero()) it = acc.erase(it);
            else ++it;
        }
        if (acc.size() != 1 || acc.begin()->first != std::make_pair(0, 0) ||
            !acc.begin()->second.is_one())
            fail("BadCoalgebra", "basis element 0 is not grouplike");
    }
    /* counit axioms: (eps (x) 1) Delta = id = (1 (x) eps) Delta */
    for (int i = 0; i < dim(); ++i) {
        std::vector<Scalar> left(dim(), Scalar::zero(f)), right(dim(), Scalar::zero(f));
        for (const auto& [jk, c] : coprod_[i]) {
            if (jk.first == 0) left[jk.second] += c;
            if (jk.second == 0) right[jk.first] += c;
        }
        for (int k = 0; k < dim(); ++k) {
            Scalar expect = k == i ? Scalar::one(f) : Scalar::zero(f);
            if (left[k] != expect || right[k] != expect)
                fail("BadCoalgebra", "counit axioms fail on " + names_[i]);
        }
    }
    if (!is_coassociative()) fail("BadCoalgebra", "coproduct is not coassociative");
    if (!is_cocomplete()) fail("NotCocomplete", "a Cbar element survives every reduced coproduct iterate");
}

bool FinCoalgebra::is_coassociative() const {
    for (int i = 0; i < dim(); ++i) {
        std::map<std::tuple<int, int, int>, Scalar> lhs, rhs;
        for (const auto& [jk, c] : coprod_[i]) {
            for (const auto& [lm, d] : coprod_[jk.first]) {
                auto key = std::make_tuple(lm.first, lm.second, jk.second);
                auto it = lhs.find(key);
                if (it == lhs.end()) lhs.emplace(key, c * d);
                else it->second += c * d;
            }
            for (const auto& [lm, d] : coprod_[jk.second]) {
                auto key = std::make_tuple(jk.first, lm.first, lm.second);
                auto it = rhs.find(key);
                if (it == rhs.end()) rhs.emplace(key, c * d);
                else it->second += c * d;
            }
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

bool FinCoalgebra::is_cocomplete() const {
    /* iterate (Deltabar (x) 1^{n-1}) on words over the Cbar basis */
    for (int x = 1; x < dim(); ++x) {
        std::map<Word, Scalar> t{{Word{x}, Scalar::one(field_)}};
        for (int iter = 0; iter <= dim() && !t.empty(); ++iter) {
            std::map<Word, Scalar> next;
            for (const auto& [w, c] : t) {
                for (const auto& [jk, d] : reduced_coproduct(w[0])) {
                    Word nw{jk.first, jk.second};
                    nw.insert(nw.end(), w.begin() + 1, w.end());
                    auto it = next.find(nw);
                    if (it == next.end()) next.emplace(std::move(nw), c * d);
                    else {
                        it->second += c * d;
                        if (it->second.is_zero()) next.erase(it);
                    }
                }
            }
            t = std::move(next);
        }
        if (!t.empty()) return false;
    }
    return true;
}

Presentation cobar(const FinCoalgebra& c, int trunc) {
    c.require_valid();
    Presentation p;
    p.field = c.field();
    p.truncation_degree = trunc;
    /* generator per Cbar basis element, suspended one degree up; names are
       sanitized to stay inside the expression grammar */
    std::vector<int> genpos(c.dim(), -1);
    for (int i = 1; i < c.dim(); ++i) {
        genpos[i] = (int)p.generators.size();
        std::string n = c.name(i);
        if (n.size() > 2 && n.substr(n.size() - 2) == "^*") n = n.substr(0, n.size() - 2);
        std::string clean;
        for (char ch : n) clean += (isalnum((unsigned char)ch) || ch == '_') ? ch : '_';
        std::string name = "s_" + clean;
        while (p.generator_index(name) >= 0) name += "_";
        p.generators.push_back({name, c.degree(i) + 1});
    }
    p.differential.assign(p.generators.size(), NCPoly{});
    for (int i = 1; i < c.dim(); ++i) {
        NCPoly d;
        for (const auto& [jk, v] : c.reduced_coproduct(i)) {
            /* partial_1([x]) = sum (-1)^{|x_(1)|+1} [x_(1)|x_(2)] */
            Scalar coeff = (c.degree(jk.first) + 1) % 2 == 0 ? v : -v;
            d.add_term({genpos[jk.first], genpos[jk.second]}, coeff);
        }
        p.differential[genpos[i]] = std::move(d);
    }
    p.validate_structure();
    return p;
}

/* ---- bar construction ---- */

BarCoalgebra::BarCoalgebra(std::shared_ptr<DGAlgebra> a, int dwin, int maxlen)
    : a_(std::move(a)), dwin_(dwin), maxlen_(maxlen) {
    if (maxlen < 1) fail("BoundsTooSmall", "bar needs maxlen >= 1");
    if (dwin < 1 || 2 * dwin > a_->trunc())
        fail("BoundsTooSmall", "bar needs 1 <= dwin and 2*dwin <= truncation of A");
    a_->require_valid();
    /* letters over reduced bases of A^1..A^dwin, words by length then lex */
    std::vector<Letter> alphabet;
    for (int d = 1; d <= dwin; ++d)
        for (int i = 0; i < a_->algebra().dim(d); ++i) alphabet.emplace_back(d, i);
    std::vector<WordT> frontier{{}};
    words_.push_back({});
    index_.emplace(WordT{}, 0);
    for (int len = 1; len <= maxlen; ++len) {
        std::vector<WordT> next;
        for (const WordT& w : frontier)
            for (const Letter& l : alphabet) {
                WordT nw = w;
                nw.push_back(l);
                index_.emplace(nw, (int)words_.size());
                words_.push_back(nw);
                next.push_back(std::move(nw));
            }
        frontier = std::move(next);
    }
}

int BarCoalgebra::index_of(const WordT& w) const {
    auto it = index_.find(w);
    return it == index_.end() ? -1 : it->second;
}

int BarCoalgebra::bar_degree(int i) const {
    int d = 0;
    for (const auto& [deg, idx] : words_[i]) {
        (void)idx;
        d += deg - 1;
    }
    return d;
}

BarCoalgebra::Image BarCoalgebra::delta(const WordT& w) const {
    Image out;
    const GradedAlgebra& g = a_->algebra();
    const Field& f = a_->field();
    auto add_term = [&](WordT&& nw, const Scalar& c) {
        if (c.is_zero()) return;
        for (const auto& [deg, idx] : nw) {
            (void)idx;
            if (deg > dwin_) out.in_bounds = false;
        }
        auto it = out.terms.find(nw);
        if (it == out.terms.end()) out.terms.emplace(std::move(nw), c);
        else {
            it->second += c;
            if (it->second.is_zero()) out.terms.erase(it);
        }
    };
    const int n = (int)w.size();
    /* delta_0: internal differential with sign -(-1)^{omega_i} */
    int omega = 0; /* omega_i = sum_{j<i} (|a_j| - 1) */
    for (int i = 0; i < n; ++i) {
        const auto& [deg, idx] = w[i];
        const Element& da = a_->d_columns(deg)[idx];
        Scalar sign = Scalar(omega % 2 == 0 ? -1 : 1, f);
        for (const auto& [k, c] : da.c) {
            WordT nw = w;
            nw[i] = {deg + 1, k};
            add_term(std::move(nw), sign * c);
        }
        omega += deg - 1;
    }
    /* delta_1: merge adjacent letters with sign (-1)^{omega_i}, i >= 2 */
    omega = w.empty() ? 0 : w[0].first - 1;
    for (int i = 1; i < n; ++i) {
        const auto& [dprev, iprev] = w[i - 1];
        const auto& [dcur, icur] = w[i];
        Element prod = g.multiply(g.basis_element(dprev, iprev), g.basis_element(dcur, icur));
        Scalar sign = Scalar(omega % 2 == 0 ? 1 : -1, f);
        for (const auto& [k, c] : prod.c) {
            WordT nw;
            nw.reserve(n - 1);
            nw.insert(nw.end(), w.begin(), w.begin() + (i - 1));
            nw.emplace_back(dprev + dcur, k);
            nw.insert(nw.end(), w.begin() + i + 1, w.end());
            add_term(std::move(nw), sign * c);
        }
        omega += dcur - 1;
    }
    return out;
}

std::vector<std::pair<int, int>> BarCoalgebra::coproduct(int i) const {
    std::vector<std::pair<int, int>> out;
    const WordT& w = words_[i];
    for (size_t cut = 0; cut <= w.size(); ++cut) {
        WordT left(w.begin(), w.begin() + cut);
        WordT right(w.begin() + cut, w.end());
        out.emplace_back(index_.at(left), index_.at(right));
    }
    return out;
}

std::vector<std::pair<int, int>> BarCoalgebra::proper_splits(int i) const {
    std::vector<std::pair<int, int>> out;
    const WordT& w = words_[i];
    for (size_t cut = 1; cut + 1 <= w.size(); ++cut) {
        WordT left(w.begin(), w.begin() + cut);
        WordT right(w.begin() + cut, w.end());
        out.emplace_back(index_.at(left), index_.at(right));
    }
    return out;
}

bool BarCoalgebra::delta_squared_vanishes(int* checked) const {
    if (checked) *checked = 0;
    for (int i = 0; i < size(); ++i) {
        Image first = delta(words_[i]);
        std::map<WordT, Scalar> acc;
        for (const auto& [w, c] : first.terms) {
            Image second = delta(w);
            for (const auto& [w2, c2] : second.terms) {
                auto it = acc.find(w2);
                if (it == acc.end()) acc.emplace(w2, c * c2);
                else it->second += c * c2;
            }
        }
        for (const auto& [w2, c2] : acc) {
            (void)w2;
            if (!c2.is_zero()) return false;
        }
        if (checked) ++*checked;
    }
    return true;
}

bool BarCoalgebra::coproduct_is_coassociative() const {
    for (int i = 0; i < size(); ++i) {
        std::multiset<std::tuple<int, int, int>> lhs, rhs;
        for (const auto& [l, r] : coproduct(i)) {
            for (const auto& [l2, r2] : coproduct(l)) lhs.insert({l2, r2, r});
            for (const auto& [l2, r2] : coproduct(r)) rhs.insert({l, l2, r2});
        }
        if (lhs != rhs) return false;
    }
    return true;
}

/* ---- module bar complex ---- */

namespace {

void mb_add(ModuleBarElt& acc, ModuleBarWord&& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = acc.find(w);
    if (it == acc.end()) acc.emplace(std::move(w), c);
    else {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

} // namespace

ModuleBarElt module_bar_delta(const DGAlgebra& a, const ModuleBarWord& w) {
    const GradedAlgebra& g = a.algebra();
    const Field& f = a.field();
    ModuleBarElt out;
    const int mdeg = w.m.first;
    const int n = (int)w.letters.size();

    /* delta_0: d(m)[...] - sum (-1)^{omega_i + |m|} m[...|d a_i|...] */
    {
        const Element& dm = a.d_columns(mdeg)[w.m.second];
        for (const auto& [k, c] : dm.c) {
            ModuleBarWord nw = w;
            nw.m = {mdeg + 1, k};
            mb_add(out, std::move(nw), c);
        }
    }
    int omega = 0;
    for (int i = 0; i < n; ++i) {
        const auto& [deg, idx] = w.letters[i];
        const Element& da = a.d_columns(deg)[idx];
        Scalar sign = Scalar((omega + mdeg) % 2 == 0 ? -1 : 1, f);
        for (const auto& [k, c] : da.c) {
            ModuleBarWord nw = w;
            nw.letters[i] = {deg + 1, k};
            mb_add(out, std::move(nw), sign * c);
        }
        omega += deg - 1;
    }
    /* delta_1: (-1)^{|m|} (m a_1)[a_2|...] + merge terms */
    if (n >= 1) {
        const auto& [d1, i1] = w.letters[0];
        Element prod = g.multiply(g.basis_element(mdeg, w.m.second), g.basis_element(d1, i1));
        Scalar sign = Scalar(mdeg % 2 == 0 ? 1 : -1, f);
        for (const auto& [k, c] : prod.c) {
            ModuleBarWord nw;
            nw.m = {mdeg + d1, k};
            nw.letters.assign(w.letters.begin() + 1, w.letters.end());
            mb_add(out, std::move(nw), sign * c);
        }
    }
    omega = n >= 1 ? w.letters[0].first - 1 : 0;
    for (int i = 1; i < n; ++i) {
        const auto& [dprev, iprev] = w.letters[i - 1];
        const auto& [dcur, icur] = w.letters[i];
        Element prod = g.multiply(g.basis_element(dprev, iprev), g.basis_element(dcur, icur));
        Scalar sign = Scalar((omega + mdeg) % 2 == 0 ? 1 : -1, f);
        for (const auto& [k, c] : prod.c) {
            ModuleBarWord nw;
            nw.m = w.m;
            nw.letters.insert(nw.letters.end(), w.letters.begin(), w.letters.begin() + (i - 1));
            nw.letters.emplace_back(dprev + dcur, k);
            nw.letters.insert(nw.letters.end(), w.letters.begin() + i + 1, w.letters.end());
            mb_add(out, std::move(nw), sign * c);
        }
        omega += dcur - 1;
    }
    return out;
}

ModuleBarElt module_bar_homotopy(const DGAlgebra& a, const ModuleBarWord& w) {
    /* h(m[a_1|...]) = 1[mbar|a_1|...], zero on the k-part of m */
    ModuleBarElt out;
    if (w.m.first == 0) return out; /* scalar m: mbar = 0 */
    ModuleBarWord nw;
    nw.m = {0, 0};
    nw.letters.push_back(w.m);
    nw.letters.insert(nw.letters.end(), w.letters.begin(), w.letters.end());
    mb_add(out, std::move(nw), Scalar::one(a.field()));
    return out;
}

AugmentationReport bar_augmentation_check(std::shared_ptr<DGAlgebra> a, int dwin, int maxlen) {
    a->require_valid();
    if (4 * dwin > a->trunc())
        fail("BoundsTooSmall", "augmentation check needs 4*dwin <= truncation of A");
    AugmentationReport rep;
    const GradedAlgebra& g = a->algebra();
    const Field& f = a->field();

    /* enumerate starting words m[a_1|...|a_n] */
    std::vector<std::pair<int, int>> alphabet;
    for (int d = 1; d <= dwin; ++d)
        for (int i = 0; i < g.dim(d); ++i) alphabet.emplace_back(d, i);
    std::vector<std::vector<std::pair<int, int>>> words{{}};
    {
        std::vector<std::vector<std::pair<int, int>>> frontier{{}};
        for (int len = 1; len <= maxlen; ++len) {
            std::vector<std::vector<std::pair<int, int>>> next;
            for (const auto& w : frontier)
                for (const auto& l : alphabet) {
                    auto nw = w;
                    nw.push_back(l);
                    words.push_back(nw);
                    next.push_back(std::move(nw));
                }
            frontier = std::move(next);
        }
    }
    std::vector<std::pair<int, int>> heads{{0, 0}};
    heads.insert(heads.end(), alphabet.begin(), alphabet.end());

    auto apply_delta = [&](const ModuleBarElt& z) {
        ModuleBarElt out;
        for (const auto& [w, c] : z)
            for (auto& [w2, c2] : module_bar_delta(*a, w)) mb_add(out, ModuleBarWord(w2), c * c2);
        return out;
    };
    auto apply_h = [&](const ModuleBarElt& z) {
        ModuleBarElt out;
        for (const auto& [w, c] : z)
            for (auto& [w2, c2] : module_bar_homotopy(*a, w)) mb_add(out, ModuleBarWord(w2), c * c2);
        return out;
    };

    for (const auto& head : heads) {
        for (const auto& letters : words) {
            ModuleBarWord w{head, letters};
            ModuleBarElt z{{w, Scalar::one(f)}};
            /* homotopy identity */
            ModuleBarElt lhs = apply_delta(apply_h(z));
            for (auto& [w2, c2] : apply_h(apply_delta(z))) mb_add(lhs, ModuleBarWord(w2), c2);
            ModuleBarElt expect = z;
            if (w.m.first == 0 && letters.empty())
                expect.clear(); /* id - eta eps kills the unit word */
            bool match = lhs == expect;
            if (!match) ++rep.homotopy_failures;
            /* delta squared */
            ModuleBarElt dd = apply_delta(apply_delta(z));
            if (!dd.empty()) ++rep.delta_squared_failures;
            ++rep.words_checked;
        }
    }
    return rep;
}


/* ---- phi: B(A)^# -> End_A(A (x) B(A)) ---- */

namespace {

using WordT = BarCoalgebra::WordT;

int bar_deg(const WordT& u) {
    int d = 0;
    for (const auto& [deg, idx] : u) {
        (void)idx;
        d += deg - 1;
    }
    return d;
}

/* phi(G) on a module-bar element, for a functional G on bar words of
   homogeneous degree gdeg; phi(G)(1[a_1|..|a_n]) =
   sum_i (-1)^{gdeg * omega_i} 1[a_1|..|a_i] G([a_{i+1}|..|a_n]) with
   omega_i = |a_1|+..+|a_i| - i, extended A-linearly with the Koszul sign */
ModuleBarElt apply_phi(const DGAlgebra& a, const std::function<Scalar(const WordT&)>& g,
                       int gdeg, const ModuleBarElt& z) {
    ModuleBarElt out;
    const Field& f = a.field();
    for (const auto& [w, c] : z) {
        Scalar outer = (w.m.first % 2 != 0 && gdeg % 2 != 0) ? -c : c;
        const int n = (int)w.letters.size();
        int omega = 0;
        for (int i = 0; i <= n; ++i) {
            WordT suffix(w.letters.begin() + i, w.letters.end());
            Scalar val = g(suffix);
            if (!val.is_zero()) {
                Scalar sign = (gdeg % 2 != 0 && omega % 2 != 0) ? Scalar(-1, f) : Scalar(1, f);
                ModuleBarWord nw;
                nw.m = w.m;
                nw.letters.assign(w.letters.begin(), w.letters.begin() + i);
                mb_add(out, std::move(nw), outer * sign * val);
            }
            if (i < n) omega += w.letters[i].first - 1;
        }
    }
    return out;
}

} // namespace

ModuleBarElt phi_of_dual_word(const DGAlgebra& a, const BarCoalgebra::WordT& u,
                              const ModuleBarWord& w) {
    const Field& f = a.field();
    auto fdual = [&u, &f](const WordT& v) {
        return v == u ? Scalar::one(f) : Scalar::zero(f);
    };
    ModuleBarElt z{{w, Scalar::one(f)}};
    return apply_phi(a, fdual, -bar_deg(u), z);
}

PhiReport phi_check(std::shared_ptr<DGAlgebra> a, int dwin, int flen, int maxlen) {
    a->require_valid();
    BarCoalgebra bar(a, dwin, std::max(flen, maxlen));
    PhiReport rep;
    const Field& f = a->field();
    const GradedAlgebra& g = a->algebra();

    auto dual_functional = [&](const WordT& u) {
        return [u, &f](const WordT& v) {
            return v == u ? Scalar::one(f) : Scalar::zero(f);
        };
    };
    /* (d_{R^#} f)(v) = -(-1)^{|f|} f(delta_R(v)) */
    auto dmb = [&](const ModuleBarWord& w) { return module_bar_delta(*a, w); };

    std::vector<int> funcs, args;
    for (int i = 0; i < bar.size(); ++i) {
        if ((int)bar.word(i).size() <= flen) funcs.push_back(i);
        if ((int)bar.word(i).size() <= maxlen) args.push_back(i);
    }

    for (int fi : funcs) {
        const WordT& u = bar.word(fi);
        const int fdeg = -bar_deg(u);
        auto fdual = dual_functional(u);
        auto df = [&](const WordT& v) {
            BarCoalgebra::Image im = bar.delta(v);
            Scalar s = Scalar::zero(f);
            for (const auto& [w2, c2] : im.terms)
                if (w2 == u) s += c2;
            return fdeg % 2 == 0 ? -s : s; /* -(-1)^{|f|} f(delta v) */
        };
        for (int wi : args) {
            ModuleBarWord w{{0, 0}, bar.word(wi)};
            ModuleBarElt z{{w, Scalar::one(f)}};
            /* cochain: phi(df) = delta o phi(f) - (-1)^{|f|} phi(f) o delta */
            ModuleBarElt lhs = apply_phi(*a, df, fdeg + 1, z);
            ModuleBarElt rhs;
            {
                ModuleBarElt pf = apply_phi(*a, fdual, fdeg, z);
                for (const auto& [w2, c2] : pf)
                    for (auto& [w3, c3] : dmb(w2)) mb_add(rhs, ModuleBarWord(w3), c2 * c3);
                ModuleBarElt dz;
                for (auto& [w3, c3] : dmb(w)) mb_add(dz, ModuleBarWord(w3), c3);
                ModuleBarElt pfd = apply_phi(*a, fdual, fdeg, dz);
                Scalar sgn = Scalar(fdeg % 2 == 0 ? -1 : 1, f);
                for (const auto& [w2, c2] : pfd) mb_add(rhs, ModuleBarWord(w2), sgn * c2);
            }
            ++rep.cochain_checked;
            if (lhs != rhs) ++rep.cochain_failures;
        }
    }

    /* multiplicativity: phi(f . g) = phi(f) o phi(g); the convolution of
       dual-basis functionals is (f.g) = +/- (u_f u_g)^* with the Koszul sign
       (-1)^{|g| |u_f|} */
    for (int fi : funcs) {
        for (int gi : funcs) {
            const WordT& uf = bar.word(fi);
            const WordT& ug = bar.word(gi);
            if ((int)(uf.size() + ug.size()) > bar.max_len()) continue;
            const int fdeg = -bar_deg(uf), gdeg = -bar_deg(ug);
            WordT ufg = uf;
            ufg.insert(ufg.end(), ug.begin(), ug.end());
            Scalar conv_sign =
                (gdeg % 2 != 0 && bar_deg(uf) % 2 != 0) ? Scalar(-1, f) : Scalar(1, f);
            auto fgdual = [&](const WordT& v) {
                return v == ufg ? conv_sign : Scalar::zero(f);
            };
            auto fdual = dual_functional(uf);
            auto gdual = dual_functional(ug);
            for (int wi : args) {
                ModuleBarWord w{{0, 0}, bar.word(wi)};
                ModuleBarElt z{{w, Scalar::one(f)}};
                ModuleBarElt lhs = apply_phi(*a, fgdual, fdeg + gdeg, z);
                ModuleBarElt rhs = apply_phi(*a, fdual, fdeg, apply_phi(*a, gdual, gdeg, z));
                ++rep.multiplicative_checked;
                if (lhs != rhs) ++rep.multiplicative_failures;
            }
        }
    }
    (void)g;
    return rep;
}

/* ---- twisting cochains and twisted tensor products ---- */

TwistingCochain canonical_twisting_cochain(const FinCoalgebra& c,
                                           std::shared_ptr<DGAlgebra> omega) {
    if (omega->pres().n_generators() != c.dim() - 1)
        fail("Internal", "the DG algebra is not the cobar construction of this coalgebra");
    TwistingCochain tau;
    tau.c = &c;
    tau.b = omega;
    tau.images.push_back(omega->algebra().zero(1));
    /* tau_0(c_i) = [c_i]: cobar generators are indexed by the Cbar basis */
    for (int i = 1; i < c.dim(); ++i)
        tau.images.push_back(omega->algebra().reduce_word(Word{i - 1}));
    return tau;
}

bool twisting_identity_holds(const TwistingCochain& tau) {
    const FinCoalgebra& c = *tau.c;
    const DGAlgebra& b = *tau.b;
    const GradedAlgebra& g = b.algebra();
    const Field& f = b.field();
    (void)f;
    for (int i = 0; i < c.dim(); ++i) {
        /* m_B (tau (x) tau) Delta(c) + d_B tau(c) + tau d_C(c), d_C = 0 */
        Element sum = g.zero(c.degree(i) + 2);
        for (const auto& [jk, v] : c.coproduct(i)) {
            auto [j, k] = jk;
            if (j == 0 || k == 0) continue; /* tau kills the grouplike */
            Element prod = g.multiply(tau.images[j], tau.images[k]);
            Scalar sign = c.degree(j) % 2 == 0 ? v : -v; /* (-1)^{|tau||c_(1)|} */
            sum = g.add(sum, g.scaled(prod, sign));
        }
        if (i != 0) sum = g.add(sum, b.differentiate(tau.images[i]));
        if (!sum.is_zero()) return false;
    }
    return true;
}

namespace {

/* slice bookkeeping for C (x) B and B (x) C and B (x) C (x) B */
struct TwistSlices {
    /* per total degree: list of items; the meaning of the ints is local */
    std::map<int, std::vector<std::array<int, 4>>> items;
    std::map<int, std::map<std::array<int, 4>, int>> index;
    int dim(int t) const {
        auto it = items.find(t);
        return it == items.end() ? 0 : (int)it->second.size();
    }
    void add(int t, std::array<int, 4> key) {
        index[t].emplace(key, (int)items[t].size());
        items[t].push_back(key);
    }
};

} // namespace

CochainComplex comodule_twisted_complex(const TwistingCochain& tau, int dmax) {
    const FinCoalgebra& c = *tau.c;
    const DGAlgebra& b = *tau.b;
    const GradedAlgebra& g = b.algebra();
    const Field& f = b.field();
    TwistSlices s;
    for (int t = 0; t <= dmax + 1; ++t)
        for (int i = 0; i < c.dim(); ++i) {
            int p = t - c.degree(i);
            if (p < 0 || p > g.trunc()) continue;
            for (int bidx = 0; bidx < g.dim(p); ++bidx) s.add(t, {i, p, bidx, 0});
        }
    CochainComplex cx;
    cx.field = f;
    for (int t = 0; t <= dmax + 1; ++t) cx.dims[t] = s.dim(t);
    for (int t = 0; t <= dmax; ++t) {
        SparseMatrix m(s.dim(t + 1), s.dim(t), f);
        for (int col = 0; col < s.dim(t); ++col) {
            auto [i, p, bidx, z0] = s.items[t][col];
            (void)z0;
            /* (-1)^{|c|} c (x) d(b) */
            Element db = b.differentiate(g.basis_element(p, bidx));
            Scalar s1 = Scalar(c.degree(i) % 2 == 0 ? 1 : -1, f);
            for (const auto& [k, v] : db.c)
                m.add_to(s.index[t + 1].at({i, p + 1, k, 0}), col, s1 * v);
            /* sum (-1)^{|c_(1)|} c_(1) (x) tau(c_(2)) b */
            for (const auto& [jk, v] : c.coproduct(i)) {
                auto [j, k] = jk;
                if (k == 0) continue; /* tau kills the grouplike */
                Element prod = g.multiply(tau.images[k], g.basis_element(p, bidx));
                Scalar s2 = Scalar(c.degree(j) % 2 == 0 ? 1 : -1, f) * v;
                int pnew = prod.degree;
                for (const auto& [bk, bv] : prod.c)
                    m.add_to(s.index[t + 1].at({j, pnew, bk, 0}), col, s2 * bv);
            }
        }
        cx.set_diff(t, std::move(m));
    }
    return cx;
}

CochainComplex module_twisted_complex(const TwistingCochain& tau, int dmax) {
    const FinCoalgebra& c = *tau.c;
    const DGAlgebra& b = *tau.b;
    const GradedAlgebra& g = b.algebra();
    const Field& f = b.field();
    TwistSlices s;
    for (int t = 0; t <= dmax + 1; ++t)
        for (int i = 0; i < c.dim(); ++i) {
            int p = t - c.degree(i);
            if (p < 0 || p > g.trunc()) continue;
            for (int bidx = 0; bidx < g.dim(p); ++bidx) s.add(t, {p, bidx, i, 0});
        }
    CochainComplex cx;
    cx.field = f;
    for (int t = 0; t <= dmax + 1; ++t) cx.dims[t] = s.dim(t);
    for (int t = 0; t <= dmax; ++t) {
        SparseMatrix m(s.dim(t + 1), s.dim(t), f);
        for (int col = 0; col < s.dim(t); ++col) {
            auto [p, bidx, i, z0] = s.items[t][col];
            (void)z0;
            Element db = b.differentiate(g.basis_element(p, bidx));
            for (const auto& [k, v] : db.c)
                m.add_to(s.index[t + 1].at({p + 1, k, i, 0}), col, v);
            /* - sum (-1)^{|b|} b tau(c_(1)) (x) c_(2) */
            for (const auto& [jk, v] : c.coproduct(i)) {
                auto [j, k] = jk;
                if (j == 0) continue;
                Element prod = g.multiply(g.basis_element(p, bidx), tau.images[j]);
                Scalar s2 = Scalar(p % 2 == 0 ? -1 : 1, f) * v;
                int pnew = prod.degree;
                for (const auto& [bk, bv] : prod.c)
                    m.add_to(s.index[t + 1].at({pnew, bk, k, 0}), col, s2 * bv);
            }
        }
        cx.set_diff(t, std::move(m));
    }
    return cx;
}

AdjunctionReport adjunction_check(const FinCoalgebra& c, int dmax, int trunc) {
    if (dmax < 1) fail("BoundsTooSmall", "adjunction check needs dmax >= 1");
    AdjunctionReport rep;
    rep.dmax = dmax;
    Presentation bp = cobar(c, trunc);
    auto b = std::make_shared<DGAlgebra>(bp);
    b->require_valid();
    const GradedAlgebra& g = b->algebra();
    const Field& f = b->field();
    TwistingCochain tau = canonical_twisting_cochain(c, b);
    if (!twisting_identity_holds(tau)) fail("TwistingIdentityViolated", "tau_0 failed its identity");

    /* triple complex B (x) C (x) B */
    TwistSlices s;
    for (int t = 0; t <= dmax + 1; ++t)
        for (int i = 0; i < c.dim(); ++i)
            for (int p = 0; p + c.degree(i) <= t; ++p) {
                int q = t - p - c.degree(i);
                if (p > g.trunc() || q > g.trunc() || q < 0) continue;
                for (int b1 = 0; b1 < g.dim(p); ++b1)
                    for (int b2 = 0; b2 < g.dim(q); ++b2) s.add(t, {i, p, b1, q * 100000 + b2});
            }
    /* the packed fourth coordinate keeps the key small; unpack below */
    CochainComplex cx;
    cx.field = f;
    for (int t = 0; t <= dmax + 1; ++t) cx.dims[t] = s.dim(t);
    for (int t = 0; t <= dmax; ++t) {
        SparseMatrix m(s.dim(t + 1), s.dim(t), f);
        for (int col = 0; col < s.dim(t); ++col) {
            auto [i, p, b1, packed] = s.items[t][col];
            int q = packed / 100000, b2 = packed % 100000;
            /* d(b1) (x) c (x) b2 */
            Element db1 = b->differentiate(g.basis_element(p, b1));
            for (const auto& [k, v] : db1.c)
                m.add_to(s.index[t + 1].at({i, p + 1, k, q * 100000 + b2}), col, v);
            /* - sum (-1)^{|b1|} b1 tau(c_(1)) (x) c_(2) (x) b2 */
            for (const auto& [jk, v] : c.coproduct(i)) {
                auto [j, k] = jk;
                if (j == 0) continue;
                Element prod = g.multiply(g.basis_element(p, b1), tau.images[j]);
                Scalar s2 = Scalar(p % 2 == 0 ? -1 : 1, f) * v;
                for (const auto& [bk, bv] : prod.c)
                    m.add_to(s.index[t + 1].at({k, prod.degree, bk, q * 100000 + b2}), col,
                             s2 * bv);
            }
            /* (-1)^{|b1|+|c|} b1 (x) c (x) d(b2) */
            Element db2 = b->differentiate(g.basis_element(q, b2));
            Scalar s3 = Scalar((p + c.degree(i)) % 2 == 0 ? 1 : -1, f);
            for (const auto& [k, v] : db2.c)
                m.add_to(s.index[t + 1].at({i, p, b1, (q + 1) * 100000 + k}), col, s3 * v);
            /* sum (-1)^{|b1|+|c_(1)|} b1 (x) c_(1) (x) tau(c_(2)) b2 */
            for (const auto& [jk, v] : c.coproduct(i)) {
                auto [j, k] = jk;
                if (k == 0) continue;
                Element prod = g.multiply(tau.images[k], g.basis_element(q, b2));
                Scalar s4 = Scalar((p + c.degree(j)) % 2 == 0 ? 1 : -1, f) * v;
                for (const auto& [bk, bv] : prod.c)
                    m.add_to(s.index[t + 1].at({j, p, b1, prod.degree * 100000 + bk}), col,
                             s4 * bv);
            }
        }
        cx.set_diff(t, std::move(m));
    }
    rep.delta_squared_ok = cx.differentials_compose_to_zero();

    /* adjunction map b1 (x) c (x) b2 -> eps(c) b1 b2 and the chain property */
    std::map<int, SparseMatrix> amap;
    for (int t = 0; t <= dmax + 1; ++t) {
        SparseMatrix m(g.dim(t), s.dim(t), f);
        for (int col = 0; col < s.dim(t); ++col) {
            auto [i, p, b1, packed] = s.items[t][col];
            if (i != 0) continue; /* eps kills Cbar */
            int q = packed / 100000, b2 = packed % 100000;
            Element prod = g.multiply(g.basis_element(p, b1), g.basis_element(q, b2));
            for (const auto& [k, v] : prod.c) m.add_to(k, col, v);
        }
        amap.emplace(t, std::move(m));
    }
    rep.chain_map_ok = true;
    for (int t = 0; t <= dmax; ++t) {
        /* amap_{t+1} o d_t == d_B o amap_t, column by column */
        const SparseMatrix& dt = *cx.diff_at(t);
        const SparseMatrix& db = b->d_matrix(t);
        for (int col = 0; col < s.dim(t) && rep.chain_map_ok; ++col) {
            std::vector<Scalar> x(s.dim(t), Scalar::zero(f));
            x[col] = Scalar::one(f);
            std::vector<Scalar> lhs = amap.at(t + 1).apply(dt.apply(x));
            std::vector<Scalar> rhs = db.apply(amap.at(t).apply(x));
            if (lhs != rhs) rep.chain_map_ok = false;
        }
    }

    /* cohomology comparison through dmax - 1 */
    CochainComplex bx = b->complex(dmax + 1);
    rep.iso_per_degree = true;
    for (int t = 0; t + 1 <= dmax; ++t) {
        auto ht = cx.cohomology(t);
        auto hb = bx.cohomology(t);
        rep.h_triple.push_back(ht.dim());
        rep.h_b.push_back(hb.dim());
        if (ht.dim() != hb.dim()) {
            rep.iso_per_degree = false;
            continue;
        }
        if (ht.dim() == 0) continue;
        /* induced map on H must be invertible */
        const int hdim = ht.dim();
        SparseMatrix sys(g.dim(t), hdim + hb.image.dim(), f);
        for (int k = 0; k < hdim; ++k)
            for (const auto& [r, v] : hb.reps[k]) sys.set(r, k, v);
        for (int k = 0; k < hb.image.dim(); ++k)
            for (const auto& [r, v] : hb.image.basis[k]) sys.set(r, hdim + k, v);
        SparseMatrix induced(hdim, hdim, f);
        for (int k = 0; k < hdim; ++k) {
            std::vector<Scalar> dense = svec_to_dense(ht.reps[k], s.dim(t), f);
            std::vector<Scalar> img = amap.at(t).apply(dense);
            auto x = solve(sys, img);
            if (!x) {
                rep.iso_per_degree = false;
                break;
            }
            for (int r = 0; r < hdim; ++r)
                if (!(*x)[r].is_zero()) induced.set(r, k, (*x)[r]);
        }
        if (rref(induced).rank() != hdim) rep.iso_per_degree = false;
    }
    return rep;
}

/* ---- duality pipelines ---- */

RoundtripReport koszul_duality_roundtrip(std::shared_ptr<DGAlgebra> a, Window w, uint64_t seed) {
    RoundtripReport rep;
    rep.window = w;
    SemifreeResolution res =
        minimal_resolution(a, ResolutionWindow{w.max_degree, w.max_stage});
    Verdict kv = is_koszul_dg(res);
    if (!kv.yes()) fail("NotKoszul", "the roundtrip needs a Koszul DG algebra: " + kv.witness);
    if (!res.complete_within_window())
        fail("NotCompact", "the trivial module did not close inside the stage window");
    rep.compact = true;

    ExtAlgebra ext(res);
    FinAlgebra efin = ext.to_fin_algebra();
    FinCoalgebra c = FinCoalgebra::dual_of(efin);
    auto bcob = std::make_shared<DGAlgebra>(cobar(c, w.max_degree));
    bcob->require_valid();

    CohomologyAlgebra ha = a->cohomology(w.max_degree - 1);
    CohomologyAlgebra hb = bcob->cohomology(w.max_degree - 1);
    rep.h_a_dims = ha.dims;
    rep.h_cobar_dims = hb.dims;

    LocalResolution lr = local_minimal_resolution(efin, w.max_stage);
    rep.ext_over_e = lr.ranks;
    rep.ext_ranks_window_exhausted = lr.window_exhausted;

    rep.dims_match = ha.dims == hb.dims;
    for (int n = 0; n < (int)lr.ranks.size() && n < (int)ha.dims.size(); ++n)
        if (lr.ranks[n] != ha.dims[n]) rep.dims_match = false;
    rep.iso_found = graded_iso_search(ha, hb, 16, seed);
    return rep;
}

LocalPipelineReport local_dual_pipeline(const FinAlgebra& r, Window w, uint64_t seed) {
    LocalPipelineReport rep;
    rep.window = w;
    FinCoalgebra c = FinCoalgebra::dual_of(r);
    auto b = std::make_shared<DGAlgebra>(cobar(c, w.max_degree));
    b->require_valid();
    SemifreeResolution res =
        minimal_resolution(b, ResolutionWindow{w.max_degree, w.max_stage});
    rep.cobar_koszul = is_koszul_dg(res);
    rep.ext_complete = res.complete_within_window();
    if (rep.ext_complete) {
        ExtAlgebra ext(res);
        FinAlgebra efin = ext.to_fin_algebra();
        rep.ext_dim = efin.dim();
        rep.ext_iso_to_r = find_local_algebra_iso(efin, r, 32, seed).has_value();
    }
    CohomologyAlgebra h = b->cohomology(w.max_degree - 1);
    rep.h_koszul = cohomology_koszul(h);
    rep.h_generated_in_one = generated_in_degree_one(h);
    rep.strongly_quasi_koszul_r = is_strongly_quasi_koszul(r, w.max_stage);
    rep.quasi_koszul_r = is_quasi_koszul(r, w.max_stage);
    rep.corollary_consistent =
        (rep.strongly_quasi_koszul_r.yes() && rep.h_koszul.yes()) ||
        (rep.strongly_quasi_koszul_r.no() && rep.h_koszul.no());
    return rep;
}

} // namespace dgk
