#include "dgk/jsonio.hpp"

namespace dgk {

json scalar_json(const Scalar& s) { return s.to_string(); }

json svec_json(const SVec& v) {
    json out = json::array();
    for (const auto& [i, c] : v) out.push_back({i, c.to_string()});
    return out;
}

json matrix_json(const SparseMatrix& m) {
    json entries = json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r)) entries.push_back({r, c, v.to_string()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

json verdict_json(const std::string& property, const Verdict& v) {
    json out;
    out["property"] = property;
    out["outcome"] = v.outcome;
    out["window"] = {{"max_degree", v.window.max_degree}, {"max_stage", v.window.max_stage}};
    if (!v.witness.empty()) out["witness"] = v.witness;
    if (v.shift) out["shift"] = *v.shift;
    if (!v.details.empty()) out["details"] = v.details;
    if (v.outcome == "yes") out["beyond_window"] = "unverified";
    return out;
}

json validation_json(const ValidationReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json j{{"check", c.name}, {"ok", c.ok}};
        if (!c.witness.empty()) j["witness"] = c.witness;
        checks.push_back(std::move(j));
    }
    return {{"ok", rep.ok()}, {"checks", checks}};
}

json cohomology_json(const GradedAlgebra& g, const CohomologyAlgebra& h) {
    json out;
    out["dims"] = h.dims;
    json reps = json::array();
    for (int n = 0; n <= h.dmax; ++n) {
        json per = json::array();
        for (const Element& e : h.reps[n]) per.push_back(g.to_string(e));
        reps.push_back(std::move(per));
    }
    out["representatives"] = reps;
    json prods = json::object();
    for (const auto& [key, table] : h.products) {
        if (key.first == 0 || key.second == 0) continue;
        json t = json::array();
        for (const auto& row : table) {
            json r = json::array();
            for (const SVec& v : row) r.push_back(svec_json(v));
            t.push_back(std::move(r));
        }
        prods[std::to_string(key.first) + "," + std::to_string(key.second)] = std::move(t);
    }
    out["products"] = prods;
    out["top_degree_note"] =
        "degree " + std::to_string(h.dmax) + " is the last degree determined inside the window";
    return out;
}

json resolution_json(const SemifreeResolution& r) {
    const SemifreeModule& p = *r.p;
    json out;
    out["window"] = {{"max_degree", r.window.max_degree}, {"max_stage", r.window.max_stage}};
    out["window_exhausted"] = r.window_exhausted;
    out["acyclic_through"] = r.acyclic_through;
    json elts = json::array();
    for (int i = 0; i < p.size(); ++i) {
        json e;
        e["id"] = i;
        e["stage"] = p.elt(i).stage;
        e["degree"] = p.elt(i).cdeg;
        json d = json::array();
        for (const auto& [j, c] : p.differential_of(i).comps)
            d.push_back({{"elt", j}, {"coeff", p.dga().algebra().to_string(c)}});
        e["d"] = d;
        elts.push_back(std::move(e));
    }
    out["semibasis"] = elts;
    json stage_sizes = json::array();
    for (const auto& s : r.stages) stage_sizes.push_back((int)s.size());
    out["stage_ranks"] = stage_sizes;
    json mats = json::object();
    for (int n = 0; n + 1 <= r.window.max_degree; ++n)
        mats[std::to_string(n)] = matrix_json(p.d_matrix(n));
    out["d_matrices"] = mats;
    return out;
}

json tor_json(const TorTable& t) {
    json dims = json::array();
    for (const auto& [key, n] : t.dims)
        dims.push_back({{"stage", key.first}, {"degree", key.second}, {"dim", n}});
    return {{"dims", dims},
            {"window_exhausted", t.window_exhausted},
            {"concentrated_in_degree_0", t.concentrated_in_degree_zero()}};
}

json ext_json(const ExtAlgebra& e) {
    json out;
    json basis = json::array();
    for (int i = 0; i < e.size(); ++i)
        basis.push_back({{"stage", e.stage_of(i)}, {"degree", -e.cdeg_of(i)}});
    out["basis"] = basis;
    out["complete_within_window"] = e.complete();
    out["filtration_layer_dims"] = e.filtration_layer_dims();
    json table = json::object();
    for (int i = 0; i < e.size(); ++i)
        for (int j = 0; j < e.size(); ++j) {
            std::string key = std::to_string(i) + "," + std::to_string(j);
            if (!e.product_known(i, j)) table[key] = "unknown";
            else table[key] = svec_json(e.product(i, j));
        }
    out["structure_constants"] = table;
    out["associative_where_known"] = e.is_associative_where_known();
    out["filtration_respected"] = e.filtration_respected();
    return out;
}

json filtered_graded_json(const FilteredGraded& g) {
    json out;
    out["layer_dims"] = g.layer_dims;
    json prods = json::object();
    for (const auto& [key, table] : g.products) {
        json t = json::array();
        for (const auto& row : table) {
            json r = json::array();
            for (const SVec& v : row) r.push_back(svec_json(v));
            t.push_back(std::move(r));
        }
        prods[std::to_string(key.first) + "," + std::to_string(key.second)] = std::move(t);
    }
    out["products"] = prods;
    return out;
}

json bar_json(const BarCoalgebra& bar) {
    const DGAlgebra& a = bar.dga();
    json out;
    out["letter_window"] = bar.letter_window();
    out["max_length"] = bar.max_len();
    json words = json::array();
    for (int i = 0; i < bar.size(); ++i) {
        json w;
        json letters = json::array();
        for (const auto& [deg, idx] : bar.word(i))
            letters.push_back(a.algebra().to_string(a.algebra().basis_element(deg, idx)));
        w["letters"] = letters;
        w["degree"] = bar.bar_degree(i);
        words.push_back(std::move(w));
    }
    out["words"] = words;
    /* differential as a sparse matrix over the materialized words, with the
       out-of-bounds images flagged per word */
    json entries = json::array();
    json flagged = json::array();
    for (int i = 0; i < bar.size(); ++i) {
        BarCoalgebra::Image im = bar.delta(bar.word(i));
        if (!im.in_bounds) flagged.push_back(i);
        for (const auto& [w, c] : im.terms) {
            int j = bar.index_of(w);
            if (j >= 0) entries.push_back({j, i, c.to_string()});
        }
    }
    out["delta"] = {{"rows", bar.size()}, {"cols", bar.size()}, {"entries", entries}};
    out["out_of_bounds_images"] = flagged;
    return out;
}

json roundtrip_json(const RoundtripReport& r) {
    json out;
    out["window"] = {{"max_degree", r.window.max_degree}, {"max_stage", r.window.max_stage}};
    out["compact"] = r.compact;
    out["h_a_dims"] = r.h_a_dims;
    out["h_cobar_dims"] = r.h_cobar_dims;
    out["ext_over_e_ranks"] = r.ext_over_e;
    out["ext_ranks_window_exhausted"] = r.ext_ranks_window_exhausted;
    out["dims_match"] = r.dims_match;
    out["iso_found"] = r.iso_found;
    return out;
}

json pipeline_json(const LocalPipelineReport& r) {
    json out;
    out["window"] = {{"max_degree", r.window.max_degree}, {"max_stage", r.window.max_stage}};
    out["koszul_dg"] = verdict_json("koszul_dg(Omega(R^*))", r.cobar_koszul);
    out["ext_complete"] = r.ext_complete;
    out["ext_dim"] = r.ext_dim;
    out["ext_iso_to_R"] = r.ext_iso_to_r;
    out["strongly_quasi_koszul_R"] =
        verdict_json("strongly_quasi_koszul(R)", r.strongly_quasi_koszul_r);
    out["quasi_koszul_R"] = verdict_json("quasi_koszul(R)", r.quasi_koszul_r);
    out["H_koszul"] = verdict_json("koszul(H(Omega(R^*)))", r.h_koszul);
    out["H_generated_in_degree_1"] =
        verdict_json("generated_in_degree_1(H)", r.h_generated_in_one);
    out["corollary_consistent"] = r.corollary_consistent;
    return out;
}

json adjunction_json(const AdjunctionReport& r) {
    json out;
    out["max_degree"] = r.dmax;
    out["h_triple_dims"] = r.h_triple;
    out["h_omega_dims"] = r.h_b;
    out["delta_squared_ok"] = r.delta_squared_ok;
    out["chain_map_ok"] = r.chain_map_ok;
    out["iso_per_degree"] = r.iso_per_degree;
    return out;
}

FinAlgebra fin_algebra_from_json_text(const std::string& text,
                                      std::optional<Field> field_override) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail("SyntaxError", std::string("input is not valid JSON: ") + e.what());
    }
    if (j.contains("generators"))
        return FinAlgebra::from_graded(
            GradedAlgebra(Presentation::from_json_text(text, field_override)));
    if (!j.contains("basis") || !j.contains("table"))
        fail("SyntaxError", "expected a presentation or {field, basis, table}");
    Field f = field_override ? *field_override : Field::parse(j.value("field", std::string("Q")));
    std::vector<std::string> names = j["basis"].get<std::vector<std::string>>();
    const auto& tj = j["table"];
    if (!tj.is_array() || tj.size() != names.size())
        fail("SyntaxError", "table must be a dim x dim array");
    std::vector<std::vector<SVec>> table(names.size(), std::vector<SVec>(names.size()));
    for (size_t i = 0; i < names.size(); ++i) {
        if (!tj[i].is_array() || tj[i].size() != names.size())
            fail("SyntaxError", "table must be a dim x dim array");
        for (size_t k = 0; k < names.size(); ++k) {
            SVec v;
            for (const auto& ent : tj[i][k]) {
                int idx = ent.at(0).get<int>();
                Scalar c = Scalar::from_string(ent.at(1).get<std::string>(), f);
                if (!c.is_zero()) v.emplace_back(idx, c);
            }
            std::sort(v.begin(), v.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            table[i][k] = std::move(v);
        }
    }
    return FinAlgebra(f, std::move(names), std::move(table));
}

} // namespace dgk
