#include "dgk/runner.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dgk/sha256.hpp"
#include "dgk/version.hpp"

namespace dgk {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("IO", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Window window_of(const RunConfig& cfg) { return Window{cfg.max_degree, cfg.max_stage}; }

/* the file's truncation degree is a hard wall: a window that does not fit
   is an input error, never a silent extension */
Presentation load_presentation(const RunConfig& cfg, const std::string& text, int need_degree) {
    Presentation p = Presentation::from_json_text(text, cfg.field_override);
    if (p.truncation_degree < need_degree)
        fail("BadTruncation", "the requested window needs degrees through " +
                                  std::to_string(need_degree) + " but the input declares "
                                  "truncation_degree " + std::to_string(p.truncation_degree));
    return p;
}

json dispatch(const RunConfig& cfg, const std::string& input_text) {
    const std::string& cmd = cfg.command;
    const Window w = window_of(cfg);

    if (cmd == "validate") {
        /* validation runs through the file's own wall */
        DGAlgebra a(load_presentation(cfg, input_text, 1));
        return validation_json(a.validate());
    }
    if (cmd == "cohomology") {
        /* the top window degree is indeterminate at the wall, so the report
           covers degrees 0..D-1 */
        DGAlgebra a(load_presentation(cfg, input_text, cfg.max_degree));
        return cohomology_json(a.algebra(), a.cohomology(cfg.max_degree - 1));
    }
    if (cmd == "resolve") {
        auto a = std::make_shared<DGAlgebra>(load_presentation(cfg, input_text, cfg.max_degree));
        return resolution_json(
            minimal_resolution(a, ResolutionWindow{cfg.max_degree, cfg.max_stage}, cfg.seed));
    }
    if (cmd == "ext") {
        auto a = std::make_shared<DGAlgebra>(load_presentation(cfg, input_text, cfg.max_degree));
        SemifreeResolution r =
            minimal_resolution(a, ResolutionWindow{cfg.max_degree, cfg.max_stage}, cfg.seed);
        ExtAlgebra e(r);
        json out = ext_json(e);
        out["gr_of_filtration"] = filtered_graded_json(e.gr_of_filtration());
        if (e.complete()) {
            FinAlgebra fin = e.to_fin_algebra();
            out["radical_filtration"] = filtered_graded_json(radical_filtration(fin));
        }
        return out;
    }
    if (cmd == "tor") {
        auto a = std::make_shared<DGAlgebra>(load_presentation(cfg, input_text, cfg.max_degree));
        return tor_json(tor_dims(
            minimal_resolution(a, ResolutionWindow{cfg.max_degree, cfg.max_stage}, cfg.seed)));
    }
    if (cmd == "koszul-dg") {
        auto a = std::make_shared<DGAlgebra>(load_presentation(cfg, input_text, cfg.max_degree));
        return verdict_json("koszul_dg", is_koszul_dg(a, w));
    }
    if (cmd == "koszul-graded") {
        Presentation p = load_presentation(cfg, input_text, cfg.max_degree);
        return verdict_json("koszul_graded", is_koszul_graded(p, cfg.max_degree));
    }
    if (cmd == "quadratic-dual") {
        Presentation p = load_presentation(cfg, input_text, 1);
        QuadraticData q = quadratic_data(p);
        /* the dual is a fresh presentation; its wall is ours to choose */
        Presentation dual =
            quadratic_dual_presentation(q, p.field, std::max(cfg.max_degree, 2));
        json out;
        out["dual"] = json::parse(dual.to_json_text());
        out["dual_hilbert"] = GradedAlgebra(dual).hilbert(cfg.max_degree);
        return out;
    }
    if (cmd == "quasi-koszul" || cmd == "strongly-quasi-koszul") {
        FinAlgebra e = fin_algebra_from_json_text(input_text, cfg.field_override);
        Verdict v = cmd == "quasi-koszul" ? is_quasi_koszul(e, cfg.max_stage)
                                          : is_strongly_quasi_koszul(e, cfg.max_stage);
        return verdict_json(cmd == "quasi-koszul" ? "quasi_koszul" : "strongly_quasi_koszul", v);
    }
    if (cmd == "as-gorenstein") {
        auto a = std::make_shared<DGAlgebra>(load_presentation(cfg, input_text, cfg.max_degree));
        return verdict_json("as_gorenstein", as_gorenstein(a, w));
    }
    if (cmd == "frobenius") {
        FinAlgebra e = fin_algebra_from_json_text(input_text, cfg.field_override);
        return verdict_json("frobenius", is_frobenius(e, 64, cfg.seed == 0 ? 1 : cfg.seed));
    }
    if (cmd == "bar") {
        /* the letter window is chosen inside the wall so that the exhaustive
           delta^2 check (double merges reach 3*dwin) stays computable */
        auto a = std::make_shared<DGAlgebra>(load_presentation(cfg, input_text, 1));
        int dwin = std::max(1, std::min(cfg.max_degree, a->trunc() / 3));
        BarCoalgebra bar(a, dwin, cfg.bar_length);
        json out = bar_json(bar);
        int checked = 0;
        out["delta_squared_ok"] = bar.delta_squared_vanishes(&checked);
        out["delta_squared_checked_words"] = checked;
        return out;
    }
    if (cmd == "cobar") {
        FinAlgebra e = fin_algebra_from_json_text(input_text, cfg.field_override);
        FinCoalgebra c = FinCoalgebra::dual_of(e);
        Presentation p = cobar(c, cfg.max_degree);
        DGAlgebra b(p);
        json out;
        out["presentation"] = json::parse(p.to_json_text());
        out["validation"] = validation_json(b.validate());
        out["hilbert"] = b.algebra().hilbert(std::min(cfg.max_degree, 6));
        return out;
    }
    if (cmd == "duality-roundtrip") {
        auto a = std::make_shared<DGAlgebra>(load_presentation(cfg, input_text, cfg.max_degree));
        return roundtrip_json(koszul_duality_roundtrip(a, w, cfg.seed));
    }
    if (cmd == "local-pipeline") {
        FinAlgebra r = fin_algebra_from_json_text(input_text, cfg.field_override);
        return pipeline_json(local_dual_pipeline(r, w, cfg.seed));
    }
    if (cmd == "adjunction-check") {
        FinAlgebra e = fin_algebra_from_json_text(input_text, cfg.field_override);
        FinCoalgebra c = FinCoalgebra::dual_of(e);
        int dmax = std::min(cfg.max_degree, 5);
        return adjunction_json(adjunction_check(c, dmax, dmax + 2));
    }
    fail("Usage", "unknown command '" + cmd + "'");
}

std::string config_stamp(const RunConfig& cfg) {
    std::string f = cfg.field_override ? cfg.field_override->to_string() : "-";
    return cfg.command + "|D=" + std::to_string(cfg.max_degree) +
           "|S=" + std::to_string(cfg.max_stage) + "|L=" + std::to_string(cfg.bar_length) +
           "|field=" + f + "|seed=" + std::to_string(cfg.seed);
}

} // namespace

json run_command(const RunConfig& cfg) {
    std::string input_text = read_file(cfg.input_path);
    json report;
    report["tool"] = "dgk";
    report["version"] = kVersion;
    report["command"] = cfg.command;
    report["window"] = {{"max_degree", cfg.max_degree},
                        {"max_stage", cfg.max_stage},
                        {"bar_length", cfg.bar_length}};
    report["seed"] = cfg.seed;
    report["input"] = {{"path", cfg.input_path}, {"sha256", sha256_hex(input_text)}};
    report["field"] =
        cfg.field_override ? cfg.field_override->to_string()
                           : json::parse(input_text).value("field", std::string("Q"));
    report["result"] = dispatch(cfg, input_text);
    return report;
}

std::string report_bytes(const json& report) { return report.dump(2) + "\n"; }

namespace {

void write_output(const RunConfig& cfg, const std::string& bytes) {
    if (cfg.out_path.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!out) fail("IO", "cannot write '" + cfg.out_path + "'");
    out << bytes;
}

} // namespace

int run_cli(const RunConfig& cfg) {
    try {
        std::string key;
        std::string cache_file;
        if (!cfg.cache_dir.empty()) {
            std::string input_text = read_file(cfg.input_path);
            key = sha256_hex(std::string(kVersion) + "\n" + config_stamp(cfg) + "\n" + input_text);
            cache_file = cfg.cache_dir + "/" + key + ".json";
            std::ifstream in(cache_file, std::ios::binary);
            if (in) {
                std::ostringstream ss;
                ss << in.rdbuf();
                json entry;
                bool corrupt = false;
                std::string payload;
                try {
                    entry = json::parse(ss.str());
                    payload = entry.at("payload").get<std::string>();
                    if (entry.at("payload_sha256").get<std::string>() != sha256_hex(payload))
                        corrupt = true;
                } catch (...) {
                    corrupt = true;
                }
                if (corrupt) {
                    std::cerr << "dgk: warning: CacheCorrupt entry " << key
                              << "; recomputing\n";
                } else if (cfg.verify_cache) {
                    std::string fresh = report_bytes(run_command(cfg));
                    if (fresh != payload) {
                        std::cerr << "dgk: cache verification failed: entry " << key
                                  << " differs from recomputation\n";
                        return 2;
                    }
                    write_output(cfg, payload);
                    return 0;
                } else {
                    write_output(cfg, payload);
                    return 0;
                }
            }
        }
        std::string bytes = report_bytes(run_command(cfg));
        if (!cache_file.empty()) {
            json entry;
            entry["key"] = key;
            entry["payload"] = bytes;
            entry["payload_sha256"] = sha256_hex(bytes);
            std::string tmp = cache_file + ".tmp";
            {
                std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                if (out) out << entry.dump(2) << "\n";
            }
            std::rename(tmp.c_str(), cache_file.c_str());
        }
        write_output(cfg, bytes);
        return 0;
    } catch (const Error& e) {
        std::cerr << "dgk: error: " << e.what() << "\n";
        if (e.kind == "Internal" || e.kind == "LiftFailed" || e.kind == "RepresentativeNotInIP")
            return 2;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "dgk: internal error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace dgk
