#include <CLI11.hpp>

#include <cstdlib>

#include "dgk/runner.hpp"
#include "dgk/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"dgk: exact homological computations on connected DG algebras"};
    app.set_version_flag("--version", dgk::kVersion);

    dgk::RunConfig cfg;
    std::string field;
    app.add_option("command", cfg.command,
                   "validate | cohomology | resolve | ext | tor | koszul-dg | koszul-graded | "
                   "quadratic-dual | quasi-koszul | strongly-quasi-koszul | as-gorenstein | "
                   "frobenius | bar | cobar | duality-roundtrip | local-pipeline | "
                   "adjunction-check")
        ->required();
    app.add_option("input", cfg.input_path, "input JSON file")->required();
    app.add_option("--max-degree", cfg.max_degree, "degree window D")->check(CLI::PositiveNumber);
    app.add_option("--max-stage", cfg.max_stage, "stage window S")->check(CLI::PositiveNumber);
    app.add_option("--bar-length", cfg.bar_length, "bar word length L")->check(CLI::PositiveNumber);
    app.add_option("--field", field, "ground field override: Q or GF(p)");
    app.add_option("--seed", cfg.seed, "seed for randomized searches");
    app.add_option("--out", cfg.out_path, "write the report here instead of stdout");
    app.add_option("--cache", cfg.cache_dir, "content-addressed report cache directory");
    app.add_flag("--verify-cache", cfg.verify_cache, "recompute on hits and compare bytes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (cfg.cache_dir.empty()) {
        if (const char* env = std::getenv("DGK_CACHE")) cfg.cache_dir = env;
    }
    if (!field.empty()) {
        try {
            cfg.field_override = dgk::Field::parse(field);
        } catch (const dgk::Error& e) {
            std::cerr << "dgk: error: " << e.what() << "\n";
            return 1;
        }
    }
    return dgk::run_cli(cfg);
}
