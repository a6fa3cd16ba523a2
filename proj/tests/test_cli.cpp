#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dgk/runner.hpp"
#include "dgk/sha256.hpp"

using namespace dgk;
namespace fs = std::filesystem;

namespace {

std::string repo_file(const std::string& rel) {
    /* tests run from the build tree; data/ sits next to the sources */
    for (fs::path base : {fs::path("."), fs::path(".."), fs::path("../.."), fs::path("../../..")}) {
        fs::path p = base / rel;
        if (fs::exists(p)) return p.string();
    }
    return rel;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("sha256 known answers") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("run_command produces the documented verdicts") {
    SUBCASE("koszul-dg on example A") {
        RunConfig cfg;
        cfg.command = "koszul-dg";
        cfg.input_path = repo_file("data/exampleA.json");
        json rep = run_command(cfg);
        CHECK(rep["result"]["outcome"] == "yes");
        CHECK(rep["result"]["window"]["max_degree"] == 8);
    }
    SUBCASE("cohomology dims match the paper example") {
        RunConfig cfg;
        cfg.command = "cohomology";
        cfg.input_path = repo_file("data/exampleA.json");
        cfg.max_degree = 6;
        json rep = run_command(cfg);
        CHECK(rep["result"]["dims"] == json::array({1, 1, 0, 0, 0, 0}));
        CHECK(rep["result"]["representatives"][1][0] == "y");
    }
    SUBCASE("frobenius on the structure-constants format") {
        RunConfig cfg;
        cfg.command = "frobenius";
        cfg.input_path = repo_file("data/k_uv_square_zero.json");
        json rep = run_command(cfg);
        CHECK(rep["result"]["outcome"] == "no");
    }
    SUBCASE("field override changes the report field") {
        RunConfig cfg;
        cfg.command = "koszul-graded";
        cfg.input_path = repo_file("data/k_x_mod_x2.json");
        cfg.field_override = Field::GF(7);
        json rep = run_command(cfg);
        CHECK(rep["field"] == "GF(7)");
        CHECK(rep["result"]["outcome"] == "yes");
    }
}

TEST_CASE("reports are byte-identical for identical config and seed") {
    for (const char* cmd : {"koszul-dg", "ext", "local-pipeline"}) {
        RunConfig cfg;
        cfg.command = cmd;
        cfg.input_path = repo_file(std::string(cmd) == std::string("local-pipeline")
                                       ? "data/k_x_mod_x2.json"
                                       : "data/exampleA.json");
        cfg.max_degree = 5;
        cfg.max_stage = 5;
        cfg.seed = 12345;
        std::string a = report_bytes(run_command(cfg));
        std::string b = report_bytes(run_command(cfg));
        CHECK(a == b);
        CHECK(!a.empty());
    }
}

TEST_CASE("cache put, get, tamper") {
    fs::path dir = fs::temp_directory_path() / "dgk_cache_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    RunConfig cfg;
    cfg.command = "koszul-graded";
    cfg.input_path = repo_file("data/k_x_mod_x3.json");
    cfg.max_degree = 6;
    cfg.cache_dir = dir.string();
    cfg.out_path = (dir / "out1.json").string();

    SUBCASE("cold miss, then byte-identical hit") {
        CHECK(run_cli(cfg) == 0);
        std::string first = slurp(cfg.out_path);
        CHECK(first.find("\"outcome\": \"no\"") != std::string::npos);
        /* exactly one cache entry now exists */
        int entries = 0;
        fs::path entry;
        for (const auto& f : fs::directory_iterator(dir))
            if (f.path().extension() == ".json" && f.path().filename() != "out1.json" &&
                f.path().filename() != "out2.json") {
                ++entries;
                entry = f.path();
            }
        CHECK(entries == 1);

        cfg.out_path = (dir / "out2.json").string();
        CHECK(run_cli(cfg) == 0);
        CHECK(slurp(cfg.out_path) == first);

        /* verify-cache mode recomputes and agrees */
        cfg.verify_cache = true;
        CHECK(run_cli(cfg) == 0);
        cfg.verify_cache = false;

        /* tamper: the corrupt entry is detected and silently recomputed */
        {
            std::ofstream out(entry, std::ios::binary | std::ios::trunc);
            out << "{\"payload\": \"garbage\", \"payload_sha256\": \"0000\"}";
        }
        cfg.out_path = (dir / "out3.json").string();
        CHECK(run_cli(cfg) == 0);
        CHECK(slurp(cfg.out_path) == first);
        /* and the entry was rewritten cleanly */
        CHECK(run_cli(cfg) == 0);
    }
    fs::remove_all(dir);
}

TEST_CASE("usage errors exit 1") {
    RunConfig cfg;
    cfg.command = "no-such-command";
    cfg.input_path = repo_file("data/exampleA.json");
    cfg.out_path = (fs::temp_directory_path() / "dgk_err.json").string();
    CHECK(run_cli(cfg) == 1);
    cfg.command = "koszul-dg";
    cfg.input_path = "does_not_exist.json";
    CHECK(run_cli(cfg) == 1);
}
