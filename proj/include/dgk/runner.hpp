#pragma once

#include "dgk/jsonio.hpp"

namespace dgk {

struct RunConfig {
    std::string command;
    std::string input_path;
    int max_degree = 8;
    int max_stage = 8;
    int bar_length = 4;
    std::optional<Field> field_override;
    uint64_t seed = 0;
    std::string out_path;  /* empty: stdout */
    std::string cache_dir; /* empty: no cache */
    bool verify_cache = false;
};

/* compute the report for one command (no cache involvement) */
json run_command(const RunConfig& cfg);

/* serialized report bytes (canonical: 2-space indent, sorted keys, newline) */
std::string report_bytes(const json& report);

/* full CLI behavior: cache lookup/fill, output writing, exit code
   0 = computed (any verdict), 1 = usage/parse error, 2 = internal violation */
int run_cli(const RunConfig& cfg);

} // namespace dgk
