#pragma once

#include <string>

#include "dgk/graded.hpp"
#include "dgk/presentation.hpp"

namespace dgk::testing {

/* k<x,y>/(y^2, yx) with d(x) = xy, d(y) = 0 */
inline Presentation example_a(int trunc = 8, const std::string& field = "Q") {
    return Presentation::from_json_text(R"({
        "field": ")" + field + R"(",
        "generators": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}],
        "relations": ["y*y", "y*x"],
        "differential": {"x": "x*y"},
        "truncation_degree": )" + std::to_string(trunc) + "}");
}

/* free algebra on one degree-1 generator (= k[x]) */
inline Presentation poly_one_var(int trunc = 8) {
    return Presentation::from_json_text(R"({
        "field": "Q",
        "generators": [{"name": "x", "degree": 1}],
        "relations": [],
        "truncation_degree": )" + std::to_string(trunc) + "}");
}

/* k<x>/(x^n) */
inline Presentation truncated_poly(int n, int trunc = 8) {
    return Presentation::from_json_text(R"({
        "field": "Q",
        "generators": [{"name": "x", "degree": 1}],
        "relations": ["x^)" + std::to_string(n) + R"("],
        "truncation_degree": )" + std::to_string(trunc) + "}");
}

/* commutative polynomials k[x,y] as a quadratic presentation */
inline Presentation poly_two_vars(int trunc = 8) {
    return Presentation::from_json_text(R"({
        "field": "Q",
        "generators": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}],
        "relations": ["x*y - y*x"],
        "truncation_degree": )" + std::to_string(trunc) + "}");
}

} // namespace dgk::testing
