#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgk/scalar.hpp"

namespace dgk {

struct GeneratorSpec {
    std::string name;
    int degree = 1; /* cohomological degree, >= 1 */
};

/* word in the tensor algebra: sequence of generator indices; empty = unit */
using Word = std::vector<int>;

/* noncommutative polynomial: reduced term map, no zero coefficients */
struct NCPoly {
    std::map<Word, Scalar> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(const Word& w, const Scalar& c);
    NCPoly scaled(const Scalar& c) const;
    NCPoly operator+(const NCPoly& o) const;
};

/* A connected algebra presentation: T(generators)/(relations) with an
   optional degree-+1 derivation given on generators, truncated at degree D. */
struct Presentation {
    Field field;
    std::vector<GeneratorSpec> generators;
    std::vector<NCPoly> relations;    /* homogeneous, degree >= 2 in practice */
    std::vector<NCPoly> differential; /* per generator; empty poly = 0 */
    int truncation_degree = 8;

    int n_generators() const { return (int)generators.size(); }
    int generator_index(const std::string& name) const; /* -1 when absent */
    int word_degree(const Word& w) const;
    /* uniform degree of a nonzero polynomial, nullopt when inhomogeneous */
    std::optional<int> poly_degree(const NCPoly& p) const;
    bool has_differential() const;

    std::string word_to_string(const Word& w) const;
    std::string poly_to_string(const NCPoly& p) const;

    /* validation performed by the loaders below */
    void validate_structure() const;

    static Presentation from_json_text(const std::string& text,
                                       std::optional<Field> field_override = std::nullopt);
    static Presentation from_json_file(const std::string& path,
                                       std::optional<Field> field_override = std::nullopt);
    std::string to_json_text() const;
};

/* expression grammar:
     expr  := ["-"] term (("+"|"-") term)*
     term  := [coeff "*"] word | coeff
     word  := atom ("*" atom)*
     atom  := genname ["^" posint]
     coeff := int | int "/" posint
   whitespace insignificant; "0" is the zero polynomial */
NCPoly parse_expr(const std::string& text, const Presentation& pres,
                  const std::string& context);

} // namespace dgk
