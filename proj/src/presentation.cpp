#include "dgk/presentation.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dgk {

using nlohmann::json;

void NCPoly::add_term(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
        terms.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

NCPoly NCPoly::scaled(const Scalar& c) const {
    NCPoly out;
    if (c.is_zero()) return out;
    for (const auto& [w, v] : terms) out.terms.emplace(w, v * c);
    return out;
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
    NCPoly out = *this;
    for (const auto& [w, v] : o.terms) out.add_term(w, v);
    return out;
}

int Presentation::generator_index(const std::string& name) const {
    for (int i = 0; i < (int)generators.size(); ++i)
        if (generators[i].name == name) return i;
    return -1;
}

int Presentation::word_degree(const Word& w) const {
    int d = 0;
    for (int g : w) d += generators[g].degree;
    return d;
}

std::optional<int> Presentation::poly_degree(const NCPoly& p) const {
    std::optional<int> d;
    for (const auto& [w, c] : p.terms) {
        (void)c;
        int wd = word_degree(w);
        if (!d) d = wd;
        else if (*d != wd) return std::nullopt;
    }
    return d;
}

bool Presentation::has_differential() const {
    for (const auto& p : differential)
        if (!p.is_zero()) return true;
    return false;
}

std::string Presentation::word_to_string(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    size_t i = 0;
    while (i < w.size()) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!out.empty()) out += "*";
        out += generators[w[i]].name;
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

std::string Presentation::poly_to_string(const NCPoly& p) const {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [w, c] : p.terms) {
        std::string cs = c.to_string();
        if (out.empty()) {
            if (cs == "1" && !w.empty()) out = word_to_string(w);
            else if (cs == "-1" && !w.empty()) out = "-" + word_to_string(w);
            else out = cs + (w.empty() ? "" : "*" + word_to_string(w));
        } else {
            bool neg = cs.size() && cs[0] == '-';
            std::string mag = neg ? cs.substr(1) : cs;
            out += neg ? " - " : " + ";
            if (mag == "1" && !w.empty()) out += word_to_string(w);
            else out += mag + (w.empty() ? "" : "*" + word_to_string(w));
        }
    }
    return out;
}

namespace {

struct ExprParser {
    const std::string& s;
    const Presentation& pres;
    const std::string& context;
    size_t pos = 0;

    [[noreturn]] void error(const std::string& msg) const {
        fail("SyntaxError", context + ": " + msg + " at column " + std::to_string(pos + 1));
    }

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r')) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    bool eat(char c) {
        if (peek(c)) { ++pos; return true; }
        return false;
    }

    bool at_digit() {
        skip_ws();
        return pos < s.size() && isdigit((unsigned char)s[pos]);
    }

    bool at_ident() {
        skip_ws();
        return pos < s.size() && (isalpha((unsigned char)s[pos]) || s[pos] == '_');
    }

    std::string read_digits() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) error("expected a number");
        return s.substr(start, pos - start);
    }

    std::string read_ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && (isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
        if (pos == start) error("expected a generator name");
        return s.substr(start, pos - start);
    }

    Scalar parse_coeff(bool negate) {
        std::string num = read_digits();
        std::string lit = num;
        if (eat('/')) lit += "/" + read_digits();
        Scalar c = Scalar::from_string(lit, pres.field);
        return negate ? -c : c;
    }

    /* atom := genname ["^" posint] appended onto w */
    void parse_atom(Word& w) {
        size_t at = pos;
        std::string name = read_ident();
        int g = pres.generator_index(name);
        if (g < 0) {
            pos = at;
            error("unknown generator '" + name + "'");
        }
        long e = 1;
        if (eat('^')) {
            e = std::stol(read_digits());
            if (e < 1) error("exponent must be positive");
        }
        for (long i = 0; i < e; ++i) w.push_back(g);
    }

    /* term := [coeff "*"] word | coeff */
    void parse_term(NCPoly& acc, bool negate) {
        skip_ws();
        if (pos >= s.size()) error("expected a term");
        Scalar coeff = Scalar::one(pres.field);
        bool have_coeff = false;
        if (at_digit()) {
            coeff = parse_coeff(negate);
            have_coeff = true;
            if (!eat('*')) { /* bare constant */
                acc.add_term({}, coeff);
                return;
            }
        } else if (negate) {
            coeff = -coeff;
        }
        if (!at_ident()) {
            if (have_coeff) error("expected a word after '*'");
            error("expected a coefficient or a word");
        }
        Word w;
        parse_atom(w);
        while (true) {
            size_t save = pos;
            if (!eat('*')) break;
            if (!at_ident()) { pos = save; break; }
            parse_atom(w);
        }
        acc.add_term(w, coeff);
    }

    NCPoly parse() {
        NCPoly acc;
        skip_ws();
        if (pos >= s.size()) error("empty expression");
        bool negate = false;
        if (eat('-')) negate = true;
        else eat('+');
        parse_term(acc, negate);
        while (true) {
            skip_ws();
            if (pos >= s.size()) break;
            if (eat('+')) parse_term(acc, false);
            else if (eat('-')) parse_term(acc, true);
            else error("expected '+' or '-'");
        }
        return acc;
    }
};

} // namespace

NCPoly parse_expr(const std::string& text, const Presentation& pres, const std::string& context) {
    ExprParser p{text, pres, context};
    return p.parse();
}

void Presentation::validate_structure() const {
    for (int i = 0; i < (int)generators.size(); ++i) {
        if (generators[i].name.empty())
            fail("SyntaxError", "generator " + std::to_string(i) + " has an empty name");
        if (generators[i].degree < 1)
            fail("BadGeneratorDegree",
                 "generator '" + generators[i].name + "' has degree " +
                     std::to_string(generators[i].degree) + "; connectedness needs degree >= 1");
        for (int j = i + 1; j < (int)generators.size(); ++j)
            if (generators[i].name == generators[j].name)
                fail("DuplicateGenerator", "generator '" + generators[i].name + "' appears twice");
    }
    if (truncation_degree < 1) fail("BadTruncation", "truncation_degree must be >= 1");
    for (int i = 0; i < (int)relations.size(); ++i) {
        const NCPoly& r = relations[i];
        if (r.is_zero()) continue;
        auto d = poly_degree(r);
        if (!d)
            fail("InhomogeneousRelation",
                 "relation " + std::to_string(i) + " = " + poly_to_string(r) + " mixes degrees");
        if (*d < 1)
            fail("InhomogeneousRelation",
                 "relation " + std::to_string(i) + " has a constant term");
        if (*d > truncation_degree)
            fail("BadTruncation", "relation " + std::to_string(i) + " has degree " +
                                      std::to_string(*d) + " beyond the truncation wall " +
                                      std::to_string(truncation_degree));
    }
    if ((int)differential.size() != (int)generators.size() && !differential.empty())
        fail("BadDifferentialDegree", "differential table size mismatch");
    for (int g = 0; g < (int)differential.size(); ++g) {
        const NCPoly& dg = differential[g];
        if (dg.is_zero()) continue;
        auto d = poly_degree(dg);
        if (!d || *d != generators[g].degree + 1)
            fail("BadDifferentialDegree",
                 "d(" + generators[g].name + ") = " + poly_to_string(dg) +
                     " must be homogeneous of degree " + std::to_string(generators[g].degree + 1));
    }
}

Presentation Presentation::from_json_text(const std::string& text, std::optional<Field> field_override) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail("SyntaxError", std::string("presentation file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("SyntaxError", "presentation file must be a JSON object");

    Presentation p;
    p.field = field_override ? *field_override
                             : Field::parse(j.value("field", std::string("Q")));
    if (!j.contains("generators") || !j["generators"].is_array())
        fail("SyntaxError", "missing \"generators\" array");
    for (const auto& g : j["generators"]) {
        if (!g.contains("name") || !g.contains("degree"))
            fail("SyntaxError", "each generator needs \"name\" and \"degree\"");
        p.generators.push_back({g["name"].get<std::string>(), g["degree"].get<int>()});
    }
    p.truncation_degree = j.value("truncation_degree", 8);
    /* parse expressions only after generators are known */
    if (j.contains("relations")) {
        int i = 0;
        for (const auto& r : j["relations"]) {
            NCPoly rp = parse_expr(r.get<std::string>(), p, "relations[" + std::to_string(i) + "]");
            if (!rp.is_zero()) p.relations.push_back(std::move(rp));
            ++i;
        }
    }
    p.differential.assign(p.generators.size(), NCPoly{});
    if (j.contains("differential")) {
        for (const auto& [name, expr] : j["differential"].items()) {
            int g = p.generator_index(name);
            if (g < 0) fail("SyntaxError", "differential given for unknown generator '" + name + "'");
            p.differential[g] = parse_expr(expr.get<std::string>(), p, "differential[" + name + "]");
        }
    }
    p.validate_structure();
    return p;
}

Presentation Presentation::from_json_file(const std::string& path, std::optional<Field> field_override) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("IO", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str(), field_override);
}

std::string Presentation::to_json_text() const {
    json j;
    j["field"] = field.to_string();
    j["generators"] = json::array();
    for (const auto& g : generators) j["generators"].push_back({{"name", g.name}, {"degree", g.degree}});
    j["relations"] = json::array();
    for (const auto& r : relations) j["relations"].push_back(poly_to_string(r));
    json d = json::object();
    for (int g = 0; g < (int)differential.size(); ++g)
        if (!differential[g].is_zero()) d[generators[g].name] = poly_to_string(differential[g]);
    j["differential"] = d;
    j["truncation_degree"] = truncation_degree;
    return j.dump(2) + "\n";
}

} // namespace dgk
