#include "dgk/scalar.hpp"

namespace dgk {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)((__uint128_t)a * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

/* deterministic Miller-Rabin, valid for all 64-bit n */
bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

Field Field::GF(uint64_t p) {
    if (!is_prime_u64(p)) fail("BadField", "GF(p) requires a prime p, got " + std::to_string(p));
    return Field{p};
}

Field Field::parse(const std::string& s) {
    if (s == "Q") return Q();
    if (s.size() > 4 && s.substr(0, 3) == "GF(" && s.back() == ')') {
        const std::string body = s.substr(3, s.size() - 4);
        if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
            fail("BadField", "cannot parse field '" + s + "'");
        return GF(std::stoull(body));
    }
    fail("BadField", "cannot parse field '" + s + "' (expected \"Q\" or \"GF(p)\")");
}

std::string Field::to_string() const {
    return is_q() ? "Q" : "GF(" + std::to_string(p) + ")";
}

Scalar::Scalar() : field_(Field::Q()) { mpq_init(q_); }

Scalar::Scalar(const Field& f) : field_(f) { mpq_init(q_); }

Scalar::Scalar(long v, const Field& f) : field_(f) {
    mpq_init(q_);
    if (field_.is_q()) {
        mpq_set_si(q_, v, 1);
    } else {
        long m = v % (long)field_.p;
        if (m < 0) m += (long)field_.p;
        r_ = (uint64_t)m;
    }
}

Scalar::Scalar(const Scalar& o) : field_(o.field_), r_(o.r_) {
    mpq_init(q_);
    mpq_set(q_, o.q_);
}

Scalar::Scalar(Scalar&& o) noexcept : field_(o.field_), r_(o.r_) {
    mpq_init(q_);
    mpq_swap(q_, o.q_);
}

Scalar& Scalar::operator=(const Scalar& o) {
    if (this != &o) {
        field_ = o.field_;
        r_ = o.r_;
        mpq_set(q_, o.q_);
    }
    return *this;
}

Scalar& Scalar::operator=(Scalar&& o) noexcept {
    if (this != &o) {
        field_ = o.field_;
        r_ = o.r_;
        mpq_swap(q_, o.q_);
    }
    return *this;
}

Scalar::~Scalar() { mpq_clear(q_); }

Scalar Scalar::from_string(const std::string& s, const Field& f) {
    std::string t = s;
    if (t.empty()) fail("SyntaxError", "empty scalar literal");
    bool neg = false;
    size_t i = 0;
    if (t[0] == '-') { neg = true; i = 1; }
    else if (t[0] == '+') { i = 1; }
    const size_t slash = t.find('/');
    std::string num = t.substr(i, slash == std::string::npos ? std::string::npos : slash - i);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (num.empty() || den.empty() ||
        num.find_first_not_of("0123456789") != std::string::npos ||
        den.find_first_not_of("0123456789") != std::string::npos)
        fail("SyntaxError", "cannot parse scalar '" + s + "'");
    Scalar out(f);
    if (f.is_q()) {
        mpz_set_str(mpq_numref(out.q_), num.c_str(), 10);
        mpz_set_str(mpq_denref(out.q_), den.c_str(), 10);
        if (mpz_sgn(mpq_denref(out.q_)) == 0) fail("DivisionByZero", "zero denominator in '" + s + "'");
        if (neg) mpq_neg(out.q_, out.q_);
        mpq_canonicalize(out.q_);
    } else {
        mpz_t z;
        mpz_init(z);
        mpz_set_str(z, num.c_str(), 10);
        uint64_t n = mpz_fdiv_ui(z, f.p);
        mpz_set_str(z, den.c_str(), 10);
        uint64_t d = mpz_fdiv_ui(z, f.p);
        mpz_clear(z);
        if (d == 0) fail("DivisionByZero", "denominator of '" + s + "' vanishes mod " + std::to_string(f.p));
        uint64_t v = mulmod_u64(n, powmod_u64(d, f.p - 2, f.p), f.p);
        out.r_ = neg && v != 0 ? f.p - v : v;
    }
    return out;
}

Scalar Scalar::from_fraction(long num, long den, const Field& f) {
    if (den == 0) fail("DivisionByZero", "zero denominator");
    return Scalar(num, f) / Scalar(den, f);
}

bool Scalar::is_zero() const { return field_.is_q() ? mpq_sgn(q_) == 0 : r_ == 0; }

bool Scalar::is_one() const {
    return field_.is_q() ? mpq_cmp_si(q_, 1, 1) == 0 : r_ == 1;
}

void Scalar::check_same_field(const Scalar& o) const {
    if (field_ != o.field_) fail("FieldMismatch", "mixed " + field_.to_string() + " and " + o.field_.to_string());
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    Scalar out(field_);
    if (field_.is_q()) mpq_add(out.q_, q_, o.q_);
    else {
        out.r_ = r_ + o.r_;
        if (out.r_ >= field_.p) out.r_ -= field_.p;
    }
    return out;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same_field(o);
    Scalar out(field_);
    if (field_.is_q()) mpq_sub(out.q_, q_, o.q_);
    else out.r_ = r_ >= o.r_ ? r_ - o.r_ : r_ + field_.p - o.r_;
    return out;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    Scalar out(field_);
    if (field_.is_q()) mpq_mul(out.q_, q_, o.q_);
    else out.r_ = mulmod_u64(r_, o.r_, field_.p);
    return out;
}

Scalar Scalar::inv() const {
    if (is_zero()) fail("DivisionByZero", "inverse of zero");
    Scalar out(field_);
    if (field_.is_q()) mpq_inv(out.q_, q_);
    else out.r_ = powmod_u64(r_, field_.p - 2, field_.p);
    return out;
}

Scalar Scalar::operator/(const Scalar& o) const {
    check_same_field(o);
    return *this * o.inv();
}

Scalar Scalar::operator-() const {
    Scalar out(field_);
    if (field_.is_q()) mpq_neg(out.q_, q_);
    else out.r_ = r_ == 0 ? 0 : field_.p - r_;
    return out;
}

Scalar& Scalar::operator+=(const Scalar& o) { return *this = *this + o; }
Scalar& Scalar::operator-=(const Scalar& o) { return *this = *this - o; }
Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

bool Scalar::operator==(const Scalar& o) const {
    if (field_ != o.field_) return false;
    return field_.is_q() ? mpq_equal(q_, o.q_) != 0 : r_ == o.r_;
}

std::string Scalar::to_string() const {
    if (!field_.is_q()) return std::to_string(r_);
    char* c = mpq_get_str(nullptr, 10, q_);
    std::string s(c);
    void (*freefunc)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(c, s.size() + 1);
    return s;
}

bool Scalar::to_gf(uint64_t p, Scalar& out) const {
    if (!field_.is_q()) fail("FieldMismatch", "to_gf expects a rational");
    uint64_t d = mpz_fdiv_ui(mpq_denref(q_), p);
    if (d == 0) return false;
    uint64_t n = mpz_fdiv_ui(mpq_numref(q_), p);
    out = Scalar(Field::GF(p));
    out.r_ = mulmod_u64(n, powmod_u64(d, p - 2, p), p);
    return true;
}

} // namespace dgk
