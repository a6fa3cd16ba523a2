#pragma once

#include <gmp.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dgk {

/* Every recoverable failure carries a machine-readable kind ("SyntaxError",
   "NotLocal", ...) next to the human message. */
struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& msg)
        : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
    throw Error(kind, msg);
}

bool is_prime_u64(uint64_t n);

/* Ground field: the rationals when p == 0, otherwise GF(p) with p prime. */
struct Field {
    uint64_t p = 0;

    bool is_q() const { return p == 0; }
    bool operator==(const Field& o) const { return p == o.p; }
    bool operator!=(const Field& o) const { return p != o.p; }

    static Field Q() { return Field{0}; }
    static Field GF(uint64_t p);
    static Field parse(const std::string& s); /* "Q" or "GF(p)" */
    std::string to_string() const;
};

/* Exact field element: arbitrary-precision rational, or residue mod p.
   Arithmetic never rounds; division by zero throws. */
class Scalar {
  public:
    Scalar();                                  /* 0 over Q */
    explicit Scalar(const Field& f);           /* 0 over f */
    Scalar(long v, const Field& f);
    Scalar(const Scalar& o);
    Scalar(Scalar&& o) noexcept;
    Scalar& operator=(const Scalar& o);
    Scalar& operator=(Scalar&& o) noexcept;
    ~Scalar();

    static Scalar zero(const Field& f) { return Scalar(f); }
    static Scalar one(const Field& f) { return Scalar(1, f); }
    /* accepts "a", "-a", "a/b" */
    static Scalar from_string(const std::string& s, const Field& f);
    static Scalar from_fraction(long num, long den, const Field& f);

    const Field& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inv() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /* "a" or "a/b" over Q; decimal residue over GF(p) */
    std::string to_string() const;

    /* reduction Q -> GF(p); fails (returns false) when the denominator
       vanishes mod p */
    bool to_gf(uint64_t p, Scalar& out) const;

  private:
    void check_same_field(const Scalar& o) const;

    Field field_;
    mpq_t q_;      /* value when over Q */
    uint64_t r_ = 0; /* value when over GF(p) */
};

} // namespace dgk
