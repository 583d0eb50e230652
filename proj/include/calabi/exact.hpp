#pragma once

/*
 * Exact integer and rational scalars.
 *
 * Both types are thin value wrappers over GMP. A Rational is always kept in
 * canonical form: gcd(|num|, den) = 1, den > 0, zero is 0/1. Equality is
 * therefore structural.
 *
 * Textual form is "p/q", with "/q" omitted when q = 1 and the sign carried
 * by the numerator.
 */

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace calabi {

// Raised for x/0 and 0^(-k).
class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("division by zero") {}
};

class ExactInt {
public:
    ExactInt() = default;
    ExactInt(long v) : v_(v) {}
    ExactInt(int v) : v_(static_cast<long>(v)) {}
    explicit ExactInt(mpz_class v) : v_(std::move(v)) {}

    static ExactInt parse(std::string_view text);

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    ExactInt abs() const { return ExactInt(mpz_class(::abs(v_))); }
    std::string to_string() const { return v_.get_str(); }
    bool fits_long() const { return v_.fits_slong_p(); }
    long to_long() const;
    double to_double() const { return v_.get_d(); }
    std::size_t bit_length() const { return mpz_sizeinbase(v_.get_mpz_t(), 2); }

    const mpz_class& gmp() const { return v_; }

    ExactInt& operator+=(const ExactInt& o) { v_ += o.v_; return *this; }
    ExactInt& operator-=(const ExactInt& o) { v_ -= o.v_; return *this; }
    ExactInt& operator*=(const ExactInt& o) { v_ *= o.v_; return *this; }

    friend ExactInt operator+(ExactInt a, const ExactInt& b) { return a += b; }
    friend ExactInt operator-(ExactInt a, const ExactInt& b) { return a -= b; }
    friend ExactInt operator*(ExactInt a, const ExactInt& b) { return a *= b; }
    friend ExactInt operator-(const ExactInt& a) { return ExactInt(mpz_class(-a.v_)); }

    friend bool operator==(const ExactInt& a, const ExactInt& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const ExactInt& a, const ExactInt& b)
    {
        return cmp(a.v_, b.v_) <=> 0;
    }

private:
    mpz_class v_;
};

ExactInt gcd(const ExactInt& a, const ExactInt& b);

class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}
    Rational(int v) : v_(static_cast<long>(v)) {}
    Rational(const ExactInt& v) : v_(v.gmp()) {}
    // num/den, normalized. Throws DivisionByZero when den == 0.
    Rational(const ExactInt& num, const ExactInt& den);
    Rational(long num, long den) : Rational(ExactInt(num), ExactInt(den)) {}
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    // Accepts "p" or "p/q" with an optional leading '-' on p; q must be a
    // positive digit string. Throws std::invalid_argument on malformed text.
    static Rational parse(std::string_view text);

    ExactInt numerator() const { return ExactInt(mpz_class(v_.get_num())); }
    ExactInt denominator() const { return ExactInt(mpz_class(v_.get_den())); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }
    Rational reciprocal() const;
    std::string to_string() const { return v_.get_str(); }
    double to_double() const { return v_.get_d(); }

    const mpq_class& gmp() const { return v_; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        return cmp(a.v_, b.v_) <=> 0;
    }

private:
    mpq_class v_;
};

// Integer power; negative exponents invert. 0^0 = 1.
Rational pow(const Rational& base, long exponent);

ExactInt factorial(unsigned long n);
ExactInt binomial(unsigned long n, unsigned long k);
// Generalized binomial coefficient N(N-1)...(N-k+1)/k! for rational N.
Rational binomial(const Rational& top, unsigned long k);

inline std::ostream& operator<<(std::ostream& os, const ExactInt& v) { return os << v.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.to_string(); }

} // namespace calabi
