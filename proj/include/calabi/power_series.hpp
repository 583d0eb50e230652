#pragma once

/*
 * Truncated formal power series sum_{k=0}^{R} c_k x^k over Rational.
 *
 * The truncation order R is explicit. Binary operations truncate at the
 * smaller order of the two operands, so every coefficient of a result is
 * exact.
 */

#include <cstddef>
#include <span>
#include <vector>

#include "calabi/exact.hpp"

namespace calabi {

class TruncatedSeries {
public:
    // The zero series of the given order.
    explicit TruncatedSeries(int order);
    // Coefficients c_0..c_R; order = coeffs.size() - 1.
    explicit TruncatedSeries(std::vector<Rational> coeffs);

    static TruncatedSeries constant(const Rational& value, int order);
    // The formal variable x (order >= 1).
    static TruncatedSeries variable(int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    // Coefficient of x^k, 0 <= k <= order.
    const Rational& operator[](int k) const;
    std::span<const Rational> coeffs() const { return coeffs_; }
    Rational constant_term() const { return coeffs_.front(); }

    TruncatedSeries truncate(int order) const;
    // Multiplication by x: c_k -> c_{k-1}; the top coefficient is dropped.
    TruncatedSeries shift_up() const;

    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    TruncatedSeries& operator*=(const Rational& s);

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(TruncatedSeries a, const Rational& s) { return a *= s; }
    friend TruncatedSeries operator*(const Rational& s, TruncatedSeries a) { return a *= s; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a);

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    std::vector<Rational> coeffs_;
};

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries pow_int(const TruncatedSeries& a, int exponent);
// Termwise derivative; the order drops by one. Order 0 is rejected.
TruncatedSeries derivative(const TruncatedSeries& a);
// exp(a) for a with zero constant term, from (exp a)' = a' exp a.
TruncatedSeries exp_of(const TruncatedSeries& a);

// exp(sum_{k=1}^{R} a_k x^k / k!) with order R = a.size().
TruncatedSeries exp_of_egf(std::span<const Rational> a);

} // namespace calabi
