#include "calabi/power_series.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace calabi {

TruncatedSeries::TruncatedSeries(int order)
{
    if (order < 0)
        throw std::invalid_argument("series order must be >= 0, got " + std::to_string(order));
    coeffs_.resize(order + 1);
}

TruncatedSeries::TruncatedSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty())
        throw std::invalid_argument("series needs at least the constant coefficient");
}

TruncatedSeries TruncatedSeries::constant(const Rational& value, int order)
{
    TruncatedSeries s(order);
    s.coeffs_[0] = value;
    return s;
}

TruncatedSeries TruncatedSeries::variable(int order)
{
    if (order < 1)
        throw std::invalid_argument("the variable x needs order >= 1");
    TruncatedSeries s(order);
    s.coeffs_[1] = Rational(1);
    return s;
}

const Rational& TruncatedSeries::operator[](int k) const
{
    if (k < 0 || k > order())
        throw std::out_of_range("coefficient x^" + std::to_string(k) + " beyond order " + std::to_string(order()));
    return coeffs_[k];
}

TruncatedSeries TruncatedSeries::truncate(int new_order) const
{
    if (new_order < 0 || new_order > order())
        throw std::invalid_argument("cannot truncate order " + std::to_string(order()) + " series to " +
                                    std::to_string(new_order));
    return TruncatedSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + new_order + 1));
}

TruncatedSeries TruncatedSeries::shift_up() const
{
    TruncatedSeries out(order());
    std::copy(coeffs_.begin(), coeffs_.end() - 1, out.coeffs_.begin() + 1);
    return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o)
{
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        coeffs_[k] += o.coeffs_[k];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o)
{
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        coeffs_[k] -= o.coeffs_[k];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& s)
{
    for (auto& c : coeffs_)
        c *= s;
    return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
{
    const int order = std::min(a.order(), b.order());
    TruncatedSeries out(order);
    for (int i = 0; i <= order; ++i) {
        if (a.coeffs_[i].is_zero())
            continue;
        for (int j = 0; i + j <= order; ++j)
            out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return out;
}

TruncatedSeries operator-(const TruncatedSeries& a)
{
    return a * Rational(-1);
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b)
{
    return a * b;
}

TruncatedSeries pow_int(const TruncatedSeries& a, int exponent)
{
    if (exponent < 0)
        throw std::invalid_argument("series power needs exponent >= 0, got " + std::to_string(exponent));
    auto result = TruncatedSeries::constant(Rational(1), a.order());
    auto base = a;
    // square-and-multiply
    for (unsigned e = static_cast<unsigned>(exponent); e != 0; e >>= 1) {
        if (e & 1u)
            result = result * base;
        if (e > 1)
            base = base * base;
    }
    return result;
}

TruncatedSeries derivative(const TruncatedSeries& a)
{
    if (a.order() < 1)
        throw std::invalid_argument("derivative of an order-0 series has no exact coefficients");
    std::vector<Rational> d(a.order());
    for (int k = 1; k <= a.order(); ++k)
        d[k - 1] = a[k] * Rational(k);
    return TruncatedSeries(std::move(d));
}

TruncatedSeries exp_of(const TruncatedSeries& a)
{
    if (!a.constant_term().is_zero())
        throw std::invalid_argument("exp_of needs a zero constant term, got " + a.constant_term().to_string());
    const int order = a.order();
    // k e_k = sum_{i=1}^{k} i a_i e_{k-i}
    std::vector<Rational> e(order + 1);
    e[0] = Rational(1);
    for (int k = 1; k <= order; ++k) {
        Rational acc;
        for (int i = 1; i <= k; ++i) {
            if (a[i].is_zero())
                continue;
            acc += Rational(i) * a[i] * e[k - i];
        }
        e[k] = acc / Rational(k);
    }
    return TruncatedSeries(std::move(e));
}

TruncatedSeries exp_of_egf(std::span<const Rational> a)
{
    std::vector<Rational> c(a.size() + 1);
    for (std::size_t k = 1; k <= a.size(); ++k)
        c[k] = a[k - 1] / Rational(factorial(k));
    return exp_of(TruncatedSeries(std::move(c)));
}

} // namespace calabi
