#include "calabi/exact.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace calabi {

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

bool is_integer_text(std::string_view s)
{
    if (!s.empty() && s.front() == '-')
        s.remove_prefix(1);
    return all_digits(s);
}

} // namespace

ExactInt ExactInt::parse(std::string_view text)
{
    if (!is_integer_text(text))
        throw std::invalid_argument("malformed integer: '" + std::string(text) + "'");
    return ExactInt(mpz_class(std::string(text), 10));
}

long ExactInt::to_long() const
{
    if (!fits_long())
        throw std::overflow_error("integer does not fit in a long: " + to_string());
    return v_.get_si();
}

ExactInt gcd(const ExactInt& a, const ExactInt& b)
{
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.gmp().get_mpz_t(), b.gmp().get_mpz_t());
    return ExactInt(std::move(g));
}

Rational::Rational(const ExactInt& num, const ExactInt& den)
{
    if (den.is_zero())
        throw DivisionByZero();
    v_ = mpq_class(num.gmp(), den.gmp());
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    const auto num_text = text.substr(0, slash);
    if (!is_integer_text(num_text))
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    if (slash == std::string_view::npos)
        return Rational(ExactInt::parse(num_text));
    const auto den_text = text.substr(slash + 1);
    if (!all_digits(den_text))
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    return Rational(ExactInt::parse(num_text), ExactInt::parse(den_text));
}

Rational Rational::reciprocal() const
{
    if (is_zero())
        throw DivisionByZero();
    return Rational(mpq_class(1 / v_));
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw DivisionByZero();
    v_ /= o.v_;
    return *this;
}

Rational pow(const Rational& base, long exponent)
{
    if (exponent < 0) {
        if (base.is_zero())
            throw DivisionByZero();
        if (exponent == std::numeric_limits<long>::min())
            throw std::overflow_error("exponent out of range");
        return pow(base.reciprocal(), -exponent);
    }
    const auto e = static_cast<unsigned long>(exponent);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.gmp().get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.gmp().get_den_mpz_t(), e);
    // Powers of coprime integers stay coprime; canonicalize is cheap here.
    return Rational(mpq_class(num, den));
}

ExactInt factorial(unsigned long n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return ExactInt(std::move(f));
}

ExactInt binomial(unsigned long n, unsigned long k)
{
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return ExactInt(std::move(b));
}

Rational binomial(const Rational& top, unsigned long k)
{
    Rational out(1);
    for (unsigned long i = 0; i < k; ++i)
        out *= (top - Rational(static_cast<long>(i))) / Rational(static_cast<long>(i + 1));
    return out;
}

} // namespace calabi
