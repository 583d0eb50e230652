#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "calabi/exact.hpp"

using calabi::DivisionByZero;
using calabi::ExactInt;
using calabi::Rational;

namespace {

Rational random_rational(std::mt19937_64& rng, bool nonzero = false)
{
    std::uniform_int_distribution<long> num(-1000, 1000);
    std::uniform_int_distribution<long> den(1, 500);
    for (;;) {
        Rational r(num(rng), den(rng));
        if (!nonzero || !r.is_zero())
            return r;
    }
}

} // namespace

TEST_CASE("arithmetic on small cases")
{
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK(-Rational(2, 3) == Rational(-2, 3));
}

TEST_CASE("normalization")
{
    const Rational half(2, 4);
    CHECK(half.numerator() == ExactInt(1));
    CHECK(half.denominator() == ExactInt(2));

    const Rational neg(-3, -6);
    CHECK(neg.to_string() == "1/2");
    CHECK(neg.denominator().sign() > 0);

    const Rational den_neg(3, -6);
    CHECK(den_neg.to_string() == "-1/2");
    CHECK(Rational(0, -7).to_string() == "0");
    CHECK(Rational(0, -7).denominator() == ExactInt(1));
}

TEST_CASE("division by zero is a distinct error")
{
    CHECK_THROWS_AS(Rational(1, 0), DivisionByZero);
    CHECK_THROWS_AS(Rational(1) / Rational(0), DivisionByZero);
    CHECK_THROWS_AS(Rational(0).reciprocal(), DivisionByZero);
    CHECK_THROWS_AS(calabi::pow(Rational(0), -1), DivisionByZero);
}

TEST_CASE("pow")
{
    CHECK(calabi::pow(Rational(2, 3), 2) == Rational(4, 9));
    CHECK(calabi::pow(Rational(1, 2), -3) == Rational(8));
    CHECK(calabi::pow(Rational(-2, 5), 3) == Rational(-8, 125));
    CHECK(calabi::pow(Rational(-2, 5), -2) == Rational(25, 4));
    for (const auto& x : {Rational(0), Rational(7, 3), Rational(-1, 9)})
        CHECK(calabi::pow(x, 0) == Rational(1));
}

TEST_CASE("textual form")
{
    CHECK(Rational::parse("5/6") == Rational(5, 6));
    CHECK(Rational::parse("-4/8").to_string() == "-1/2");
    CHECK(Rational::parse("12") == Rational(12));
    CHECK(Rational(3, 1).to_string() == "3");
    CHECK(Rational::parse("123456789012345678901234567891/2").numerator().to_string() ==
          "123456789012345678901234567891");

    for (const char* bad : {"", "/", "1/", "/2", "1/-2", "1.5", "a/b", "--1", "1/2/3", "+1", " 1"})
        CHECK_THROWS_AS(Rational::parse(bad), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), DivisionByZero);
}

TEST_CASE("field laws on random triples")
{
    std::mt19937_64 rng(20261016);
    for (int trial = 0; trial < 500; ++trial) {
        const auto a = random_rational(rng);
        const auto b = random_rational(rng);
        const auto c = random_rational(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == Rational(0));
        const auto nz = random_rational(rng, true);
        CHECK(a / nz * nz == a);
        CHECK(nz * nz.reciprocal() == Rational(1));
    }
}

TEST_CASE("normalization idempotence and render/parse round trip")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> any(-1'000'000, 1'000'000);
    for (int trial = 0; trial < 500; ++trial) {
        long p = any(rng);
        long q = any(rng);
        if (q == 0)
            q = 1;
        const Rational once(p, q);
        const Rational twice(once.numerator(), once.denominator());
        CHECK(once == twice);
        CHECK(once.to_string() == twice.to_string());
        CHECK(calabi::gcd(once.numerator().abs(), once.denominator()) == ExactInt(1));
        CHECK(Rational::parse(once.to_string()) == once);
    }
}

TEST_CASE("no overflow at large magnitude")
{
    const auto big = calabi::pow(Rational(ExactInt::parse("99999999999999999999")), 20);
    CHECK(big.numerator().bit_length() > 1300);
    CHECK(big / big == Rational(1));
    CHECK_FALSE(big.numerator().fits_long());
    CHECK_THROWS_AS(big.numerator().to_long(), std::overflow_error);
}

TEST_CASE("factorials and binomials")
{
    CHECK(calabi::factorial(0) == ExactInt(1));
    CHECK(calabi::factorial(10) == ExactInt(3628800));
    CHECK(calabi::binomial(10, 3) == ExactInt(120));
    CHECK(calabi::binomial(3, 5) == ExactInt(0));

    // n! = n (n-1)! through 512
    ExactInt running(1);
    for (unsigned long n = 1; n <= 512; ++n) {
        running *= ExactInt(static_cast<long>(n));
        REQUIRE(calabi::factorial(n) == running);
    }
    // Pascal's rule at r = 512
    for (unsigned long k = 1; k < 512; ++k)
        REQUIRE(calabi::binomial(512, k) == calabi::binomial(511, k - 1) + calabi::binomial(511, k));

    CHECK(calabi::binomial(Rational(1, 2), 2) == Rational(-1, 8));
    CHECK(calabi::binomial(Rational(3), 2) == Rational(3));
    CHECK(calabi::binomial(Rational(3), 4) == Rational(0));
    CHECK(calabi::binomial(Rational(-1), 3) == Rational(-1));
}
