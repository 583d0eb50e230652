#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "calabi/diastasis.hpp"
#include "calabi/power_series.hpp"

using calabi::DenseMatrix;
using calabi::FubiniStudyBase;
using calabi::Rational;
using calabi::Verdict;

namespace {

std::vector<Rational> rats(std::initializer_list<Rational> v)
{
    return std::vector<Rational>(v);
}

DenseMatrix gram(const std::vector<std::vector<Rational>>& vectors)
{
    const auto k = vectors.size();
    DenseMatrix g(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t t = 0; t < vectors[i].size(); ++t)
                g[i][j] += vectors[i][t] * vectors[j][t];
    return g;
}

// log of a series with constant term 1, from p L' = p'.
calabi::TruncatedSeries series_log(const calabi::TruncatedSeries& p)
{
    const int order = p.order();
    std::vector<Rational> l(order + 1);
    for (int k = 1; k <= order; ++k) {
        Rational acc = Rational(k) * p[k];
        for (int i = 1; i < k; ++i)
            acc -= Rational(i) * l[i] * p[k - i];
        l[k] = acc / Rational(k);
    }
    return calabi::TruncatedSeries(std::move(l));
}

} // namespace

TEST_CASE("base validation and k0")
{
    CHECK_THROWS_AS(FubiniStudyBase(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(FubiniStudyBase(1, 0), std::invalid_argument);
    CHECK(FubiniStudyBase(1, 1).k0() == Rational(4));
    CHECK(FubiniStudyBase(1, 2).k0() == Rational(2));
    CHECK(FubiniStudyBase(1, 3).k0() == Rational(4, 3));
    CHECK_FALSE(FubiniStudyBase(1, 3).integral());
    CHECK(FubiniStudyBase(3, 2).integral());
    for (int d = 1; d <= 4; ++d)
        for (int lambda = 1; lambda <= 5; ++lambda)
            CHECK(FubiniStudyBase(d, lambda).k0() * Rational(lambda) == Rational(2 * (d + 1)));
}

TEST_CASE("monomials are lexicographic and complete")
{
    const auto one = calabi::monomials(1, 3);
    CHECK(one == std::vector<calabi::MultiIndex>{{1}, {2}, {3}});
    const auto two = calabi::monomials(2, 2);
    CHECK(two == std::vector<calabi::MultiIndex>{{0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}});
    const auto three = calabi::monomials(3, 4);
    CHECK(std::is_sorted(three.begin(), three.end()));
    CHECK(three.size() == 34); // C(7,3) - 1
}

TEST_CASE("coefficient matrices of (1 + |z|^2)^N")
{
    CHECK(calabi::coeff_matrix_for_exponent(1, Rational(1), 3).diagonal == rats({1, 0, 0}));
    CHECK(calabi::coeff_matrix_for_exponent(1, Rational(3), 3).diagonal == rats({3, 3, 1}));
    const auto half = calabi::coeff_matrix_for_exponent(1, Rational(1, 2), 2);
    CHECK(half.diagonal[1] == Rational(-1, 8));
    CHECK(calabi::psd_check(half) == Verdict::not_psd);

    // d = 2, N = 2: |z1|^2 coefficient 2, |z1|^2|z2|^2 coefficient 2, |z1|^4 coefficient 1
    const auto m2 = calabi::coeff_matrix_for_exponent(2, Rational(2), 2);
    CHECK(m2.diagonal == rats({2, 1, 2, 2, 1}));
    CHECK(m2.entry(0, 1) == Rational(0));
    CHECK(m2.entry(3, 3) == Rational(2));
}

TEST_CASE("fs_coeff_matrix exponent")
{
    const FubiniStudyBase base(1, 2);
    for (int r = 0; r <= 5; ++r) {
        const auto mat = calabi::fs_coeff_matrix(base, r, 1, 3);
        CHECK(mat.exponent == Rational(2 * r + 2));
    }
    CHECK(calabi::fs_coeff_matrix(FubiniStudyBase(2, 3), 2, 1, 1).exponent == Rational(9));
}

TEST_CASE("psd checks")
{
    CHECK(calabi::psd_check(calabi::CoeffMatrix{1, Rational(0), 3, {{1}, {2}, {3}}, rats({3, 3, 1})}) == Verdict::psd);
    CHECK(calabi::psd_check(calabi::CoeffMatrix{1, Rational(0), 2, {{1}, {2}}, rats({1, Rational(-1, 8)})}) ==
          Verdict::not_psd);
    CHECK(calabi::psd_check(DenseMatrix{rats({1, 1}), rats({1, 1})}) == Verdict::psd);
    CHECK(calabi::psd_check(DenseMatrix{rats({1, 2}), rats({2, 1})}) == Verdict::not_psd);
    CHECK(calabi::psd_check(DenseMatrix{rats({0, 1}), rats({1, 0})}) == Verdict::not_psd);
    CHECK(calabi::psd_check(DenseMatrix{rats({0, 0}), rats({0, 0})}) == Verdict::psd);
    CHECK(calabi::psd_check(DenseMatrix{}) == Verdict::psd);
    CHECK_THROWS_AS(calabi::psd_check(DenseMatrix{rats({1, 2}), rats({3, 1})}), std::invalid_argument);
    CHECK_THROWS_AS(calabi::psd_check(DenseMatrix{rats({1, 2})}), std::invalid_argument);
}

TEST_CASE("dense LDL agrees with Gram construction")
{
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<long> coef(-4, 4);
    for (int trial = 0; trial < 60; ++trial) {
        const int size = 2 + trial % 4;
        const int rank = 1 + trial % size;
        std::vector<std::vector<Rational>> vectors(size, std::vector<Rational>(rank));
        for (auto& v : vectors)
            for (auto& x : v)
                x = Rational(coef(rng), 1 + coef(rng) * coef(rng) % 3 + 4);
        auto g = gram(vectors);
        CHECK(calabi::psd_check(g) == Verdict::psd);
        // Subtracting e e^T with e outside the span breaks semidefiniteness
        // when rank < size, or for a large enough multiple otherwise.
        g[0][0] -= Rational(1000);
        CHECK(calabi::psd_check(g) == Verdict::not_psd);
    }
}

TEST_CASE("diagonal and dense paths agree")
{
    for (const auto& n : {Rational(3), Rational(1, 2), Rational(5, 3), Rational(-2)}) {
        const auto mat = calabi::coeff_matrix_for_exponent(2, n, 3);
        DenseMatrix dense(mat.size(), std::vector<Rational>(mat.size()));
        for (std::size_t i = 0; i < mat.size(); ++i)
            for (std::size_t k = 0; k < mat.size(); ++k)
                dense[i][k] = mat.entry(i, k);
        CHECK(calabi::psd_check(dense) == calabi::psd_check(mat));
    }
}

TEST_CASE("integer exponents give PSD matrices at every cutoff")
{
    for (int d = 1; d <= 2; ++d)
        for (int n = 1; n <= 6; ++n)
            for (int cutoff = 1; cutoff <= 8; ++cutoff) {
                const auto mat = calabi::coeff_matrix_for_exponent(d, Rational(n), cutoff);
                CHECK(calabi::psd_check(mat) == Verdict::psd);
                for (std::size_t i = 0; i < mat.size(); ++i) {
                    int degree = 0;
                    for (int e : mat.monomials[i])
                        degree += e;
                    CHECK((degree > n) == mat.diagonal[i].is_zero());
                }
            }
}

TEST_CASE("Eguchi-Hanson block scans")
{
    const auto eh = calabi::eh_block_scan(FubiniStudyBase(1, 1), Rational(1), 6);
    REQUIRE(eh.integral);
    CHECK(eh.first_negative_r == 2);
    CHECK(eh.blocks[2].scale.value == Rational(-1, 2));
    CHECK(eh.blocks[2].verdict == Verdict::not_psd);
    CHECK(eh.blocks[1].verdict == Verdict::psd);

    const auto twice = calabi::eh_block_scan(FubiniStudyBase(1, 2), Rational(1), 6);
    CHECK(twice.blocks[2].scale.value == Rational(0));
    CHECK(twice.blocks[3].scale.value.sign() > 0);
    CHECK(twice.blocks[4].scale.value == Rational(-2, 3));
    CHECK(twice.first_negative_r == 4);

    const auto thrice = calabi::eh_block_scan(FubiniStudyBase(1, 3), Rational(1), 6);
    CHECK_FALSE(thrice.integral);
    CHECK(thrice.blocks.empty());
    CHECK_FALSE(thrice.first_negative_r.has_value());
    CHECK(thrice.diagnostic().find("integrality already fails") != std::string::npos);
}

TEST_CASE("h_2 sign on larger bases")
{
    // h_2 = (1 - d k0/2) c^2/2 < 0 whenever k0/2 >= 1 and d >= 2
    for (int d = 2; d <= 3; ++d) {
        const auto report = calabi::eh_block_scan(FubiniStudyBase(d, 1), Rational(1, 3), 3, 2);
        CHECK(report.first_negative_r == 2);
    }
}

TEST_CASE("block factorization and consistency with h_r")
{
    const FubiniStudyBase base(1, 2);
    const Rational c(2, 3);
    const auto report = calabi::eh_block_scan(base, c, 6, 5);
    const auto h = calabi::h_values(calabi::CalabiParams(2, Rational(2), c), Rational(1), 6);
    REQUIRE(report.blocks.size() == 7);
    CHECK(report.blocks[0].scale.value == Rational(1));
    for (int r = 1; r <= 6; ++r) {
        const auto& block = report.blocks[r];
        CHECK(block.scale.value == h[r - 1].value);
        for (std::size_t i = 0; i < block.base_matrix.size(); ++i)
            for (std::size_t k = 0; k < block.base_matrix.size(); ++k)
                CHECK(block.entry(i, k) == block.scale.value * block.base_matrix.entry(i, k));
        CHECK((block.verdict == Verdict::not_psd) == (block.scale.value.sign() < 0));
    }
}

TEST_CASE("log det of the metric equals -(k0/2) D for d = 1, lambda = 1")
{
    // t = |z|^2. D = log(1 + t) = sum (-1)^{k+1} t^k / k and
    // d^2 D / dz dzbar = sum_k (-1)^{k+1} k t^{k-1}.
    const int order = 5;
    std::vector<Rational> d_coeffs(order + 1), metric(order);
    for (int k = 1; k <= order; ++k) {
        const Rational sign(k % 2 == 1 ? 1 : -1);
        d_coeffs[k] = sign / Rational(k);
        metric[k - 1] = sign * Rational(k);
    }
    const calabi::TruncatedSeries diastasis(d_coeffs);
    const calabi::TruncatedSeries g(metric);
    const auto log_det = series_log(g);

    const FubiniStudyBase base(1, 1);
    const auto expected = diastasis.truncate(order - 1) * (-base.k0() / Rational(2));
    for (int k = 0; k <= 4; ++k)
        CHECK(log_det[k] == expected[k]);

    // Same from the closed form (1 + t)^{-(d+1)}.
    std::vector<Rational> binom(order);
    for (int k = 0; k < order; ++k)
        binom[k] = calabi::binomial(Rational(-2), k);
    CHECK(calabi::TruncatedSeries(binom) == g);
}

TEST_CASE("block report JSON round trip")
{
    for (int lambda : {1, 2, 3}) {
        const auto report = calabi::eh_block_scan(FubiniStudyBase(1, lambda), Rational(1, 2), 5);
        const auto j = calabi::to_json(report);
        const auto parsed = calabi::block_summary_from_json(nlohmann::json::parse(j.dump()));
        CHECK(parsed == calabi::summarize(report));
    }
    const auto j = calabi::to_json(calabi::eh_block_scan(FubiniStudyBase(1, 2), Rational(1), 4));
    CHECK(j.at("blocks").at(4).at("scale") == "-2/3");
    CHECK(j.at("blocks").at(4).at("verdict") == "not-PSD");
    CHECK(j.at("first_negative_r") == 4);
}
