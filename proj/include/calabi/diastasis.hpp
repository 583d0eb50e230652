#pragma once

/*
 * Diastasis blocks over CP^d with lambda times the Fubini-Study metric.
 *
 * The base diastasis is D = lambda log(1 + |z|^2), so k0 = 2(d+1)/lambda.
 * In the Calabi total space the coefficient matrix of exp(m D_C) - 1
 * splits into blocks h_r(u, m) c^{r,m}, where c^{r,m} is the coefficient
 * matrix of exp((r k0/2 + m) D) = (1 + |z|^2)^N, N = r(d+1) + lambda m.
 * Rotation invariance makes c^{r,m} diagonal in the monomial basis.
 */

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "calabi/exact.hpp"
#include "calabi/potential.hpp"

namespace calabi {

class FubiniStudyBase {
public:
    // Requires d >= 1, lambda >= 1.
    FubiniStudyBase(int d, int lambda);

    int d() const { return d_; }
    int lambda() const { return lambda_; }
    int n() const { return d_ + 1; }
    Rational k0() const { return Rational(2L * (d_ + 1), lambda_); }
    // k0/2 is a positive integer.
    bool integral() const { return k0().is_integer(); }

private:
    int d_;
    int lambda_;
};

using MultiIndex = std::vector<int>;

// Coefficients of z^alpha zbar^beta in (1 + |z|^2)^N for 1 <= |alpha|, |beta| <= cutoff.
struct CoeffMatrix {
    int d;
    Rational exponent;
    int cutoff;
    std::vector<MultiIndex> monomials; // lexicographic
    std::vector<Rational> diagonal;

    std::size_t size() const { return monomials.size(); }
    Rational entry(std::size_t i, std::size_t k) const { return i == k ? diagonal.at(i) : Rational(0); }
};

// All alpha in N^d with 1 <= |alpha| <= cutoff, lexicographically ordered.
std::vector<MultiIndex> monomials(int d, int cutoff);

CoeffMatrix coeff_matrix_for_exponent(int d, const Rational& exponent, int cutoff);
// c^{r,m} for the given base: exponent lambda (r k0/2 + m).
CoeffMatrix fs_coeff_matrix(const FubiniStudyBase& base, int r, int m, int cutoff);

enum class Verdict { psd, not_psd };

const char* to_string(Verdict v);

using DenseMatrix = std::vector<std::vector<Rational>>;

Verdict psd_check(const CoeffMatrix& mat);
// Exact LDL^T with symmetric (largest-diagonal) pivoting. Rejects
// non-square or non-symmetric input with std::invalid_argument.
Verdict psd_check(const DenseMatrix& mat);

struct BlockMatrix {
    int r;
    int m;
    HrValue scale;
    CoeffMatrix base_matrix;
    Verdict verdict;

    Rational entry(std::size_t i, std::size_t k) const { return scale.value * base_matrix.entry(i, k); }
};

BlockMatrix make_block(const FubiniStudyBase& base, const HrValue& scale, int cutoff);

struct BlockScanReport {
    int d;
    int lambda;
    Rational k0;
    Rational c;
    int r_max;
    int cutoff;
    bool integral;
    std::vector<BlockMatrix> blocks; // r = 0..r_max when integral
    std::optional<int> first_negative_r;

    std::string diagnostic() const;
};

inline constexpr int default_block_cutoff = 4;

// Blocks r = 0..r_max of the Calabi metric over (CP^d, lambda g_FS) with m = 1.
// When k0/2 is not a positive integer no blocks are built.
BlockScanReport eh_block_scan(const FubiniStudyBase& base, const Rational& c, int r_max,
                              int cutoff = default_block_cutoff);

nlohmann::json to_json(const BlockScanReport& report);

// The fields of a block report that survive serialization.
struct BlockSummary {
    int d;
    int lambda;
    Rational k0;
    Rational c;
    int r_max;
    int cutoff;
    bool integral;
    std::vector<std::pair<int, Rational>> scales;
    std::vector<Verdict> verdicts;
    std::optional<int> first_negative_r;

    friend bool operator==(const BlockSummary&, const BlockSummary&) = default;
};

BlockSummary summarize(const BlockScanReport& report);
BlockSummary block_summary_from_json(const nlohmann::json& j);

} // namespace calabi
