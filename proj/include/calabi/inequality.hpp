#pragma once

/*
 * Sign scan of the alternating Bell sum
 *
 *   S(n, q, r) = (-1)^r sum_{j=1}^{r} (-q)^j B_{r,j}(x_1, x_2, ...),
 *   x_l = (1/l) prod_{s=1}^{l-1} (n s - 1),
 *
 * which is negative for some r whenever n >= 2 and q > 0 is rational. With
 * q = m/k0 and a_j the Taylor coefficients of u for (n, k0, c),
 *
 *   S(n, m/k0, r) (c k0)^r = sum_j m^j B_{r,j}(a),
 *
 * so the sign of S is the sign of h_r(u, m).
 */

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "calabi/bell.hpp"
#include "calabi/exact.hpp"

namespace calabi {

struct NormalizedSequence {
    int n;
    std::vector<Rational> values; // x_1..x_R

    InputSequence as_input() const { return InputSequence(values); }
};

NormalizedSequence normalized_sequence(int n, int length);
// x_l on its own.
Rational normalized_term(int n, int l);

Rational S(int n, const Rational& q, int r);

struct ScanRow {
    int r;
    Rational value;

    friend bool operator==(const ScanRow&, const ScanRow&) = default;
};

struct ScanReport {
    int n = 2;
    Rational q;
    // Rows r = 1..last scanned; the scan stops at the first negative value.
    std::vector<ScanRow> rows;
    std::optional<int> min_negative_r;
    int r_max = 0;

    friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

inline constexpr int default_scan_r_max = 200;

// Scans r = 1..r_max, growing one Bell table as r increases.
ScanReport min_negative_r(int n, const Rational& q, int r_max = default_scan_r_max);

// Scans every q concurrently; reports come back in input order.
std::vector<ScanReport> scan_grid(int n, std::span<const Rational> qs, int r_max = default_scan_r_max);

// Least r with S < 0 read off the rows alone.
std::optional<int> first_negative(std::span<const ScanRow> rows);

struct QDecomposition {
    long m;
    long k0;
};

// Minimal (m, k0) with m/k0 = q, m >= 1 and k0/2 a positive integer.
QDecomposition q_decomposition(const Rational& q);

nlohmann::json to_json(const ScanReport& report);
ScanReport scan_report_from_json(const nlohmann::json& j);
// "r,S" header then one row per r.
std::string to_csv(const ScanReport& report);

} // namespace calabi
