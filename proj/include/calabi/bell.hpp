#pragma once

/*
 * Partial and complete exponential Bell polynomials over exact rationals.
 *
 *   B_{r,j}(x_1, ..., x_{r-j+1}) = sum r! / (s_1! ... s_k!) prod (x_i / i!)^{s_i}
 *
 * summed over s_1 + 2 s_2 + ... = r, s_1 + s_2 + ... = j. Sequences are
 * 1-based in every formula; InputSequence::at(i) follows that convention.
 *
 * Two evaluators are provided. The recurrence
 *
 *   B_{r,j} = sum_{i=1}^{r-j+1} C(r-1, i-1) x_i B_{r-i, j-1}
 *
 * is the production path (BellTable). The partition enumeration is
 * exponential in r and exists as an independent cross-check.
 */

#include <cstddef>
#include <span>
#include <vector>

#include "calabi/exact.hpp"

namespace calabi {

class InputSequence {
public:
    InputSequence() = default;
    explicit InputSequence(std::vector<Rational> values) : values_(std::move(values)) {}
    InputSequence(std::initializer_list<Rational> values) : values_(values) {}

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    // 1-based.
    const Rational& at(std::size_t i) const;
    std::span<const Rational> values() const { return values_; }
    void push_back(Rational v) { values_.push_back(std::move(v)); }

    friend bool operator==(const InputSequence&, const InputSequence&) = default;

private:
    std::vector<Rational> values_;
};

Rational partial_bell_partition(int r, int j, const InputSequence& x);
Rational partial_bell_recurrence(int r, int j, const InputSequence& x);
// Y_r = sum_j B_{r,j}. r = 0 is rejected.
Rational complete_bell(int r, const InputSequence& x);

// Triangle of B_{r,j} for 1 <= j <= r <= rows(), built by the recurrence.
// Row r needs x_1..x_r, so the table can only be as deep as its source.
// Growing the table reuses every row already present.
class BellTable {
public:
    BellTable() : rows_{{Rational(1)}} {}
    BellTable(InputSequence source, int r_max);

    int rows() const { return static_cast<int>(rows_.size()) - 1; }
    const InputSequence& source() const { return source_; }

    // B_{r,j}; defined for 0 <= j <= r <= rows() (B_{0,0} = 1, B_{r,0} = 0).
    const Rational& at(int r, int j) const;
    std::span<const Rational> row(int r) const;

    // Pushes x_{size+1} onto the source and deepens the table to match.
    void append(Rational next);
    void extend_to(int r_max);

private:
    void compute_row(int r);

    InputSequence source_;
    // rows_[r][j], j = 0..r
    std::vector<std::vector<Rational>> rows_;
};

BellTable build_bell_table(const InputSequence& x, int r_max);

} // namespace calabi
