#include "calabi/bell.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace calabi {

namespace {

void check_indices(int r, int j, const InputSequence& x)
{
    if (j < 1 || r < j)
        throw std::invalid_argument("Bell index out of range: need 1 <= j <= r, got r=" + std::to_string(r) +
                                    ", j=" + std::to_string(j));
    if (x.size() < static_cast<std::size_t>(r - j + 1))
        throw std::invalid_argument("Bell B_{" + std::to_string(r) + "," + std::to_string(j) + "} needs " +
                                    std::to_string(r - j + 1) + " inputs, got " + std::to_string(x.size()));
}

// Enumerates multiplicities s_1..s_k (k = r - j + 1) with sum i s_i = r and
// sum s_i = j, accumulating r! / prod s_i! * prod (x_i / i!)^{s_i}.
class PartitionSum {
public:
    PartitionSum(int r, int j, const InputSequence& x)
    {
        const int k = r - j + 1;
        scaled_.reserve(k);
        for (int i = 1; i <= k; ++i)
            scaled_.push_back(x.at(i) / Rational(factorial(i)));
        walk(k, r, j, Rational(factorial(r)));
    }

    const Rational& total() const { return total_; }

private:
    // Chooses s_i for i = part, part-1, ..., 1 given the remaining weight and count.
    void walk(int part, int weight, int count, const Rational& acc)
    {
        if (part == 1) {
            // s_1 is forced: s_1 = weight and s_1 = count.
            if (weight != count)
                return;
            total_ += acc * pow(scaled_[0], count) / Rational(factorial(count));
            return;
        }
        for (int s = 0; s * part <= weight && s <= count; ++s) {
            // The remaining (count - s) parts each weigh at least 1.
            if (weight - s * part < count - s)
                break;
            walk(part - 1, weight - s * part, count - s,
                 s == 0 ? acc : acc * pow(scaled_[part - 1], s) / Rational(factorial(s)));
        }
    }

    std::vector<Rational> scaled_;
    Rational total_;
};

} // namespace

const Rational& InputSequence::at(std::size_t i) const
{
    if (i < 1 || i > values_.size())
        throw std::out_of_range("sequence index " + std::to_string(i) + " outside 1.." +
                                std::to_string(values_.size()));
    return values_[i - 1];
}

Rational partial_bell_partition(int r, int j, const InputSequence& x)
{
    check_indices(r, j, x);
    return PartitionSum(r, j, x).total();
}

Rational partial_bell_recurrence(int r, int j, const InputSequence& x)
{
    check_indices(r, j, x);
    const int slack = r - j;
    // b[rr][jj] only for rr - jj <= slack; inputs beyond x_{slack+1} never enter.
    std::vector<std::vector<Rational>> b(r + 1, std::vector<Rational>(j + 1));
    b[0][0] = Rational(1);
    for (int rr = 1; rr <= r; ++rr) {
        for (int jj = std::max(1, rr - slack); jj <= std::min(rr, j); ++jj) {
            Rational acc;
            for (int i = 1; i <= rr - jj + 1; ++i) {
                const auto& prev = b[rr - i][jj - 1];
                if (prev.is_zero())
                    continue;
                acc += Rational(binomial(rr - 1, i - 1)) * x.at(i) * prev;
            }
            b[rr][jj] = std::move(acc);
        }
    }
    return b[r][j];
}

Rational complete_bell(int r, const InputSequence& x)
{
    if (r < 1)
        throw std::invalid_argument("complete Bell polynomial needs r >= 1, got " + std::to_string(r));
    if (x.size() < static_cast<std::size_t>(r))
        throw std::invalid_argument("Y_" + std::to_string(r) + " needs " + std::to_string(r) + " inputs");
    const BellTable table(x, r);
    Rational sum;
    for (const auto& v : table.row(r).subspan(1))
        sum += v;
    return sum;
}

BellTable::BellTable(InputSequence source, int r_max) : rows_{{Rational(1)}}
{
    if (r_max < 0 || static_cast<std::size_t>(r_max) > source.size())
        throw std::invalid_argument("Bell table depth " + std::to_string(r_max) + " exceeds source length " +
                                    std::to_string(source.size()));
    source_ = std::move(source);
    rows_.reserve(r_max + 1);
    extend_to(r_max);
}

const Rational& BellTable::at(int r, int j) const
{
    if (r < 0 || r > rows() || j < 0 || j > r)
        throw std::out_of_range("Bell table entry (" + std::to_string(r) + "," + std::to_string(j) +
                                ") outside table of depth " + std::to_string(rows()));
    return rows_[r][j];
}

std::span<const Rational> BellTable::row(int r) const
{
    if (r < 0 || r > rows())
        throw std::out_of_range("Bell table row " + std::to_string(r) + " outside depth " + std::to_string(rows()));
    return rows_[r];
}

void BellTable::append(Rational next)
{
    source_.push_back(std::move(next));
    extend_to(static_cast<int>(source_.size()));
}

void BellTable::extend_to(int r_max)
{
    if (static_cast<std::size_t>(r_max) > source_.size())
        throw std::invalid_argument("Bell table depth " + std::to_string(r_max) + " exceeds source length " +
                                    std::to_string(source_.size()));
    for (int r = rows() + 1; r <= r_max; ++r)
        compute_row(r);
}

void BellTable::compute_row(int r)
{
    std::vector<Rational> pascal;
    pascal.reserve(r);
    for (int i = 1; i <= r; ++i)
        pascal.emplace_back(binomial(r - 1, i - 1));

    std::vector<Rational> row(r + 1);
    for (int j = 1; j <= r; ++j) {
        Rational acc;
        for (int i = 1; i <= r - j + 1; ++i) {
            const auto& prev = rows_[r - i][j - 1];
            if (prev.is_zero())
                continue;
            acc += pascal[i - 1] * source_.at(i) * prev;
        }
        row[j] = std::move(acc);
    }
    rows_.push_back(std::move(row));
}

BellTable build_bell_table(const InputSequence& x, int r_max)
{
    return BellTable(x, r_max);
}

} // namespace calabi
