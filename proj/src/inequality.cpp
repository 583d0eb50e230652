#include "calabi/inequality.hpp"

#include <future>
#include <sstream>
#include <stdexcept>

namespace calabi {

namespace {

void check_n(int n)
{
    if (n < 2)
        throw std::invalid_argument("n must be >= 2, got " + std::to_string(n));
}

void check_q(const Rational& q)
{
    if (q.sign() <= 0)
        throw std::invalid_argument("q must be > 0, got " + q.to_string());
}

// (-1)^r sum_j (-q)^j B_{r,j}
Rational alternating_sum(const BellTable& table, const Rational& q, int r)
{
    const Rational step = -q;
    Rational power(1);
    Rational sum;
    for (int j = 1; j <= r; ++j) {
        power *= step;
        sum += power * table.at(r, j);
    }
    return r % 2 == 0 ? sum : -sum;
}

} // namespace

Rational normalized_term(int n, int l)
{
    check_n(n);
    if (l < 1)
        throw std::invalid_argument("normalized sequence index must be >= 1, got " + std::to_string(l));
    ExactInt prod(1);
    for (int s = 1; s < l; ++s)
        prod *= ExactInt(static_cast<long>(n) * s - 1);
    return Rational(prod, ExactInt(l));
}

NormalizedSequence normalized_sequence(int n, int length)
{
    check_n(n);
    if (length < 1)
        throw std::invalid_argument("normalized sequence length must be >= 1, got " + std::to_string(length));
    NormalizedSequence seq{n, {}};
    seq.values.reserve(length);
    ExactInt prod(1);
    for (int l = 1; l <= length; ++l) {
        if (l > 1)
            prod *= ExactInt(static_cast<long>(n) * (l - 1) - 1);
        seq.values.emplace_back(prod, ExactInt(l));
    }
    return seq;
}

Rational S(int n, const Rational& q, int r)
{
    check_q(q);
    if (r < 1)
        throw std::invalid_argument("S needs r >= 1, got " + std::to_string(r));
    const BellTable table(normalized_sequence(n, r).as_input(), r);
    return alternating_sum(table, q, r);
}

ScanReport min_negative_r(int n, const Rational& q, int r_max)
{
    check_n(n);
    check_q(q);
    if (r_max < 1)
        throw std::invalid_argument("scan needs r_max >= 1, got " + std::to_string(r_max));

    ScanReport report;
    report.n = n;
    report.q = q;
    report.r_max = r_max;

    BellTable table;
    for (int r = 1; r <= r_max; ++r) {
        table.append(normalized_term(n, r));
        auto value = alternating_sum(table, q, r);
        const bool negative = value.sign() < 0;
        report.rows.push_back({r, std::move(value)});
        if (negative) {
            report.min_negative_r = r;
            break;
        }
    }
    return report;
}

std::vector<ScanReport> scan_grid(int n, std::span<const Rational> qs, int r_max)
{
    std::vector<std::future<ScanReport>> tasks;
    tasks.reserve(qs.size());
    for (const auto& q : qs)
        tasks.push_back(std::async(std::launch::async, [n, q, r_max] { return min_negative_r(n, q, r_max); }));
    std::vector<ScanReport> out;
    out.reserve(tasks.size());
    for (auto& t : tasks)
        out.push_back(t.get());
    return out;
}

std::optional<int> first_negative(std::span<const ScanRow> rows)
{
    for (const auto& row : rows)
        if (row.value.sign() < 0)
            return row.r;
    return std::nullopt;
}

QDecomposition q_decomposition(const Rational& q)
{
    check_q(q);
    const long a = q.numerator().to_long();
    const long b = q.denominator().to_long();
    if (b % 2 == 0)
        return {a, b};
    return {2 * a, 2 * b};
}

nlohmann::json to_json(const ScanReport& report)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows)
        rows.push_back({{"r", row.r}, {"S", row.value.to_string()}});
    nlohmann::json j;
    j["n"] = report.n;
    j["q"] = report.q.to_string();
    j["r_max"] = report.r_max;
    j["min_negative_r"] = report.min_negative_r ? nlohmann::json(*report.min_negative_r) : nlohmann::json(nullptr);
    j["rows"] = std::move(rows);
    return j;
}

ScanReport scan_report_from_json(const nlohmann::json& j)
{
    ScanReport report;
    report.n = j.at("n").get<int>();
    report.q = Rational::parse(j.at("q").get<std::string>());
    report.r_max = j.at("r_max").get<int>();
    if (const auto& m = j.at("min_negative_r"); !m.is_null())
        report.min_negative_r = m.get<int>();
    for (const auto& row : j.at("rows"))
        report.rows.push_back({row.at("r").get<int>(), Rational::parse(row.at("S").get<std::string>())});
    return report;
}

std::string to_csv(const ScanReport& report)
{
    std::ostringstream os;
    os << "r,S\n";
    for (const auto& row : report.rows)
        os << row.r << ',' << row.value << '\n';
    return os.str();
}

} // namespace calabi
