#include "calabi/diastasis.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace calabi {

FubiniStudyBase::FubiniStudyBase(int d, int lambda) : d_(d), lambda_(lambda)
{
    if (d_ < 1)
        throw std::invalid_argument("base dimension d must be >= 1, got " + std::to_string(d_));
    if (lambda_ < 1)
        throw std::invalid_argument("metric multiple lambda must be >= 1, got " + std::to_string(lambda_));
}

std::vector<MultiIndex> monomials(int d, int cutoff)
{
    if (d < 1 || cutoff < 1)
        throw std::invalid_argument("monomials need d >= 1 and cutoff >= 1");
    std::vector<MultiIndex> out;
    MultiIndex alpha(d, 0);
    // Depth-first over coordinates with increasing entries is lexicographic.
    std::function<void(int, int)> fill = [&](int pos, int budget) {
        if (pos == d) {
            if (budget < cutoff)
                out.push_back(alpha);
            return;
        }
        for (int e = 0; e <= budget; ++e) {
            alpha[pos] = e;
            fill(pos + 1, budget - e);
        }
        alpha[pos] = 0;
    };
    fill(0, cutoff);
    return out;
}

CoeffMatrix coeff_matrix_for_exponent(int d, const Rational& exponent, int cutoff)
{
    CoeffMatrix mat{d, exponent, cutoff, monomials(d, cutoff), {}};
    mat.diagonal.reserve(mat.monomials.size());
    // (1 + sum |z_i|^2)^N = sum_k C(N, k) sum_{|alpha| = k} k!/alpha! |z^alpha|^2
    for (const auto& alpha : mat.monomials) {
        int degree = 0;
        ExactInt denom(1);
        for (int e : alpha) {
            degree += e;
            denom *= factorial(e);
        }
        mat.diagonal.push_back(binomial(exponent, degree) * Rational(factorial(degree), denom));
    }
    return mat;
}

CoeffMatrix fs_coeff_matrix(const FubiniStudyBase& base, int r, int m, int cutoff)
{
    if (r < 0 || m < 1)
        throw std::invalid_argument("coefficient block needs r >= 0 and m >= 1");
    const Rational exponent = Rational(base.lambda()) * (Rational(r) * base.k0() / Rational(2) + Rational(m));
    return coeff_matrix_for_exponent(base.d(), exponent, cutoff);
}

const char* to_string(Verdict v)
{
    return v == Verdict::psd ? "PSD" : "not-PSD";
}

Verdict psd_check(const CoeffMatrix& mat)
{
    const bool ok = std::all_of(mat.diagonal.begin(), mat.diagonal.end(), [](const Rational& v) { return v.sign() >= 0; });
    return ok ? Verdict::psd : Verdict::not_psd;
}

Verdict psd_check(const DenseMatrix& input)
{
    const std::size_t size = input.size();
    for (std::size_t i = 0; i < size; ++i) {
        if (input[i].size() != size)
            throw std::invalid_argument("PSD check needs a square matrix");
        for (std::size_t k = 0; k < i; ++k)
            if (input[i][k] != input[k][i])
                throw std::invalid_argument("PSD check needs a symmetric matrix");
    }

    auto a = input;
    std::vector<std::size_t> active(size);
    for (std::size_t i = 0; i < size; ++i)
        active[i] = i;

    while (!active.empty()) {
        auto pivot_it = std::max_element(active.begin(), active.end(),
                                         [&](std::size_t x, std::size_t y) { return a[x][x] < a[y][y]; });
        const std::size_t p = *pivot_it;
        if (std::any_of(active.begin(), active.end(), [&](std::size_t i) { return a[i][i].sign() < 0; }))
            return Verdict::not_psd;
        if (a[p][p].is_zero()) {
            // Zero diagonal in a PSD matrix forces a zero row.
            for (std::size_t i : active)
                for (std::size_t k : active)
                    if (!a[i][k].is_zero())
                        return Verdict::not_psd;
            return Verdict::psd;
        }
        active.erase(pivot_it);
        const Rational pivot = a[p][p];
        for (std::size_t i : active) {
            if (a[i][p].is_zero())
                continue;
            const Rational factor = a[i][p] / pivot;
            for (std::size_t k : active)
                a[i][k] -= factor * a[p][k];
        }
    }
    return Verdict::psd;
}

BlockMatrix make_block(const FubiniStudyBase& base, const HrValue& scale, int cutoff)
{
    const int m = static_cast<int>(scale.m.numerator().to_long());
    BlockMatrix block{scale.r, m, scale, fs_coeff_matrix(base, scale.r, m, cutoff), Verdict::psd};
    CoeffMatrix scaled = block.base_matrix;
    for (auto& v : scaled.diagonal)
        v *= scale.value;
    block.verdict = psd_check(scaled);
    return block;
}

std::string BlockScanReport::diagnostic() const
{
    if (!integral)
        return "integrality already fails: k0/2 = " + (k0 / Rational(2)).to_string() +
               " is not a positive integer";
    if (first_negative_r)
        return "block r = " + std::to_string(*first_negative_r) + " has negative scale h_r and is not PSD";
    return "no negative block for r <= " + std::to_string(r_max);
}

BlockScanReport eh_block_scan(const FubiniStudyBase& base, const Rational& c, int r_max, int cutoff)
{
    if (r_max < 0)
        throw std::invalid_argument("block scan needs r_max >= 0");
    BlockScanReport report{base.d(), base.lambda(), base.k0(), c, r_max, cutoff, base.integral(), {}, std::nullopt};
    if (!report.integral)
        return report;

    const CalabiParams params(base.n(), base.k0(), c);
    const Rational m(1);
    // exp(D) itself sits at r = 0.
    report.blocks.push_back(make_block(base, HrValue{0, m, Rational(1)}, cutoff));
    if (r_max >= 1)
        for (const auto& h : h_values(params, m, r_max))
            report.blocks.push_back(make_block(base, h, cutoff));

    for (const auto& block : report.blocks) {
        if (block.scale.value.sign() < 0) {
            report.first_negative_r = block.r;
            break;
        }
    }
    return report;
}

nlohmann::json to_json(const BlockScanReport& report)
{
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : report.blocks)
        blocks.push_back({{"r", b.r}, {"scale", b.scale.value.to_string()}, {"verdict", to_string(b.verdict)}});
    nlohmann::json j;
    j["d"] = report.d;
    j["lambda"] = report.lambda;
    j["k0"] = report.k0.to_string();
    j["c"] = report.c.to_string();
    j["r_max"] = report.r_max;
    j["cutoff"] = report.cutoff;
    j["integrality"] = report.integral;
    j["diagnostic"] = report.diagnostic();
    j["first_negative_r"] =
        report.first_negative_r ? nlohmann::json(*report.first_negative_r) : nlohmann::json(nullptr);
    j["blocks"] = std::move(blocks);
    return j;
}

BlockSummary summarize(const BlockScanReport& report)
{
    BlockSummary s{report.d, report.lambda, report.k0, report.c, report.r_max, report.cutoff,
                   report.integral, {}, {}, report.first_negative_r};
    for (const auto& b : report.blocks) {
        s.scales.emplace_back(b.r, b.scale.value);
        s.verdicts.push_back(b.verdict);
    }
    return s;
}

BlockSummary block_summary_from_json(const nlohmann::json& j)
{
    BlockSummary s{j.at("d").get<int>(),
                   j.at("lambda").get<int>(),
                   Rational::parse(j.at("k0").get<std::string>()),
                   Rational::parse(j.at("c").get<std::string>()),
                   j.at("r_max").get<int>(),
                   j.at("cutoff").get<int>(),
                   j.at("integrality").get<bool>(),
                   {},
                   {},
                   std::nullopt};
    if (const auto& f = j.at("first_negative_r"); !f.is_null())
        s.first_negative_r = f.get<int>();
    for (const auto& b : j.at("blocks")) {
        s.scales.emplace_back(b.at("r").get<int>(), Rational::parse(b.at("scale").get<std::string>()));
        const auto verdict = b.at("verdict").get<std::string>();
        if (verdict != "PSD" && verdict != "not-PSD")
            throw std::invalid_argument("unknown verdict '" + verdict + "'");
        s.verdicts.push_back(verdict == "PSD" ? Verdict::psd : Verdict::not_psd);
    }
    return s;
}

} // namespace calabi
