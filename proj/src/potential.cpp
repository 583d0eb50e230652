#include "calabi/potential.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "calabi/power_series.hpp"

namespace calabi {

CalabiParams::CalabiParams(int n, Rational k0, Rational c) : n_(n), k0_(std::move(k0)), c_(std::move(c))
{
    if (n_ < 2)
        throw std::invalid_argument("n must be >= 2, got " + std::to_string(n_));
    if (k0_.sign() <= 0)
        throw std::invalid_argument("k0 must be > 0, got " + k0_.to_string());
    if (c_.sign() <= 0)
        throw std::invalid_argument("c must be > 0, got " + c_.to_string());
}

const char* to_string(CoefficientMethod m)
{
    switch (m) {
    case CoefficientMethod::closed_form:
        return "closed-form";
    case CoefficientMethod::ode:
        return "ode";
    }
    return "?";
}

const Rational& CoefficientSequence::a(int j) const
{
    if (j < 1 || j > order())
        throw std::out_of_range("a_" + std::to_string(j) + " outside 1.." + std::to_string(order()));
    return values[j - 1];
}

MethodDisagreement::MethodDisagreement(int index, const Rational& closed, const Rational& ode)
    : std::runtime_error("coefficient methods disagree at a_" + std::to_string(index) + ": closed form " +
                         closed.to_string() + ", ode " + ode.to_string()),
      index_(index)
{
}

namespace {

void check_order(int order)
{
    if (order < 1)
        throw std::invalid_argument("coefficient order must be >= 1, got " + std::to_string(order));
}

} // namespace

CoefficientSequence u_coeffs_closed(const CalabiParams& params, int order)
{
    check_order(order);
    std::vector<Rational> a;
    a.reserve(order);
    a.push_back(params.c());
    // running prod_{s=1}^{j-1} (n s - 1) c^j k0^{j-1}
    Rational running = params.c();
    for (int j = 2; j <= order; ++j) {
        running *= Rational(static_cast<long>(params.n()) * (j - 1) - 1) * params.c() * params.k0();
        const Rational sign(j % 2 == 0 ? -1 : 1);
        a.push_back(sign * running / Rational(j));
    }
    return {params, std::move(a), CoefficientMethod::closed_form};
}

CoefficientSequence u_coeffs_ode(const CalabiParams& params, int order)
{
    check_order(order);
    // Unknown v = u' with v_k = a_{k+1} / k!. At step r, with v_r provisionally
    // zero, [x^r] of (1 + k0 x v)^{n-1} (v + x v') misses exactly (r+1) v_r.
    std::vector<Rational> v;
    v.reserve(order);
    for (int r = 0; r < order; ++r) {
        std::vector<Rational> trial(v);
        trial.emplace_back();
        const TruncatedSeries vs(trial);

        const auto factor = pow_int(TruncatedSeries::constant(Rational(1), r) + vs.shift_up() * params.k0(),
                                    params.n() - 1);
        // v + x v' has coefficients (k+1) v_k.
        std::vector<Rational> g(r + 1);
        for (int k = 0; k <= r; ++k)
            g[k] = trial[k] * Rational(k + 1);
        const auto lhs = factor * TruncatedSeries(std::move(g));

        const Rational target = r == 0 ? params.c() : Rational(0);
        v.push_back((target - lhs[r]) / Rational(r + 1));
    }

    std::vector<Rational> a;
    a.reserve(order);
    for (int j = 1; j <= order; ++j)
        a.push_back(v[j - 1] * Rational(factorial(j - 1)));
    return {params, std::move(a), CoefficientMethod::ode};
}

CoefficientSequence u_coeffs(const CalabiParams& params, int order)
{
    auto closed = u_coeffs_closed(params, order);
    auto ode = u_coeffs_ode(params, order);
    for (int j = 1; j <= order; ++j)
        if (closed.a(j) != ode.a(j))
            throw MethodDisagreement(j, closed.a(j), ode.a(j));
    return ode;
}

BranchDiagnostic::BranchDiagnostic(double x, double imag)
    : std::runtime_error([&] {
          std::ostringstream os;
          os.precision(3);
          os << "closed form at x=" << x << " has imaginary residue " << imag << " >= "
             << ClosedFormEvaluator::imag_tolerance;
          return os.str();
      }())
{
}

ClosedFormEvaluator::ClosedFormEvaluator(const CalabiParams& params)
    : params_(params),
      n_(params.n()),
      k0_(params.k0().to_double()),
      c_(params.c().to_double()),
      gamma_(n_ * k0_ * c_)
{
    roots_.resize(n_ - 1);
    // Conjugate pairs are mirrored exactly so their imaginary parts cancel.
    for (int j = 1; 2 * j <= n_; ++j) {
        const auto t = 2 * j == n_ ? std::complex<double>(-1.0, 0.0)
                                   : std::polar(1.0, 2.0 * std::numbers::pi * j / n_);
        roots_[j - 1] = t;
        roots_[n_ - j - 1] = std::conj(t);
    }
}

std::complex<double> ClosedFormEvaluator::evaluate_complex(std::complex<double> z) const
{
    const auto y = std::pow(1.0 + gamma_ * z, 1.0 / n_);
    std::complex<double> total = (static_cast<double>(n_) / k0_) * (y - 1.0);
    for (const auto& t : roots_)
        total -= ((1.0 - t) / k0_) * std::log((y - t) / (1.0 - t));
    return total;
}

ClosedFormEvaluator::Value ClosedFormEvaluator::evaluate(double x) const
{
    if (!(x >= 0.0))
        throw std::invalid_argument("closed form is evaluated on x >= 0");
    const auto v = evaluate_complex(x);
    if (std::abs(v.imag()) >= imag_tolerance)
        throw BranchDiagnostic(x, v.imag());
    return {v.real(), std::abs(v.imag())};
}

double ClosedFormEvaluator::central_difference(double x) const
{
    const double h = 1e-5 * (1.0 + x);
    // The stencil may dip below 0 at x = 0; the formula is analytic there.
    return (evaluate_complex(x + h).real() - evaluate_complex(x - h).real()) / (2.0 * h);
}

ClosedFormEvaluator::Derivatives ClosedFormEvaluator::derivatives(double x) const
{
    constexpr int nodes = 64;
    const double rho = 0.5 * (x + 1.0 / gamma_);
    std::complex<double> s0, s1, s2;
    for (int m = 0; m < nodes; ++m) {
        const auto w = std::polar(1.0, 2.0 * std::numbers::pi * m / nodes);
        const auto f = evaluate_complex(x + rho * w);
        s0 += f;
        s1 += f / w;
        s2 += f / (w * w);
    }
    return {s0.real() / nodes, s1.real() / (nodes * rho), 2.0 * s2.real() / (nodes * rho * rho)};
}

ClosedFormEvaluator::ConditionCheck ClosedFormEvaluator::conditions(double x) const
{
    const auto value = evaluate(x);
    const auto d = derivatives(x);
    const double first = 1.0 + k0_ * x * d.du;
    const double second = d.du + x * d.d2u;
    const double residual = std::abs(std::pow(first, n_ - 1) * second - c_) / c_;
    return {x, first, second, residual, value.imag_residue};
}

HrValue h_from_table(const BellTable& table, const Rational& m, int r)
{
    if (r < 1)
        throw std::invalid_argument("h_r needs r >= 1, got " + std::to_string(r));
    if (m.sign() <= 0)
        throw std::invalid_argument("h_r needs m > 0, got " + m.to_string());
    Rational sum;
    Rational m_pow(1);
    for (int j = 1; j <= r; ++j) {
        m_pow *= m;
        sum += m_pow * table.at(r, j);
    }
    return {r, m, sum / Rational(factorial(r))};
}

HrValue h_r(const CalabiParams& params, const Rational& m, int r)
{
    if (r < 1)
        throw std::invalid_argument("h_r needs r >= 1, got " + std::to_string(r));
    const BellTable table(u_coeffs(params, r).as_input(), r);
    return h_from_table(table, m, r);
}

std::vector<HrValue> h_values(const CalabiParams& params, const Rational& m, int r_max)
{
    if (r_max < 1)
        throw std::invalid_argument("h_values needs r_max >= 1, got " + std::to_string(r_max));
    const BellTable table(u_coeffs(params, r_max).as_input(), r_max);
    std::vector<HrValue> out;
    out.reserve(r_max);
    for (int r = 1; r <= r_max; ++r)
        out.push_back(h_from_table(table, m, r));
    return out;
}

} // namespace calabi
