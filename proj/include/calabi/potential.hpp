#pragma once

/*
 * Calabi's potential u for the Ricci-flat metric on the canonical bundle of
 * a compact Kähler-Einstein manifold of dimension n-1 with Einstein
 * constant k0.
 *
 * u is fixed by u(0) = 0 and
 *
 *   (1 + k0 x u'(x))^{n-1} (u'(x) + x u''(x)) = c,
 *
 * so u'(0) = c. Writing a_j = u^{(j)}(0), the Taylor coefficients are
 *
 *   a_1 = c,  a_j = (-1)^{j+1}/j c^j k0^{j-1} prod_{s=1}^{j-1} (n s - 1).
 *
 * Both the product formula and a coefficient-by-coefficient solution of the
 * equation above are implemented; the latter is authoritative.
 */

#include <array>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "calabi/bell.hpp"
#include "calabi/exact.hpp"

namespace calabi {

class CalabiParams {
public:
    // Requires n >= 2, k0 > 0, c > 0.
    CalabiParams(int n, Rational k0, Rational c);

    int n() const { return n_; }
    const Rational& k0() const { return k0_; }
    const Rational& c() const { return c_; }

    friend bool operator==(const CalabiParams&, const CalabiParams&) = default;

private:
    int n_;
    Rational k0_;
    Rational c_;
};

enum class CoefficientMethod { closed_form, ode };

const char* to_string(CoefficientMethod m);

struct CoefficientSequence {
    CalabiParams params;
    std::vector<Rational> values; // a_1..a_R
    CoefficientMethod method;

    int order() const { return static_cast<int>(values.size()); }
    // a_j, 1-based
    const Rational& a(int j) const;
    InputSequence as_input() const { return InputSequence(values); }
};

// The two coefficient routes disagree at some index.
class MethodDisagreement : public std::runtime_error {
public:
    MethodDisagreement(int index, const Rational& closed, const Rational& ode);
    int index() const { return index_; }

private:
    int index_;
};

CoefficientSequence u_coeffs_closed(const CalabiParams& params, int order);
CoefficientSequence u_coeffs_ode(const CalabiParams& params, int order);
// Computes both and throws MethodDisagreement if they differ anywhere.
// Returns the ODE sequence.
CoefficientSequence u_coeffs(const CalabiParams& params, int order);

// Imaginary part of the closed-form sum exceeded the tolerance.
class BranchDiagnostic : public std::runtime_error {
public:
    BranchDiagnostic(double x, double imag);
};

/// Double-precision evaluation of the closed form
///
///   u(x) = (n/k0)[y - 1] - sum_{j=1}^{n-1} ((1 - tau^j)/k0) log[(y - tau^j)/(1 - tau^j)],
///   y = (1 + n k0 c x)^{1/n},  tau = exp(2 pi i / n),
///
/// with principal branches throughout. The constant under the root is
/// n k0 c, which is what makes u'(0) = c; with it 1 + k0 x u'(x) = y.
///
/// u is analytic in the disk |x - x0| < x0 + 1/(n k0 c) around any x0 >= 0;
/// derivatives() exploits this with a trapezoidal Cauchy integral.
class ClosedFormEvaluator {
public:
    static constexpr double imag_tolerance = 1e-10;

    struct Value {
        double value;
        double imag_residue;
    };

    struct Derivatives {
        double u;
        double du;
        double d2u;
    };

    struct ConditionCheck {
        double x;
        double first;     // 1 + k0 x u'
        double second;    // u' + x u''
        double residual;  // |(first)^{n-1} (second) - c| / c
        double imag_residue;
    };

    explicit ClosedFormEvaluator(const CalabiParams& params);

    const CalabiParams& params() const { return params_; }
    // tau^1..tau^{n-1}
    std::span<const std::complex<double>> roots() const { return roots_; }

    // Pre: x >= 0. Throws BranchDiagnostic when the imaginary residue
    // reaches imag_tolerance.
    Value evaluate(double x) const;
    // The raw complex sum at any z with Re(1 + n k0 c z) > 0.
    std::complex<double> evaluate_complex(std::complex<double> z) const;

    // u'(x) by a central difference with step 1e-5 (1 + x).
    double central_difference(double x) const;
    // u, u', u'' by Cauchy's integral formula on a circle of radius
    // (x + 1/(n k0 c))/2.
    Derivatives derivatives(double x) const;
    ConditionCheck conditions(double x) const;

private:
    CalabiParams params_;
    int n_;
    double k0_;
    double c_;
    double gamma_; // n k0 c
    std::vector<std::complex<double>> roots_;
};

struct HrValue {
    int r;
    Rational m;
    Rational value;
};

// h_r(u, m) = (1/r!) sum_{j=1}^{r} m^j B_{r,j}(a_1, ..., a_r).
HrValue h_r(const CalabiParams& params, const Rational& m, int r);
// h_1..h_{r_max} sharing one coefficient sequence and Bell table.
std::vector<HrValue> h_values(const CalabiParams& params, const Rational& m, int r_max);
// Same, from precomputed Bell rows of the coefficient sequence.
HrValue h_from_table(const BellTable& table, const Rational& m, int r);

} // namespace calabi
