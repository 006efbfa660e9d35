// numerics.hpp: Semi-infinite oscillatory quadrature and cumulative time integration

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace corrwitness::numerics {

using cplx = std::complex<double>;

enum class PanelPolicy { fixed, oscillation_aware };

struct QuadratureSettings {
    double rel_tol{1e-9};
    double abs_tol{1e-12};
    std::size_t max_subdivisions{4000};
    PanelPolicy panel_policy{PanelPolicy::oscillation_aware};

    void validate() const;
};

class ToleranceNotMet : public std::runtime_error {
public:
    ToleranceNotMet(double achieved, double requested);
    double achieved_error;
};

class NonFinite : public std::runtime_error {
public:
    explicit NonFinite(double where);
    double omega;
};

class GridTooCoarse : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct QuadratureResult {
    cplx value;
    double error{0.0};        // estimated absolute error, truncated tail included
    double cutoff{0.0};       // upper limit actually integrated to
    std::size_t evaluations{0};
};

using Integrand = std::function<cplx(double)>;

// Integrates f over [0, inf). The integrand is assumed to be bounded by
// C * exp(-w / decay_scale) for large w; the range is truncated once that envelope,
// with C estimated from the samples, can no longer affect the requested tolerance.
// `oscillation_time` is the t in cos(w t) / sin(w t) factors of f (0 if f does not
// oscillate); under the oscillation-aware policy panels are no wider than pi / t.
QuadratureResult integrate_semi_infinite(const Integrand& f, double decay_scale,
                                         double oscillation_time,
                                         const QuadratureSettings& settings = {});

// Adaptive Gauss-Kronrod (10/21) on a finite interval.
QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  const QuadratureSettings& settings = {});

struct ComplexSeries {
    std::vector<double> t;
    std::vector<cplx> values;

    std::size_t size() const { return t.size(); }
    void validate() const;
};

// F(t_j) = int_0^{t_j} f dt' using piecewise cubic interpolation through the
// neighbouring samples (quadratic when only three points exist). Grids may be
// nonuniform.
ComplexSeries cumulative_integral(const ComplexSeries& series);

// Weights w_i such that sum_i w_i f(t_i) approximates int_{t_0}^{t_n} f, built
// from the same interval rule as cumulative_integral. Two points give the
// trapezoid rule, one point gives zero.
std::vector<double> integration_weights(std::span<const double> t);

cplx integrate_samples(std::span<const double> t, std::span<const cplx> f);

} // namespace corrwitness::numerics
