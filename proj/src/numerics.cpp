// numerics.cpp: Gauss-Kronrod panels for [0, inf) and piecewise-cubic time integration

#include "corrwitness/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace corrwitness::numerics {

namespace {

std::string tolerance_message(double achieved, double requested) {
    std::ostringstream os;
    os << "quadrature tolerance not met: achieved error " << achieved
       << ", requested " << requested;
    return os.str();
}

std::string nonfinite_message(double w) {
    std::ostringstream os;
    os << "integrand returned a non-finite value at omega = " << w;
    return os.str();
}

struct Panel {
    double a{0.0};
    double b{0.0};
    cplx value;
    double error{0.0};
    double envelope{0.0}; // max |f(w)| exp(w / decay) over the nodes

    bool operator<(const Panel& other) const { return error < other.error; }
};

// One 21-point Kronrod evaluation with the embedded 10-point Gauss rule.
Panel gauss_kronrod_21(const Integrand& f, double a, double b, double decay_scale) {
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
    using gauss = boost::math::quadrature::gauss<double, 10>;
    static const auto& xk = kronrod::abscissa();
    static const auto& wk = kronrod::weights();
    static const auto& wg = gauss::weights();

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<cplx, 21> fv;
    std::array<double, 21> xs;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < xk.size(); ++i) {
        if (xk[i] == 0.0) {
            xs[idx++] = center;
        } else {
            xs[idx++] = center - half * xk[i];
            xs[idx++] = center + half * xk[i];
        }
    }

    Panel p;
    p.a = a;
    p.b = b;
    for (std::size_t i = 0; i < 21; ++i) {
        fv[i] = f(xs[i]);
        if (!std::isfinite(fv[i].real()) || !std::isfinite(fv[i].imag()))
            throw NonFinite(xs[i]);
        if (decay_scale > 0.0)
            p.envelope = std::max(p.envelope, std::abs(fv[i]) * std::exp(xs[i] / decay_scale));
    }

    // Map back to the abscissa layout: node 0 (center) then +/- pairs.
    cplx kron = 0.0, gs = 0.0;
    double resabs = 0.0;
    idx = 0;
    for (std::size_t i = 0; i < xk.size(); ++i) {
        const bool is_gauss = (i % 2 == 1); // Gauss nodes sit at odd Kronrod indices
        if (xk[i] == 0.0) {
            kron += wk[i] * fv[idx];
            resabs += wk[i] * std::abs(fv[idx]);
            ++idx;
        } else {
            const cplx pair = fv[idx] + fv[idx + 1];
            kron += wk[i] * pair;
            resabs += wk[i] * (std::abs(fv[idx]) + std::abs(fv[idx + 1]));
            if (is_gauss)
                gs += wg[i / 2] * pair;
            idx += 2;
        }
    }
    const cplx mean = kron * 0.5;
    double resasc = 0.0;
    idx = 0;
    for (std::size_t i = 0; i < xk.size(); ++i) {
        if (xk[i] == 0.0) {
            resasc += wk[i] * std::abs(fv[idx] - mean);
            ++idx;
        } else {
            resasc += wk[i] * (std::abs(fv[idx] - mean) + std::abs(fv[idx + 1] - mean));
            idx += 2;
        }
    }

    // QUADPACK error heuristic
    double err = std::abs(kron - gs) * half;
    resabs *= half;
    resasc *= half;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);

    p.value = kron * half;
    p.error = err;
    return p;
}

struct Accumulator {
    std::priority_queue<Panel> panels;
    cplx total{0.0};
    double error{0.0};
    std::size_t evaluations{0};

    void push(Panel p) {
        total += p.value;
        error += p.error;
        evaluations += 21;
        panels.push(std::move(p));
    }
};

double target_error(const QuadratureSettings& s, cplx total) {
    return std::max(s.abs_tol, s.rel_tol * std::abs(total));
}

// Bisects the worst panel until the error budget is met.
void refine(const Integrand& f, Accumulator& acc, double extra_error, double decay_scale,
            const QuadratureSettings& settings) {
    while (acc.error + extra_error > target_error(settings, acc.total)) {
        if (acc.panels.size() >= settings.max_subdivisions)
            throw ToleranceNotMet(acc.error + extra_error, target_error(settings, acc.total));
        Panel worst = acc.panels.top();
        acc.panels.pop();
        acc.total -= worst.value;
        acc.error -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // interval exhausted at machine precision
            throw ToleranceNotMet(acc.error + worst.error + extra_error,
                                  target_error(settings, acc.total));
        }
        acc.push(gauss_kronrod_21(f, worst.a, mid, decay_scale));
        acc.push(gauss_kronrod_21(f, mid, worst.b, decay_scale));
    }
    // drift from repeated add/subtract
    acc.error = std::max(acc.error, 0.0);
}

} // namespace

void QuadratureSettings::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("quadrature tolerances must be > 0");
    if (max_subdivisions < 1)
        throw std::invalid_argument("max_subdivisions must be >= 1");
}

ToleranceNotMet::ToleranceNotMet(double achieved, double requested)
    : std::runtime_error(tolerance_message(achieved, requested)), achieved_error(achieved) {}

NonFinite::NonFinite(double where) : std::runtime_error(nonfinite_message(where)), omega(where) {}

QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  const QuadratureSettings& settings) {
    settings.validate();
    Accumulator acc;
    if (b > a) {
        acc.push(gauss_kronrod_21(f, a, b, 0.0));
        refine(f, acc, 0.0, 0.0, settings);
    }
    return {acc.total, acc.error, b, acc.evaluations};
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double decay_scale,
                                         double oscillation_time,
                                         const QuadratureSettings& settings) {
    settings.validate();
    if (!(decay_scale > 0.0) || !std::isfinite(decay_scale))
        throw std::invalid_argument("decay_scale must be finite and > 0");
    if (std::isnan(oscillation_time) || oscillation_time < 0.0)
        throw std::invalid_argument("oscillation_time must be >= 0");

    double width = decay_scale;
    if (settings.panel_policy == PanelPolicy::oscillation_aware && oscillation_time > 0.0 &&
        std::isfinite(oscillation_time))
        width = std::min(width, std::numbers::pi / oscillation_time);

    // Beyond ~700 decay lengths the envelope underflows; nothing left to integrate.
    const double hard_limit = 700.0 * decay_scale;

    Accumulator acc;
    double a = 0.0;
    double tail = std::numeric_limits<double>::infinity();
    double envelope_prev = 0.0;
    while (true) {
        const double b = a + width;
        Panel p = gauss_kronrod_21(f, a, b, decay_scale);
        const double envelope = std::max(p.envelope, envelope_prev);
        envelope_prev = p.envelope;
        acc.push(std::move(p));
        if (acc.panels.size() >= settings.max_subdivisions)
            throw ToleranceNotMet(tail, target_error(settings, acc.total));
        // int_b^inf C exp(-w/d) dw
        tail = envelope * decay_scale * std::exp(-b / decay_scale);
        a = b;
        // The cutoff depends on abs_tol only, so tightening rel_tol refines the
        // same truncated integral instead of moving its end point.
        if (b >= decay_scale && tail <= 0.1 * settings.abs_tol)
            break;
        if (b >= hard_limit)
            break;
    }

    refine(f, acc, tail, decay_scale, settings);
    return {acc.total, acc.error + tail, a, acc.evaluations};
}

void ComplexSeries::validate() const {
    if (t.size() != values.size())
        throw std::invalid_argument("series: time grid and values differ in length");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw std::invalid_argument("series: time grid must be strictly increasing");
}

namespace {

// Integral over [t[i], t[i+1]] of each Lagrange basis polynomial through the
// stencil nodes; 3-point Gauss-Legendre is exact up to degree 5.
template <std::size_t N>
std::array<double, N> interval_weights(std::span<const double> t, std::size_t first,
                                       std::size_t i) {
    static constexpr std::array<double, 3> gx{-0.7745966692414833770358531, 0.0,
                                              0.7745966692414833770358531};
    static constexpr std::array<double, 3> gw{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    const double a = t[i];
    const double b = t[i + 1];
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::array<double, N> w{};
    for (std::size_t q = 0; q < 3; ++q) {
        const double x = c + h * gx[q];
        for (std::size_t m = 0; m < N; ++m) {
            double l = 1.0;
            for (std::size_t k = 0; k < N; ++k)
                if (k != m)
                    l *= (x - t[first + k]) / (t[first + m] - t[first + k]);
            w[m] += gw[q] * h * l;
        }
    }
    return w;
}

// Calls emit(interval, node, weight) for every interval contribution.
template <typename Emit>
void for_each_interval_weight(std::span<const double> t, Emit&& emit) {
    const std::size_t n = t.size();
    if (n < 2)
        return;
    if (n == 2) {
        const double h = t[1] - t[0];
        emit(0, 0, 0.5 * h);
        emit(0, 1, 0.5 * h);
        return;
    }
    if (n == 3) {
        for (std::size_t i = 0; i < 2; ++i) {
            const auto w = interval_weights<3>(t, 0, i);
            for (std::size_t m = 0; m < 3; ++m)
                emit(i, m, w[m]);
        }
        return;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t first = std::min(i > 0 ? i - 1 : 0, n - 4);
        const auto w = interval_weights<4>(t, first, i);
        for (std::size_t m = 0; m < 4; ++m)
            emit(i, first + m, w[m]);
    }
}

} // namespace

std::vector<double> integration_weights(std::span<const double> t) {
    std::vector<double> w(t.size(), 0.0);
    for_each_interval_weight(t, [&](std::size_t, std::size_t node, double weight) {
        w[node] += weight;
    });
    return w;
}

cplx integrate_samples(std::span<const double> t, std::span<const cplx> f) {
    if (t.size() != f.size())
        throw std::invalid_argument("integrate_samples: length mismatch");
    const auto w = integration_weights(t);
    cplx sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        sum += w[i] * f[i];
    return sum;
}

ComplexSeries cumulative_integral(const ComplexSeries& series) {
    series.validate();
    if (series.size() < 3)
        throw GridTooCoarse("cumulative_integral needs at least 3 grid points");
    const std::size_t n = series.size();
    std::vector<cplx> per_interval(n - 1, cplx{0.0});
    for_each_interval_weight(series.t, [&](std::size_t i, std::size_t node, double weight) {
        per_interval[i] += weight * series.values[node];
    });
    ComplexSeries out{series.t, std::vector<cplx>(n)};
    out.values[0] = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        out.values[i + 1] = out.values[i] + per_interval[i];
    return out;
}

} // namespace corrwitness::numerics
