// correlations.cpp: Decoherence exponent, Psi1/Psi2 and the Ohmic Bose-series oracle

#include "corrwitness/correlations.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace corrwitness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1 + 2 n(w) = coth(beta w / 2)
double thermal_factor(double beta, double omega) {
    if (std::isinf(beta))
        return 1.0;
    if (beta == 0.0)
        return kInf;
    return 1.0 + 2.0 / std::expm1(beta * omega);
}

// (1 - cos wt) without cancellation
double one_minus_cos(double omega, double t) {
    const double s = std::sin(0.5 * omega * t);
    return 2.0 * s * s;
}

cplx discrete_exponent(const DiscreteBath& bath, double beta, double t) {
    double re = 0.0, im = 0.0;
    for (const auto& m : bath.modes) {
        const double w2 = m.g * m.g / (m.omega * m.omega);
        if (w2 == 0.0)
            continue;
        const double omc = one_minus_cos(m.omega, t);
        if (omc != 0.0)
            re += w2 * thermal_factor(beta, m.omega) * omc;
        im += w2 * std::sin(m.omega * t);
    }
    return {re, im};
}

// h(w)/w^2 (1 + 2n)(1 - cos wt) for the Ohmic density.
double ohmic_real_integrand(const OhmicBath& b, double beta, double t, double omega) {
    const double envelope = b.s * std::exp(-omega / b.omega_c);
    double guard = 1e-6 * b.omega_c;
    if (std::isfinite(beta))
        guard = std::min(guard, 1e-6 / beta);
    if (t > 0.0)
        guard = std::min(guard, 1e-6 / t);
    if (omega < guard) {
        // small-w series of (1 + 2n)(1 - cos wt)/w
        const double x = omega * t;
        const double cos_part = 0.5 * omega * t * t * (1.0 - x * x / 12.0);
        if (std::isinf(beta))
            return envelope * cos_part;
        const double coth = 2.0 / (beta * omega) + beta * omega / 6.0;
        return envelope * coth * cos_part;
    }
    return envelope * thermal_factor(beta, omega) * one_minus_cos(omega, t) / omega;
}

double ohmic_imag_integrand(const OhmicBath& b, double t, double omega) {
    const double envelope = b.s * std::exp(-omega / b.omega_c);
    const double x = omega * t;
    if (std::abs(x) < 1e-6)
        return envelope * t * (1.0 - x * x / 6.0);
    return envelope * std::sin(x) / omega;
}

double ohmic_real_exponent(const OhmicBath& b, double beta, double t,
                           const numerics::QuadratureSettings& settings) {
    if (t == 0.0 || b.s == 0.0)
        return 0.0;
    if (beta == 0.0)
        return kInf;
    const auto f = [&](double w) -> numerics::cplx { return ohmic_real_integrand(b, beta, t, w); };
    return numerics::integrate_semi_infinite(f, b.omega_c, t, settings).value.real();
}

std::string tail_message(double estimate, double tolerance) {
    std::ostringstream os;
    os << "Bose series tail remainder " << estimate << " exceeds tolerance " << tolerance;
    return os.str();
}

} // namespace

TailTooLarge::TailTooLarge(double estimate, double tolerance)
    : std::runtime_error(tail_message(estimate, tolerance)), tail_error(estimate) {}

double phase_integral(const BathSpec& bath, double t) {
    if (const auto* o = std::get_if<OhmicBath>(&bath))
        return o->s * std::atan(o->omega_c * t);
    return discrete_exponent(std::get<DiscreteBath>(bath), kInf, t).imag();
}

cplx decoherence_exponent(const BathSpec& bath, double beta, double t,
                          const numerics::QuadratureSettings& settings) {
    if (t < 0.0)
        throw std::invalid_argument("decoherence_exponent: t must be >= 0");
    if (const auto* o = std::get_if<OhmicBath>(&bath))
        return {ohmic_real_exponent(*o, beta, t, settings), phase_integral(bath, t)};
    return discrete_exponent(std::get<DiscreteBath>(bath), beta, t);
}

cplx decoherence_exponent_quadrature(const BathSpec& bath, double beta, double t,
                                     const numerics::QuadratureSettings& settings) {
    if (t < 0.0)
        throw std::invalid_argument("decoherence_exponent: t must be >= 0");
    const auto* o = std::get_if<OhmicBath>(&bath);
    if (o == nullptr)
        return discrete_exponent(std::get<DiscreteBath>(bath), beta, t);
    if (t == 0.0 || o->s == 0.0)
        return 0.0;
    const double re = ohmic_real_exponent(*o, beta, t, settings);
    const auto g = [&](double w) -> numerics::cplx { return ohmic_imag_integrand(*o, t, w); };
    const double im = numerics::integrate_semi_infinite(g, o->omega_c, t, settings).value.real();
    return {re, im};
}

cplx psi1(const BathSpec& bath, double beta, double t,
          const numerics::QuadratureSettings& settings) {
    if (t < 0.0)
        return std::conj(psi1(bath, beta, -t, settings));
    const cplx gamma = decoherence_exponent(bath, beta, t, settings);
    if (std::isinf(gamma.real()))
        return 0.0;
    return std::exp(-gamma);
}

cplx psi2(const BathSpec& bath, double beta, double t, double t_prime,
          const numerics::QuadratureSettings& settings) {
    if (t_prime < 0.0 || t < t_prime)
        throw std::invalid_argument("psi2 requires t >= t' >= 0");
    const double arg = -2.0 * (phase_integral(bath, t_prime) - phase_integral(bath, t));
    return psi1(bath, beta, t - t_prime, settings) * cplx{std::cos(arg), std::sin(arg)};
}

cplx exponent_series_ohmic(double s, double omega_c, double beta, double t, int k_max,
                           double tolerance) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("exponent_series_ohmic: beta must be finite and > 0");
    if (k_max < 1)
        throw std::invalid_argument("exponent_series_ohmic: k_max must be >= 1");
    const double im = s * std::atan(omega_c * t);
    if (t == 0.0 || s == 0.0)
        return {0.0, im};

    const double c = 1.0 / omega_c;
    const double t2 = t * t;
    double sum = 0.5 * std::log1p(omega_c * omega_c * t2);
    // smallest terms last
    double thermal = 0.0;
    for (int k = k_max; k >= 1; --k) {
        const double u = c + k * beta;
        thermal += std::log1p(t2 / (u * u));
    }

    // Euler-Maclaurin: sum_{k>K} f(k) = int_K^inf f - f(K)/2 - f'(K)/12 + f'''(K)/720 - ...
    // with f(x) = ln(1 + t^2/u^2), u = c + x beta.
    const double u = c + k_max * beta;
    const double u2 = u * u;
    const double r = u2 + t2;
    const double integral = (2.0 * t * std::atan(t / u) - u * std::log1p(t2 / u2)) / beta;
    const double f0 = std::log1p(t2 / u2);
    const double f1 = beta * (-2.0 * t2 / (u * r));
    const double f3 = beta * beta * beta *
                      ((4.0 * u * u2 - 12.0 * u * t2) / (r * r * r) - 4.0 / (u * u2));
    const double tail = integral - 0.5 * f0 - f1 / 12.0 + f3 / 720.0;
    thermal += tail;

    sum += thermal;
    const double re = s * sum;
    const double remainder = s * std::abs(f3) / 720.0;
    const double allowed = tolerance * std::max(std::abs(re), 1e-15);
    if (remainder > allowed)
        throw TailTooLarge(remainder, allowed);
    return {re, im};
}

CorrelationTable build_correlation_table(const BathSpec& bath, double beta,
                                         std::span<const double> t,
                                         const numerics::QuadratureSettings& settings) {
    if (t.empty() || t.front() != 0.0)
        throw std::invalid_argument("correlation table grid must start at t = 0");
    const double h = t.size() > 1 ? t[1] - t[0] : 0.0;
    for (std::size_t j = 1; j < t.size(); ++j)
        if (std::abs((t[j] - t[j - 1]) - h) > 1e-9 * std::max(1.0, h))
            throw std::invalid_argument("correlation table grid must be uniform");

    CorrelationTable table;
    table.t.assign(t.begin(), t.end());
    table.psi1.resize(t.size());
    table.phase.resize(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
        table.psi1[j] = psi1(bath, beta, t[j], settings);
        table.phase[j] = phase_integral(bath, t[j]);
    }
    return table;
}

} // namespace corrwitness
