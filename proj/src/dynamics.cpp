// dynamics.cpp: Response integrals, reduced states and the induced dipole signal

#include "corrwitness/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace corrwitness {

namespace {

void check_table(const ModelConfig& config, const CorrelationTable& table) {
    if (table.t.size() < 3 || table.psi1.size() != table.t.size() ||
        table.phase.size() != table.t.size())
        throw numerics::GridTooCoarse("response integrals need a table with at least 3 points");
    if (table.t.front() != 0.0)
        throw std::invalid_argument("response grid must start at t = 0");
    config.validate();
}

cplx rotation(double dw, double tau) {
    return {std::cos(dw * tau), -std::sin(dw * tau)}; // e^{-i dw tau}
}

} // namespace

bool QubitMatrix::is_hermitian(double tol) const {
    return std::abs(m00.imag()) <= tol && std::abs(m11.imag()) <= tol &&
           std::abs(m01 - std::conj(m10)) <= tol;
}

ComplexSeries a_corr(const ModelConfig& config, const CorrelationTable& table) {
    check_table(config, table);
    const auto w = thermal_weights(config);
    const double dw = detuning(config);
    ComplexSeries integrand{table.t, std::vector<cplx>(table.t.size())};
    for (std::size_t k = 0; k < table.t.size(); ++k) {
        const cplx p = table.psi1[k];
        integrand.values[k] = rotation(dw, table.t[k]) * (w.p0 * p - w.p1 * std::conj(p));
    }
    return numerics::cumulative_integral(integrand);
}

ComplexSeries marginal_correction(const ModelConfig& config, const CorrelationTable& table) {
    check_table(config, table);
    const auto w = thermal_weights(config);
    const double dw = detuning(config);
    const double weight = w.p0 * w.p1;
    const std::size_t n = table.t.size();

    std::vector<cplx> rot(n);
    for (std::size_t k = 0; k < n; ++k)
        rot[k] = rotation(dw, table.t[k]);

    ComplexSeries out{table.t, std::vector<cplx>(n, cplx{0.0})};
    if (weight == 0.0)
        return out;

    std::vector<cplx> integrand;
    integrand.reserve(n);
    const std::span<const double> grid(table.t);
    for (std::size_t j = 1; j < n; ++j) {
        integrand.assign(j + 1, cplx{0.0});
        // tau_k = t_k, t' = t_{j-k}
        for (std::size_t k = 0; k <= j; ++k) {
            const double im = (table.psi2(j, j - k) - table.psi1[k]).imag();
            integrand[k] = rot[k] * cplx{0.0, 2.0 * im};
        }
        out.values[j] = weight * numerics::integrate_samples(grid.first(j + 1), integrand);
    }
    return out;
}

ComplexSeries a_marg(const ModelConfig& config, const CorrelationTable& table) {
    auto out = a_corr(config, table);
    const auto corr = marginal_correction(config, table);
    for (std::size_t j = 0; j < out.size(); ++j)
        out.values[j] += corr.values[j];
    return out;
}

Response compute_response(const ModelConfig& config, const numerics::QuadratureSettings& settings) {
    config.validate();
    const auto grid = time_grid(config);
    Response r;
    r.table = build_correlation_table(config.bath, config.beta, grid, settings);
    r.corr = a_corr(config, r.table);
    r.marg = a_marg(config, r.table);
    return r;
}

QubitMatrix reduced_density(const ModelConfig& config, double t, cplx a_value,
                            InitialState /*which*/) {
    // Both initial conditions share the populations of the Gibbs marginal and the
    // coherence structure; they differ only through the A value passed in.
    const auto w = thermal_weights(config);
    const double phase = -config.omega_p * t;
    const cplx m10 = cplx{0.0, config.field_prefactor} * cplx{std::cos(phase), std::sin(phase)} *
                     a_value;
    return QubitMatrix{w.p0, std::conj(m10), m10, w.p1};
}

std::vector<double> unwrap_phase(const std::vector<double>& wrapped) {
    std::vector<double> out(wrapped.size());
    double offset = 0.0;
    for (std::size_t i = 0; i < wrapped.size(); ++i) {
        if (i > 0) {
            const double jump = wrapped[i] + offset - out[i - 1];
            if (jump > std::numbers::pi)
                offset -= 2.0 * std::numbers::pi * std::round(jump / (2.0 * std::numbers::pi));
            else if (jump < -std::numbers::pi)
                offset += 2.0 * std::numbers::pi * std::round(-jump / (2.0 * std::numbers::pi));
        }
        out[i] = wrapped[i] + offset;
    }
    return out;
}

double settling_time(const std::vector<double>& t, const std::vector<double>& values,
                     double rel_band) {
    if (t.size() != values.size() || t.empty())
        throw std::invalid_argument("settling_time: empty or mismatched series");
    const double target = values.back();
    const double band = rel_band * std::abs(target);
    std::size_t i = values.size();
    while (i > 0 && std::abs(values[i - 1] - target) <= band)
        --i;
    return t[std::min(i, t.size() - 1)];
}

DipoleSignal dipole_signal(const ComplexSeries& a_series, double omega_p) {
    a_series.validate();
    const std::size_t n = a_series.size();
    DipoleSignal d;
    d.t = a_series.t;
    d.amplitude.resize(n);
    d.signal.resize(n);
    d.intensity.resize(n);
    std::vector<double> wrapped(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a = a_series.values[i];
        d.amplitude[i] = std::abs(a);
        wrapped[i] = (a == cplx{0.0}) ? (i > 0 ? wrapped[i - 1] : 0.0) : std::arg(a);
        d.intensity[i] = d.amplitude[i] * d.amplitude[i];
    }
    // arg is undefined at A = 0 (always the case at t = 0); take the first defined value
    std::size_t first = 0;
    while (first < n && a_series.values[first] == cplx{0.0})
        ++first;
    for (std::size_t i = 0; i < first && first < n; ++i)
        wrapped[i] = wrapped[first];
    d.phase = unwrap_phase(wrapped);
    for (std::size_t i = 0; i < n; ++i)
        d.signal[i] = d.amplitude[i] * std::cos(omega_p * d.t[i] - d.phase[i]);
    return d;
}

} // namespace corrwitness
