// model.cpp: Parameter validation, renormalized energies and thermal weights

#include "corrwitness/model.hpp"

#include <algorithm>
#include <cmath>

namespace corrwitness {

namespace {

struct BathValidator {
    void operator()(const OhmicBath& b) const {
        if (!std::isfinite(b.s) || b.s < 0.0)
            throw ConfigError("ohmic bath: s must be finite and >= 0");
        if (!std::isfinite(b.omega_c) || b.omega_c <= 0.0)
            throw ConfigError("ohmic bath: omega_c must be finite and > 0");
    }
    void operator()(const DiscreteBath& b) const {
        for (const auto& m : b.modes) {
            if (!std::isfinite(m.g))
                throw ConfigError("discrete bath: coupling g must be finite");
            if (!std::isfinite(m.omega) || m.omega <= 0.0)
                throw ConfigError("discrete bath: mode frequency must be finite and > 0");
        }
    }
};

} // namespace

void validate(const BathSpec& bath) { std::visit(BathValidator{}, bath); }

double reorganization_energy(const BathSpec& bath) {
    if (const auto* o = std::get_if<OhmicBath>(&bath))
        return o->s * o->omega_c;
    double sum = 0.0;
    for (const auto& m : std::get<DiscreteBath>(bath).modes)
        sum += m.g * m.g / m.omega;
    return sum;
}

double spectral_density(const OhmicBath& bath, double omega) {
    return bath.s * omega * std::exp(-omega / bath.omega_c);
}

double beta_from_temperature(double kbt) {
    if (!std::isfinite(kbt) || kbt < 0.0)
        throw ConfigError("temperature must be finite and >= 0");
    if (kbt == 0.0)
        return kInfiniteBeta;
    return 1.0 / kbt;
}

void ModelConfig::validate() const {
    if (!std::isfinite(e0) || !std::isfinite(e1) || !(e1 > e0))
        throw ConfigError("energies must be finite with e1 > e0");
    if (std::isnan(beta) || beta < 0.0)
        throw ConfigError("beta must be >= 0 (or infinite for T = 0)");
    if (!std::isfinite(omega_p) || omega_p <= 0.0)
        throw ConfigError("omega_p must be finite and > 0");
    if (!std::isfinite(field_prefactor))
        throw ConfigError("field_prefactor must be finite");
    if (!std::isfinite(t_max) || t_max <= 0.0)
        throw ConfigError("t_max must be finite and > 0");
    if (n_steps < 2)
        throw ConfigError("n_steps must be >= 2");
    corrwitness::validate(bath);
}

double renormalized_upper_energy(const ModelConfig& config) {
    return config.e1 - reorganization_energy(config.bath);
}

double detuning(const ModelConfig& config) {
    return renormalized_upper_energy(config) - config.e0 - config.omega_p;
}

ThermalWeights boltzmann_pair(double e0, double e1, double beta) {
    const double shift = std::min(e0, e1);
    const auto weight = [&](double e) {
        const double de = e - shift;
        if (de == 0.0)
            return 1.0;
        return std::exp(-beta * de); // exp(-inf) = 0 for beta = inf
    };
    const double w0 = weight(e0);
    const double w1 = weight(e1);
    const double z = w0 + w1;
    ThermalWeights tw;
    tw.z_s_prime = z;
    tw.p0 = w0 / z;
    tw.p1 = w1 / z;
    return tw;
}

ThermalWeights thermal_weights(const ModelConfig& config) {
    return boltzmann_pair(config.e0, renormalized_upper_energy(config), config.beta);
}

std::vector<double> time_grid(const ModelConfig& config) {
    std::vector<double> t(config.n_steps);
    const double n = static_cast<double>(config.n_steps - 1);
    for (std::size_t j = 0; j < t.size(); ++j)
        t[j] = config.t_max * static_cast<double>(j) / n;
    return t;
}

} // namespace corrwitness
