// model.hpp: Physical parameters of the dephasing two-level system and its bath

#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace corrwitness {

// All quantities are dimensionless: hbar = k_B = 1 and energies are measured in
// units of the bare transition frequency omega_0 = E1 - E0. Times are omega_0 * t.

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// h(w) = s * w * exp(-w / omega_c)
struct OhmicBath {
    double s{0.0};
    double omega_c{1.0};
};

struct BosonMode {
    double g{0.0};     // coupling frequency g_k
    double omega{1.0}; // mode frequency omega_k
};

// h(w) = sum_k g_k^2 delta(w - omega_k)
struct DiscreteBath {
    std::vector<BosonMode> modes;
};

using BathSpec = std::variant<OhmicBath, DiscreteBath>;

void validate(const BathSpec& bath);

// sum_k g_k^2 / omega_k, i.e. int h(w)/w dw
double reorganization_energy(const BathSpec& bath);

// Spectral density h(w); zero for discrete baths away from their delta peaks.
double spectral_density(const OhmicBath& bath, double omega);

inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

// beta for a temperature k_B T / (hbar omega_0); T = 0 maps to infinite beta.
double beta_from_temperature(double kbt);

struct ModelConfig {
    double e0{0.0};
    double e1{1.0};
    double beta{1.0};              // may be kInfiniteBeta (T = 0)
    BathSpec bath{OhmicBath{}};
    double omega_p{1.0};
    double field_prefactor{1.0};   // mu.E / (2 hbar omega_0), outputs are reported apart from it
    double t_max{100.0};
    std::size_t n_steps{2001};

    void validate() const;
};

struct ThermalWeights {
    double p0{1.0};
    double p1{0.0};
    double z_s_prime{1.0}; // relative to exp(-beta * min(E0, E1'))
};

double renormalized_upper_energy(const ModelConfig& config);
double detuning(const ModelConfig& config);
ThermalWeights thermal_weights(const ModelConfig& config);

// Boltzmann weights of a two-level system with energies e0 and e1 at inverse temperature beta.
ThermalWeights boltzmann_pair(double e0, double e1, double beta);

// Uniform time grid t_j = j * t_max / (n_steps - 1).
std::vector<double> time_grid(const ModelConfig& config);

} // namespace corrwitness
