// dynamics.hpp: First-order response of the coherence to a suddenly applied weak field

#pragma once

#include <complex>
#include <vector>

#include "corrwitness/correlations.hpp"
#include "corrwitness/model.hpp"
#include "corrwitness/numerics.hpp"

namespace corrwitness {

using numerics::ComplexSeries;

// 2x2 matrix in the {|0>, |1>} basis; m10 = <1|M|0>.
struct QubitMatrix {
    cplx m00{0.0};
    cplx m01{0.0};
    cplx m10{0.0};
    cplx m11{0.0};

    cplx trace() const { return m00 + m11; }
    bool is_hermitian(double tol) const;
};

enum class InitialState { correlated, marginal };

// Response integrals for the two initial conditions. The integration grid is the
// table grid (uniform, starting at 0).
//
// Correlated Gibbs state:
//   A_corr(t) = int_0^t dtau e^{-i dw tau} (p0 Psi1(tau) - p1 conj(Psi1(tau)))
// Marginal product state:
//   A_marg(t) = int_0^t dt' e^{-i dw (t-t')} [ p0 (p0 Psi1 + p1 Psi2(t,t'))
//                                            - p1 (p0 conj(Psi2(t,t')) + p1 conj(Psi1)) ]
ComplexSeries a_corr(const ModelConfig& config, const CorrelationTable& table);
ComplexSeries a_marg(const ModelConfig& config, const CorrelationTable& table);

// A_marg - A_corr, evaluated directly as
//   p0 p1 int_0^t dtau e^{-i dw tau} 2i Im(Psi2(t, t - tau) - Psi1(tau)),
// so it vanishes identically when Psi2 = Psi1.
ComplexSeries marginal_correction(const ModelConfig& config, const CorrelationTable& table);

struct Response {
    CorrelationTable table;
    ComplexSeries corr;
    ComplexSeries marg;
};

// Builds the correlation table on the config's time grid and both response series.
Response compute_response(const ModelConfig& config,
                          const numerics::QuadratureSettings& settings = {});

// Reduced state at time t given the matching A value. Populations are the
// thermal weights; the coherence is m10 = i eps e^{-i omega_p t} A.
QubitMatrix reduced_density(const ModelConfig& config, double t, cplx a_value,
                            InitialState which);

struct DipoleSignal {
    std::vector<double> t;
    std::vector<double> amplitude; // |A|
    std::vector<double> phase;     // arg A, unwrapped
    std::vector<double> signal;    // |A| cos(omega_p t - phase)
    std::vector<double> intensity; // |A|^2
};

DipoleSignal dipole_signal(const ComplexSeries& a_series, double omega_p);

// Earliest grid time after which every sample stays within rel_band * |v_final|
// of the final value v_final; the final value stands in for the stationary one.
double settling_time(const std::vector<double>& t, const std::vector<double>& values,
                     double rel_band);

// Removes 2 pi jumps so consecutive phases differ by at most pi.
std::vector<double> unwrap_phase(const std::vector<double>& wrapped);

} // namespace corrwitness
