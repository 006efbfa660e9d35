// correlations.hpp: Bath correlation functions of the dephasing (displaced-oscillator) bath

#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "corrwitness/model.hpp"
#include "corrwitness/numerics.hpp"

namespace corrwitness {

using cplx = std::complex<double>;

// Decoherence exponent
//   Gamma(t) = int_0^inf dw h(w)/w^2 [ (1 + 2 n(w)) (1 - cos wt) + i sin wt ],
// with n(w) the Bose occupation at inverse temperature beta (zero for beta = inf).
// Discrete baths are summed exactly. For Ohmic baths the imaginary part uses its
// closed form s * atan(omega_c t) and the real part is integrated numerically.
cplx decoherence_exponent(const BathSpec& bath, double beta, double t,
                          const numerics::QuadratureSettings& settings = {});

// Same quantity with both parts obtained by quadrature over h(w). Only Ohmic
// baths have a continuous density; discrete baths fall back to the exact sum.
cplx decoherence_exponent_quadrature(const BathSpec& bath, double beta, double t,
                                     const numerics::QuadratureSettings& settings = {});

// Phase integral Phi(t) = int h(w)/w^2 sin(wt) dw = Im Gamma(t).
double phase_integral(const BathSpec& bath, double t);

// Psi1(t) = exp(-Gamma(t)); negative times use Psi1(-t) = conj(Psi1(t)).
cplx psi1(const BathSpec& bath, double beta, double t,
          const numerics::QuadratureSettings& settings = {});

// Psi2(t, t') = Psi1(t - t') * exp(-2i (Phi(t') - Phi(t))), for t >= t' >= 0.
cplx psi2(const BathSpec& bath, double beta, double t, double t_prime,
          const numerics::QuadratureSettings& settings = {});

class TailTooLarge : public std::runtime_error {
public:
    TailTooLarge(double estimate, double tolerance);
    double tail_error;
};

// Gamma(t) for an Ohmic bath from the Bose expansion n(w) = sum_k exp(-k beta w):
//   Re Gamma = s/2 ln(1 + wc^2 t^2) + s sum_{k>=1} ln(1 + t^2 / (1/wc + k beta)^2),
//   Im Gamma = s atan(wc t).
// Terms beyond k_max are added through an Euler-Maclaurin tail built on the
// closed-form integral of the summand; throws TailTooLarge if the remainder of
// that tail expansion exceeds `tolerance` (relative to |Re Gamma|, absolute floor 1e-15).
cplx exponent_series_ohmic(double s, double omega_c, double beta, double t, int k_max,
                           double tolerance = 1e-10);

// Psi1 and Phi sampled on a uniform grid t_j = j h, reused by the response integrals.
struct CorrelationTable {
    std::vector<double> t;
    std::vector<cplx> psi1;  // Psi1(t_j)
    std::vector<double> phase; // Phi(t_j)

    // Psi1(t_j - t_i) for i <= j.
    cplx psi1_lag(std::size_t j, std::size_t i) const { return psi1[j - i]; }
    // Psi2(t_j, t_i) for i <= j.
    cplx psi2(std::size_t j, std::size_t i) const {
        const double arg = -2.0 * (phase[i] - phase[j]);
        return psi1[j - i] * cplx{std::cos(arg), std::sin(arg)};
    }
};

// `t` must be uniform and start at zero.
CorrelationTable build_correlation_table(const BathSpec& bath, double beta,
                                         std::span<const double> t,
                                         const numerics::QuadratureSettings& settings = {});

} // namespace corrwitness
