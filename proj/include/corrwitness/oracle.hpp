// oracle.hpp: Truncated-Fock reference simulation of the dephasing model
//
// The two-level system is coupled to K explicit boson modes whose Fock spaces are
// truncated at n_max quanta. States and Hamiltonians are dense matrices ordered
// as |s> (x) |n_1 ... n_K>, s in {0, 1}, with the first mode varying slowest.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "corrwitness/model.hpp"
#include "corrwitness/numerics.hpp"

namespace corrwitness::oracle {

using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

class DimensionBudgetExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kDefaultDimensionBudget = 4096;
inline constexpr std::size_t kMaxModes = 3;

struct OracleSystem {
    std::vector<BosonMode> modes;
    std::vector<std::size_t> n_max; // per mode
    std::size_t env_dim{1};
    std::size_t dims{2};
    double e0{0.0};
    double e1{1.0};

    RealMatrix h_env;        // sum_k w_k b_k^+ b_k
    RealMatrix h_coupling;   // sum_k g_k (b_k^+ + b_k)
    std::vector<RealMatrix> annihilators; // b_k on the environment
    Matrix h_total;          // full Hamiltonian, dims x dims
    Matrix sigma_plus;       // |1><0| (x) 1_E
    Matrix sigma_minus;      // |0><1| (x) 1_E
};

OracleSystem build_system(const std::vector<BosonMode>& modes,
                          const std::vector<std::size_t>& n_max, double e0, double e1,
                          std::size_t budget = kDefaultDimensionBudget);

OracleSystem build_system(const std::vector<BosonMode>& modes, std::size_t n_max, double e0,
                          double e1, std::size_t budget = kDefaultDimensionBudget);

// Smallest n with exp(-beta w n) exp((g/w)^2) < tol; at T = 0 the Poisson tail of
// the displaced vacuum is used instead.
std::size_t select_n_max(const BosonMode& mode, double beta, double tol = 1e-6);

// exp(-beta H) / Z from the eigendecomposition of the (block diagonal) Hamiltonian.
Matrix gibbs_state(const OracleSystem& sys, double beta);

// The same state assembled from displaced thermal boson states,
//   (1/Z'_S) (e^{-beta E0} rho_th |0><0| + e^{-beta E1'} D^+ rho_th D |1><1|),
// with the displacements computed in an enlarged Fock space before truncation.
Matrix gibbs_state_displaced(const OracleSystem& sys, double beta, std::size_t padding = 40);

// Thermal state of the uncoupled bath restricted to the truncated space, and the
// same state displaced by D^+ . D with D = exp(sum_k (g_k/w_k)(b_k^+ - b_k)).
Matrix thermal_environment(const OracleSystem& sys, double beta, std::size_t padding = 40);
Matrix displaced_thermal_environment(const OracleSystem& sys, double beta,
                                     std::size_t padding = 40);

Matrix partial_trace_environment(const Matrix& rho, std::size_t env_dim); // 2 x 2
Matrix partial_trace_system(const Matrix& rho, std::size_t env_dim);      // env x env
Matrix tensor(const Matrix& rho_s, const Matrix& rho_e);

// (Tr_E rho) (x) (Tr_S rho)
Matrix marginal_state(const Matrix& rho, std::size_t env_dim);

// First-order (in the field) coherence of the reduced state,
//   [Tr_E rho^(1)(t)]_10 / (i eps e^{-i omega_p t}),
// from rho^(1)(t) = -i int_0^t dt' U0(t - t') [H_P(t'), U0(t') rho0 U0^+(t')] U0^+(t - t').
// The interaction-picture time integral is done analytically in the eigenbasis
// of the block-diagonal Hamiltonian, so the result carries no grid error.
numerics::ComplexSeries first_order_coherence(const OracleSystem& sys, const Matrix& rho0,
                                              double omega_p, std::span<const double> t);

// Same quantity from the full dense eigendecomposition and an explicit commutator
// at every time. Cubic cost in dims per time point; meant for small systems.
numerics::ComplexSeries first_order_coherence_dense(const OracleSystem& sys, const Matrix& rho0,
                                                    double omega_p, std::span<const double> t);

// First-order change of the upper-level population Tr_E [rho^(1)(t)]_11.
std::vector<double> first_order_population_shift(const OracleSystem& sys, const Matrix& rho0,
                                                 double omega_p, std::span<const double> t);

// Finite-field check: propagates the full Hamiltonian with field amplitude eps
// exactly (time independent in the frame rotating at omega_p) and extracts the
// linear coefficient from +/- eps and +/- eps/2 with Richardson extrapolation.
numerics::ComplexSeries finite_field_coherence(const OracleSystem& sys, const Matrix& rho0,
                                               double omega_p, std::span<const double> t,
                                               double eps = 1e-3);

} // namespace corrwitness::oracle
