// distance.hpp: Trace and Hilbert-Schmidt distance between the two reduced evolutions

#pragma once

#include <stdexcept>
#include <vector>

#include "corrwitness/dynamics.hpp"

namespace corrwitness {

class NonHermitianInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotTraceless : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class GridMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kHermiticityTol = 1e-12;

// rho1 - rho2 for two Hermitian, unit-trace qubit states.
QubitMatrix difference_matrix(const QubitMatrix& rho1, const QubitMatrix& rho2);

// (1/2) Tr|M| for traceless Hermitian M, i.e. sqrt(M11^2 + |M10|^2).
double trace_distance_qubit(const QubitMatrix& m);

// sqrt(Tr M^2) for traceless Hermitian M; equals sqrt(2) times the trace distance.
double hilbert_schmidt_distance_qubit(const QubitMatrix& m);

struct DistanceSeries {
    std::vector<double> t;
    std::vector<double> trace_distance;
    std::vector<double> hs_distance;
    std::vector<double> m11_residual;
};

// D(t) = eps |A_corr(t) - A_marg(t)|, built from the reduced states of both
// initial conditions at every grid point.
DistanceSeries distance_series(const ModelConfig& config, const ComplexSeries& a_corr,
                               const ComplexSeries& a_marg);

struct Peak {
    double value{0.0};
    double time{0.0};
    std::size_t index{0};
};

// Global maximum of the series (first occurrence).
Peak find_peak(const std::vector<double>& t, const std::vector<double>& values);

} // namespace corrwitness
