// distance.cpp: Difference matrices and qubit distances

#include "corrwitness/distance.hpp"

#include <cmath>
#include <numbers>

namespace corrwitness {

namespace {

void require_state(const QubitMatrix& rho, const char* name) {
    if (!rho.is_hermitian(kHermiticityTol))
        throw NonHermitianInput(std::string(name) + " is not Hermitian");
}

void require_traceless_hermitian(const QubitMatrix& m) {
    if (!m.is_hermitian(kHermiticityTol))
        throw NonHermitianInput("difference matrix is not Hermitian");
    if (std::abs(m.trace()) > kHermiticityTol)
        throw NotTraceless("difference matrix is not traceless");
}

} // namespace

QubitMatrix difference_matrix(const QubitMatrix& rho1, const QubitMatrix& rho2) {
    require_state(rho1, "rho1");
    require_state(rho2, "rho2");
    return {rho1.m00 - rho2.m00, rho1.m01 - rho2.m01, rho1.m10 - rho2.m10, rho1.m11 - rho2.m11};
}

double trace_distance_qubit(const QubitMatrix& m) {
    require_traceless_hermitian(m);
    // eigenvalues of a traceless Hermitian 2x2 are +/- sqrt(m11^2 + |m10|^2)
    return std::hypot(m.m11.real(), std::abs(m.m10));
}

double hilbert_schmidt_distance_qubit(const QubitMatrix& m) {
    require_traceless_hermitian(m);
    const double sq = std::norm(m.m00) + std::norm(m.m11) + std::norm(m.m01) + std::norm(m.m10);
    return std::sqrt(sq);
}

DistanceSeries distance_series(const ModelConfig& config, const ComplexSeries& a_corr,
                               const ComplexSeries& a_marg) {
    a_corr.validate();
    a_marg.validate();
    if (a_corr.t != a_marg.t)
        throw GridMismatch("distance_series: A_corr and A_marg grids differ");
    const std::size_t n = a_corr.size();
    DistanceSeries d;
    d.t = a_corr.t;
    d.trace_distance.resize(n);
    d.hs_distance.resize(n);
    d.m11_residual.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = a_corr.t[i];
        const auto rho1 = reduced_density(config, t, a_corr.values[i], InitialState::correlated);
        const auto rho2 = reduced_density(config, t, a_marg.values[i], InitialState::marginal);
        const auto m = difference_matrix(rho1, rho2);
        d.trace_distance[i] = trace_distance_qubit(m);
        d.hs_distance[i] = hilbert_schmidt_distance_qubit(m);
        d.m11_residual[i] = std::abs(m.m11);
    }
    return d;
}

Peak find_peak(const std::vector<double>& t, const std::vector<double>& values) {
    if (t.size() != values.size())
        throw GridMismatch("find_peak: length mismatch");
    Peak p;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i == 0 || values[i] > p.value) {
            p.value = values[i];
            p.time = t[i];
            p.index = i;
        }
    }
    return p;
}

} // namespace corrwitness
