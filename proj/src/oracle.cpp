// oracle.cpp: Truncated-Fock Gibbs/marginal states and the first-order Dyson coherence

#include "corrwitness/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>

namespace corrwitness::oracle {

namespace {

using cplx = std::complex<double>;
using Eigen::VectorXcd;
using Eigen::VectorXd;

RealMatrix annihilator(std::size_t levels) {
    RealMatrix b = RealMatrix::Zero(levels, levels);
    for (std::size_t n = 1; n < levels; ++n)
        b(n - 1, n) = std::sqrt(static_cast<double>(n));
    return b;
}

template <typename M>
M kron(const M& a, const M& b) {
    M out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// int_0^t e^{i w t'} dt' = t e^{i w t / 2} sinc(w t / 2)
cplx phase_integral(double w, double t) {
    const double x = 0.5 * w * t;
    const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    return t * sinc * cplx{std::cos(x), std::sin(x)};
}

struct BlockEigen {
    VectorXd l0, l1;  // eigenvalues of E0 + H_E and E1 + H_E + V
    RealMatrix v0, v1;
};

BlockEigen block_eigen(const OracleSystem& sys) {
    const auto d = static_cast<Eigen::Index>(sys.env_dim);
    const RealMatrix id = RealMatrix::Identity(d, d);
    Eigen::SelfAdjointEigenSolver<RealMatrix> s0(sys.e0 * id + sys.h_env);
    Eigen::SelfAdjointEigenSolver<RealMatrix> s1(sys.e1 * id + sys.h_env + sys.h_coupling);
    return {s0.eigenvalues(), s1.eigenvalues(), s0.eigenvectors(), s1.eigenvectors()};
}

void check_state(const OracleSystem& sys, const Matrix& rho) {
    if (rho.rows() != static_cast<Eigen::Index>(sys.dims) || rho.cols() != rho.rows())
        throw std::invalid_argument("oracle: state dimension does not match the system");
}

Matrix single_mode_thermal(std::size_t levels, double omega, double beta) {
    Matrix rho = Matrix::Zero(levels, levels);
    if (std::isinf(beta)) {
        rho(0, 0) = 1.0;
        return rho;
    }
    double z = 0.0;
    for (std::size_t n = 0; n < levels; ++n) {
        const double p = std::exp(-beta * omega * static_cast<double>(n));
        rho(n, n) = p;
        z += p;
    }
    return rho / z;
}

// exp(alpha (b^+ - b)) on `levels` Fock states.
Matrix single_mode_displacement(std::size_t levels, double alpha) {
    const RealMatrix b = annihilator(levels);
    // i alpha (b^+ - b) is Hermitian; D = exp(-i X)
    const Matrix x = cplx{0.0, alpha} * (b.transpose() - b).cast<cplx>();
    Eigen::SelfAdjointEigenSolver<Matrix> es(x);
    VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(cplx{0.0, -es.eigenvalues()(i)});
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Tensor product over modes of per-mode environment states, each computed on an
// enlarged space and truncated to the system's n_max.
template <typename PerMode>
Matrix environment_product(const OracleSystem& sys, std::size_t padding, PerMode&& per_mode) {
    Matrix out = Matrix::Ones(1, 1);
    for (std::size_t k = 0; k < sys.modes.size(); ++k) {
        const std::size_t levels = sys.n_max[k] + 1;
        const Matrix big = per_mode(sys.modes[k], levels + padding);
        out = kron<Matrix>(out, big.topLeftCorner(levels, levels));
    }
    return out;
}

cplx coherence_10(const Matrix& rho, std::size_t env_dim) {
    const auto d = static_cast<Eigen::Index>(env_dim);
    return rho.block(d, 0, d, d).trace();
}

} // namespace

OracleSystem build_system(const std::vector<BosonMode>& modes,
                          const std::vector<std::size_t>& n_max, double e0, double e1,
                          std::size_t budget) {
    if (modes.size() > kMaxModes)
        throw DimensionBudgetExceeded("oracle supports at most 3 modes");
    if (n_max.size() != modes.size())
        throw std::invalid_argument("oracle: one truncation per mode is required");
    validate(BathSpec{DiscreteBath{modes}});

    std::size_t env_dim = 1;
    for (std::size_t n : n_max) {
        env_dim *= (n + 1);
        if (2 * env_dim > budget) {
            std::ostringstream os;
            os << "oracle dimension exceeds budget " << budget;
            throw DimensionBudgetExceeded(os.str());
        }
    }

    OracleSystem sys;
    sys.modes = modes;
    sys.n_max = n_max;
    sys.env_dim = env_dim;
    sys.dims = 2 * env_dim;
    sys.e0 = e0;
    sys.e1 = e1;

    const auto d = static_cast<Eigen::Index>(env_dim);
    sys.h_env = RealMatrix::Zero(d, d);
    sys.h_coupling = RealMatrix::Zero(d, d);
    std::size_t before = 1;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        const std::size_t levels = n_max[k] + 1;
        const std::size_t after = env_dim / (before * levels);
        RealMatrix bk = kron<RealMatrix>(
            kron<RealMatrix>(RealMatrix::Identity(before, before), annihilator(levels)),
            RealMatrix::Identity(after, after));
        sys.h_env += modes[k].omega * bk.transpose() * bk;
        sys.h_coupling += modes[k].g * (bk.transpose() + bk);
        sys.annihilators.push_back(std::move(bk));
        before *= levels;
    }

    const auto n = static_cast<Eigen::Index>(sys.dims);
    const RealMatrix id = RealMatrix::Identity(d, d);
    sys.h_total = Matrix::Zero(n, n);
    sys.h_total.topLeftCorner(d, d) = (e0 * id + sys.h_env).cast<cplx>();
    sys.h_total.bottomRightCorner(d, d) = (e1 * id + sys.h_env + sys.h_coupling).cast<cplx>();
    sys.sigma_plus = Matrix::Zero(n, n);
    sys.sigma_plus.bottomLeftCorner(d, d) = Matrix::Identity(d, d);
    sys.sigma_minus = sys.sigma_plus.adjoint();
    return sys;
}

OracleSystem build_system(const std::vector<BosonMode>& modes, std::size_t n_max, double e0,
                          double e1, std::size_t budget) {
    return build_system(modes, std::vector<std::size_t>(modes.size(), n_max), e0, e1, budget);
}

std::size_t select_n_max(const BosonMode& mode, double beta, double tol) {
    const double a2 = (mode.g / mode.omega) * (mode.g / mode.omega);
    if (std::isinf(beta)) {
        // Poisson(a2) tail beyond n
        double p = std::exp(-a2);
        double cdf = p;
        std::size_t n = 0;
        while (1.0 - cdf >= tol && n < 10000) {
            ++n;
            p *= a2 / static_cast<double>(n);
            cdf += p;
        }
        return std::max<std::size_t>(n, 1);
    }
    if (!(beta > 0.0))
        throw std::invalid_argument("select_n_max: beta must be > 0");
    // exp(-beta w n + a2) < tol
    const double n = (a2 - std::log(tol)) / (beta * mode.omega);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(n)) + 1);
}

Matrix gibbs_state(const OracleSystem& sys, double beta) {
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument("gibbs_state: beta must be finite and >= 0");
    const auto be = block_eigen(sys);
    const double shift = std::min(be.l0.minCoeff(), be.l1.minCoeff());
    const auto weights = [&](const VectorXd& l) {
        VectorXd w(l.size());
        for (Eigen::Index i = 0; i < l.size(); ++i)
            w(i) = std::exp(-beta * (l(i) - shift));
        return w;
    };
    const VectorXd w0 = weights(be.l0);
    const VectorXd w1 = weights(be.l1);
    const double z = w0.sum() + w1.sum();
    const auto d = static_cast<Eigen::Index>(sys.env_dim);
    Matrix rho = Matrix::Zero(sys.dims, sys.dims);
    rho.topLeftCorner(d, d) = (be.v0 * (w0 / z).asDiagonal() * be.v0.transpose()).cast<cplx>();
    rho.bottomRightCorner(d, d) = (be.v1 * (w1 / z).asDiagonal() * be.v1.transpose()).cast<cplx>();
    return rho;
}

Matrix thermal_environment(const OracleSystem& sys, double beta, std::size_t padding) {
    return environment_product(sys, padding, [&](const BosonMode& m, std::size_t levels) {
        return single_mode_thermal(levels, m.omega, beta);
    });
}

Matrix displaced_thermal_environment(const OracleSystem& sys, double beta, std::size_t padding) {
    return environment_product(sys, padding, [&](const BosonMode& m, std::size_t levels) {
        const Matrix g0 = single_mode_displacement(levels, m.g / m.omega);
        return Matrix(g0.adjoint() * single_mode_thermal(levels, m.omega, beta) * g0);
    });
}

Matrix gibbs_state_displaced(const OracleSystem& sys, double beta, std::size_t padding) {
    double lambda = 0.0;
    for (const auto& m : sys.modes)
        lambda += m.g * m.g / m.omega;
    const auto w = boltzmann_pair(sys.e0, sys.e1 - lambda, beta);
    const auto d = static_cast<Eigen::Index>(sys.env_dim);
    Matrix rho = Matrix::Zero(sys.dims, sys.dims);
    rho.topLeftCorner(d, d) = w.p0 * thermal_environment(sys, beta, padding);
    rho.bottomRightCorner(d, d) = w.p1 * displaced_thermal_environment(sys, beta, padding);
    return rho;
}

Matrix partial_trace_environment(const Matrix& rho, std::size_t env_dim) {
    const auto d = static_cast<Eigen::Index>(env_dim);
    if (rho.rows() != 2 * d)
        throw std::invalid_argument("partial trace: dimension mismatch");
    Matrix out(2, 2);
    for (Eigen::Index a = 0; a < 2; ++a)
        for (Eigen::Index b = 0; b < 2; ++b)
            out(a, b) = rho.block(a * d, b * d, d, d).trace();
    return out;
}

Matrix partial_trace_system(const Matrix& rho, std::size_t env_dim) {
    const auto d = static_cast<Eigen::Index>(env_dim);
    if (rho.rows() != 2 * d)
        throw std::invalid_argument("partial trace: dimension mismatch");
    return rho.topLeftCorner(d, d) + rho.bottomRightCorner(d, d);
}

Matrix tensor(const Matrix& rho_s, const Matrix& rho_e) { return kron<Matrix>(rho_s, rho_e); }

Matrix marginal_state(const Matrix& rho, std::size_t env_dim) {
    return tensor(partial_trace_environment(rho, env_dim), partial_trace_system(rho, env_dim));
}

namespace {

// Precomputed pieces of the block-eigenbasis evaluation of the first-order term.
struct FirstOrderKernel {
    VectorXd l0, l1;
    RealMatrix s;      // V1^T V0: sigma_+ between the two block eigenbases
    Matrix p;          // -S / (i W) away from resonance
    Matrix a1, a2;     // resonant entries: Q10 += t a1 + t^2 a2
    Matrix r01, r10;   // off-diagonal blocks of rho0 in the eigenbases
    Matrix m_const;    // S o (-(P R00 - R11 P))
    Matrix m_lin;      // S o (A1 R00 - R11 A1)
    Matrix m_quad;     // S o (A2 R00 - R11 A2)
    Matrix y0;         // (S^T P) o R00^T
    Matrix y1;         // (P S^T) o R11^T
};

FirstOrderKernel make_kernel(const OracleSystem& sys, const Matrix& rho0, double omega_p) {
    check_state(sys, rho0);
    const auto be = block_eigen(sys);
    const auto d = static_cast<Eigen::Index>(sys.env_dim);
    FirstOrderKernel k;
    k.l0 = be.l0;
    k.l1 = be.l1;
    k.s = be.v1.transpose() * be.v0;

    const Matrix v0 = be.v0.cast<cplx>();
    const Matrix v1 = be.v1.cast<cplx>();
    const Matrix r00 = v0.adjoint() * rho0.topLeftCorner(d, d) * v0;
    const Matrix r11 = v1.adjoint() * rho0.bottomRightCorner(d, d) * v1;
    k.r01 = v0.adjoint() * rho0.topRightCorner(d, d) * v1;
    k.r10 = v1.adjoint() * rho0.bottomLeftCorner(d, d) * v0;

    k.p = Matrix::Zero(d, d);
    k.a1 = Matrix::Zero(d, d);
    k.a2 = Matrix::Zero(d, d);
    for (Eigen::Index m = 0; m < d; ++m) {
        for (Eigen::Index n = 0; n < d; ++n) {
            const double w = k.l1(m) - k.l0(n) - omega_p;
            const double smn = k.s(m, n);
            if (std::abs(w) < 1e-9) {
                k.a1(m, n) = -smn;
                k.a2(m, n) = cplx{0.0, -0.5 * w} * smn;
            } else {
                k.p(m, n) = -smn / cplx{0.0, w};
            }
        }
    }
    const Matrix sc = k.s.cast<cplx>();
    k.m_const = sc.cwiseProduct(-(k.p * r00 - r11 * k.p));
    k.m_lin = sc.cwiseProduct(k.a1 * r00 - r11 * k.a1);
    k.m_quad = sc.cwiseProduct(k.a2 * r00 - r11 * k.a2);
    k.y0 = (sc.transpose() * k.p).cwiseProduct(r00.transpose());
    k.y1 = (k.p * sc.transpose()).cwiseProduct(r11.transpose());
    return k;
}

VectorXcd phases(const VectorXd& l, double t, double sign) {
    VectorXcd out(l.size());
    for (Eigen::Index i = 0; i < l.size(); ++i)
        out(i) = std::exp(cplx{0.0, sign * l(i) * t});
    return out;
}

} // namespace

numerics::ComplexSeries first_order_coherence(const OracleSystem& sys, const Matrix& rho0,
                                              double omega_p, std::span<const double> t) {
    const auto k = make_kernel(sys, rho0, omega_p);
    numerics::ComplexSeries out{std::vector<double>(t.begin(), t.end()),
                                std::vector<cplx>(t.size())};
    for (std::size_t j = 0; j < t.size(); ++j) {
        const double tj = t[j];
        const VectorXcd u = phases(k.l1, tj, -1.0); // e^{-i l1 t}
        const VectorXcd v = phases(k.l0, tj, +1.0); // e^{+i l0 t}
        const Matrix m = k.m_const + tj * k.m_lin + (tj * tj) * k.m_quad;
        const cplx term_ab = u.transpose() * m * v;
        const cplx term_c = (v.transpose() * k.y0 * v.conjugate())(0, 0) -
                            (u.conjugate().transpose() * k.y1 * u)(0, 0);
        const cplx drive = std::exp(cplx{0.0, -omega_p * tj});
        const cplx coherence = cplx{0.0, -1.0} * (term_ab + drive * term_c);
        // A = coherence / (i e^{-i omega_p t})
        out.values[j] = cplx{0.0, -1.0} * coherence * std::conj(drive);
    }
    return out;
}

std::vector<double> first_order_population_shift(const OracleSystem& sys, const Matrix& rho0,
                                                 double omega_p, std::span<const double> t) {
    const auto k = make_kernel(sys, rho0, omega_p);
    const auto d = static_cast<Eigen::Index>(sys.env_dim);
    std::vector<double> out(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
        const double tj = t[j];
        const VectorXcd e1 = phases(k.l1, tj, +1.0);
        const VectorXcd e0 = phases(k.l0, tj, -1.0);
        const cplx drive = std::exp(cplx{0.0, -omega_p * tj});
        Matrix q10(d, d);
        for (Eigen::Index m = 0; m < d; ++m)
            for (Eigen::Index n = 0; n < d; ++n)
                q10(m, n) = drive * e1(m) * k.p(m, n) * e0(n) - k.p(m, n) + tj * k.a1(m, n) +
                            tj * tj * k.a2(m, n);
        // Tr[Q10 R01 - R10 Q01], Q01 = Q10^+
        const cplx tr = q10.cwiseProduct(k.r01.transpose()).sum() -
                        k.r10.cwiseProduct(q10.conjugate()).sum();
        out[j] = (cplx{0.0, -1.0} * tr).real();
    }
    return out;
}

numerics::ComplexSeries first_order_coherence_dense(const OracleSystem& sys, const Matrix& rho0,
                                                    double omega_p, std::span<const double> t) {
    check_state(sys, rho0);
    Eigen::SelfAdjointEigenSolver<Matrix> es(sys.h_total);
    const Matrix& v = es.eigenvectors();
    const VectorXd& l = es.eigenvalues();
    const Matrix sp = v.adjoint() * sys.sigma_plus * v;
    const Matrix sm = v.adjoint() * sys.sigma_minus * v;
    const Matrix r = v.adjoint() * rho0 * v;
    const auto n = static_cast<Eigen::Index>(sys.dims);

    numerics::ComplexSeries out{std::vector<double>(t.begin(), t.end()),
                                std::vector<cplx>(t.size())};
    Matrix q(n, n);
    for (std::size_t j = 0; j < t.size(); ++j) {
        const double tj = t[j];
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b) {
                const double gap = l(a) - l(b);
                q(a, b) = -(sp(a, b) * phase_integral(gap - omega_p, tj) +
                            sm(a, b) * phase_integral(gap + omega_p, tj));
            }
        const Matrix c = q * r - r * q;
        const VectorXcd u = phases(l, tj, -1.0);
        const Matrix rho1 =
            v * (cplx{0.0, -1.0} * (u.asDiagonal() * c * u.conjugate().asDiagonal())) * v.adjoint();
        const cplx coherence = coherence_10(rho1, sys.env_dim);
        out.values[j] = cplx{0.0, -1.0} * coherence * std::exp(cplx{0.0, omega_p * tj});
    }
    return out;
}

numerics::ComplexSeries finite_field_coherence(const OracleSystem& sys, const Matrix& rho0,
                                               double omega_p, std::span<const double> t,
                                               double eps) {
    check_state(sys, rho0);
    const auto d = static_cast<Eigen::Index>(sys.env_dim);
    Matrix upper = Matrix::Zero(sys.dims, sys.dims);
    upper.bottomRightCorner(d, d) = Matrix::Identity(d, d);
    const Matrix drive = sys.sigma_plus + sys.sigma_minus;

    // coherence in the frame rotating at omega_p, where the Hamiltonian is static
    const auto coherences = [&](double field) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(sys.h_total - omega_p * upper - field * drive);
        const Matrix& v = es.eigenvectors();
        const Matrix r = v.adjoint() * rho0 * v;
        std::vector<cplx> c(t.size());
        for (std::size_t j = 0; j < t.size(); ++j) {
            const VectorXcd u = phases(es.eigenvalues(), t[j], -1.0);
            const Matrix rho = v * (u.asDiagonal() * r * u.conjugate().asDiagonal()) * v.adjoint();
            c[j] = coherence_10(rho, sys.env_dim);
        }
        return c;
    };

    const auto slope = [&](double field) {
        const auto plus = coherences(field);
        const auto minus = coherences(-field);
        std::vector<cplx> s(t.size());
        for (std::size_t j = 0; j < t.size(); ++j)
            s[j] = (plus[j] - minus[j]) / cplx{0.0, 2.0 * field};
        return s;
    };

    const auto coarse = slope(eps);
    const auto fine = slope(0.5 * eps);
    numerics::ComplexSeries out{std::vector<double>(t.begin(), t.end()),
                                std::vector<cplx>(t.size())};
    for (std::size_t j = 0; j < t.size(); ++j)
        out.values[j] = (4.0 * fine[j] - coarse[j]) / 3.0;
    return out;
}

} // namespace corrwitness::oracle
