// test_support.hpp: Shared helpers for the unit tests

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "corrwitness/model.hpp"
#include "corrwitness/numerics.hpp"

namespace test_support {

using cplx = std::complex<double>;

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const std::vector<cplx>& a) {
    double m = 0.0;
    for (const auto& x : a)
        m = std::max(m, std::abs(x));
    return m;
}

// Reference parameters: E0 = 0, E1 = 1, omega_c = 0.2, omega_p = 1.
inline corrwitness::ModelConfig figure_config(double kbt, double s, double t_max,
                                              std::size_t n_steps) {
    corrwitness::ModelConfig c;
    c.e0 = 0.0;
    c.e1 = 1.0;
    c.beta = corrwitness::beta_from_temperature(kbt);
    c.bath = corrwitness::OhmicBath{s, 0.2};
    c.omega_p = 1.0;
    c.t_max = t_max;
    c.n_steps = n_steps;
    return c;
}

// Plain composite trapezoid on a fine uniform grid: independent of the
// library's interpolating rules.
template <typename F>
cplx trapezoid(F&& f, double a, double b, std::size_t n) {
    const double h = (b - a) / static_cast<double>(n);
    cplx sum = 0.5 * (f(a) + f(b));
    for (std::size_t i = 1; i < n; ++i)
        sum += f(a + h * static_cast<double>(i));
    return sum * h;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(20240611u);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

} // namespace test_support
