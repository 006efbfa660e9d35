#include "doctest.h"

#include <cmath>
#include <numbers>

#include "corrwitness/correlations.hpp"
#include "test_support.hpp"

using namespace corrwitness;
using std::numbers::pi;

namespace {

constexpr double kInf = kInfiniteBeta;

// Gamma for a single mode, written out independently of the library.
cplx single_mode_gamma(double g, double w, double beta, double t) {
    const double n = std::isinf(beta) ? 0.0 : 1.0 / std::expm1(beta * w);
    return (g * g / (w * w)) * cplx{(1.0 + 2.0 * n) * (1.0 - std::cos(w * t)), std::sin(w * t)};
}

} // namespace

TEST_CASE("decoherence exponent: examples") {
    CHECK(decoherence_exponent(OhmicBath{1.0, 0.2}, 1.0, 0.0) == cplx{0.0});
    CHECK(decoherence_exponent(DiscreteBath{{{0.3, 1.0}}}, 2.0, 0.0) == cplx{0.0});

    const auto g = decoherence_exponent(OhmicBath{1.0, 0.2}, kInf, 5.0);
    CHECK(std::abs(g.real() - 0.5 * std::log(2.0)) < 1e-10);
    CHECK(std::abs(g.imag() - pi / 4.0) < 1e-14);

    const auto d = decoherence_exponent(DiscreteBath{{{0.3, 1.0}}}, kInf, pi);
    CHECK(std::abs(d - cplx{0.18, 0.0}) < 1e-15);
}

TEST_CASE("decoherence exponent: T = 0 closed form over the figure range") {
    for (double s : {0.05, 0.1, 1.0}) {
        double err = 0.0;
        for (double t = 0.0; t <= 100.0; t += 0.5) {
            const auto g = decoherence_exponent_quadrature(OhmicBath{s, 0.2}, kInf, t);
            const cplx ref{0.5 * s * std::log1p(0.04 * t * t), s * std::atan(0.2 * t)};
            err = std::max(err, std::abs(g - ref));
        }
        CHECK(err < 1e-8);
    }
}

TEST_CASE("decoherence exponent: discrete bath matches the explicit mode sum") {
    const DiscreteBath bath{{{0.25, 0.8}, {0.2, 1.3}, {0.1, 2.1}}};
    for (double beta : {kInf, 0.3, 1.0, 5.0}) {
        for (double t : {0.1, 1.7, 9.0, 42.0}) {
            cplx ref{0.0};
            for (const auto& m : bath.modes)
                ref += single_mode_gamma(m.g, m.omega, beta, t);
            CHECK(std::abs(decoherence_exponent(bath, beta, t) - ref) < 1e-14);
        }
    }
}

TEST_CASE("decoherence exponent: infinite temperature") {
    const auto g = decoherence_exponent(OhmicBath{0.1, 0.2}, 0.0, 3.0);
    CHECK(std::isinf(g.real()));
    CHECK(psi1(OhmicBath{0.1, 0.2}, 0.0, 3.0) == cplx{0.0});
    CHECK(psi1(OhmicBath{0.1, 0.2}, 0.0, 0.0) == cplx{1.0});
}

TEST_CASE("psi1: examples") {
    CHECK(psi1(OhmicBath{1.0, 0.2}, 1.0, 0.0) == cplx{1.0});
    for (double t : {0.0, 3.0, 77.0})
        CHECK(psi1(OhmicBath{0.0, 0.2}, 1.0, t) == cplx{1.0});
    // (1 + i wc t)^{-s} at T = 0 with wc t = 1
    CHECK(std::abs(psi1(OhmicBath{1.0, 0.2}, kInf, 5.0) - cplx{0.5, -0.5}) < 1e-10);
    for (double s : {0.05, 0.7}) {
        const cplx ref = std::pow(cplx{1.0, 0.2 * 13.0}, -s);
        CHECK(std::abs(psi1(OhmicBath{s, 0.2}, kInf, 13.0) - ref) < 1e-10);
    }
}

TEST_CASE("psi1: negative times conjugate") {
    const BathSpec baths[] = {OhmicBath{0.3, 0.2}, DiscreteBath{{{0.3, 1.0}}}};
    for (const auto& b : baths)
        for (double t : {0.4, 2.5, 30.0})
            CHECK(psi1(b, 1.0, -t) == std::conj(psi1(b, 1.0, t)));
}

TEST_CASE("psi1 modulus never exceeds one") {
    for (int i = 0; i < 60; ++i) {
        const double s = test_support::uniform(0.0, 2.0);
        const double wc = test_support::uniform(0.05, 1.0);
        const double beta = std::exp(test_support::uniform(-3.0, 3.0));
        const double t = test_support::uniform(0.0, 100.0);
        CHECK(std::abs(psi1(OhmicBath{s, wc}, beta, t)) <= 1.0);
        CHECK(decoherence_exponent(OhmicBath{s, wc}, beta, t).real() >= 0.0);
        const DiscreteBath d{{{test_support::uniform(0.0, 0.5), test_support::uniform(0.2, 2.0)}}};
        CHECK(std::abs(psi1(d, beta, t)) <= 1.0);
    }
}

TEST_CASE("psi2: examples") {
    const OhmicBath bath{1.0, 0.2};
    for (double t : {0.0, 1.0, 50.0})
        CHECK(psi2(bath, 1.0, t, t) == cplx{1.0});
    const cplx expect = cplx{0.0, 1.0} * psi1(bath, 1.0, 5.0);
    CHECK(std::abs(psi2(bath, 1.0, 5.0, 0.0) - expect) < 1e-14);
    CHECK(psi2(OhmicBath{0.0, 0.2}, 1.0, 9.0, 4.0) == cplx{1.0});
    CHECK_THROWS_AS(psi2(bath, 1.0, 1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(psi2(bath, 1.0, 1.0, -0.5), std::invalid_argument);
}

TEST_CASE("psi2: discrete phase factor from the mode sum") {
    const double g = 0.3, w = 1.1, beta = 0.8;
    const DiscreteBath bath{{{g, w}}};
    for (auto [t, tp] : {std::pair{2.0, 0.5}, {7.3, 7.0}, {20.0, 3.0}}) {
        const double phase = -2.0 * (g * g / (w * w)) * (std::sin(w * tp) - std::sin(w * t));
        const cplx ref = std::exp(-single_mode_gamma(g, w, beta, t - tp)) * std::polar(1.0, phase);
        CHECK(std::abs(psi2(bath, beta, t, tp) - ref) < 1e-14);
    }
}

TEST_CASE("psi2 has the modulus of psi1 at the lag") {
    for (int i = 0; i < 60; ++i) {
        const double s = test_support::uniform(0.0, 1.5);
        const double beta = std::exp(test_support::uniform(-2.0, 2.0));
        const double t = test_support::uniform(0.0, 100.0);
        const double tp = test_support::uniform(0.0, t);
        const OhmicBath bath{s, 0.2};
        CHECK(std::abs(std::abs(psi2(bath, beta, t, tp)) - std::abs(psi1(bath, beta, t - tp))) < 1e-10);
    }
}

TEST_CASE("imaginary exponent saturates monotonically at s pi / 2") {
    for (double s : {0.05, 0.1, 1.0}) {
        const OhmicBath bath{s, 0.2};
        double previous = 0.0;
        for (double t = 0.0; t <= 100.0; t += 0.25) {
            const double im = decoherence_exponent(bath, 1.0, t).imag();
            CHECK(im >= previous);
            previous = im;
        }
        // remaining gap is s atan(1 / (wc t)), about 0.05 s at t = 100
        CHECK(std::abs(previous - s * pi / 2.0 + s * std::atan(0.05)) < 1e-14);
        CHECK(std::abs(previous - s * pi / 2.0) < 0.05 * s);
        CHECK(std::abs(phase_integral(bath, 501.0) - s * pi / 2.0) < 0.01 * s);
        CHECK(phase_integral(bath, 100.0) == previous);
    }
}

TEST_CASE("single-mode exponent is periodic") {
    const double w = 1.3;
    const DiscreteBath bath{{{0.4, w}}};
    for (double beta : {kInf, 0.5})
        for (double t : {0.0, 0.7, 3.1})
            CHECK(std::abs(decoherence_exponent(bath, beta, t + 2.0 * pi / w) -
                           decoherence_exponent(bath, beta, t)) < 1e-13);
}

TEST_CASE("Bose series: examples") {
    CHECK(exponent_series_ohmic(1.0, 0.2, 0.3, 0.0, 10) == cplx{0.0});
    const auto cold = exponent_series_ohmic(1.0, 0.2, 1e3, 5.0, 50);
    CHECK(std::abs(cold - cplx{0.5 * std::log(2.0), pi / 4.0}) < 1e-4);
    const auto series = exponent_series_ohmic(1.0, 0.2, 0.1, 5.0, 1000);
    const auto quad = decoherence_exponent(OhmicBath{1.0, 0.2}, 0.1, 5.0);
    CHECK(std::abs(series - quad) < 1e-7);
}

TEST_CASE("Bose series: tail guard") {
    // one explicit term at low temperature leaves a large remainder
    try {
        (void)exponent_series_ohmic(1.0, 0.2, 5.0, 100.0, 1, 1e-10);
        FAIL("expected TailTooLarge");
    } catch (const TailTooLarge& e) {
        CHECK(e.tail_error > 1e-14);
    }
    CHECK_THROWS_AS(exponent_series_ohmic(1.0, 0.2, 1.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(exponent_series_ohmic(1.0, 0.2, kInf, 1.0, 5), std::invalid_argument);
}

TEST_CASE("Bose series agrees with quadrature over the figure parameters") {
    for (double beta : {0.1, 1.0, 5.0}) {
        for (double s : {0.05, 0.1, 1.0}) {
            double worst = 0.0;
            for (double t = 0.0; t <= 100.0; t += 2.5) {
                const auto series = exponent_series_ohmic(s, 0.2, beta, t, 1000);
                const auto quad = decoherence_exponent(OhmicBath{s, 0.2}, beta, t);
                worst = std::max(worst, std::abs(series - quad) / std::max(std::abs(series), 1.0));
            }
            CHECK(worst < 1e-7);
        }
    }
}

TEST_CASE("Bose series does not depend on the split point") {
    for (double t : {1.0, 20.0, 100.0}) {
        const auto a = exponent_series_ohmic(0.1, 0.2, 1.0, t, 200);
        const auto b = exponent_series_ohmic(0.1, 0.2, 1.0, t, 2000);
        CHECK(std::abs(a - b) < 1e-10 * std::abs(b));
    }
}

TEST_CASE("correlation table reproduces pointwise evaluation") {
    const OhmicBath bath{0.1, 0.2};
    std::vector<double> t(41);
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = 0.25 * static_cast<double>(i);
    const auto table = build_correlation_table(bath, 1.0, t);
    CHECK(table.psi1[0] == cplx{1.0});
    for (std::size_t j = 0; j < t.size(); j += 7) {
        CHECK(std::abs(table.psi1[j] - psi1(bath, 1.0, t[j])) < 1e-15);
        for (std::size_t i = 0; i <= j; i += 3)
            CHECK(std::abs(table.psi2(j, i) - psi2(bath, 1.0, t[j], t[i])) < 1e-13);
    }

    std::vector<double> shifted{0.5, 1.0, 1.5};
    CHECK_THROWS_AS(build_correlation_table(bath, 1.0, shifted), std::invalid_argument);
    std::vector<double> uneven{0.0, 1.0, 3.0};
    CHECK_THROWS_AS(build_correlation_table(bath, 1.0, uneven), std::invalid_argument);
}
