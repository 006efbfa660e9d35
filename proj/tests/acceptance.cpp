// acceptance.cpp: one PASS/FAIL line per acceptance criterion, exit status 1 on any failure

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "corrwitness/cli.hpp"
#include "corrwitness/correlations.hpp"
#include "corrwitness/distance.hpp"
#include "corrwitness/dynamics.hpp"
#include "corrwitness/oracle.hpp"

using namespace corrwitness;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool passed{false};
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit; // seconds, 0 = none
    std::function<Outcome()> body;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

ModelConfig reference_model(double kbt, double s, double t_max, std::size_t n_steps) {
    ModelConfig m;
    m.e0 = 0.0;
    m.e1 = 1.0;
    m.omega_p = 1.0;
    m.beta = beta_from_temperature(kbt);
    m.bath = OhmicBath{s, 0.2};
    m.t_max = t_max;
    m.n_steps = n_steps;
    return m;
}

double max_relative(const std::vector<cplx>& got, const std::vector<cplx>& ref) {
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        diff = std::max(diff, std::abs(got[i] - ref[i]));
        scale = std::max(scale, std::abs(ref[i]));
    }
    return diff / scale;
}

Outcome closed_form() {
    double err = 0.0;
    for (double s : {0.05, 0.1, 1.0})
        for (int j = 0; j <= 1000; ++j) {
            const double t = 0.1 * j;
            const auto g = decoherence_exponent_quadrature(OhmicBath{s, 0.2}, kInfiniteBeta, t);
            err = std::max(err, std::abs(g.real() - 0.5 * s * std::log1p(0.04 * t * t)));
            err = std::max(err, std::abs(g.imag() - s * std::atan(0.2 * t)));
        }
    return {err < 1e-8, "max abs error " + fmt("%.2e", err) + " (limit 1e-8), 3003 points"};
}

Outcome series_vs_quadrature() {
    // t = 0 is excluded: Gamma(0) = 0 exactly, so a relative error is undefined there
    double err = 0.0;
    for (double beta : {0.1, 1.0, 5.0})
        for (double s : {0.05, 0.1, 1.0})
            for (int j = 1; j <= 400; ++j) {
                const double t = 0.25 * j;
                const auto q = decoherence_exponent(OhmicBath{s, 0.2}, beta, t);
                const auto r = exponent_series_ohmic(s, 0.2, beta, t, 1000);
                err = std::max(err, std::abs(q - r) / std::abs(r));
            }
    return {err < 1e-7, "max relative error " + fmt("%.2e", err) + " (limit 1e-7)"};
}

Outcome degeneracy() {
    std::ostringstream d;
    bool ok = true;

    // s = 0
    double e0 = 0.0;
    for (double kbt : {10.0, 1.0, 0.2}) {
        const auto m = reference_model(kbt, 0.0, 40.0, 801);
        const auto r = compute_response(m);
        for (std::size_t j = 0; j < r.table.t.size(); ++j) {
            e0 = std::max(e0, std::abs(r.table.psi1[j] - 1.0));
            for (std::size_t i = 0; i <= j; i += 7)
                e0 = std::max(e0, std::abs(r.table.psi2(j, i) - 1.0));
        }
        const auto dist = distance_series(m, r.corr, r.marg);
        for (std::size_t i = 0; i < r.corr.size(); ++i) {
            e0 = std::max(e0, std::abs(r.corr.values[i] - r.marg.values[i]));
            e0 = std::max(e0, dist.trace_distance[i]);
        }
    }
    ok = ok && e0 < 1e-12;
    d << "s=0 " << fmt("%.1e", e0);

    // beta = 0 at zero detuning
    double eb = 0.0;
    for (double s : {0.05, 1.0}) {
        auto m = reference_model(1.0, s, 40.0, 801);
        m.beta = 0.0;
        m.omega_p = renormalized_upper_energy(m) - m.e0;
        const auto r = compute_response(m);
        for (const auto& a : r.corr.values)
            eb = std::max(eb, std::abs(a));
    }
    ok = ok && eb < 1e-12;
    d << ", beta=0 |A_corr| " << fmt("%.1e", eb);

    // Psi2(t, t) = 1 and |Psi2| = |Psi1|
    double ed = 0.0, em = 0.0;
    for (double kbt : {10.0, 1.0, 0.2, 0.0})
        for (double s : {0.05, 0.1, 1.0}) {
            const BathSpec bath = OhmicBath{s, 0.2};
            const double beta = beta_from_temperature(kbt);
            for (double t = 0.0; t <= 60.0; t += 3.0) {
                ed = std::max(ed, std::abs(psi2(bath, beta, t, t) - 1.0));
                for (double tp = 0.0; tp <= t; tp += 2.5)
                    em = std::max(em, std::abs(std::abs(psi2(bath, beta, t, tp)) -
                                               std::abs(psi1(bath, beta, t - tp))));
            }
        }
    ok = ok && ed < 1e-10 && em < 1e-10;
    d << ", |Psi2(t,t)-1| " << fmt("%.1e", ed) << ", ||Psi2|-|Psi1|| " << fmt("%.1e", em);
    return {ok, d.str()};
}

Outcome oracle_equivalence() {
    struct Case {
        const char* label;
        std::vector<BosonMode> modes;
        double beta;
    };
    const std::vector<Case> cases = {
        {"K=1 beta=1", {{0.3, 1.0}}, 1.0},
        {"K=1 beta=0.2", {{0.2, 0.9}}, 0.2},
        {"K=2 beta=1", {{0.25, 0.8}, {0.2, 1.3}}, 1.0},
    };
    std::ostringstream d;
    bool ok = true;
    for (const auto& c : cases) {
        ModelConfig m;
        m.e0 = 0.0;
        m.e1 = 1.0;
        m.omega_p = 1.0;
        m.beta = c.beta;
        m.bath = DiscreteBath{c.modes};
        m.t_max = 10.0;
        m.n_steps = 401;
        const auto r = compute_response(m);

        std::vector<std::size_t> n_max;
        for (const auto& mode : c.modes)
            n_max.push_back(oracle::select_n_max(mode, c.beta, 1e-6));
        const auto sys = oracle::build_system(c.modes, n_max, m.e0, m.e1);
        const auto rho = oracle::gibbs_state(sys, c.beta);
        const auto oc = oracle::first_order_coherence(sys, rho, m.omega_p, r.corr.t);
        const auto om = oracle::first_order_coherence(sys, oracle::marginal_state(rho, sys.env_dim),
                                                      m.omega_p, r.corr.t);
        const double ec = max_relative(r.corr.values, oc.values);
        const double em = max_relative(r.marg.values, om.values);
        ok = ok && ec < 1e-3 && em < 1e-3;
        d << (d.tellp() ? "; " : "") << c.label << " dims=" << sys.dims << " corr " << fmt("%.1e", ec)
          << " marg " << fmt("%.1e", em);
    }
    return {ok, d.str()};
}

// The nine (T, s) points of the coupling sweep, computed once for criteria 5 and 6.
std::map<std::pair<double, double>, cli::PointResult>& sweep_points() {
    static std::map<std::pair<double, double>, cli::PointResult> points;
    if (points.empty()) {
        const auto c = cli::preset("fig4");
        for (double kbt : c.temperatures())
            for (double s : c.couplings())
                points[{kbt, s}] = cli::compute_point(c, kbt, s);
    }
    return points;
}

Outcome witness() {
    std::ostringstream d;
    bool ok = true;
    double worst_d0 = 0.0, min_peak = 1e300, min_peak_t = 1e300;
    for (const auto& [key, p] : sweep_points()) {
        worst_d0 = std::max(worst_d0, p.distance.trace_distance.front());
        min_peak = std::min(min_peak, p.peak.value);
        min_peak_t = std::min(min_peak_t, p.peak.time);
        ok = ok && p.distance.trace_distance.front() == 0.0 && p.peak.value > 0.0 && p.peak.time > 0.0;
    }
    d << "D(0) max " << fmt("%.1e", worst_d0) << ", smallest peak " << fmt("%.3g", min_peak)
      << ", earliest peak time " << fmt("%.3g", min_peak_t);
    double worst_ratio = 0.0;
    for (double s : {1.0, 0.1, 0.05}) {
        const auto& p = sweep_points().at({10.0, s});
        worst_ratio = std::max(worst_ratio, p.distance.trace_distance.back() / p.peak.value);
    }
    ok = ok && worst_ratio < 0.2;
    d << ", k_BT=10 max D(60)/peak " << fmt("%.3f", worst_ratio);
    return {ok, d.str()};
}

Outcome orderings() {
    std::ostringstream d;
    bool ok = true;
    const auto& pts = sweep_points();
    for (double kbt : {10.0, 1.0, 0.2}) {
        const double a = pts.at({kbt, 0.05}).peak.value, b = pts.at({kbt, 0.1}).peak.value,
                     c = pts.at({kbt, 1.0}).peak.value;
        ok = ok && a < b && b < c;
        d << "k_BT=" << kbt << ": " << fmt("%.3g", a) << " < " << fmt("%.3g", b) << " < " << fmt("%.3g", c)
          << "; ";
    }
    const double hi = pts.at({10.0, 1.0}).peak.value, mid = pts.at({1.0, 1.0}).peak.value,
                 lo = pts.at({0.2, 1.0}).peak.value;
    ok = ok && mid >= hi && mid >= lo;
    d << "s=1 peaks " << fmt("%.3g", hi) << " / " << fmt("%.3g", mid) << " / " << fmt("%.3g", lo)
      << " at k_BT=10/1/0.2";
    return {ok, d.str()};
}

Outcome long_time() {
    std::ostringstream d;
    bool ok = true;
    std::vector<double> settle;
    for (const char* name : {"fig1", "fig2", "fig3"}) {
        const auto c = cli::preset(name);
        const auto p = cli::compute_point(c, c.temperature, 1.0);
        const auto dc = dipole_signal(p.corr, p.model.omega_p);
        const auto dm = dipole_signal(p.marg, p.model.omega_p);
        settle.push_back(settling_time(dc.t, dc.amplitude, 0.05));
        if (c.temperature == 10.0) {
            const double amp = std::abs(dm.amplitude.back() - dc.amplitude.back()) / dc.amplitude.back();
            const double phase = std::abs(dm.phase.back() - dc.phase.back());
            ok = ok && amp < 0.05 && phase < 0.05;
            d << "k_BT=10 at t=100: rel amp diff " << fmt("%.2e", amp) << ", phase diff " << fmt("%.2e", phase)
              << " rad; ";
        }
    }
    ok = ok && settle[0] < settle[1] && settle[1] < settle[2];
    d << "settling times (5% band on |A_corr|) " << fmt("%.3g", settle[0]) << " < " << fmt("%.3g", settle[1])
      << " < " << fmt("%.3g", settle[2]);
    return {ok, d.str()};
}

std::map<std::string, std::string> csv_files(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (!e.is_regular_file() || e.path().extension() != ".csv")
            continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        out[fs::relative(e.path(), root).string()] = ss.str();
    }
    return out;
}

double reproduce_all(const fs::path& root, std::size_t jobs) {
    const auto start = Clock::now();
    for (const char* name : {"fig1", "fig2", "fig3", "fig4a", "fig4b", "fig4c"})
        cli::run_scenario(cli::preset(name), root / name);
    cli::run_sweep(cli::preset("fig4"), root / "fig4", jobs);
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Outcome reproduction() {
    const auto base = fs::temp_directory_path() / ("corrwitness_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(base);
    const std::size_t jobs = std::max(4u, std::thread::hardware_concurrency());
    const double t1 = reproduce_all(base / "a", jobs);
    const double t2 = reproduce_all(base / "b", 1);
    const auto a = csv_files(base / "a");
    const auto b = csv_files(base / "b");
    const bool same = !a.empty() && a == b;
    fs::remove_all(base);
    std::ostringstream d;
    d << "full run " << fmt("%.2f", t1) << " s with " << jobs << " jobs, rerun " << fmt("%.2f", t2)
      << " s with 1 job; " << a.size() << " CSV files " << (same ? "byte-identical" : "DIFFER");
    return {same && t1 < 180.0, d.str()};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "closed-form quadrature", 5.0, closed_form},
        {2, "series vs quadrature", 10.0, series_vs_quadrature},
        {3, "degeneracy suite", 0.0, degeneracy},
        {4, "oracle equivalence", 120.0, oracle_equivalence},
        {5, "contractivity-breakdown witness", 0.0, witness},
        {6, "peak orderings", 0.0, orderings},
        {7, "long-time convergence", 0.0, long_time},
        {8, "full reproduction", 180.0, reproduction},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (c.time_limit > 0.0 && secs >= c.time_limit) {
            o.passed = false;
            o.detail += "; over time limit " + fmt("%.0f", c.time_limit) + " s";
        }
        failed += !o.passed;
        std::printf("%s criterion %d (%s) [%.2f s]: %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
