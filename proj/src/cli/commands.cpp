// commands.cpp: run, sweep and verify drivers

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "corrwitness/cli.hpp"
#include "corrwitness/correlations.hpp"
#include "corrwitness/oracle.hpp"

namespace corrwitness::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Responses {
    ComplexSeries corr;
    ComplexSeries marg;
};

Responses respond(const ModelConfig& m, const numerics::QuadratureSettings& q, Fault fault) {
    const auto grid = time_grid(m);
    auto table = build_correlation_table(m.bath, m.beta, grid, q);
    if (fault == Fault::psi2_phase_sign)
        for (auto& phi : table.phase)
            phi = -phi;
    return {a_corr(m, table), a_marg(m, table)};
}

std::string point_label(double temperature, double s) {
    return "T=" + format_number(temperature) + "_s=" + format_number(s);
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_point_plots(const std::filesystem::path& dir, const PointResult& p) {
    const auto dc = dipole_signal(p.corr, p.model.omega_p);
    const auto dm = dipole_signal(p.marg, p.model.omega_p);
    const std::string tag = " (k_BT = " + format_number(p.temperature) + ", s = " + format_number(p.s) + ")";
    write_file(dir / "intensity.svg",
               svg_line_chart("Dipole intensity" + tag, "t", "|mu(t)|^2",
                              {{"correlated", dc.t, dc.intensity}, {"marginal", dm.t, dm.intensity}}));
    write_file(dir / "amplitude.svg",
               svg_line_chart("Dipole amplitude" + tag, "t", "|A(t)|",
                              {{"correlated", dc.t, dc.amplitude}, {"marginal", dm.t, dm.amplitude}}));
    write_file(dir / "phase.svg", svg_line_chart("Dipole phase" + tag, "t", "phi(t)",
                                                 {{"correlated", dc.t, dc.phase}, {"marginal", dm.t, dm.phase}}));
    write_file(dir / "trace_distance.svg",
               svg_line_chart("Trace distance" + tag, "t", "D(t)",
                              {{"s = " + format_number(p.s), p.distance.t, p.distance.trace_distance}}));
}

std::string distance_overlay(const std::vector<const PointResult*>& points, double temperature) {
    std::vector<PlotSeries> series;
    for (const auto* p : points)
        series.push_back({"s = " + format_number(p->s), p->distance.t, p->distance.trace_distance});
    return svg_line_chart("Trace distance (k_BT = " + format_number(temperature) + ")", "t", "D(t)", series);
}

void write_point_files(const std::filesystem::path& dir, const PointResult& p, bool plots) {
    std::filesystem::create_directories(dir);
    write_dipole_csv(dir / "dipole.csv", p);
    write_distance_csv(dir / "distance.csv", {p});
    if (plots)
        write_point_plots(dir, p);
}

json manifest(const RunConfig& config, const std::string& command, const std::filesystem::path& out,
              const RunSummary& summary) {
    json j;
    j["manifest_version"] = 1;
    j["tool"] = "corrwitness";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["scenario"] = config.scenario;
    j["config"] = json::parse(config_to_json(config));
    j["sweep"] = {{"temperatures", config.temperatures()}, {"couplings", config.couplings()}};
    j["grid"] = {{"t_min", 0.0},
                 {"t_max", config.model.t_max},
                 {"n_steps", config.model.n_steps},
                 {"dt", config.model.t_max / static_cast<double>(config.model.n_steps - 1)}};
    j["output_dir"] = out.string();
    j["quadrature"] = j["config"]["quadrature"];
    json points = json::array();
    for (const auto& p : summary.points)
        points.push_back({{"temperature", p.temperature}, {"s", p.s}, {"seconds", p.seconds}});
    j["timings"] = {{"total_seconds", summary.seconds}, {"points", points}};
    return j;
}

} // namespace

PointResult compute_point(const RunConfig& config, double temperature, double s, Fault fault) {
    const auto start = Clock::now();
    PointResult p;
    p.temperature = temperature;
    p.s = s;
    p.model = point_model(config, temperature, s);
    p.model.validate();
    auto r = respond(p.model, config.quadrature, fault);
    p.corr = std::move(r.corr);
    p.marg = std::move(r.marg);
    p.distance = distance_series(p.model, p.corr, p.marg);
    p.peak = find_peak(p.distance.t, p.distance.trace_distance);
    p.stationary_amp_corr = std::abs(p.corr.values.back());
    p.stationary_amp_marg = std::abs(p.marg.values.back());
    p.seconds = seconds_since(start);
    return p;
}

RunSummary run_scenario(const RunConfig& config, const std::filesystem::path& out) {
    config.validate();
    if (config.temperatures().size() != 1)
        throw ConfigError("run takes a single temperature; use sweep for several");
    const auto start = Clock::now();
    const double temperature = config.temperatures().front();
    RunSummary summary;
    for (double s : config.couplings())
        summary.points.push_back(compute_point(config, temperature, s));

    std::filesystem::create_directories(out);
    if (summary.points.size() == 1) {
        write_dipole_csv(out / "dipole.csv", summary.points.front());
    } else {
        for (const auto& p : summary.points)
            write_dipole_csv(out / ("dipole_s=" + format_number(p.s) + ".csv"), p);
    }
    write_distance_csv(out / "distance.csv", summary.points);
    if (config.plots) {
        if (summary.points.size() == 1) {
            write_point_plots(out, summary.points.front());
        } else {
            std::vector<const PointResult*> ptrs;
            for (const auto& p : summary.points)
                ptrs.push_back(&p);
            write_file(out / "trace_distance.svg", distance_overlay(ptrs, temperature));
        }
    }
    summary.seconds = seconds_since(start);
    write_json(out / "manifest.json", manifest(config, "run", out, summary));
    return summary;
}

RunSummary run_sweep(const RunConfig& config, const std::filesystem::path& out, std::size_t jobs) {
    config.validate();
    const auto start = Clock::now();
    std::vector<std::pair<double, double>> grid;
    for (double t : config.temperatures())
        for (double s : config.couplings())
            grid.emplace_back(t, s);

    std::filesystem::create_directories(out);
    RunSummary summary;
    summary.points.resize(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                auto p = compute_point(config, grid[i].first, grid[i].second);
                write_point_files(out / point_label(p.temperature, p.s), p, config.plots);
                summary.points[i] = std::move(p);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    jobs = std::max<std::size_t>(1, std::min(jobs, grid.size()));
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < jobs; ++k)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    std::ofstream csv(out / "summary.csv", std::ios::binary);
    csv << "T,s,peak_trace_distance,peak_time,stationary_amp_corr,stationary_amp_marg\n";
    for (const auto& p : summary.points)
        csv << format_number(p.temperature) << ',' << format_number(p.s) << ',' << format_number(p.peak.value)
            << ',' << format_number(p.peak.time) << ',' << format_number(p.stationary_amp_corr) << ','
            << format_number(p.stationary_amp_marg) << '\n';
    csv.close();

    if (config.plots) {
        for (double t : config.temperatures()) {
            std::vector<const PointResult*> ptrs;
            for (const auto& p : summary.points)
                if (p.temperature == t)
                    ptrs.push_back(&p);
            write_file(out / ("trace_distance_T=" + format_number(t) + ".svg"), distance_overlay(ptrs, t));
        }
    }
    summary.seconds = seconds_since(start);
    write_json(out / "manifest.json", manifest(config, "sweep", out, summary));
    return summary;
}

namespace {

double max_relative(const std::vector<cplx>& got, const std::vector<cplx>& ref) {
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        diff = std::max(diff, std::abs(got[i] - ref[i]));
        scale = std::max(scale, std::abs(ref[i]));
    }
    return diff / scale;
}

template <typename F>
VerifyCheck timed_check(const std::string& name, double threshold, F&& body) {
    const auto start = Clock::now();
    VerifyCheck c;
    c.name = name;
    c.threshold = threshold;
    try {
        c.achieved = body(c.detail);
        c.passed = std::isfinite(c.achieved) && c.achieved < threshold;
    } catch (const std::exception& e) {
        c.achieved = std::numeric_limits<double>::infinity();
        c.passed = false;
        c.detail = std::string("exception: ") + e.what();
    }
    c.seconds = seconds_since(start);
    return c;
}

void oracle_checks(std::vector<VerifyCheck>& out, const std::string& tag, const std::vector<BosonMode>& modes,
                   double beta, Fault fault) {
    ModelConfig m;
    m.e0 = 0.0;
    m.e1 = 1.0;
    m.beta = beta;
    m.bath = DiscreteBath{modes};
    m.omega_p = 1.0;
    m.t_max = 10.0;
    m.n_steps = 401;

    std::vector<std::size_t> n_max;
    for (const auto& mode : modes)
        n_max.push_back(oracle::select_n_max(mode, beta, 1e-6));
    std::string nm;
    for (auto n : n_max)
        nm += (nm.empty() ? "" : ",") + std::to_string(n);

    Responses analytic;
    numerics::ComplexSeries oc, om;
    const auto start = Clock::now();
    analytic = respond(m, {}, fault);
    const auto sys = oracle::build_system(modes, n_max, m.e0, m.e1);
    const auto rho = oracle::gibbs_state(sys, beta);
    oc = oracle::first_order_coherence(sys, rho, m.omega_p, analytic.corr.t);
    om = oracle::first_order_coherence(sys, oracle::marginal_state(rho, sys.env_dim), m.omega_p,
                                       analytic.corr.t);
    const double shared = seconds_since(start);

    auto corr = timed_check("oracle_" + tag + "_correlated", 1e-3, [&](std::string& d) {
        d = "n_max=" + nm + ", dims=" + std::to_string(sys.dims);
        return max_relative(analytic.corr.values, oc.values);
    });
    auto marg = timed_check("oracle_" + tag + "_marginal", 1e-3, [&](std::string& d) {
        d = "n_max=" + nm + ", dims=" + std::to_string(sys.dims);
        return max_relative(analytic.marg.values, om.values);
    });
    corr.seconds += shared;
    out.push_back(corr);
    out.push_back(marg);
}

} // namespace

std::vector<VerifyCheck> run_verify(const VerifyOptions& options) {
    std::vector<VerifyCheck> checks;
    const double step = options.quick ? 1.0 : 0.25;

    checks.push_back(timed_check("closed_form_zero_temperature", 1e-8, [&](std::string& d) {
        d = "max |Gamma_quad - closed form| over t in [0, 100], s in {0.05, 0.1, 1}";
        double err = 0.0;
        for (double s : {0.05, 0.1, 1.0})
            for (double t = 0.0; t <= 100.0; t += step) {
                const auto g = decoherence_exponent_quadrature(OhmicBath{s, 0.2}, kInfiniteBeta, t);
                err = std::max(err, std::abs(g.real() - 0.5 * s * std::log1p(0.04 * t * t)));
                err = std::max(err, std::abs(g.imag() - s * std::atan(0.2 * t)));
            }
        return err;
    }));

    checks.push_back(timed_check("series_vs_quadrature", 1e-7, [&](std::string& d) {
        d = "max relative |Gamma_quad - Gamma_series| for beta in {0.1, 1, 5}";
        double err = 0.0;
        for (double beta : {0.1, 1.0, 5.0})
            for (double s : {0.05, 0.1, 1.0})
                for (double t = step; t <= 100.0; t += 4.0 * step) {
                    const auto q = decoherence_exponent(OhmicBath{s, 0.2}, beta, t);
                    const auto r = exponent_series_ohmic(s, 0.2, beta, t, 1000);
                    err = std::max(err, std::abs(q - r) / std::abs(r));
                }
        return err;
    }));

    checks.push_back(timed_check("zero_coupling_degeneracy", 1e-12, [&](std::string& d) {
        d = "s = 0: max of |Psi1 - 1|, |Psi2 - 1|, |A_corr - A_marg|, D";
        ModelConfig m;
        m.beta = 1.0;
        m.bath = OhmicBath{0.0, 0.2};
        m.omega_p = 1.0;
        m.t_max = 20.0;
        m.n_steps = 401;
        const auto table = build_correlation_table(m.bath, m.beta, time_grid(m));
        double err = 0.0;
        for (std::size_t j = 0; j < table.t.size(); ++j) {
            err = std::max(err, std::abs(table.psi1[j] - 1.0));
            err = std::max(err, std::abs(table.psi2(j, j / 2) - 1.0));
        }
        const auto r = respond(m, {}, options.fault);
        const auto dist = distance_series(m, r.corr, r.marg);
        for (std::size_t i = 0; i < r.corr.size(); ++i) {
            err = std::max(err, std::abs(r.corr.values[i] - r.marg.values[i]));
            err = std::max(err, dist.trace_distance[i]);
        }
        return err;
    }));

    oracle_checks(checks, "k1", {{0.3, 1.0}}, 1.0, options.fault);
    if (!options.quick)
        oracle_checks(checks, "k2", {{0.25, 0.8}, {0.2, 1.3}}, 1.0, options.fault);
    return checks;
}

void write_verify_report(const std::filesystem::path& path, const std::vector<VerifyCheck>& checks,
                         const VerifyOptions& options) {
    json j;
    j["tool"] = "corrwitness";
    j["version"] = kToolVersion;
    j["quick"] = options.quick;
    j["fault"] = options.fault == Fault::psi2_phase_sign ? "psi2-phase-sign" : "none";
    bool all = true;
    json list = json::array();
    for (const auto& c : checks) {
        all = all && c.passed;
        list.push_back({{"name", c.name},
                        {"passed", c.passed},
                        {"achieved_error", std::isfinite(c.achieved) ? json(c.achieved) : json(nullptr)},
                        {"threshold", c.threshold},
                        {"seconds", c.seconds},
                        {"detail", c.detail}});
    }
    j["passed"] = all;
    j["checks"] = list;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    write_json(path, j);
}

} // namespace corrwitness::cli
