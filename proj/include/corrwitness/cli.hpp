// cli.hpp: Configuration, presets and the run / sweep / verify drivers behind the command-line tool

#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "corrwitness/distance.hpp"
#include "corrwitness/dynamics.hpp"
#include "corrwitness/model.hpp"
#include "corrwitness/numerics.hpp"

namespace corrwitness::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitVerify = 3;

// Raised when a series about to be written contains NaN or Inf.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepAxes {
    std::vector<double> temperatures; // k_B T in units of hbar omega_0
    std::vector<double> couplings;    // Ohmic s
    bool empty() const { return temperatures.empty() && couplings.empty(); }
};

struct RunConfig {
    std::string scenario{"custom"};
    ModelConfig model;
    double temperature{1.0}; // k_B T; model.beta is derived from it
    SweepAxes sweep;
    numerics::QuadratureSettings quadrature;
    bool plots{true};

    // Temperatures and couplings actually visited: the sweep axes, or the single
    // configured value where an axis is absent.
    std::vector<double> temperatures() const;
    std::vector<double> couplings() const;
    void validate() const;
};

// JSON text <-> RunConfig. Unknown keys, wrong types and invalid values raise
// ConfigError. A manifest written by a previous run is accepted as well; its
// embedded configuration is used.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const RunConfig& config, int indent = 2);

std::vector<std::string> preset_names();
RunConfig preset(const std::string& name);

// Copy of the model with temperature and (Ohmic) coupling replaced.
ModelConfig point_model(const RunConfig& config, double temperature, double s);

enum class Fault { none, psi2_phase_sign };
Fault parse_fault(const std::string& name);

struct PointResult {
    double temperature{0.0};
    double s{0.0};
    ModelConfig model;
    ComplexSeries corr;
    ComplexSeries marg;
    DistanceSeries distance;
    Peak peak;
    double stationary_amp_corr{0.0};
    double stationary_amp_marg{0.0};
    double seconds{0.0};
};

// Full pipeline at one (T, s) point.
PointResult compute_point(const RunConfig& config, double temperature, double s,
                          Fault fault = Fault::none);

// Output writers; all numbers use shortest round-trip formatting and any
// non-finite value raises NumericalFailure before the file is touched.
std::string format_number(double x);
void write_dipole_csv(const std::filesystem::path& path, const PointResult& p);
void write_distance_csv(const std::filesystem::path& path, const std::vector<PointResult>& points);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};
// Minimal SVG 1.1 line chart.
std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<PlotSeries>& series);

struct RunSummary {
    std::vector<PointResult> points;
    double seconds{0.0};
};

// `run`: one temperature, one or more couplings. Writes dipole.csv (or one
// dipole_s=<s>.csv per coupling), distance.csv, manifest.json and plots.
RunSummary run_scenario(const RunConfig& config, const std::filesystem::path& out);

// `sweep`: every (T, s) pair into its own subdirectory plus summary.csv and
// manifest.json. Points are distributed over `jobs` threads; results do not
// depend on the schedule.
RunSummary run_sweep(const RunConfig& config, const std::filesystem::path& out,
                     std::size_t jobs = 1);

struct VerifyCheck {
    std::string name;
    bool passed{false};
    double achieved{0.0};
    double threshold{0.0};
    double seconds{0.0};
    std::string detail;
};

struct VerifyOptions {
    bool quick{false};
    Fault fault{Fault::none};
};

// Oracle equivalence and quadrature cross-checks.
std::vector<VerifyCheck> run_verify(const VerifyOptions& options);
void write_verify_report(const std::filesystem::path& path, const std::vector<VerifyCheck>& checks,
                         const VerifyOptions& options);

} // namespace corrwitness::cli
