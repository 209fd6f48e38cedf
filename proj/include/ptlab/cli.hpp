#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptlab/parareal.hpp"

namespace ptlab::cli {

enum class Experiment { Stability, Cavity, Speedup };
enum class Format { Csv, Json };

/// Exit codes of the driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "PTLAB_OUT_DIR";

struct ExperimentConfig {
    Experiment experiment = Experiment::Stability;
    std::filesystem::path out_dir = "results";
    Format format = Format::Csv;
    unsigned workers = 1;

    // stability
    double re_min = -4.0, re_max = 0.0;
    double im_min = -4.0, im_max = 4.0;
    int resolution = 201;
    std::vector<int> iter_counts{1, 4, 8, 12};
    double stability_t_end = 30.0;
    int stability_slices = 15;
    int coarse_steps = 2;
    int fine_steps = 5;

    // cavity
    std::vector<int> nx{8, 16, 32, 64};
    std::vector<double> nu{1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<double> dt_coarse{1.0 / 200.0, 1.0 / 400.0};
    double dt_fine = 1.0 / 500.0;
    double t_end = 15.0;
    int slices = 15;
    int max_iter = 15;
    double lid_velocity = 1.0;
    double poisson_tol = 1e-10;

    // speedup
    std::vector<int> speedup_iters;
    std::vector<double> cost_ratios;
    std::optional<double> cost_fine;
    std::optional<double> cost_coarse;
    bool measure_costs = false;

    /// Throws ConfigError when a parameter is outside the downstream modules' ranges.
    void validate() const;

    SliceDecomposition stability_decomposition() const;
    /// Decomposition for one coarse step size; throws ConfigError when the step
    /// sizes do not divide the slice length.
    SliceDecomposition cavity_decomposition(double dt_coarse_value) const;
};

std::string to_string(Experiment e);
std::string to_string(Format f);

nlohmann::ordered_json to_json(const ExperimentConfig& config);
/// Overlays the keys present in doc onto base.
ExperimentConfig from_json(const nlohmann::json& doc, ExperimentConfig base = {});

/// Parses "0.005", "1e-3" or "1/200".
double parse_real(const std::string& text);

int cmd_stability(const ExperimentConfig& config, std::ostream& log);
int cmd_cavity(const ExperimentConfig& config, std::ostream& log);
int cmd_speedup(const ExperimentConfig& config, std::ostream& log);

/// Full driver: argument parsing, config file, dispatch. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ptlab::cli
