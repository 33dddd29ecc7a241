#pragma once
// JSON run configurations.  Every object is schema-checked: missing required
// keys and unknown keys are ConfigErrors with the offending path in the
// message.  Switching families are declared as records like
//   {"family": "hill", "b": 1.5, "K": 0.5, "n": 2}.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gogrow/solver.hpp"

namespace gogrow {

struct SimulateJob {
    std::string name;
    SimulationConfig sim;
    std::string trajectory_csv;  // filename, joined with the output directory
    std::string summary_json;
};

enum class SweepKind { Constant, Linear, Hill };

/// Parameter sweep over switching-rate grids.  `base.pair` is a placeholder;
/// the runner substitutes the per-point pair:
///   constant: Gamma1 = gamma1,            Gamma2 = gamma2
///   linear:   Gamma1 = gamma1,            Gamma2 = beta * rho
///   hill:     Gamma1 = gamma1 * (1 - h),  Gamma2 = beta * h,
///             h = rho^n / (K^n + rho^n)
struct SweepJob {
    std::string name;
    SweepKind kind = SweepKind::Constant;
    std::vector<double> gamma1_values;
    std::vector<double> second_values;  // gamma2 for constant sweeps, beta otherwise
    double hill_K = 0.5, hill_n = 2.0;
    SimulationConfig base;
    std::string table_csv;
};

struct CompareLimitJob {
    std::string name;
    std::vector<double> epsilons;
    SimulationConfig base;
    std::string table_csv;
};

SimulateJob load_simulate_job(const std::filesystem::path& path, bool paper_scale);
SweepJob load_sweep_job(const std::filesystem::path& path, bool paper_scale);
CompareLimitJob load_compare_limit_job(const std::filesystem::path& path, bool paper_scale);

/// Reads just the "pair" record of any config file (for the speed and
/// reduced-coefficients commands, which accept the same files as simulate).
SwitchingPair load_pair_only(const std::filesystem::path& path);

SwitchingFunction switching_from_json(const nlohmann::json& j, const std::string& context);
nlohmann::json switching_to_json(const SwitchingFunction& f);
SwitchingPair pair_from_json(const nlohmann::json& j, const std::string& context);
nlohmann::json pair_to_json(const SwitchingPair& pair);

SwitchingPair make_sweep_pair(const SweepJob& job, double gamma1, double second);
SwitchingPair make_sweep_pair(SweepKind kind, double hill_K, double hill_n, double gamma1,
                              double second);

}  // namespace gogrow
