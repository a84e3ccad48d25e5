#pragma once

#include <string>
#include <vector>

#include "risplan/group_select.hpp"
#include "risplan/parallel.hpp"
#include "risplan/scenario.hpp"

namespace risplan {

enum class SweepVariable { CoverageRadius, DeviceCount, ObstacleCount, ElementsPerGroup, GridSize };
enum class Baseline { Greedy, SingleOnly, Random, Exact };

struct SweepSpec {
    SweepVariable variable = SweepVariable::CoverageRadius;
    std::vector<double> values;
    int trials = 1;
    bool allow_double = true;                             // deployment: permit double reflections
    bool gbs = true;                                      // grouped vs whole-array operation
    int max_hops = 2;                                     // service paths: 1..3 reflections
    Baseline baseline = Baseline::Greedy;
    SelectPolicy selection = SelectPolicy::Efficiency;    // per-pair path choice
};

// One CSV row. trial == -1 marks the per-value aggregate mean row.
struct SweepRow {
    std::string sweep_var;
    double value = 0.0;
    int trial = 0;
    double n_ris = 0.0;
    double covered = 0.0;
    double unserved = 0.0;
    double sum_throughput_bps = 0.0;
    double mean_energy_j = 0.0;
    double mean_eff_bpj = 0.0;
    double runtime_ms = 0.0;
    std::string error;
};

std::string sweep_variable_name(SweepVariable v);

// Runs trials per value and appends one aggregate mean row per value.
// All randomness derives from (base.seed, value index, trial index); sweeps
// over query-side variables (radius, array size) reuse the same world per
// trial across values so paired comparisons stay noise-free.
// runtime_ms stays 0 unless with_timings is set, keeping default output
// byte-reproducible.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const Scenario& base,
                                ExecPolicy policy = ExecPolicy::Parallel,
                                bool with_timings = false);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

// Single-trial evaluation shared by the sweep loop and the CLI.
struct TrialMetrics {
    int n_ris = 0;
    int covered = 0;
    int unserved = 0;
    double sum_throughput_bps = 0.0;
    double mean_energy_j = 0.0;
    double mean_eff_bpj = 0.0;
};

TrialMetrics evaluate_scenario(const Scenario& sc, const SweepSpec& spec, ExecPolicy policy);

} // namespace risplan
