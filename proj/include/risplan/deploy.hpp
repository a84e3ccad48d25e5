#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "risplan/blind_pairs.hpp"
#include "risplan/coverage.hpp"
#include "risplan/environment.hpp"
#include "risplan/parallel.hpp"

namespace risplan {

struct DeployBudget {
    std::optional<int> max_ris;
};

struct DeploymentPlan {
    std::vector<CellId> selected;                        // in selection order
    std::vector<std::vector<DevicePair>> gains;          // newly covered per step
    std::vector<std::vector<DevicePair>> remainder_trace; // remaining blind pairs after each step
    std::vector<DevicePair> uncovered;                   // final remainder
};

// Greedy placement: the first cell maximizes single-reflection coverage;
// each later cell maximizes marginal coverage counting single reflection
// through itself plus double reflections paired with any already-selected
// cell. Ties break to the lowest cell index. Stops on full coverage, zero
// marginal gain, or an exhausted budget.
DeploymentPlan greedy_deploy(const Environment& env, const BlindPairSet& blind, double r,
                             DeployBudget budget = {}, ExecPolicy policy = ExecPolicy::Parallel);

// Same loop with double-reflection gains disabled.
DeploymentPlan greedy_single_only(const Environment& env, const BlindPairSet& blind, double r,
                                  DeployBudget budget = {},
                                  ExecPolicy policy = ExecPolicy::Parallel);

// Exhaustive minimum-cardinality cover of the coverable universe, enumerated
// in increasing cardinality and lexicographic order within each cardinality.
// Desk-scale guard: refuses instances with more than cell_limit free cells.
DeploymentPlan exact_deploy(const Environment& env, const BlindPairSet& blind, double r,
                            int cell_limit = 20);

// Uniform placement without replacement, coverage scored with single
// reflection only.
DeploymentPlan random_deploy(const Environment& env, const BlindPairSet& blind, double r,
                             int count, std::uint64_t seed);

struct CoverageReport {
    int covered = 0;
    int uncovered = 0;
    std::vector<int> step_gains;         // marginal gain per step
    std::vector<int> covered_by_prefix;  // cumulative coverage after k steps
};

CoverageReport coverage_report(const DeploymentPlan& plan, const BlindPairSet& blind);

} // namespace risplan
