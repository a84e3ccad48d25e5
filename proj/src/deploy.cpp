#include "risplan/deploy.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "risplan/errors.hpp"
#include "risplan/rng.hpp"

namespace risplan {
namespace {

bool marginally_covered(const CoverageTables& tables, CellId candidate,
                        const std::vector<CellId>& selected, bool allow_double,
                        const DevicePair& p) {
    if (tables.covers_single(candidate, p)) return true;
    if (!allow_double) return false;
    for (CellId s : selected) {
        if (tables.covers_chain(candidate, s, p)) return true;
    }
    return false;
}

DeploymentPlan greedy_impl(const Environment& env, const BlindPairSet& blind, double r,
                           DeployBudget budget, bool allow_double, ExecPolicy policy) {
    (void)policy;
    DeploymentPlan plan;
    std::vector<DevicePair> remainder = blind.pairs;
    if (remainder.empty()) return plan;

    const CoverageTables tables(env, r, policy);
    const auto& free = env.free_cells();

    while (!remainder.empty()) {
        if (budget.max_ris && static_cast<int>(plan.selected.size()) >= *budget.max_ris) break;

        std::vector<CellId> candidates;
        for (CellId c : free) {
            if (std::find(plan.selected.begin(), plan.selected.end(), c) == plan.selected.end())
                candidates.push_back(c);
        }
        if (candidates.empty()) break;

        // The first pick scores single reflection only; later picks add
        // double-reflection chains with already-selected cells.
        const bool doubles_now = allow_double && !plan.selected.empty();
        std::vector<int> gain(candidates.size(), 0);
        const long nc = static_cast<long>(candidates.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 4) if (policy == ExecPolicy::Parallel)
#endif
        for (long i = 0; i < nc; ++i) {
            int g = 0;
            for (const DevicePair& p : remainder) {
                if (marginally_covered(tables, candidates[i], plan.selected, doubles_now, p)) ++g;
            }
            gain[i] = g;
        }

        long best = 0;
        for (long i = 1; i < nc; ++i) {
            if (gain[i] > gain[best]) best = i; // ties keep the lowest cell index
        }
        if (gain[best] == 0) break;

        const CellId chosen = candidates[best];
        std::vector<DevicePair> gained, rest;
        for (const DevicePair& p : remainder) {
            if (marginally_covered(tables, chosen, plan.selected, doubles_now, p))
                gained.push_back(p);
            else
                rest.push_back(p);
        }
        plan.selected.push_back(chosen);
        plan.gains.push_back(std::move(gained));
        plan.remainder_trace.push_back(rest);
        remainder = std::move(rest);
    }

    plan.uncovered = remainder;
    return plan;
}

// coverage of pair p by the unordered cell set X, single or chained double
bool subset_covers(const CoverageTables& tables, const std::vector<CellId>& cells,
                   const DevicePair& p) {
    for (std::size_t a = 0; a < cells.size(); ++a) {
        if (tables.covers_single(cells[a], p)) return true;
        for (std::size_t b = a + 1; b < cells.size(); ++b) {
            if (tables.covers_chain(cells[a], cells[b], p)) return true;
        }
    }
    return false;
}

void finalize_sequential(DeploymentPlan& plan, const CoverageTables& tables,
                         const std::vector<DevicePair>& blind, bool allow_double) {
    std::vector<DevicePair> remainder = blind;
    for (CellId c : plan.selected) {
        std::vector<CellId> prior(plan.selected.begin(),
                                  plan.selected.begin() + plan.gains.size());
        std::vector<DevicePair> gained, rest;
        for (const DevicePair& p : remainder) {
            if (marginally_covered(tables, c, prior, allow_double, p))
                gained.push_back(p);
            else
                rest.push_back(p);
        }
        plan.gains.push_back(std::move(gained));
        plan.remainder_trace.push_back(rest);
        remainder = std::move(rest);
    }
    plan.uncovered = std::move(remainder);
}

} // namespace

DeploymentPlan greedy_deploy(const Environment& env, const BlindPairSet& blind, double r,
                             DeployBudget budget, ExecPolicy policy) {
    return greedy_impl(env, blind, r, budget, true, policy);
}

DeploymentPlan greedy_single_only(const Environment& env, const BlindPairSet& blind, double r,
                                  DeployBudget budget, ExecPolicy policy) {
    return greedy_impl(env, blind, r, budget, false, policy);
}

DeploymentPlan exact_deploy(const Environment& env, const BlindPairSet& blind, double r,
                            int cell_limit) {
    const auto& free = env.free_cells();
    const int p = static_cast<int>(free.size());
    if (p > cell_limit)
        throw InstanceTooLarge("exact_deploy limited to " + std::to_string(cell_limit) +
                               " free cells, got " + std::to_string(p));

    const CoverageTables tables(env, r, ExecPolicy::Serial);
    const std::vector<DevicePair> target = tables.universe(blind.pairs);

    DeploymentPlan plan;
    if (target.empty()) {
        plan.uncovered = blind.pairs; // only totally blind pairs can remain
        return plan;
    }

    // combinations in increasing cardinality, lexicographic within each
    for (int k = 1; k <= p; ++k) {
        std::vector<int> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::vector<CellId> cells;
            cells.reserve(k);
            for (int i : idx) cells.push_back(free[i]);
            bool all = true;
            for (const DevicePair& t : target) {
                if (!subset_covers(tables, cells, t)) {
                    all = false;
                    break;
                }
            }
            if (all) {
                plan.selected = cells;
                finalize_sequential(plan, tables, blind.pairs, true);
                return plan;
            }
            int pos = k - 1;
            while (pos >= 0 && idx[pos] == p - k + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int q = pos + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
        }
    }
    // unreachable: selecting every free cell covers the whole universe
    throw Error("exact_deploy failed to cover the coverable universe");
}

DeploymentPlan random_deploy(const Environment& env, const BlindPairSet& blind, double r,
                             int count, std::uint64_t seed) {
    const auto& free = env.free_cells();
    if (count < 0 || count > static_cast<int>(free.size()))
        throw InvalidBudget("random_deploy count " + std::to_string(count) + " exceeds " +
                            std::to_string(free.size()) + " free cells");

    std::vector<CellId> pool = free;
    SplitMix64 rng(seed);
    for (std::size_t i = pool.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(pool[i - 1], pool[j]);
    }

    DeploymentPlan plan;
    plan.selected.assign(pool.begin(), pool.begin() + count);
    const CoverageTables tables(env, r, ExecPolicy::Serial);
    finalize_sequential(plan, tables, blind.pairs, false); // single reflection only
    return plan;
}

CoverageReport coverage_report(const DeploymentPlan& plan, const BlindPairSet& blind) {
    CoverageReport rep;
    rep.uncovered = static_cast<int>(plan.uncovered.size());
    int cum = 0;
    for (const auto& g : plan.gains) {
        rep.step_gains.push_back(static_cast<int>(g.size()));
        cum += static_cast<int>(g.size());
        rep.covered_by_prefix.push_back(cum);
    }
    rep.covered = cum;
    // sanity: gains plus the final remainder partition the blind set
    if (rep.covered + rep.uncovered != static_cast<int>(blind.pairs.size()))
        throw Error("coverage_report: plan does not partition the blind set");
    return rep;
}

} // namespace risplan
