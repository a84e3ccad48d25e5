#include "risplan/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "risplan/deploy.hpp"
#include "risplan/errors.hpp"
#include "risplan/rng.hpp"

namespace risplan {
namespace {

constexpr std::uint64_t kChannelStream = 0x5A17ED0C0FFEEULL;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int count_components(const Scenario& sc) {
    return static_cast<int>(sc.build().obstacles().size());
}

// smallest prefix of the seeded random placement that reaches its own
// single-reflection coverage maximum
DeploymentPlan random_saturated(const Environment& env, const BlindPairSet& blind, double r,
                                std::uint64_t seed) {
    const int p = static_cast<int>(env.free_cells().size());
    const DeploymentPlan full = random_deploy(env, blind, r, p, seed);
    int count = 0;
    for (int k = 0; k < p; ++k) {
        if (!full.gains[k].empty()) count = k + 1;
    }
    return random_deploy(env, blind, r, count, seed);
}

DeploymentPlan deploy_for(const Scenario& sc, const SweepSpec& spec, const Environment& env,
                          const BlindPairSet& blind, ExecPolicy policy) {
    switch (spec.baseline) {
        case Baseline::Greedy:
            return spec.allow_double
                       ? greedy_deploy(env, blind, sc.coverage_radius, {}, policy)
                       : greedy_single_only(env, blind, sc.coverage_radius, {}, policy);
        case Baseline::SingleOnly:
            return greedy_single_only(env, blind, sc.coverage_radius, {}, policy);
        case Baseline::Random:
            return random_saturated(env, blind, sc.coverage_radius, mix64(sc.seed, 0xA5A5));
        case Baseline::Exact:
            return exact_deploy(env, blind, sc.coverage_radius);
    }
    throw Error("unknown baseline");
}

} // namespace

std::string sweep_variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::CoverageRadius: return "coverage_radius";
        case SweepVariable::DeviceCount: return "device_count";
        case SweepVariable::ObstacleCount: return "obstacle_count";
        case SweepVariable::ElementsPerGroup: return "elements_per_group";
        case SweepVariable::GridSize: return "grid_size";
    }
    return "unknown";
}

TrialMetrics evaluate_scenario(const Scenario& sc, const SweepSpec& spec, ExecPolicy policy) {
    TrialMetrics m;
    const Environment env = sc.build();
    const ChannelParams params = sc.channel_params();
    const double r = sc.coverage_radius;

    const BlindPairSet blind = identify_blind_pairs(env, sc.device_pairs, r, policy);
    const DeploymentPlan plan = deploy_for(sc, spec, env, blind, policy);

    m.n_ris = static_cast<int>(plan.selected.size());
    m.covered = static_cast<int>(blind.pairs.size() - plan.uncovered.size());

    const ChannelSampler sampler(env, plan.selected, sc.ris_spec(), params, r,
                                 mix64(sc.seed, kChannelStream), spec.gbs);

    int served = 0;
    double sum_t = 0.0, sum_e = 0.0, sum_eff = 0.0;
    int ris_served = 0;

    // direct pairs talk over the one-hop link budget
    for (const DevicePair& p : sc.device_pairs) {
        const Point u = cell_center(env, p.u), v = cell_center(env, p.v);
        if (!has_los(env, u, v, r)) continue;
        const double snr = snr_direct(sampler.direct_fading(p), distance(u, v), params);
        const double t = throughput(snr, params);
        if (t >= sc.t_threshold && t > 0.0) {
            ++served;
            sum_t += t;
        }
    }

    // Blind pairs go through the deployed reflectors. Pairs are evaluated
    // independently (no inter-pair interference): each takes its best
    // feasible path in isolation.
    const int hops = spec.allow_double ? spec.max_hops : 1;
    for (const DevicePair& p : blind.pairs) {
        const auto opt = best_path(p, sampler, hops, sc.t_threshold, spec.selection);
        if (!opt) continue;
        ++served;
        ++ris_served;
        sum_t += opt->evaluation.throughput;
        sum_e += opt->evaluation.energy;
        sum_eff += opt->evaluation.efficiency;
    }

    m.unserved = static_cast<int>(sc.device_pairs.size()) - served;
    m.sum_throughput_bps = sum_t;
    m.mean_energy_j = ris_served > 0 ? sum_e / ris_served : 0.0;
    m.mean_eff_bpj = ris_served > 0 ? sum_eff / ris_served : 0.0;
    return m;
}

namespace {

// Applies the swept value on top of the base scenario. World-shaping
// variables regenerate obstacles and pairs from the derived seed; query-side
// variables keep the trial's world fixed across values.
Scenario scenario_for(const SweepSpec& spec, const Scenario& base, std::size_t value_index,
                      int trial) {
    const double value = spec.values[value_index];
    const bool world_varies = spec.variable == SweepVariable::DeviceCount ||
                              spec.variable == SweepVariable::ObstacleCount ||
                              spec.variable == SweepVariable::GridSize;
    const std::uint64_t world_seed = hash_values(
        {base.seed, world_varies ? static_cast<std::uint64_t>(value_index) : 0ULL,
         static_cast<std::uint64_t>(trial)});

    GridSpec grid = base.grid;
    int n_obstacles = count_components(base);
    int n_devices = static_cast<int>(base.device_pairs.size());
    double gen_radius = base.coverage_radius;

    switch (spec.variable) {
        case SweepVariable::CoverageRadius:
            // pairs must stay in range at the smallest radius swept
            gen_radius = *std::min_element(spec.values.begin(), spec.values.end());
            break;
        case SweepVariable::DeviceCount:
            n_devices = static_cast<int>(std::lround(value));
            break;
        case SweepVariable::ObstacleCount:
            n_obstacles = static_cast<int>(std::lround(value));
            break;
        case SweepVariable::ElementsPerGroup:
            break;
        case SweepVariable::GridSize: {
            const int a = static_cast<int>(std::lround(value));
            grid = {a, a, base.grid.cell_size};
            break;
        }
    }

    Scenario world = generate_scenario(grid, n_obstacles, n_devices, gen_radius, world_seed);

    Scenario sc = base;
    sc.grid = world.grid;
    sc.obstacle_cells = world.obstacle_cells;
    sc.device_pairs = world.device_pairs;
    sc.seed = world_seed;

    if (spec.variable == SweepVariable::CoverageRadius) {
        sc.coverage_radius = value;
    } else if (spec.variable == SweepVariable::ElementsPerGroup) {
        // resize the array, keeping the subgroup count
        const int per_group = static_cast<int>(std::lround(value));
        const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(per_group))));
        if (side * side != per_group)
            throw InvalidConfiguration("elements_per_group values must be perfect squares");
        int a = static_cast<int>(std::floor(std::sqrt(static_cast<double>(sc.ris_subgroups))));
        while (sc.ris_subgroups % a != 0) --a;
        sc.ris_rows = side * a;
        sc.ris_cols = side * (sc.ris_subgroups / a);
    }
    validate_scenario(sc);
    return sc;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const Scenario& base, ExecPolicy policy,
                                bool with_timings) {
    if (spec.values.empty()) throw ValidationError("sweep needs at least one value");
    if (spec.trials < 1) throw ValidationError("sweep needs at least one trial");
    if (spec.max_hops < 1 || spec.max_hops > 3)
        throw ValidationError("sweep max_hops must be 1..3");

    const std::string var = sweep_variable_name(spec.variable);
    const int n_cells = static_cast<int>(spec.values.size()) * spec.trials;
    std::vector<SweepRow> trial_rows(static_cast<std::size_t>(n_cells));

#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 1) if (policy == ExecPolicy::Parallel)
#endif
    for (int cell = 0; cell < n_cells; ++cell) {
        const std::size_t vi = static_cast<std::size_t>(cell) / spec.trials;
        const int trial = cell % spec.trials;
        SweepRow row;
        row.sweep_var = var;
        row.value = spec.values[vi];
        row.trial = trial;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            // trials inside a parallel sweep run their kernels serially
            const Scenario sc = scenario_for(spec, base, vi, trial);
            const TrialMetrics m = evaluate_scenario(sc, spec, ExecPolicy::Serial);
            row.n_ris = m.n_ris;
            row.covered = m.covered;
            row.unserved = m.unserved;
            row.sum_throughput_bps = m.sum_throughput_bps;
            row.mean_energy_j = m.mean_energy_j;
            row.mean_eff_bpj = m.mean_eff_bpj;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        if (with_timings) {
            const auto t1 = std::chrono::steady_clock::now();
            row.runtime_ms =
                std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0)
                    .count();
        }
        trial_rows[static_cast<std::size_t>(cell)] = std::move(row);
    }

    std::vector<SweepRow> rows;
    rows.reserve(trial_rows.size() + spec.values.size());
    for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
        SweepRow mean;
        mean.sweep_var = var;
        mean.value = spec.values[vi];
        mean.trial = -1;
        int ok = 0;
        for (int t = 0; t < spec.trials; ++t) {
            const SweepRow& row = trial_rows[vi * spec.trials + t];
            rows.push_back(row);
            if (!row.error.empty()) continue;
            ++ok;
            mean.n_ris += row.n_ris;
            mean.covered += row.covered;
            mean.unserved += row.unserved;
            mean.sum_throughput_bps += row.sum_throughput_bps;
            mean.mean_energy_j += row.mean_energy_j;
            mean.mean_eff_bpj += row.mean_eff_bpj;
            mean.runtime_ms += row.runtime_ms;
        }
        if (ok > 0) {
            mean.n_ris /= ok;
            mean.covered /= ok;
            mean.unserved /= ok;
            mean.sum_throughput_bps /= ok;
            mean.mean_energy_j /= ok;
            mean.mean_eff_bpj /= ok;
            mean.runtime_ms /= ok;
        } else {
            mean.error = "all trials failed";
        }
        rows.push_back(std::move(mean));
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "sweep_var,value,trial,n_ris,covered,unserved,sum_throughput_bps,mean_energy_j,"
           "mean_eff_bpj,runtime_ms,error\n";
    for (const SweepRow& r : rows) {
        out << r.sweep_var << ',' << fmt_double(r.value) << ',';
        if (r.trial < 0)
            out << "mean";
        else
            out << r.trial;
        out << ',' << fmt_double(r.n_ris) << ',' << fmt_double(r.covered) << ','
            << fmt_double(r.unserved) << ',' << fmt_double(r.sum_throughput_bps) << ','
            << fmt_double(r.mean_energy_j) << ',' << fmt_double(r.mean_eff_bpj) << ','
            << fmt_double(r.runtime_ms) << ',' << r.error << '\n';
    }
    return out.str();
}

} // namespace risplan
