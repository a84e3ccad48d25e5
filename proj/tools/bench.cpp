// Times the OpenMP kernels against their serial references on a mid-size
// random world: pairwise visibility, blind-pair identification, and greedy
// deployment.

#include <chrono>
#include <cstdio>

#include "risplan/blind_pairs.hpp"
#include "risplan/coverage.hpp"
#include "risplan/deploy.hpp"
#include "risplan/parallel.hpp"
#include "risplan/scenario.hpp"

using namespace risplan;

namespace {

template <typename F>
double time_ms(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-24s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n", name, serial_ms,
                parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

} // namespace

int main() {
    std::printf("threads available: %d (OpenMP %s)\n", thread_count(ExecPolicy::Parallel),
                openmp_enabled() ? "on" : "off");

    const Scenario sc = generate_scenario({28, 28, 1.0}, 60, 220, 14.0, 90125);
    const Environment env = sc.build();
    std::printf("world: %dx%d grid, %zu obstacles, %zu device pairs\n", sc.grid.rows,
                sc.grid.cols, env.obstacles().size(), sc.device_pairs.size());

    BlindPairSet blind_s, blind_p;
    const double id_s = time_ms([&] {
        blind_s = identify_blind_pairs(env, sc.device_pairs, sc.coverage_radius,
                                       ExecPolicy::Serial);
    });
    const double id_p = time_ms([&] {
        blind_p = identify_blind_pairs(env, sc.device_pairs, sc.coverage_radius,
                                       ExecPolicy::Parallel);
    });
    report("blind pairs", id_s, id_p);
    if (blind_s.pairs != blind_p.pairs) {
        std::printf("MISMATCH in blind-pair results\n");
        return 1;
    }
    std::printf("  blind pairs found: %zu\n", blind_s.pairs.size());

    const double vis_s =
        time_ms([&] { CoverageTables t(env, sc.coverage_radius, ExecPolicy::Serial); });
    const double vis_p =
        time_ms([&] { CoverageTables t(env, sc.coverage_radius, ExecPolicy::Parallel); });
    report("visibility table", vis_s, vis_p);

    DeploymentPlan plan_s, plan_p;
    const double dep_s = time_ms(
        [&] { plan_s = greedy_deploy(env, blind_s, sc.coverage_radius, {}, ExecPolicy::Serial); });
    const double dep_p = time_ms([&] {
        plan_p = greedy_deploy(env, blind_s, sc.coverage_radius, {}, ExecPolicy::Parallel);
    });
    report("greedy deployment", dep_s, dep_p);
    if (plan_s.selected != plan_p.selected) {
        std::printf("MISMATCH in deployment plans\n");
        return 1;
    }
    std::printf("  reflectors placed: %zu, uncovered: %zu\n", plan_s.selected.size(),
                plan_s.uncovered.size());
    return 0;
}
