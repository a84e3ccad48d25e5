// Acceptance suite: one pass/fail line per criterion, exit nonzero if any
// fail. Run via ctest (the CLI binary path arrives as argv[1]) or directly:
//   ./acceptance /path/to/ris-planner

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "risplan/blind_pairs.hpp"
#include "risplan/coverage.hpp"
#include "risplan/deploy.hpp"
#include "risplan/environment.hpp"
#include "risplan/errors.hpp"
#include "risplan/group_select.hpp"
#include "risplan/rng.hpp"
#include "risplan/scenario.hpp"
#include "risplan/sweep.hpp"

using namespace risplan;

namespace {

int g_pass = 0, g_fail = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    (ok ? g_pass : g_fail)++;
}

double ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        std::size_t i = 0;
        while (i < idx.size()) {
            std::size_t j = i;
            while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
            const double avg = (i + j) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    const auto rx = ranks(x), ry = ranks(y);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= rx.size();
    my /= ry.size();
    double num = 0, dx = 0, dy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        num += (rx[i] - mx) * (ry[i] - my);
        dx += (rx[i] - mx) * (rx[i] - mx);
        dy += (ry[i] - my) * (ry[i] - my);
    }
    if (dx == 0 || dy == 0) return 0;
    return num / std::sqrt(dx * dy);
}

std::vector<double> mean_column(const std::vector<SweepRow>& rows,
                                double SweepRow::*col) {
    std::vector<double> out;
    for (const auto& r : rows) {
        if (r.trial == -1) out.push_back(r.*col);
    }
    return out;
}

std::vector<double> mean_values(const std::vector<SweepRow>& rows) {
    std::vector<double> out;
    for (const auto& r : rows) {
        if (r.trial == -1) out.push_back(r.value);
    }
    return out;
}

// ---- criterion 1: the worked 4x4 example, exactly as specified ----

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();

    const Environment env = build_environment({4, 4, 1.0}, {3, 10, 14});
    const double r = 10.0;
    const std::vector<DevicePair> reference = {
        {1, 4},  {1, 8},   {1, 11},  {1, 15},  {1, 16},  {2, 4},   {2, 7},  {2, 8},
        {2, 13}, {2, 12},  {2, 15},  {4, 5},   {4, 6},   {4, 7},   {4, 9},  {4, 13},
        {5, 12}, {5, 11},  {5, 15},  {5, 16},  {6, 9},   {6, 11},  {6, 13}, {6, 15},
        {6, 16}, {7, 9},   {7, 13},  {8, 9},   {8, 13},  {9, 11},  {9, 12}, {9, 15},
        {9, 16}, {11, 13}, {12, 13}, {13, 15}, {13, 16}};

    const BlindPairSet blind = identify_blind_pairs(env, all_free_cell_pairs(env, r), r);
    std::vector<DevicePair> want = reference;
    std::sort(want.begin(), want.end());
    report("criterion 1a: blind-pair identification returns exactly the 37 listed pairs",
           blind.pairs == want);

    // the claimed seven-pair single-uncoverable claim, checked with a
    // reflector at every free cell
    const std::vector<DevicePair> seven = {{4, 9},   {4, 13},  {9, 15}, {11, 13},
                                           {12, 13}, {13, 15}, {13, 16}};
    const CoverageTables tables(env, r);
    std::vector<DevicePair> coverable;
    for (const DevicePair& p : seven) {
        if (tables.single_coverable(p)) coverable.push_back(p);
    }
    std::string detail;
    if (!coverable.empty()) {
        std::ostringstream os;
        os << "single-reflection witnesses exist for:";
        for (const DevicePair& p : coverable) {
            os << " (" << p.u << "," << p.v << ")";
            for (CellId z : env.free_cells()) {
                if (tables.covers_single(z, p)) {
                    os << " via cell " << z;
                    break;
                }
            }
        }
        os << "; the witness legs are absent from the reference blind table itself";
        detail = os.str();
    }
    report("criterion 1b: the seven listed pairs are single-uncoverable", coverable.empty(),
           detail);

    const DeploymentPlan greedy = greedy_deploy(env, blind, r);
    const bool plan_matches = greedy.selected == std::vector<CellId>{12, 1};
    std::string plan_detail;
    if (!plan_matches) {
        std::ostringstream os;
        os << "greedy selected [";
        for (std::size_t i = 0; i < greedy.selected.size(); ++i)
            os << (i ? "," : "") << greedy.selected[i];
        os << "] covering " << blind.pairs.size() - greedy.uncovered.size() << "/"
           << blind.pairs.size()
           << "; by the reference blind table the single-reflection maximizer is cell 7 (11 pairs, "
              "cell 12 covers 10), so no table-consistent greedy can pick 12 first; {1,12} is "
              "the exact optimum";
        plan_detail = os.str();
    }
    report("criterion 1c: greedy selects cell 12 first and ends with plan {1,12}", plan_matches,
           plan_detail);

    report("criterion 1d: full coverage of the coverable universe by the greedy plan",
           greedy.uncovered.empty() && tables.universe(blind.pairs).size() == 37);

    const double elapsed = ms_since(t0);
    report("criterion 1e: worked example runs in under 1 s", elapsed < 1000.0,
           std::to_string(elapsed) + " ms");
}

// ---- criteria 2 and 3: greedy vs oracle corpus ----

struct CorpusRun {
    int scenarios = 0;
    int ratio_violations = 0;
    int matched_cover_violations = 0;
    int budget_violations = 0;
    int saturation_excess = 0; // double-greedy saturates with more cells than single-only
    double elapsed_ms = 0;
};

CorpusRun run_corpus() {
    CorpusRun out;
    const auto t0 = std::chrono::steady_clock::now();
    SplitMix64 rng(20250808);
    int tried = 0;
    while (out.scenarios < 200 && tried < 4000) {
        ++tried;
        Scenario sc;
        try {
            sc = generate_scenario({4, 4, 1.0}, 1 + static_cast<int>(rng.next_below(3)),
                                   6 + static_cast<int>(rng.next_below(5)), 8.0, rng.next());
        } catch (const GenerationFailed&) {
            continue;
        }
        ++out.scenarios;
        const Environment env = sc.build();
        const BlindPairSet blind = identify_blind_pairs(env, sc.device_pairs, 8.0);
        const CoverageTables tables(env, 8.0);
        const auto universe = tables.universe(blind.pairs);

        const DeploymentPlan greedy = greedy_deploy(env, blind, 8.0);
        const DeploymentPlan exact = exact_deploy(env, blind, 8.0);
        const DeploymentPlan single = greedy_single_only(env, blind, 8.0);

        if (universe.empty()) {
            if (!exact.selected.empty()) ++out.ratio_violations;
        } else {
            const double bound =
                (std::log(static_cast<double>(universe.size())) + 1.0) * exact.selected.size();
            if (static_cast<double>(greedy.selected.size()) > bound) ++out.ratio_violations;
        }

        const CoverageReport rg = coverage_report(greedy, blind);
        const CoverageReport rs = coverage_report(single, blind);
        // budget dominance: at every prefix size the double-enabled greedy
        // covers at least as many pairs
        for (std::size_t k = 0; k < rs.covered_by_prefix.size(); ++k) {
            const int dbl_at_k = k < rg.covered_by_prefix.size()
                                     ? rg.covered_by_prefix[k]
                                     : rg.covered;
            if (dbl_at_k < rs.covered_by_prefix[k]) {
                ++out.budget_violations;
                break;
            }
        }
        // matched-coverage reflector count: cells the double-enabled greedy
        // needs to reach the single-only strategy's full coverage
        int needed = 0;
        while (needed < static_cast<int>(rg.covered_by_prefix.size()) &&
               rg.covered_by_prefix[needed] < rs.covered)
            ++needed;
        if (rs.covered > 0) ++needed; // prefix index -> count
        if (rs.covered == 0) needed = 0;
        if (needed > static_cast<int>(single.selected.size())) ++out.matched_cover_violations;
        if (greedy.selected.size() > single.selected.size()) ++out.saturation_excess;
    }
    out.elapsed_ms = ms_since(t0);
    return out;
}

void criteria_2_3(const CorpusRun& c) {
    {
        std::ostringstream os;
        os << c.scenarios << " scenarios, " << c.ratio_violations << " bound violations, "
           << c.elapsed_ms << " ms";
        report("criterion 2: greedy within (ln|universe|+1) x exact optimum on 200 scenarios",
               c.scenarios >= 200 && c.ratio_violations == 0 && c.elapsed_ms < 60000.0, os.str());
    }
    {
        std::ostringstream os;
        os << c.matched_cover_violations << " matched-coverage violations, "
           << c.budget_violations << " budget-dominance violations";
        if (c.saturation_excess > 0)
            os << " (note: in " << c.saturation_excess << "/" << c.scenarios
               << " runs the double-enabled greedy saturates with more reflectors than "
                  "single-only because it keeps serving pairs single reflection cannot reach)";
        report("criterion 3: double-reflection dominance (reflector count at matched coverage, "
               "coverage at every budget)",
               c.scenarios >= 200 && c.matched_cover_violations == 0 && c.budget_violations == 0,
               os.str());
    }
}

// ---- criteria 4 and 5: the two efficiency propositions ----

void criterion_4() {
    SplitMix64 rng(440011);
    int violations = 0;
    for (int it = 0; it < 10000; ++it) {
        const Point u{0.0, 0.0};
        const Point r1{1.1 + 9.0 * rng.next_unit(), 1.1 + 9.0 * rng.next_unit()};
        const Point r2{r1.x + 1.1 + 7.0 * rng.next_unit(), r1.y + 1.1 + 7.0 * rng.next_unit()};
        const Point v{r2.x + 1.1 + 7.0 * rng.next_unit(), r2.y + 1.1 + 7.0 * rng.next_unit()};
        Prop1Config cfg;
        cfg.cascade_gain = 0.05 + 30.0 * rng.next_unit();
        cfg.d_u = distance(u, r1);
        cfg.d_single_out = distance(r1, v);
        cfg.d_mid = distance(r1, r2);
        cfg.d_double_out = distance(r2, v);
        cfg.phase_power_shared = 1e-4 + 0.2 * rng.next_unit();
        cfg.phase_power_second = 1e-4 + 0.2 * rng.next_unit();
        ChannelParams p;
        p.pathloss_1m = std::pow(10.0, -5.0 + 3.0 * rng.next_unit());
        if (!prop1_configuration_check(cfg, p)) ++violations;
    }
    report("criterion 4: shared-reflector single reflection is never less energy-efficient "
           "(10000 configurations)",
           violations == 0, std::to_string(violations) + " violations");
}

void criterion_5() {
    SplitMix64 rng(550022);
    int accepted = 0, violations = 0, tried = 0;
    while (accepted < 10000 && tried < 4000000) {
        ++tried;
        ChannelParams p;
        p.pathloss_1m = std::pow(10.0, -5.0 + 3.0 * rng.next_unit());
        SinglePathConfig s;
        s.d_u = 1.0 + 150.0 * rng.next_unit();
        s.d_v = 1.0 + 150.0 * rng.next_unit();
        s.cascade_gain = 0.5 + 20.0 * rng.next_unit();
        s.phase_power = p.phase_shift_power_w;
        DoublePathConfig d;
        d.d_u = 1.0 + 3.0 * rng.next_unit();
        d.d_mid = 1.0 + 3.0 * rng.next_unit();
        d.d_v = 1.0 + 3.0 * rng.next_unit();
        d.cascade_gain = s.cascade_gain * (1.0 + rng.next_unit());
        d.phase_power_first = d.phase_power_second = p.phase_shift_power_w;
        if (!prop2_conditions(s, d, p)) continue;
        ++accepted;
        if (evaluate_double_path(d, p).efficiency < evaluate_single_path(s, p).efficiency)
            ++violations;
    }
    std::ostringstream os;
    os << accepted << " conditioned configurations, " << violations << " violations";
    report("criterion 5: conditioned double reflection is never less energy-efficient "
           "(10000 configurations)",
           accepted >= 10000 && violations == 0, os.str());
}

// ---- criterion 6: channel invariants ----

void criterion_6() {
    ChannelParams p;

    // common-phase invariance to machine precision
    bool phase_ok = true;
    SplitMix64 rng(660033);
    for (int it = 0; it < 500 && phase_ok; ++it) {
        const int n = 1 + static_cast<int>(rng.next_below(8));
        ChannelRealization real;
        real.h_in.resize(n);
        real.h_out.resize(n);
        for (auto& e : real.h_in) e = Complex(rng.next_normal(), rng.next_normal());
        for (auto& e : real.h_out) e = Complex(rng.next_normal(), rng.next_normal());
        Cmat m(n, n);
        for (auto& e : m.v) e = Complex(rng.next_normal(), rng.next_normal());
        real.h_mid.push_back(std::move(m));
        real.common_phases = {0.0, 0.0};
        const double base = snr_double(real, 2.0, 3.0, 4.0, p);
        for (int k = 0; k < 8; ++k) {
            real.common_phases = {rng.next_unit() * 6.2831853, rng.next_unit() * 6.2831853};
            const double got = snr_double(real, 2.0, 3.0, 4.0, p);
            if (std::abs(got - base) > 1e-12 * std::max(1.0, base)) phase_ok = false;
        }
    }
    report("criterion 6a: snr invariant under common phase shifts (machine precision)", phase_ok);

    // Rician mean power within 2% of one over 1e5 draws
    double acc = 0.0;
    int count = 0;
    for (int link = 0; link < 100; ++link) {
        const Cvec h = sample_link({0, 0}, {9, 3}, 1000, p, 123456, link);
        for (const Complex& e : h) {
            acc += std::norm(e);
            ++count;
        }
    }
    const double mean_power = acc / count;
    report("criterion 6b: rician mean power within 2% of unity over 1e5 samples",
           count == 100000 && std::abs(mean_power - 1.0) <= 0.02,
           "mean power " + std::to_string(mean_power));

    // exact closed form for the all-ones cascade
    bool exact_ok = true;
    for (int n : {1, 4, 16, 64}) {
        ChannelRealization real;
        real.h_in.assign(n, Complex(1.0, 0.0));
        real.h_out.assign(n, Complex(1.0, 0.0));
        const double d_u = 2.0, d_v = 4.0;
        const double got = snr_single(real, d_u, d_v, p);
        const double att =
            std::pow(d_u, -p.pathloss_exponent) * std::pow(d_v, -p.pathloss_exponent);
        const double want = p.tx_power_w * std::pow(p.pathloss_1m, 2.0) * att *
                            (static_cast<double>(n) * n) / p.noise();
        if (got != want) exact_ok = false;
    }
    report("criterion 6c: all-ones snr equals the closed form exactly", exact_ok);
}

// ---- criterion 7: trend reproduction at desk scale ----

void criterion_7() {
    const auto t0 = std::chrono::steady_clock::now();

    // (a) reflector count non-increasing in the coverage radius
    {
        const Scenario base = generate_scenario({10, 10, 1.0}, 12, 24, 3.0, 77101);
        SweepSpec sp;
        sp.variable = SweepVariable::CoverageRadius;
        sp.values = {3, 4, 5, 7, 10};
        sp.trials = 30;
        const auto rows = run_sweep(sp, base);
        const double rho = spearman(mean_values(rows), mean_column(rows, &SweepRow::n_ris));
        report("criterion 7a: reflector count non-increasing in coverage radius", rho <= -0.8,
               "spearman " + std::to_string(rho));
    }
    // (b) reflector count non-decreasing in device and obstacle counts
    {
        const Scenario base = generate_scenario({8, 8, 1.0}, 5, 10, 6.0, 77102);
        SweepSpec sp;
        sp.variable = SweepVariable::DeviceCount;
        sp.values = {4, 8, 12, 16, 20};
        sp.trials = 20;
        const auto rows = run_sweep(sp, base);
        const double rho_dev = spearman(mean_values(rows), mean_column(rows, &SweepRow::n_ris));

        SweepSpec so;
        so.variable = SweepVariable::ObstacleCount;
        so.values = {1, 2, 4, 6, 8};
        so.trials = 20;
        const auto orows = run_sweep(so, base);
        const double rho_obs = spearman(mean_values(orows), mean_column(orows, &SweepRow::n_ris));
        report("criterion 7b: reflector count non-decreasing in device and obstacle counts",
               rho_dev >= 0.8 && rho_obs >= 0.8,
               "spearman devices " + std::to_string(rho_dev) + ", obstacles " +
                   std::to_string(rho_obs));

        // (c) throughput falls and unserved pairs rise with obstacle density
        const double rho_t =
            spearman(mean_values(orows), mean_column(orows, &SweepRow::sum_throughput_bps));
        const double rho_u =
            spearman(mean_values(orows), mean_column(orows, &SweepRow::unserved));
        report("criterion 7c: sum throughput decreasing and unserved pairs increasing in "
               "obstacle count",
               rho_t <= -0.8 && rho_u >= 0.8,
               "spearman throughput " + std::to_string(rho_t) + ", unserved " +
                   std::to_string(rho_u));
    }
    // (d) grouped efficiency rises, whole-array efficiency falls with element count
    {
        Scenario base = generate_scenario({6, 6, 1.0}, 5, 8, 7.0, 77103);
        base.ris_subgroups = 4;
        SweepSpec sp;
        sp.variable = SweepVariable::ElementsPerGroup;
        sp.values = {36, 100, 196, 324};
        sp.trials = 20;
        sp.gbs = true;
        const auto grows = run_sweep(sp, base);
        const double rho_g =
            spearman(mean_values(grows), mean_column(grows, &SweepRow::mean_eff_bpj));
        sp.gbs = false;
        const auto nrows = run_sweep(sp, base);
        const double rho_n =
            spearman(mean_values(nrows), mean_column(nrows, &SweepRow::mean_eff_bpj));
        report("criterion 7d: grouped efficiency increasing, whole-array efficiency decreasing "
               "in elements per group",
               rho_g >= 0.8 && rho_n <= -0.8,
               "spearman grouped " + std::to_string(rho_g) + ", whole-array " +
                   std::to_string(rho_n));
    }
    // (e) a third reflection buys marginal throughput at lower efficiency
    {
        Scenario base = generate_scenario({8, 8, 1.0}, 6, 12, 10.0, 77104);
        base.ris_rows = base.ris_cols = 16;
        SweepSpec sp;
        sp.variable = SweepVariable::ObstacleCount;
        sp.values = {6, 9, 12};
        sp.trials = 20;
        sp.gbs = false;
        sp.selection = SelectPolicy::Throughput;
        sp.max_hops = 2;
        const auto two = run_sweep(sp, base);
        sp.max_hops = 3;
        const auto three = run_sweep(sp, base);
        const auto t2 = mean_column(two, &SweepRow::sum_throughput_bps);
        const auto t3 = mean_column(three, &SweepRow::sum_throughput_bps);
        const auto e2 = mean_column(two, &SweepRow::mean_eff_bpj);
        const auto e3 = mean_column(three, &SweepRow::mean_eff_bpj);
        double sum_t2 = 0, sum_t3 = 0, sum_e2 = 0, sum_e3 = 0;
        bool per_value_t = true;
        for (std::size_t i = 0; i < t2.size(); ++i) {
            sum_t2 += t2[i];
            sum_t3 += t3[i];
            sum_e2 += e2[i];
            sum_e3 += e3[i];
            if (t3[i] < t2[i]) per_value_t = false;
        }
        std::ostringstream os;
        os << "sum throughput x" << (sum_t3 / sum_t2) << ", efficiency x" << (sum_e3 / sum_e2);
        report("criterion 7e: triple-reflection throughput >= double, efficiency <= double",
               per_value_t && sum_t3 >= sum_t2 && sum_e3 <= sum_e2, os.str());
    }
    const double elapsed = ms_since(t0);
    report("criterion 7f: all trend sweeps complete in under 10 minutes", elapsed < 600000.0,
           std::to_string(elapsed / 1000.0) + " s");
}

// ---- criterion 8: CLI determinism ----

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void criterion_8(const std::string& cli) {
    if (cli.empty()) {
        report("criterion 8: byte-identical CLI reruns", false, "no CLI binary path given");
        return;
    }
    const std::string dir = "acceptance_tmp";
    if (std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) != 0) {
        report("criterion 8: byte-identical CLI reruns", false, "cannot create temp dir");
        return;
    }
    const std::string sc = dir + "/sc.json";

    auto run = [&](const std::string& args) {
        const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };

    bool ok = run("example --name 4x4 --out " + sc) == 0;
    ok = ok && run("deploy --scenario " + sc + " --out " + dir + "/p1.json") == 0;
    ok = ok && run("deploy --scenario " + sc + " --out " + dir + "/p2.json") == 0;
    ok = ok && run("select --scenario " + sc + " --plan " + dir + "/p1.json --out " + dir +
                   "/s1.csv") == 0;
    ok = ok && run("select --scenario " + sc + " --plan " + dir + "/p1.json --out " + dir +
                   "/s2.csv") == 0;
    const std::string sweep_args = " --var obstacle_count --values 1,2,3 --trials 3 ";
    ok = ok && run("sweep --scenario " + sc + sweep_args + "--out " + dir + "/w1.csv") == 0;
    ok = ok && run("sweep --scenario " + sc + sweep_args + "--out " + dir + "/w2.csv") == 0;

    const bool identical = ok && slurp(dir + "/p1.json") == slurp(dir + "/p2.json") &&
                           slurp(dir + "/s1.csv") == slurp(dir + "/s2.csv") &&
                           slurp(dir + "/w1.csv") == slurp(dir + "/w2.csv") &&
                           !slurp(dir + "/p1.json").empty() && !slurp(dir + "/w1.csv").empty();
    report("criterion 8: byte-identical CLI reruns (deploy, select, sweep)", identical,
           ok ? "" : "a CLI invocation failed");
    (void)!std::system(("rm -rf " + dir).c_str());
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    criterion_1();
    criteria_2_3(run_corpus());
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8(cli);

    std::printf("\n%d passed, %d failed\n", g_pass, g_fail);
    if (g_fail > 0) {
        std::printf("known defects: criteria 1b and 1c assert worked-example claims that "
                    "contradict the reference blind table; see README: worked-example discrepancies\n");
    }
    return g_fail == 0 ? 0 : 1;
}
