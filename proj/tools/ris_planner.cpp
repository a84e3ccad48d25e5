// Command-line front end: deploy reflectors for a scenario, pick subgroups
// for its blind pairs, run experiment sweeps, or emit the bundled example.
// Exit codes: 0 success, 2 validation error, 1 internal error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "risplan/deploy.hpp"
#include "risplan/errors.hpp"
#include "risplan/group_select.hpp"
#include "risplan/rng.hpp"
#include "risplan/scenario.hpp"
#include "risplan/sweep.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace risplan;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write output file: " + path);
    out << content;
}

Scenario load_with_env_seed(const std::string& path) {
    Scenario sc = load_scenario(path);
    if (const char* s = std::getenv("RIS_PLANNER_SEED")) {
        sc.seed = std::strtoull(s, nullptr, 10);
    }
    return sc;
}

Json pairs_to_json(const std::vector<DevicePair>& pairs) {
    Json out = Json::array();
    for (const DevicePair& p : pairs) out.push_back({p.u, p.v});
    return out;
}

std::string plan_to_json(const DeploymentPlan& plan, const std::string& baseline,
                         const BlindPairSet& blind) {
    Json j;
    j["baseline"] = baseline;
    j["selected"] = plan.selected;
    Json gains = Json::array();
    for (const auto& g : plan.gains) gains.push_back(pairs_to_json(g));
    j["step_gains"] = gains;
    j["uncovered"] = pairs_to_json(plan.uncovered);
    j["blind_pairs"] = blind.pairs.size();
    j["covered"] = blind.pairs.size() - plan.uncovered.size();
    return j.dump(2) + "\n";
}

int cmd_deploy(const std::string& scenario_path, const std::string& baseline, int max_ris,
               const std::string& out_path) {
    const Scenario sc = load_with_env_seed(scenario_path);
    const Environment env = sc.build();
    const BlindPairSet blind =
        identify_blind_pairs(env, sc.device_pairs, sc.coverage_radius);

    DeployBudget budget;
    if (max_ris > 0) budget.max_ris = max_ris;

    DeploymentPlan plan;
    if (baseline == "greedy") {
        plan = greedy_deploy(env, blind, sc.coverage_radius, budget);
    } else if (baseline == "single-only") {
        plan = greedy_single_only(env, blind, sc.coverage_radius, budget);
    } else if (baseline == "random") {
        const int count =
            max_ris > 0 ? max_ris
                        : static_cast<int>(greedy_deploy(env, blind, sc.coverage_radius).selected
                                               .size());
        plan = random_deploy(env, blind, sc.coverage_radius,
                             std::min<int>(count, static_cast<int>(env.free_cells().size())),
                             mix64(sc.seed, 0xA5A5));
    } else if (baseline == "exact") {
        plan = exact_deploy(env, blind, sc.coverage_radius);
    } else {
        throw ValidationError("unknown baseline: " + baseline);
    }
    write_output(out_path, plan_to_json(plan, baseline, blind));
    return 0;
}

int cmd_select(const std::string& scenario_path, const std::string& plan_path, double t_th,
               const std::string& out_path) {
    const Scenario sc = load_with_env_seed(scenario_path);
    const Environment env = sc.build();

    std::ifstream in(plan_path);
    if (!in) throw ParseError("cannot open plan file: " + plan_path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("plan parse failed: ") + e.what());
    }
    if (!j.contains("selected") || !j.at("selected").is_array())
        throw ParseError("plan file needs a 'selected' array");
    std::vector<CellId> cells;
    for (const auto& v : j.at("selected")) cells.push_back(v.get<int>());
    for (CellId c : cells) {
        if (!env.is_free(c))
            throw InvalidCell("plan cell " + std::to_string(c) + " is not a free cell");
    }

    const BlindPairSet blind =
        identify_blind_pairs(env, sc.device_pairs, sc.coverage_radius);
    const double threshold = t_th >= 0.0 ? t_th : sc.t_threshold;
    const ChannelSampler sampler(env, cells, sc.ris_spec(), sc.channel_params(),
                                 sc.coverage_radius, mix64(sc.seed, 0x5A17ED0C0FFEEULL), true);
    const auto served = allocate_batch(blind.pairs, sampler, 2, threshold);

    std::ostringstream csv;
    csv << "pair_u,pair_v,served,hops,cells,subgroups,snr,throughput_bps,energy_j,eff_bpj\n";
    for (const DevicePair& p : blind.pairs) {
        const ServedPair* hit = nullptr;
        for (const ServedPair& sp : served) {
            if (sp.pair == p) {
                hit = &sp;
                break;
            }
        }
        csv << p.u << ',' << p.v << ',';
        if (!hit) {
            csv << "0,,,,,,\n";
            continue;
        }
        csv << "1," << hit->path.chain.size() << ',';
        std::string cells_s, subs_s;
        for (std::size_t i = 0; i < hit->path.chain.size(); ++i) {
            if (i) {
                cells_s += '|';
                subs_s += '|';
            }
            cells_s += std::to_string(cells[hit->path.chain[i].ris]);
            subs_s += std::to_string(hit->path.chain[i].subgroup + 1);
        }
        const LinkEvaluation& ev = hit->path.evaluation;
        csv << cells_s << ',' << subs_s << ',' << fmt_double(ev.snr) << ','
            << fmt_double(ev.throughput) << ',' << fmt_double(ev.energy) << ','
            << fmt_double(ev.efficiency) << '\n';
    }
    write_output(out_path, csv.str());
    return 0;
}

int cmd_sweep(const std::string& scenario_path, const std::string& var,
              const std::string& values_csv, int trials, const std::string& baseline,
              bool no_double, bool ngbs, int max_hops, const std::string& select_by,
              bool timings, const std::string& out_path) {
    const Scenario base = load_with_env_seed(scenario_path);

    SweepSpec spec;
    if (var == "coverage_radius") spec.variable = SweepVariable::CoverageRadius;
    else if (var == "device_count") spec.variable = SweepVariable::DeviceCount;
    else if (var == "obstacle_count") spec.variable = SweepVariable::ObstacleCount;
    else if (var == "elements_per_group") spec.variable = SweepVariable::ElementsPerGroup;
    else if (var == "grid_size") spec.variable = SweepVariable::GridSize;
    else throw ValidationError("unknown sweep variable: " + var);

    std::stringstream ss(values_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) spec.values.push_back(std::stod(tok));
    }
    if (spec.values.empty()) throw ValidationError("sweep needs --values");

    spec.trials = trials;
    spec.allow_double = !no_double;
    spec.gbs = !ngbs;
    spec.max_hops = max_hops;
    if (baseline == "greedy") spec.baseline = Baseline::Greedy;
    else if (baseline == "single-only") spec.baseline = Baseline::SingleOnly;
    else if (baseline == "random") spec.baseline = Baseline::Random;
    else if (baseline == "exact") spec.baseline = Baseline::Exact;
    else throw ValidationError("unknown baseline: " + baseline);
    if (select_by == "eff") spec.selection = SelectPolicy::Efficiency;
    else if (select_by == "tput") spec.selection = SelectPolicy::Throughput;
    else throw ValidationError("unknown selection policy: " + select_by);

    const auto rows = run_sweep(spec, base, ExecPolicy::Parallel, timings);
    write_output(out_path, sweep_to_csv(rows));
    return 0;
}

int cmd_example(const std::string& name, const std::string& out_path) {
    if (name != "4x4") throw ValidationError("unknown example: " + name);
    write_output(out_path, scenario_to_json(example_4x4()));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reflector placement planner and link-budget harness"};
    app.require_subcommand(1);

    std::string scenario_path, plan_path, out_path, baseline = "greedy";
    std::string var, values_csv, select_by = "eff", example_name = "4x4";
    int max_ris = 0, trials = 1, max_hops = 2;
    double t_th = -1.0;
    bool no_double = false, ngbs = false, timings = false;

    auto* deploy = app.add_subcommand("deploy", "plan reflector placements for a scenario");
    deploy->add_option("--scenario", scenario_path, "scenario file")->required();
    deploy->add_option("--baseline", baseline, "greedy|single-only|random|exact");
    deploy->add_option("--max-ris", max_ris, "placement budget (random: count)");
    deploy->add_option("--out", out_path, "output file (default stdout)");

    auto* select = app.add_subcommand("select", "pick serving subgroups for the blind pairs");
    select->add_option("--scenario", scenario_path, "scenario file")->required();
    select->add_option("--plan", plan_path, "plan file from deploy")->required();
    select->add_option("--t-th", t_th, "throughput threshold in bits/s");
    select->add_option("--out", out_path, "output file (default stdout)");

    auto* sweep = app.add_subcommand("sweep", "run a seeded experiment sweep to CSV");
    sweep->add_option("--scenario", scenario_path, "base scenario file")->required();
    sweep->add_option("--var", var,
                      "coverage_radius|device_count|obstacle_count|elements_per_group|grid_size")
        ->required();
    sweep->add_option("--values", values_csv, "comma-separated values")->required();
    sweep->add_option("--trials", trials, "replications per value");
    sweep->add_option("--baseline", baseline, "greedy|single-only|random|exact");
    sweep->add_flag("--no-double", no_double, "deploy with single reflection only");
    sweep->add_flag("--ngbs", ngbs, "drive whole arrays instead of subgroups");
    sweep->add_option("--max-hops", max_hops, "service paths may use 1..3 reflections");
    sweep->add_option("--select-by", select_by, "eff|tput");
    sweep->add_flag("--timings", timings, "record wall-clock runtime per row");
    sweep->add_option("--out", out_path, "output file (default stdout)");

    auto* example = app.add_subcommand("example", "emit a bundled scenario");
    example->add_option("--name", example_name, "example name (4x4)");
    example->add_option("--out", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (deploy->parsed()) return cmd_deploy(scenario_path, baseline, max_ris, out_path);
        if (select->parsed()) return cmd_select(scenario_path, plan_path, t_th, out_path);
        if (sweep->parsed())
            return cmd_sweep(scenario_path, var, values_csv, trials, baseline, no_double, ngbs,
                             max_hops, select_by, timings, out_path);
        if (example->parsed()) return cmd_example(example_name, out_path);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
