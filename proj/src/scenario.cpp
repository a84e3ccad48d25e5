#include "risplan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "risplan/errors.hpp"
#include "risplan/rng.hpp"

namespace risplan {
namespace {

using Json = nlohmann::ordered_json;

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            throw ParseError("unknown key '" + item.key() + "' in " + where);
    }
}

double require_number(const Json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ParseError("missing key '" + key + "' in " + where);
    if (!obj.at(key).is_number())
        throw ParseError("key '" + key + "' in " + where + " must be a number");
    return obj.at(key).get<double>();
}

} // namespace

ChannelParams Scenario::channel_params() const {
    ChannelParams p;
    p.carrier_hz = carrier_hz;
    p.bandwidth_hz = bandwidth_hz;
    p.tx_power_w = dbm_to_watts(tx_power_dbm);
    p.phase_shift_power_w = dbm_to_watts(phase_power_dbm);
    p.pathloss_1m = std::pow(10.0, pathloss_1m_exp);
    p.pathloss_exponent = alpha;
    p.rician_k = db_to_linear(rician_k_db);
    p.packets = packets;
    p.bits_per_packet = bits_per_packet;
    return p;
}

RisSpec Scenario::ris_spec() const {
    RisSpec spec;
    spec.rows = ris_rows;
    spec.cols = ris_cols;
    spec.subgroups = ris_subgroups;
    spec.phase_power_per_subgroup = dbm_to_watts(phase_power_dbm);
    return spec;
}

Environment Scenario::build() const {
    return build_environment(grid, {obstacle_cells.begin(), obstacle_cells.end()});
}

void validate_scenario(const Scenario& sc) {
    if (sc.grid.rows < 1 || sc.grid.cols < 1)
        throw InvalidGrid("field grid: rows and cols must be >= 1");
    if (!(sc.grid.cell_size > 0.0)) throw InvalidGrid("field grid.cell_size: must be > 0");
    for (CellId c : sc.obstacle_cells) {
        if (!sc.grid.valid_cell(c))
            throw InvalidCell("field obstacles: cell " + std::to_string(c) + " outside " +
                              std::to_string(sc.grid.rows) + "x" + std::to_string(sc.grid.cols) +
                              " grid");
    }
    if (!(sc.coverage_radius > 0.0)) throw ValidationError("field radius: must be > 0");

    const Environment env = sc.build();
    for (const DevicePair& p : sc.device_pairs) {
        if (!sc.grid.valid_cell(p.u) || !sc.grid.valid_cell(p.v))
            throw InvalidCell("field pairs: pair (" + std::to_string(p.u) + "," +
                              std::to_string(p.v) + ") references a cell outside the grid");
        if (p.u == p.v)
            throw InvalidDevice("field pairs: endpoints must differ, got cell " +
                                std::to_string(p.u) + " twice");
        if (env.is_blocked(p.u) || env.is_blocked(p.v))
            throw InvalidDevice("field pairs: pair (" + std::to_string(p.u) + "," +
                                std::to_string(p.v) + ") has an endpoint in a blocked cell");
        if (distance(cell_center(env, p.u), cell_center(env, p.v)) > sc.coverage_radius)
            throw InvalidDevice("field pairs: pair (" + std::to_string(p.u) + "," +
                                std::to_string(p.v) + ") exceeds the coverage radius");
    }
    sc.ris_spec().validate();
    if (sc.t_threshold < 0.0) throw ValidationError("field t_threshold: must be >= 0");
    if (!(sc.bandwidth_hz > 0.0)) throw ValidationError("field channel.bandwidth_hz: must be > 0");
    if (!(sc.carrier_hz > 0.0)) throw ValidationError("field channel.carrier_hz: must be > 0");
    if (!(sc.packets > 0.0)) throw ValidationError("field channel.packets: must be > 0");
    if (!(sc.bits_per_packet > 0.0))
        throw ValidationError("field channel.bits_per_packet: must be > 0");
    if (!(sc.alpha > 0.0)) throw ValidationError("field channel.alpha: must be > 0");
}

Scenario parse_scenario(const std::string& json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scenario parse failed: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("scenario must be a JSON object");
    reject_unknown_keys(j,
                        {"grid", "obstacles", "pairs", "radius", "ris", "channel", "t_threshold",
                         "seed"},
                        "scenario");

    Scenario sc;
    if (!j.contains("grid") || !j.at("grid").is_object())
        throw ParseError("missing object 'grid'");
    const Json& jg = j.at("grid");
    reject_unknown_keys(jg, {"rows", "cols", "cell_size"}, "grid");
    sc.grid.rows = static_cast<int>(require_number(jg, "rows", "grid"));
    sc.grid.cols = static_cast<int>(require_number(jg, "cols", "grid"));
    sc.grid.cell_size = jg.contains("cell_size") ? require_number(jg, "cell_size", "grid") : 1.0;

    if (!j.contains("obstacles") || !j.at("obstacles").is_array())
        throw ParseError("missing array 'obstacles'");
    for (const auto& v : j.at("obstacles")) {
        if (!v.is_number_integer()) throw ParseError("field obstacles: entries must be integers");
        sc.obstacle_cells.push_back(v.get<int>());
    }
    std::sort(sc.obstacle_cells.begin(), sc.obstacle_cells.end());
    sc.obstacle_cells.erase(std::unique(sc.obstacle_cells.begin(), sc.obstacle_cells.end()),
                            sc.obstacle_cells.end());

    if (!j.contains("pairs") || !j.at("pairs").is_array())
        throw ParseError("missing array 'pairs'");
    for (const auto& v : j.at("pairs")) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
            !v[1].is_number_integer())
            throw ParseError("field pairs: entries must be [u, v] integer pairs");
        sc.device_pairs.emplace_back(v[0].get<int>(), v[1].get<int>());
    }
    std::sort(sc.device_pairs.begin(), sc.device_pairs.end());
    sc.device_pairs.erase(std::unique(sc.device_pairs.begin(), sc.device_pairs.end()),
                          sc.device_pairs.end());

    sc.coverage_radius = require_number(j, "radius", "scenario");

    if (!j.contains("ris") || !j.at("ris").is_object()) throw ParseError("missing object 'ris'");
    const Json& jr = j.at("ris");
    reject_unknown_keys(jr, {"rows", "cols", "subgroups"}, "ris");
    sc.ris_rows = static_cast<int>(require_number(jr, "rows", "ris"));
    sc.ris_cols = static_cast<int>(require_number(jr, "cols", "ris"));
    sc.ris_subgroups = static_cast<int>(require_number(jr, "subgroups", "ris"));

    if (!j.contains("channel") || !j.at("channel").is_object())
        throw ParseError("missing object 'channel'");
    const Json& jc = j.at("channel");
    reject_unknown_keys(jc,
                        {"tx_power_dbm", "phase_power_dbm", "pathloss_1m_exp", "alpha",
                         "rician_k_db", "bandwidth_hz", "carrier_hz", "packets",
                         "bits_per_packet"},
                        "channel");
    sc.tx_power_dbm = require_number(jc, "tx_power_dbm", "channel");
    sc.phase_power_dbm = require_number(jc, "phase_power_dbm", "channel");
    sc.pathloss_1m_exp = require_number(jc, "pathloss_1m_exp", "channel");
    sc.alpha = require_number(jc, "alpha", "channel");
    sc.rician_k_db = require_number(jc, "rician_k_db", "channel");
    sc.bandwidth_hz = require_number(jc, "bandwidth_hz", "channel");
    sc.carrier_hz = require_number(jc, "carrier_hz", "channel");
    sc.packets = require_number(jc, "packets", "channel");
    sc.bits_per_packet = require_number(jc, "bits_per_packet", "channel");

    sc.t_threshold = require_number(j, "t_threshold", "scenario");

    if (!j.contains("seed")) throw ParseError("missing key 'seed'");
    if (!j.at("seed").is_number_integer() && !j.at("seed").is_number_unsigned())
        throw ParseError("field seed: must be an integer");
    sc.seed = j.at("seed").get<std::uint64_t>();

    validate_scenario(sc);
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& sc) {
    Json j;
    j["grid"] = {{"rows", sc.grid.rows}, {"cols", sc.grid.cols}, {"cell_size", sc.grid.cell_size}};
    j["obstacles"] = sc.obstacle_cells;
    Json pairs = Json::array();
    for (const DevicePair& p : sc.device_pairs) pairs.push_back({p.u, p.v});
    j["pairs"] = pairs;
    j["radius"] = sc.coverage_radius;
    j["ris"] = {{"rows", sc.ris_rows}, {"cols", sc.ris_cols}, {"subgroups", sc.ris_subgroups}};
    j["channel"] = {{"tx_power_dbm", sc.tx_power_dbm},
                    {"phase_power_dbm", sc.phase_power_dbm},
                    {"pathloss_1m_exp", sc.pathloss_1m_exp},
                    {"alpha", sc.alpha},
                    {"rician_k_db", sc.rician_k_db},
                    {"bandwidth_hz", sc.bandwidth_hz},
                    {"carrier_hz", sc.carrier_hz},
                    {"packets", sc.packets},
                    {"bits_per_packet", sc.bits_per_packet}};
    j["t_threshold"] = sc.t_threshold;
    j["seed"] = sc.seed;
    return j.dump(2) + "\n";
}

void save_scenario(const Scenario& sc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write scenario file: " + path);
    out << scenario_to_json(sc);
}

Scenario generate_scenario(const GridSpec& grid, int n_obstacles, int n_devices, double r,
                           std::uint64_t seed) {
    if (grid.rows < 1 || grid.cols < 1) throw InvalidGrid("generate_scenario: empty grid");
    if (n_obstacles < 0 || n_devices < 0)
        throw GenerationFailed("generate_scenario: negative counts");

    SplitMix64 rng(seed);
    constexpr int kAttempts = 64;

    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        std::set<CellId> blocked;
        // obstacles: rectangles of 1x1, 1x2, 2x1 or 2x2 cells
        for (int i = 0; i < n_obstacles; ++i) {
            const int shape = static_cast<int>(rng.next_below(4));
            const int h = (shape == 1 || shape == 3) ? 2 : 1;
            const int w = (shape == 2 || shape == 3) ? 2 : 1;
            if (grid.rows < h || grid.cols < w) continue;
            const int row = 1 + static_cast<int>(rng.next_below(grid.rows - h + 1));
            const int col = 1 + static_cast<int>(rng.next_below(grid.cols - w + 1));
            for (int dr = 0; dr < h; ++dr)
                for (int dc = 0; dc < w; ++dc) blocked.insert(grid.cell_at(row + dr, col + dc));
        }
        Environment env;
        try {
            env = build_environment(grid, blocked);
        } catch (const Error&) {
            continue;
        }
        const auto& free = env.free_cells();
        if (static_cast<int>(free.size()) < 2 && n_devices > 0) continue;

        std::set<DevicePair> pairs;
        int tries = 0;
        const int max_tries = 200 * (n_devices + 1);
        while (static_cast<int>(pairs.size()) < n_devices && tries < max_tries) {
            ++tries;
            const CellId a = free[rng.next_below(free.size())];
            const CellId b = free[rng.next_below(free.size())];
            if (a == b) continue;
            const DevicePair p(a, b);
            if (distance(cell_center(env, p.u), cell_center(env, p.v)) > r) continue;
            pairs.insert(p);
        }
        if (static_cast<int>(pairs.size()) < n_devices) continue;

        Scenario sc;
        sc.grid = grid;
        sc.obstacle_cells.assign(blocked.begin(), blocked.end());
        sc.device_pairs.assign(pairs.begin(), pairs.end());
        sc.coverage_radius = r;
        sc.seed = seed;
        validate_scenario(sc);
        return sc;
    }
    throw GenerationFailed("generate_scenario: no feasible world after bounded retries");
}

Scenario example_4x4() {
    Scenario sc;
    sc.grid = {4, 4, 1.0};
    sc.obstacle_cells = {3, 10, 14};
    sc.coverage_radius = 10.0;
    sc.seed = 424242;
    const Environment env = sc.build();
    sc.device_pairs = all_free_cell_pairs(env, sc.coverage_radius);
    validate_scenario(sc);
    return sc;
}

} // namespace risplan
