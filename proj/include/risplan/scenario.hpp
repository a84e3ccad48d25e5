#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "risplan/blind_pairs.hpp"
#include "risplan/channel.hpp"
#include "risplan/environment.hpp"

namespace risplan {

// A complete planning problem as it appears on disk. Radio quantities are
// stored in the file's units (dBm, dB, exponents) and converted to linear
// watts only when building ChannelParams.
struct Scenario {
    GridSpec grid{4, 4, 1.0};
    std::vector<CellId> obstacle_cells;   // sorted ascending
    std::vector<DevicePair> device_pairs; // sorted, unique
    double coverage_radius = 10.0;

    int ris_rows = 8;
    int ris_cols = 8;
    int ris_subgroups = 4;

    double tx_power_dbm = 30.0;
    double phase_power_dbm = 5.0;
    double pathloss_1m_exp = -3.53;
    double alpha = 2.0;
    double rician_k_db = 10.0;
    double bandwidth_hz = 500e6;
    double carrier_hz = 60e9;
    double packets = 1.0;
    double bits_per_packet = 1000.0;

    double t_threshold = 5e8; // bits/s
    std::uint64_t seed = 1;

    ChannelParams channel_params() const;
    RisSpec ris_spec() const;
    Environment build() const;
};

// Throws ValidationError naming the offending field.
void validate_scenario(const Scenario& sc);

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);
std::string scenario_to_json(const Scenario& sc);
void save_scenario(const Scenario& sc, const std::string& path);

// Seeded random world: obstacles are 1-4 cell rectangles, device pairs are
// sampled uniformly from distinct free cells within the coverage radius.
Scenario generate_scenario(const GridSpec& grid, int n_obstacles, int n_devices, double r,
                           std::uint64_t seed);

// The bundled worked example: 4x4 grid, obstacles at cells 3, 10 and 14,
// every free-cell pair as a device pair.
Scenario example_4x4();

} // namespace risplan
