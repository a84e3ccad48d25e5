#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "risplan/environment.hpp"

namespace risplan {

using Complex = std::complex<double>;
using Cvec = std::vector<Complex>;

struct Cmat {
    int rows = 0;
    int cols = 0;
    std::vector<Complex> v; // row-major

    Cmat() = default;
    Cmat(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c) {}
    Complex& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
    const Complex& at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }
};

// Reflector array: rows x cols elements split into `subgroups` equal square
// blocks. In grouped operation one block reflects with a single common phase
// shift; ungrouped operation drives the whole array with one phase per
// element, so its phase-shift power grows with the element count.
struct RisSpec {
    int rows = 8;
    int cols = 8;
    int subgroups = 4;
    double phase_power_per_subgroup = 3.1622776601683794e-3; // 5 dBm
    CellId placement = 0;

    int total_elements() const { return rows * cols; }
    int elements_per_subgroup() const { return total_elements() / subgroups; }
    int subgroup_side() const;
    void validate() const; // subgroups * side^2 == rows * cols, all positive
};

// whole-array phase power in ungrouped mode: one phase per element
inline double whole_ris_phase_power(const RisSpec& ris) {
    return ris.phase_power_per_subgroup * ris.total_elements();
}

struct ChannelParams {
    double carrier_hz = 60e9;
    double bandwidth_hz = 500e6;
    double tx_power_w = 1.0;                                // 30 dBm
    double phase_shift_power_w = 3.1622776601683794e-3;     // 5 dBm
    double noise_variance_w = 0.0;                          // 0: thermal over bandwidth
    double pathloss_1m = 2.9512092266663855e-4;             // 10^-3.53
    double pathloss_exponent = 2.0;
    double rician_k = 10.0;                                 // linear (10 dB)
    double packets = 1.0;
    double bits_per_packet = 1000.0;

    double noise() const;
    double wavelength() const { return 299792458.0 / carrier_hz; }
};

// One fading draw for a reflective chain: u -> first reflector (h_in), one
// matrix per reflector-to-reflector hop (h_mid), last reflector -> v (h_out).
// common_phases holds the per-subgroup phase compensation actually applied.
struct ChannelRealization {
    Cvec h_in;
    std::vector<Cmat> h_mid;
    Cvec h_out;
    std::vector<double> common_phases;
};

struct LinkEvaluation {
    double snr = 0.0;        // linear
    double throughput = 0.0; // bits/s
    double energy = 0.0;     // joules for the whole packet burst
    double efficiency = 0.0; // bits/joule
};

// Rician entries: sqrt(K/(K+1)) e^{j theta} + sqrt(1/(K+1)) CN(0,1), with
// theta set by the exact path length at the carrier wavelength. The draw is
// a pure function of (seed, link_id).
Cvec sample_link(const Point& a, const Point& b, int n, const ChannelParams& params,
                 std::uint64_t seed, std::uint64_t link_id);
Cmat sample_link_matrix(const Point& a, const Point& b, int n, const ChannelParams& params,
                        std::uint64_t seed, std::uint64_t link_id);

// h_out * (mid matrices) * h_in, before any common phase is applied
Complex cascade_scalar(const ChannelRealization& real);

// Cascaded SNR for 1..3 reflections; hop_distances has reflections+1 legs.
double snr_khop(const ChannelRealization& real, const std::vector<double>& hop_distances,
                const ChannelParams& params);
double snr_single(const ChannelRealization& real, double d_u, double d_v,
                  const ChannelParams& params);
double snr_double(const ChannelRealization& real, double d_u, double d_mid, double d_v,
                  const ChannelParams& params);

// single-hop link budget for a direct device-to-device path
double snr_direct(Complex fading, double d, const ChannelParams& params);

double throughput(double snr, const ChannelParams& params);

// energy to push the configured packet burst at throughput T
double energy_khop(double throughput_bps, const std::vector<double>& phase_powers,
                   const ChannelParams& params);
double energy_single(double throughput_bps, double subgroup_phase_power,
                     const ChannelParams& params);
double energy_double(double throughput_bps, double phase_power_i, double phase_power_j,
                     const ChannelParams& params);

double efficiency(double throughput_bps, double energy_j);

LinkEvaluation evaluate_link(double snr, const std::vector<double>& phase_powers,
                             const ChannelParams& params);

} // namespace risplan
