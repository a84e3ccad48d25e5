#include "risplan/channel.hpp"

#include <cmath>
#include <string>

#include "risplan/errors.hpp"
#include "risplan/rng.hpp"

namespace risplan {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kInvSqrt2 = 0.70710678118654752440084436210;

Complex rician_entry(SplitMix64& rng, double los_amp, double scatter_amp, Complex los) {
    const double re = rng.next_normal();
    const double im = rng.next_normal();
    return los_amp * los + scatter_amp * Complex(re * kInvSqrt2, im * kInvSqrt2);
}

} // namespace

int RisSpec::subgroup_side() const {
    const int per = elements_per_subgroup();
    int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(per))));
    return side;
}

void RisSpec::validate() const {
    if (rows < 1 || cols < 1 || subgroups < 1)
        throw InvalidConfiguration("ris dimensions and subgroup count must be positive");
    if (total_elements() % subgroups != 0)
        throw InvalidConfiguration("ris subgroups must evenly split the element count");
    const int side = subgroup_side();
    if (side * side != elements_per_subgroup())
        throw InvalidConfiguration("ris subgroup element count must be a perfect square");
    if (!(phase_power_per_subgroup > 0.0))
        throw InvalidConfiguration("phase power must be positive");
}

double ChannelParams::noise() const {
    if (noise_variance_w > 0.0) return noise_variance_w;
    // thermal floor: -174 dBm/Hz over the configured bandwidth
    const double dbm = -174.0 + 10.0 * std::log10(bandwidth_hz);
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

Cvec sample_link(const Point& a, const Point& b, int n, const ChannelParams& params,
                 std::uint64_t seed, std::uint64_t link_id) {
    const double d = distance(a, b);
    const double theta = -kTwoPi * std::fmod(d / params.wavelength(), 1.0);
    const Complex los = std::polar(1.0, theta);
    const double k = params.rician_k;
    const double los_amp = std::sqrt(k / (k + 1.0));
    const double scatter_amp = std::sqrt(1.0 / (k + 1.0));

    SplitMix64 rng(mix64(seed, link_id));
    Cvec h(static_cast<std::size_t>(n));
    for (auto& e : h) e = rician_entry(rng, los_amp, scatter_amp, los);
    return h;
}

Cmat sample_link_matrix(const Point& a, const Point& b, int n, const ChannelParams& params,
                        std::uint64_t seed, std::uint64_t link_id) {
    const double d = distance(a, b);
    const double theta = -kTwoPi * std::fmod(d / params.wavelength(), 1.0);
    const Complex los = std::polar(1.0, theta);
    const double k = params.rician_k;
    const double los_amp = std::sqrt(k / (k + 1.0));
    const double scatter_amp = std::sqrt(1.0 / (k + 1.0));

    SplitMix64 rng(mix64(seed, link_id));
    Cmat m(n, n);
    for (auto& e : m.v) e = rician_entry(rng, los_amp, scatter_amp, los);
    return m;
}

Complex cascade_scalar(const ChannelRealization& real) {
    Cvec cur = real.h_in;
    for (const Cmat& m : real.h_mid) {
        Cvec next(static_cast<std::size_t>(m.rows), Complex(0.0, 0.0));
        for (int r = 0; r < m.rows; ++r) {
            Complex acc(0.0, 0.0);
            for (int c = 0; c < m.cols; ++c) acc += m.at(r, c) * cur[c];
            next[r] = acc;
        }
        cur = std::move(next);
    }
    Complex cascade(0.0, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) cascade += real.h_out[i] * cur[i];
    return cascade;
}

double snr_khop(const ChannelRealization& real, const std::vector<double>& hop_distances,
                const ChannelParams& params) {
    const int reflections = static_cast<int>(hop_distances.size()) - 1;
    if (reflections < 1 || reflections > 3)
        throw Unsupported("snr_khop supports 1..3 reflections, got " +
                          std::to_string(reflections));
    if (static_cast<int>(real.h_mid.size()) != reflections - 1)
        throw InvalidConfiguration("realization has " + std::to_string(real.h_mid.size()) +
                                   " mid hops for " + std::to_string(reflections) +
                                   " reflections");
    for (double d : hop_distances) {
        if (!(d > 0.0)) throw DegenerateGeometry("hop distance must be positive");
    }

    Complex cascade = cascade_scalar(real);

    double phase_sum = 0.0;
    for (double ph : real.common_phases) phase_sum += ph;
    if (phase_sum != 0.0) cascade *= std::polar(1.0, phase_sum);

    double attenuation = 1.0;
    for (double d : hop_distances) attenuation *= std::pow(d, -params.pathloss_exponent);

    return params.tx_power_w * std::pow(params.pathloss_1m, reflections + 1.0) * attenuation *
           std::norm(cascade) / params.noise();
}

double snr_single(const ChannelRealization& real, double d_u, double d_v,
                  const ChannelParams& params) {
    return snr_khop(real, {d_u, d_v}, params);
}

double snr_double(const ChannelRealization& real, double d_u, double d_mid, double d_v,
                  const ChannelParams& params) {
    return snr_khop(real, {d_u, d_mid, d_v}, params);
}

double snr_direct(Complex fading, double d, const ChannelParams& params) {
    if (!(d > 0.0)) throw DegenerateGeometry("direct-link distance must be positive");
    return params.tx_power_w * params.pathloss_1m * std::pow(d, -params.pathloss_exponent) *
           std::norm(fading) / params.noise();
}

double throughput(double snr, const ChannelParams& params) {
    if (snr < 0.0) throw InvalidConfiguration("snr must be nonnegative");
    return params.bandwidth_hz * std::log2(1.0 + snr);
}

double energy_khop(double throughput_bps, const std::vector<double>& phase_powers,
                   const ChannelParams& params) {
    if (!(throughput_bps > 0.0))
        throw ZeroThroughput("energy undefined at zero throughput");
    double total = params.tx_power_w;
    for (double pp : phase_powers) total += pp;
    return params.packets * params.bits_per_packet / throughput_bps * total;
}

double energy_single(double throughput_bps, double subgroup_phase_power,
                     const ChannelParams& params) {
    return energy_khop(throughput_bps, {subgroup_phase_power}, params);
}

double energy_double(double throughput_bps, double phase_power_i, double phase_power_j,
                     const ChannelParams& params) {
    return energy_khop(throughput_bps, {phase_power_i, phase_power_j}, params);
}

double efficiency(double throughput_bps, double energy_j) {
    if (!(energy_j > 0.0)) throw ZeroThroughput("efficiency undefined at nonpositive energy");
    return throughput_bps / energy_j;
}

LinkEvaluation evaluate_link(double snr, const std::vector<double>& phase_powers,
                             const ChannelParams& params) {
    LinkEvaluation ev;
    ev.snr = snr;
    ev.throughput = throughput(snr, params);
    if (ev.throughput > 0.0) {
        ev.energy = energy_khop(ev.throughput, phase_powers, params);
        ev.efficiency = efficiency(ev.throughput, ev.energy);
    }
    return ev;
}

} // namespace risplan
