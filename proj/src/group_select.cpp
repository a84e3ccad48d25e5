#include "risplan/group_select.hpp"

#include <algorithm>
#include <cmath>

#include "risplan/errors.hpp"
#include "risplan/rng.hpp"

namespace risplan {
namespace {

// link-id tags keep the three hop kinds in distinct hash streams
constexpr std::uint64_t kTagIn = 1, kTagMid = 2, kTagOut = 3, kTagDirect = 4;

bool better(double lhs, double rhs) { return lhs > rhs; }

} // namespace

CandidateSets candidate_sets(const Environment& env, const DevicePair& pair,
                             const std::vector<CellId>& plan_cells, const RisSpec& ris,
                             double r, bool grouped) {
    ris.validate();
    const int subs = grouped ? ris.subgroups : 1;
    const Point u = cell_center(env, pair.u);
    const Point v = cell_center(env, pair.v);

    const int n_ris = static_cast<int>(plan_cells.size());
    std::vector<char> sees_u(n_ris, 0), sees_v(n_ris, 0), usable(n_ris, 0);
    for (int i = 0; i < n_ris; ++i) {
        usable[i] = plan_cells[i] != pair.u && plan_cells[i] != pair.v;
        if (!usable[i]) continue;
        const Point c = cell_center(env, plan_cells[i]);
        sees_u[i] = has_los(env, u, c, r);
        sees_v[i] = has_los(env, c, v, r);
    }

    CandidateSets out;
    for (int i = 0; i < n_ris; ++i) {
        if (usable[i] && sees_u[i] && sees_v[i]) {
            for (int s = 0; s < subs; ++s) out.singles.push_back({i, s});
        }
    }
    for (int i = 0; i < n_ris; ++i) {
        if (!usable[i] || !sees_u[i]) continue;
        const Point ci = cell_center(env, plan_cells[i]);
        for (int j = 0; j < n_ris; ++j) {
            if (j == i || !usable[j] || !sees_v[j]) continue;
            if (!has_los(env, ci, cell_center(env, plan_cells[j]), r)) continue;
            for (int s = 0; s < subs; ++s) {
                for (int t = 0; t < subs; ++t) {
                    out.doubles.push_back({{i, s}, {j, t}});
                }
            }
        }
    }
    return out;
}

ChannelSampler::ChannelSampler(const Environment& env, std::vector<CellId> plan_cells,
                               RisSpec ris, ChannelParams params, double radius,
                               std::uint64_t seed, bool grouped)
    : env_(&env), cells_(std::move(plan_cells)), ris_(ris), params_(params), radius_(radius),
      seed_(seed), grouped_(grouped) {
    ris_.validate();
}

Point ChannelSampler::ris_point(int ris_index) const {
    return cell_center(*env_, cells_.at(static_cast<std::size_t>(ris_index)));
}

Point ChannelSampler::device_point(CellId c) const { return cell_center(*env_, c); }

ChannelRealization ChannelSampler::realize(const DevicePair& pair,
                                           const std::vector<SubgroupRef>& chain) const {
    if (chain.empty() || chain.size() > 3)
        throw InvalidConfiguration("reflection chains have 1..3 hops");
    const int n = elements();
    const Point u = device_point(pair.u);
    const Point v = device_point(pair.v);

    auto cell_of = [&](const SubgroupRef& ref) {
        return static_cast<std::uint64_t>(cells_.at(static_cast<std::size_t>(ref.ris)));
    };

    ChannelRealization real;
    real.h_in = sample_link(u, ris_point(chain.front().ris), n, params_, seed_,
                            hash_values({kTagIn, static_cast<std::uint64_t>(pair.u),
                                         cell_of(chain.front()),
                                         static_cast<std::uint64_t>(chain.front().subgroup)}));
    for (std::size_t h = 0; h + 1 < chain.size(); ++h) {
        real.h_mid.push_back(sample_link_matrix(
            ris_point(chain[h].ris), ris_point(chain[h + 1].ris), n, params_, seed_,
            hash_values({kTagMid, cell_of(chain[h]),
                         static_cast<std::uint64_t>(chain[h].subgroup), cell_of(chain[h + 1]),
                         static_cast<std::uint64_t>(chain[h + 1].subgroup)})));
    }
    real.h_out = sample_link(ris_point(chain.back().ris), v, n, params_, seed_,
                             hash_values({kTagOut, cell_of(chain.back()),
                                          static_cast<std::uint64_t>(chain.back().subgroup),
                                          static_cast<std::uint64_t>(pair.v)}));

    // one common shift per subgroup; the first absorbs the full compensation
    real.common_phases.assign(chain.size(), 0.0);
    const Complex casc = cascade_scalar(real);
    if (casc != Complex(0.0, 0.0)) real.common_phases.front() = -std::arg(casc);
    return real;
}

std::vector<double> ChannelSampler::hop_distances(const DevicePair& pair,
                                                  const std::vector<SubgroupRef>& chain) const {
    std::vector<double> out;
    Point prev = device_point(pair.u);
    for (const SubgroupRef& ref : chain) {
        const Point cur = ris_point(ref.ris);
        out.push_back(distance(prev, cur));
        prev = cur;
    }
    out.push_back(distance(prev, device_point(pair.v)));
    return out;
}

Complex ChannelSampler::direct_fading(const DevicePair& pair) const {
    return sample_link(device_point(pair.u), device_point(pair.v), 1, params_, seed_,
                       hash_values({kTagDirect, static_cast<std::uint64_t>(pair.u),
                                    static_cast<std::uint64_t>(pair.v)}))[0];
}

namespace {

LinkEvaluation evaluate_chain(const ChannelSampler& ch, const DevicePair& pair,
                              const std::vector<SubgroupRef>& chain) {
    const ChannelRealization real = ch.realize(pair, chain);
    const double snr = snr_khop(real, ch.hop_distances(pair, chain), ch.params());
    const std::vector<double> phases(chain.size(), ch.subgroup_phase_power());
    return evaluate_link(snr, phases, ch.params());
}

bool feasible(const LinkEvaluation& ev, double t_threshold) {
    return ev.throughput >= t_threshold && ev.throughput > 0.0 && ev.energy > 0.0;
}

} // namespace

Selection select_group(const DevicePair& pair, const CandidateSets& candidates,
                       const ChannelSampler& channels, double t_threshold) {
    if (t_threshold < 0.0) throw InvalidConfiguration("throughput threshold must be >= 0");

    Selection best_single, best_double;
    for (const SubgroupRef& ref : candidates.singles) {
        const LinkEvaluation ev = evaluate_chain(channels, pair, {ref});
        if (!feasible(ev, t_threshold)) continue;
        if (best_single.mode == SelectionMode::Infeasible ||
            better(ev.efficiency, best_single.evaluation.efficiency)) {
            best_single = {SelectionMode::Single, ref, {}, ev};
        }
    }
    for (const auto& [first, second] : candidates.doubles) {
        const LinkEvaluation ev = evaluate_chain(channels, pair, {first, second});
        if (!feasible(ev, t_threshold)) continue;
        if (best_double.mode == SelectionMode::Infeasible ||
            better(ev.efficiency, best_double.evaluation.efficiency)) {
            best_double = {SelectionMode::Double, first, second, ev};
        }
    }

    if (best_single.mode == SelectionMode::Infeasible) return best_double;
    if (best_double.mode == SelectionMode::Infeasible) return best_single;
    // a tie goes to the single reflection
    return best_single.evaluation.efficiency >= best_double.evaluation.efficiency ? best_single
                                                                                  : best_double;
}

namespace {

// Geometric chains over the deployed cells in canonical order: hop count
// ascending, then lexicographic by (ris, subgroup) along the chain.
std::vector<std::vector<SubgroupRef>> enumerate_chains(const DevicePair& pair,
                                                       const ChannelSampler& ch, int max_hops) {
    const Environment& env = ch.env();
    const auto& cells = ch.plan_cells();
    const double r = ch.radius();
    const int n = static_cast<int>(cells.size());
    const int subs = ch.subgroups_per_ris();
    const Point u = cell_center(env, pair.u);
    const Point v = cell_center(env, pair.v);

    std::vector<char> usable(n, 0), sees_u(n, 0), sees_v(n, 0);
    std::vector<Point> pts(n);
    for (int i = 0; i < n; ++i) {
        usable[i] = cells[i] != pair.u && cells[i] != pair.v;
        pts[i] = cell_center(env, cells[i]);
        if (!usable[i]) continue;
        sees_u[i] = has_los(env, u, pts[i], r);
        sees_v[i] = has_los(env, pts[i], v, r);
    }
    auto linked = [&](int i, int j) { return has_los(env, pts[i], pts[j], r); };

    std::vector<std::vector<SubgroupRef>> chains;
    for (int i = 0; i < n; ++i) {
        if (!usable[i] || !sees_u[i] || !sees_v[i]) continue;
        for (int s = 0; s < subs; ++s) chains.push_back({{i, s}});
    }
    if (max_hops >= 2) {
        for (int i = 0; i < n; ++i) {
            if (!usable[i] || !sees_u[i]) continue;
            for (int j = 0; j < n; ++j) {
                if (j == i || !usable[j] || !sees_v[j] || !linked(i, j)) continue;
                for (int s = 0; s < subs; ++s)
                    for (int t = 0; t < subs; ++t) chains.push_back({{i, s}, {j, t}});
            }
        }
    }
    if (max_hops >= 3) {
        for (int i = 0; i < n; ++i) {
            if (!usable[i] || !sees_u[i]) continue;
            for (int j = 0; j < n; ++j) {
                if (j == i || !usable[j] || !linked(i, j)) continue;
                for (int k = 0; k < n; ++k) {
                    if (k == i || k == j || !usable[k] || !sees_v[k] || !linked(j, k)) continue;
                    for (int s = 0; s < subs; ++s)
                        for (int t = 0; t < subs; ++t)
                            for (int w = 0; w < subs; ++w)
                                chains.push_back({{i, s}, {j, t}, {k, w}});
                }
            }
        }
    }
    return chains;
}

} // namespace

std::optional<PathOption> best_path(const DevicePair& pair, const ChannelSampler& channels,
                                    int max_hops, double t_threshold, SelectPolicy policy,
                                    const std::set<SubgroupRef>& taken) {
    if (max_hops < 1 || max_hops > 3)
        throw Unsupported("best_path supports 1..3 reflections");

    const auto metric = [&](const LinkEvaluation& ev) {
        return policy == SelectPolicy::Efficiency ? ev.efficiency : ev.throughput;
    };

    std::optional<PathOption> best;
    for (const auto& chain : enumerate_chains(pair, channels, max_hops)) {
        bool blocked = false;
        for (const SubgroupRef& ref : chain) {
            if (taken.count(ref)) {
                blocked = true;
                break;
            }
        }
        if (blocked) continue;
        const LinkEvaluation ev = evaluate_chain(channels, pair, chain);
        if (!feasible(ev, t_threshold)) continue;
        if (!best || better(metric(ev), metric(best->evaluation))) {
            best = PathOption{chain, ev};
        }
    }
    return best;
}

std::vector<ServedPair> allocate_batch(const std::vector<DevicePair>& pairs,
                                       const ChannelSampler& channels, int max_hops,
                                       double t_threshold, SelectPolicy policy) {
    std::vector<DevicePair> order = pairs;
    std::sort(order.begin(), order.end());

    std::set<SubgroupRef> taken;
    std::vector<char> served(order.size(), 0);
    std::vector<ServedPair> out;

    const auto metric = [&](const LinkEvaluation& ev) {
        return policy == SelectPolicy::Efficiency ? ev.efficiency : ev.throughput;
    };

    while (true) {
        int best_idx = -1;
        std::optional<PathOption> best_opt;
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (served[i]) continue;
            auto opt = best_path(order[i], channels, max_hops, t_threshold, policy, taken);
            if (!opt) continue;
            if (best_idx < 0 || better(metric(opt->evaluation), metric(best_opt->evaluation))) {
                best_idx = static_cast<int>(i);
                best_opt = std::move(opt);
            }
        }
        if (best_idx < 0) break;
        served[best_idx] = 1;
        for (const SubgroupRef& ref : best_opt->chain) taken.insert(ref);
        out.push_back({order[best_idx], std::move(*best_opt)});
    }
    std::sort(out.begin(), out.end(),
              [](const ServedPair& a, const ServedPair& b) { return a.pair < b.pair; });
    return out;
}

bool prop1_configuration_check(const Prop1Config& cfg, const ChannelParams& params) {
    if (!(cfg.d_u > 1.0) || !(cfg.d_single_out > 1.0) || !(cfg.d_mid > 1.0) ||
        !(cfg.d_double_out > 1.0))
        throw InvalidConfiguration("all hop distances must exceed 1 m");
    if (!(cfg.cascade_gain > 0.0))
        throw InvalidConfiguration("cascade gain must be positive");
    if (cfg.d_single_out > cfg.d_mid + cfg.d_double_out)
        throw InvalidConfiguration("single out-leg violates the triangle through the second "
                                   "reflector");
    if (cfg.phase_power_shared < 0.0 || cfg.phase_power_second < 0.0)
        throw InvalidConfiguration("phase powers must be nonnegative");

    const double g2 = cfg.cascade_gain * cfg.cascade_gain;
    const double alpha = params.pathloss_exponent;
    const double rho = params.pathloss_1m;
    const double noise = params.noise();

    const double snr_s = params.tx_power_w * rho * rho * std::pow(cfg.d_u, -alpha) *
                         std::pow(cfg.d_single_out, -alpha) * g2 / noise;
    const double snr_d = params.tx_power_w * rho * rho * rho * std::pow(cfg.d_u, -alpha) *
                         std::pow(cfg.d_mid, -alpha) * std::pow(cfg.d_double_out, -alpha) * g2 /
                         noise;

    const LinkEvaluation ev_s = evaluate_link(snr_s, {cfg.phase_power_shared}, params);
    const LinkEvaluation ev_d =
        evaluate_link(snr_d, {cfg.phase_power_shared, cfg.phase_power_second}, params);
    if (!(ev_s.throughput > 0.0) || !(ev_d.throughput > 0.0))
        throw InvalidConfiguration("configuration yields zero throughput");
    return ev_s.efficiency >= ev_d.efficiency;
}

LinkEvaluation evaluate_single_path(const SinglePathConfig& cfg, const ChannelParams& params) {
    const double g2 = cfg.cascade_gain * cfg.cascade_gain;
    const double alpha = params.pathloss_exponent;
    const double rho = params.pathloss_1m;
    const double snr = params.tx_power_w * rho * rho * std::pow(cfg.d_u, -alpha) *
                       std::pow(cfg.d_v, -alpha) * g2 / params.noise();
    return evaluate_link(snr, {cfg.phase_power}, params);
}

LinkEvaluation evaluate_double_path(const DoublePathConfig& cfg, const ChannelParams& params) {
    const double g2 = cfg.cascade_gain * cfg.cascade_gain;
    const double alpha = params.pathloss_exponent;
    const double rho = params.pathloss_1m;
    const double snr = params.tx_power_w * rho * rho * rho * std::pow(cfg.d_u, -alpha) *
                       std::pow(cfg.d_mid, -alpha) * std::pow(cfg.d_v, -alpha) * g2 /
                       params.noise();
    return evaluate_link(snr, {cfg.phase_power_first, cfg.phase_power_second}, params);
}

bool prop2_conditions(const SinglePathConfig& single_path, const DoublePathConfig& double_path,
                      const ChannelParams& params) {
    if (!(single_path.d_u > 0.0) || !(single_path.d_v > 0.0) || !(double_path.d_u > 0.0) ||
        !(double_path.d_mid > 0.0) || !(double_path.d_v > 0.0))
        throw InvalidConfiguration("distances must be positive");

    const double p_single = params.tx_power_w + single_path.phase_power;
    const double p_double =
        params.tx_power_w + double_path.phase_power_first + double_path.phase_power_second;
    const bool power_ok = p_single <= p_double;

    const bool distance_ok = params.pathloss_1m * single_path.d_v * single_path.d_u >=
                             double_path.d_v * double_path.d_u * double_path.d_mid;

    const bool gain_ok = double_path.cascade_gain * double_path.cascade_gain >=
                         single_path.cascade_gain * single_path.cascade_gain;

    return power_ok && distance_ok && gain_ok;
}

} // namespace risplan
