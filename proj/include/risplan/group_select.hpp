#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "risplan/blind_pairs.hpp"
#include "risplan/channel.hpp"
#include "risplan/environment.hpp"

namespace risplan {

// One subgroup of one deployed reflector; both indices 0-based. In ungrouped
// mode each reflector exposes a single "subgroup" spanning the whole array.
struct SubgroupRef {
    int ris = 0;
    int subgroup = 0;
};

inline bool operator==(const SubgroupRef& a, const SubgroupRef& b) {
    return a.ris == b.ris && a.subgroup == b.subgroup;
}
inline bool operator<(const SubgroupRef& a, const SubgroupRef& b) {
    return a.ris != b.ris ? a.ris < b.ris : a.subgroup < b.subgroup;
}

struct CandidateSets {
    std::vector<SubgroupRef> singles;                          // u -> ris -> v
    std::vector<std::pair<SubgroupRef, SubgroupRef>> doubles;  // first hop, second hop
};

// Geometric candidates for one blind pair over the deployed cells. All
// subgroups of a reflector share its cell center, so visibility is decided
// per reflector and fanned out to its subgroups. Reflectors sitting on a
// pair endpoint are skipped (zero-length hop).
CandidateSets candidate_sets(const Environment& env, const DevicePair& pair,
                             const std::vector<CellId>& plan_cells, const RisSpec& ris,
                             double r, bool grouped = true);

// Deterministic per-link fading source for a deployment. Every (endpoint,
// subgroup) hop hashes to its own stream, so the same physical hop reuses
// the same draw wherever it appears.
class ChannelSampler {
public:
    ChannelSampler(const Environment& env, std::vector<CellId> plan_cells, RisSpec ris,
                   ChannelParams params, double radius, std::uint64_t seed, bool grouped = true);

    const Environment& env() const { return *env_; }
    const ChannelParams& params() const { return params_; }
    const std::vector<CellId>& plan_cells() const { return cells_; }
    const RisSpec& ris() const { return ris_; }
    double radius() const { return radius_; }
    bool grouped() const { return grouped_; }
    int subgroups_per_ris() const { return grouped_ ? ris_.subgroups : 1; }
    int elements() const { return grouped_ ? ris_.elements_per_subgroup() : ris_.total_elements(); }
    double subgroup_phase_power() const {
        return grouped_ ? ris_.phase_power_per_subgroup : whole_ris_phase_power(ris_);
    }

    Point ris_point(int ris_index) const;
    Point device_point(CellId c) const;

    ChannelRealization realize(const DevicePair& pair, const std::vector<SubgroupRef>& chain) const;
    std::vector<double> hop_distances(const DevicePair& pair,
                                      const std::vector<SubgroupRef>& chain) const;
    Complex direct_fading(const DevicePair& pair) const;

private:
    const Environment* env_;
    std::vector<CellId> cells_;
    RisSpec ris_;
    ChannelParams params_;
    double radius_;
    std::uint64_t seed_;
    bool grouped_;
};

enum class SelectionMode { Single, Double, Infeasible };

struct Selection {
    SelectionMode mode = SelectionMode::Infeasible;
    SubgroupRef first{};
    SubgroupRef second{};  // meaningful for Double only
    LinkEvaluation evaluation{};
};

// Best feasible candidate by energy efficiency, subject to the throughput
// threshold. A tie between the best single and best double goes to the
// single; ties within a family keep the lexicographically first candidate.
Selection select_group(const DevicePair& pair, const CandidateSets& candidates,
                       const ChannelSampler& channels, double t_threshold);

// --- multi-hop path machinery (used by the experiment harness) ---

struct PathOption {
    std::vector<SubgroupRef> chain;  // 1..3 reflectors in hop order
    LinkEvaluation evaluation{};
};

enum class SelectPolicy { Efficiency, Throughput };

// Best feasible path with at most max_hops reflections, skipping chains that
// would reuse an already-taken subgroup. Ties prefer fewer hops, then
// lexicographic chain order.
std::optional<PathOption> best_path(const DevicePair& pair, const ChannelSampler& channels,
                                    int max_hops, double t_threshold, SelectPolicy policy,
                                    const std::set<SubgroupRef>& taken = {});

struct ServedPair {
    DevicePair pair;
    PathOption path;
};

// Serve a batch of blind pairs under the one-request-per-subgroup rule:
// pairs are granted in descending order of their currently attainable
// metric, re-resolving around subgroups that earlier grants consumed.
std::vector<ServedPair> allocate_batch(const std::vector<DevicePair>& pairs,
                                       const ChannelSampler& channels, int max_hops,
                                       double t_threshold,
                                       SelectPolicy policy = SelectPolicy::Efficiency);

// --- checkable forms of the two efficiency propositions ---

// Single and double paths sharing the first reflector and the same cascade
// magnitude. Hop distances must all exceed 1 m and the single out-leg cannot
// beat the triangle inequality through the second reflector.
struct Prop1Config {
    double cascade_gain = 1.0;
    double d_u = 2.0;           // u -> shared reflector
    double d_single_out = 2.0;  // shared reflector -> v
    double d_mid = 2.0;         // shared reflector -> second reflector
    double d_double_out = 2.0;  // second reflector -> v
    double phase_power_shared = 3.1622776601683794e-3;
    double phase_power_second = 3.1622776601683794e-3;
};

// True iff the shared-reflector single path is at least as energy-efficient
// as the double path; always true when the preconditions hold.
bool prop1_configuration_check(const Prop1Config& cfg, const ChannelParams& params);

struct SinglePathConfig {
    double d_u = 1.0;
    double d_v = 1.0;
    double cascade_gain = 1.0;
    double phase_power = 3.1622776601683794e-3;
};

struct DoublePathConfig {
    double d_u = 1.0;
    double d_mid = 1.0;
    double d_v = 1.0;
    double cascade_gain = 1.0;
    double phase_power_first = 3.1622776601683794e-3;
    double phase_power_second = 3.1622776601683794e-3;
};

LinkEvaluation evaluate_single_path(const SinglePathConfig& cfg, const ChannelParams& params);
LinkEvaluation evaluate_double_path(const DoublePathConfig& cfg, const ChannelParams& params);

// The three sufficient conditions for a double path to beat a single path:
// its total supply power is no smaller, the path-loss product favors it by
// at least the single extra bounce loss, and its cascade power gain is no
// smaller.
bool prop2_conditions(const SinglePathConfig& single_path, const DoublePathConfig& double_path,
                      const ChannelParams& params);

} // namespace risplan
