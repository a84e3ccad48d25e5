#pragma once

#include <map>
#include <vector>

#include "risplan/environment.hpp"
#include "risplan/parallel.hpp"

namespace risplan {

// Unordered device pair, stored with the smaller cell id first.
struct DevicePair {
    CellId u = 0;
    CellId v = 0;

    DevicePair() = default;
    DevicePair(CellId a, CellId b) : u(a < b ? a : b), v(a < b ? b : a) {}
};

inline bool operator==(const DevicePair& a, const DevicePair& b) {
    return a.u == b.u && a.v == b.v;
}
inline bool operator!=(const DevicePair& a, const DevicePair& b) { return !(a == b); }
inline bool operator<(const DevicePair& a, const DevicePair& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
}

enum class PairClass { Direct, SingleCoverable, DoubleOnly, TotallyBlind };

struct BlindPairSet {
    std::vector<DevicePair> pairs;                      // sorted, deduplicated
    std::map<int, std::vector<DevicePair>> per_obstacle; // obstacle id -> pairs it blocks
};

// Pairs whose endpoints both sit inside the obstacle's bounding box inflated
// by r in every direction. Pure prefilter; never changes the blind set.
std::vector<DevicePair> bbox_candidates(const Obstacle& obstacle,
                                        const std::vector<DevicePair>& pairs,
                                        const Environment& env, double r);

// Per-obstacle blind-pair identification: bounding-box prefilter, then
// segment tests against that obstacle's outline; union over obstacles.
BlindPairSet identify_blind_pairs(const Environment& env, const std::vector<DevicePair>& pairs,
                                  double r, ExecPolicy policy = ExecPolicy::Parallel);

// Brute-force oracle: pairs within r lacking direct LoS, no prefilter.
std::vector<DevicePair> blind_pairs_reference(const Environment& env,
                                              const std::vector<DevicePair>& pairs, double r);

PairClass classify_pair(const Environment& env, const DevicePair& pair, double r);

// Every unordered pair of free cells within distance r, sorted.
std::vector<DevicePair> all_free_cell_pairs(const Environment& env, double r);

} // namespace risplan
