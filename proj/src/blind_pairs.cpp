#include "risplan/blind_pairs.hpp"

#include <algorithm>
#include <string>

#include "risplan/errors.hpp"

namespace risplan {
namespace {

void validate_pair(const Environment& env, const DevicePair& p, double r) {
    if (!env.grid().valid_cell(p.u) || !env.grid().valid_cell(p.v))
        throw InvalidDevice("device pair (" + std::to_string(p.u) + "," + std::to_string(p.v) +
                            ") references a cell outside the grid");
    if (env.is_blocked(p.u) || env.is_blocked(p.v))
        throw InvalidDevice("device pair (" + std::to_string(p.u) + "," + std::to_string(p.v) +
                            ") has an endpoint in a blocked cell");
    if (p.u == p.v)
        throw InvalidDevice("device pair endpoints must differ (cell " + std::to_string(p.u) + ")");
    const Point a = cell_center(env, p.u);
    const Point b = cell_center(env, p.v);
    if (distance_sq(a, b) > r * r)
        throw InvalidDevice("device pair (" + std::to_string(p.u) + "," + std::to_string(p.v) +
                            ") is farther apart than the coverage radius");
}

bool segment_hits_obstacle(const Environment& env, const Obstacle& obs, const DevicePair& p) {
    const Segment path{cell_center(env, p.u), cell_center(env, p.v)};
    const BBox pb = segment_bbox(path);
    if (!bbox_overlap(pb, obs.bbox)) return false;
    for (const Segment& side : obs.boundary) {
        if (segments_intersect(path, side)) return true;
    }
    return false;
}

} // namespace

std::vector<DevicePair> bbox_candidates(const Obstacle& obstacle,
                                        const std::vector<DevicePair>& pairs,
                                        const Environment& env, double r) {
    std::vector<DevicePair> out;
    const double x_lo = obstacle.bbox.x_min - r, x_hi = obstacle.bbox.x_max + r;
    const double y_lo = obstacle.bbox.y_min - r, y_hi = obstacle.bbox.y_max + r;
    for (const DevicePair& p : pairs) {
        const Point a = cell_center(env, p.u);
        const Point b = cell_center(env, p.v);
        const bool inside = x_lo <= a.x && a.x <= x_hi && x_lo <= b.x && b.x <= x_hi &&
                            y_lo <= a.y && a.y <= y_hi && y_lo <= b.y && b.y <= y_hi;
        if (inside) out.push_back(p);
    }
    return out;
}

BlindPairSet identify_blind_pairs(const Environment& env, const std::vector<DevicePair>& pairs,
                                  double r, ExecPolicy policy) {
    (void)policy;
    for (const DevicePair& p : pairs) validate_pair(env, p, r);

    BlindPairSet result;
    const auto& obstacles = env.obstacles();
    std::vector<std::vector<DevicePair>> blocked_by(obstacles.size());

    for (std::size_t oi = 0; oi < obstacles.size(); ++oi) {
        const std::vector<DevicePair> candidates = bbox_candidates(obstacles[oi], pairs, env, r);
        std::vector<char> hit(candidates.size(), 0);
        const long n = static_cast<long>(candidates.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 16) if (policy == ExecPolicy::Parallel)
#endif
        for (long i = 0; i < n; ++i) {
            hit[i] = segment_hits_obstacle(env, obstacles[oi], candidates[i]) ? 1 : 0;
        }
        for (long i = 0; i < n; ++i) {
            if (hit[i]) blocked_by[oi].push_back(candidates[i]);
        }
    }

    std::vector<DevicePair> all;
    for (std::size_t oi = 0; oi < obstacles.size(); ++oi) {
        if (blocked_by[oi].empty()) continue;
        std::sort(blocked_by[oi].begin(), blocked_by[oi].end());
        blocked_by[oi].erase(std::unique(blocked_by[oi].begin(), blocked_by[oi].end()),
                             blocked_by[oi].end());
        all.insert(all.end(), blocked_by[oi].begin(), blocked_by[oi].end());
        result.per_obstacle[obstacles[oi].id] = std::move(blocked_by[oi]);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    result.pairs = std::move(all);
    return result;
}

std::vector<DevicePair> blind_pairs_reference(const Environment& env,
                                              const std::vector<DevicePair>& pairs, double r) {
    std::vector<DevicePair> out;
    for (const DevicePair& p : pairs) {
        validate_pair(env, p, r);
        if (!has_los(env, cell_center(env, p.u), cell_center(env, p.v), r)) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PairClass classify_pair(const Environment& env, const DevicePair& pair, double r) {
    validate_pair(env, pair, r);
    const Point u = cell_center(env, pair.u);
    const Point v = cell_center(env, pair.v);
    if (has_los(env, u, v, r)) return PairClass::Direct;

    const auto& free = env.free_cells();
    for (CellId z : free) {
        if (visible_via(env, u, v, z, r)) return PairClass::SingleCoverable;
    }
    // double-reflection witness: u -> zi -> zj -> v with zi != zj
    std::vector<CellId> from_u, to_v;
    for (CellId z : free) {
        const Point zc = cell_center(env, z);
        if (has_los(env, u, zc, r)) from_u.push_back(z);
        if (has_los(env, zc, v, r)) to_v.push_back(z);
    }
    for (CellId zi : from_u) {
        const Point pi = cell_center(env, zi);
        for (CellId zj : to_v) {
            if (zi == zj) continue;
            if (has_los(env, pi, cell_center(env, zj), r)) return PairClass::DoubleOnly;
        }
    }
    return PairClass::TotallyBlind;
}

std::vector<DevicePair> all_free_cell_pairs(const Environment& env, double r) {
    std::vector<DevicePair> out;
    const auto& free = env.free_cells();
    for (std::size_t i = 0; i < free.size(); ++i) {
        for (std::size_t j = i + 1; j < free.size(); ++j) {
            const Point a = cell_center(env, free[i]);
            const Point b = cell_center(env, free[j]);
            if (distance_sq(a, b) <= r * r) out.emplace_back(free[i], free[j]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace risplan
