#pragma once

#include <cstdint>
#include <vector>

#include "risplan/blind_pairs.hpp"
#include "risplan/environment.hpp"
#include "risplan/parallel.hpp"

namespace risplan {

// Pairwise LoS relation over cell centers plus the cover-set queries built
// on it. The LoS matrix is materialized once (free cells only); the cover
// sets themselves are computed on demand, so memory stays O(cells^2) bits
// rather than O(cells^2 * pairs).
class CoverageTables {
public:
    CoverageTables(const Environment& env, double r, ExecPolicy policy = ExecPolicy::Parallel);

    const Environment& env() const { return *env_; }
    double radius() const { return r_; }

    // a_ij over cell centers; blocked cells see nothing.
    bool los(CellId i, CellId j) const;

    // pair coverable by a single reflector at i
    bool covers_single(CellId i, const DevicePair& p) const {
        return los(p.u, i) && los(i, p.v);
    }

    // pair coverable by the two-reflector chain through i and j, either
    // orientation (u->i->j->v or u->j->i->v)
    bool covers_chain(CellId i, CellId j, const DevicePair& p) const {
        if (!los(i, j)) return false;
        return (los(p.u, i) && los(j, p.v)) || (los(p.u, j) && los(i, p.v));
    }

    std::vector<DevicePair> single_cover_set(CellId i, const std::vector<DevicePair>& blind) const;
    // chain-covered pairs excluding those already single-covered by i or j; i < j
    std::vector<DevicePair> double_cover_set(CellId i, CellId j,
                                             const std::vector<DevicePair>& blind) const;
    // S_i  U  S_j  U  D_ij
    std::vector<DevicePair> combined_cover(CellId i, CellId j,
                                           const std::vector<DevicePair>& blind) const;

    bool single_coverable(const DevicePair& p) const;  // some free cell works
    bool double_coverable(const DevicePair& p) const;  // some free cell pair works
    // blind pairs that are coverable at all (the deployable universe)
    std::vector<DevicePair> universe(const std::vector<DevicePair>& blind) const;

private:
    const Environment* env_;
    double r_;
    int cells_;
    std::vector<std::uint64_t> bits_;

    std::size_t word(CellId i, CellId j) const {
        const std::size_t idx = static_cast<std::size_t>(i - 1) * cells_ + (j - 1);
        return idx;
    }
};

// LoS indicator between two cell centers: 1 iff within r with clear sight.
int los_indicator(const Environment& env, CellId i, CellId j, double r);

std::vector<DevicePair> single_cover_set(const Environment& env, CellId i,
                                         const std::vector<DevicePair>& blind, double r);
std::vector<DevicePair> double_cover_set(const Environment& env, CellId i, CellId j,
                                         const std::vector<DevicePair>& blind, double r);
std::vector<DevicePair> combined_cover(const Environment& env, CellId i, CellId j,
                                       const std::vector<DevicePair>& blind, double r);

} // namespace risplan
