#include "risplan/coverage.hpp"

#include <algorithm>
#include <string>

#include "risplan/errors.hpp"

namespace risplan {

CoverageTables::CoverageTables(const Environment& env, double r, ExecPolicy policy)
    : env_(&env), r_(r), cells_(env.grid().cell_count()) {
    (void)policy;
    bits_.assign((static_cast<std::size_t>(cells_) * cells_ + 63) / 64, 0);
    const auto& free = env.free_cells();
    const long n = static_cast<long>(free.size());

    // Upper-triangle visibility in per-row scratch first; the bit matrix is
    // assembled serially afterwards so concurrent word writes never race.
    std::vector<std::vector<char>> rows(n);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 4) if (policy == ExecPolicy::Parallel)
#endif
    for (long a = 0; a < n; ++a) {
        rows[a].assign(n - a, 0);
        const Point pa = cell_center(env, free[a]);
        for (long b = a; b < n; ++b) {
            rows[a][b - a] = has_los(env, pa, cell_center(env, free[b]), r_) ? 1 : 0;
        }
    }
    for (long a = 0; a < n; ++a) {
        for (long b = a; b < n; ++b) {
            if (!rows[a][b - a]) continue;
            const std::size_t ij = word(free[a], free[b]);
            const std::size_t ji = word(free[b], free[a]);
            bits_[ij / 64] |= 1ULL << (ij % 64);
            bits_[ji / 64] |= 1ULL << (ji % 64);
        }
    }
}

bool CoverageTables::los(CellId i, CellId j) const {
    if (!env_->is_free(i) || !env_->is_free(j)) return false;
    const std::size_t idx = word(i, j);
    return (bits_[idx / 64] >> (idx % 64)) & 1ULL;
}

std::vector<DevicePair> CoverageTables::single_cover_set(
    CellId i, const std::vector<DevicePair>& blind) const {
    if (!env_->is_free(i))
        throw InvalidReflector("reflector cell " + std::to_string(i) + " is not free");
    std::vector<DevicePair> out;
    for (const DevicePair& p : blind) {
        if (covers_single(i, p)) out.push_back(p);
    }
    return out;
}

std::vector<DevicePair> CoverageTables::double_cover_set(
    CellId i, CellId j, const std::vector<DevicePair>& blind) const {
    if (i == j) throw InvalidReflectorPair("double-reflection reflectors must differ");
    if (!env_->is_free(i) || !env_->is_free(j))
        throw InvalidReflector("reflector cell is not free");
    std::vector<DevicePair> out;
    for (const DevicePair& p : blind) {
        if (covers_single(i, p) || covers_single(j, p)) continue;
        if (covers_chain(i, j, p)) out.push_back(p);
    }
    return out;
}

std::vector<DevicePair> CoverageTables::combined_cover(
    CellId i, CellId j, const std::vector<DevicePair>& blind) const {
    std::vector<DevicePair> out;
    for (const DevicePair& p : blind) {
        if (covers_single(i, p) || covers_single(j, p) || covers_chain(i, j, p)) out.push_back(p);
    }
    return out;
}

bool CoverageTables::single_coverable(const DevicePair& p) const {
    for (CellId z : env_->free_cells()) {
        if (covers_single(z, p)) return true;
    }
    return false;
}

bool CoverageTables::double_coverable(const DevicePair& p) const {
    const auto& free = env_->free_cells();
    for (CellId zi : free) {
        if (!los(p.u, zi)) continue;
        for (CellId zj : free) {
            if (zi == zj) continue;
            if (los(zi, zj) && los(zj, p.v)) return true;
        }
    }
    return false;
}

std::vector<DevicePair> CoverageTables::universe(const std::vector<DevicePair>& blind) const {
    std::vector<DevicePair> out;
    for (const DevicePair& p : blind) {
        if (single_coverable(p) || double_coverable(p)) out.push_back(p);
    }
    return out;
}

int los_indicator(const Environment& env, CellId i, CellId j, double r) {
    if (!env.grid().valid_cell(i) || !env.grid().valid_cell(j))
        throw InvalidCell("los_indicator: cell outside grid");
    return has_los(env, cell_center(env, i), cell_center(env, j), r) ? 1 : 0;
}

std::vector<DevicePair> single_cover_set(const Environment& env, CellId i,
                                         const std::vector<DevicePair>& blind, double r) {
    return CoverageTables(env, r, ExecPolicy::Serial).single_cover_set(i, blind);
}

std::vector<DevicePair> double_cover_set(const Environment& env, CellId i, CellId j,
                                         const std::vector<DevicePair>& blind, double r) {
    return CoverageTables(env, r, ExecPolicy::Serial).double_cover_set(i, j, blind);
}

std::vector<DevicePair> combined_cover(const Environment& env, CellId i, CellId j,
                                       const std::vector<DevicePair>& blind, double r) {
    return CoverageTables(env, r, ExecPolicy::Serial).combined_cover(i, j, blind);
}

} // namespace risplan
