#include "risplan/environment.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "risplan/errors.hpp"

namespace risplan {
namespace {

// Boundary edges are built on a half-unit integer lattice (cell centers at
// even coordinates, cell corners at odd ones) and converted to meters at the
// end, so collinear merging is plain integer arithmetic.
struct UnitEdge {
    long line;  // y for horizontal, x for vertical (lattice units)
    long lo;    // run start along the line
    long hi;    // run end
};

void merge_runs(std::vector<UnitEdge>& edges) {
    std::sort(edges.begin(), edges.end(), [](const UnitEdge& a, const UnitEdge& b) {
        return a.line != b.line ? a.line < b.line : a.lo < b.lo;
    });
    std::vector<UnitEdge> merged;
    for (const auto& e : edges) {
        if (!merged.empty() && merged.back().line == e.line && merged.back().hi >= e.lo) {
            merged.back().hi = std::max(merged.back().hi, e.hi);
        } else {
            merged.push_back(e);
        }
    }
    edges = std::move(merged);
}

} // namespace

Environment build_environment(const GridSpec& grid, const std::set<CellId>& obstacle_cells) {
    if (grid.rows < 1 || grid.cols < 1)
        throw InvalidGrid("grid must have at least one row and one column");
    if (!(grid.cell_size > 0.0)) throw InvalidGrid("cell_size must be positive");

    for (CellId c : obstacle_cells) {
        if (!grid.valid_cell(c))
            throw InvalidCell("obstacle cell " + std::to_string(c) + " outside grid");
    }

    Environment env;
    env.grid_ = grid;
    env.blocked_ = obstacle_cells;

    for (CellId c = 1; c <= grid.cell_count(); ++c) {
        if (!obstacle_cells.count(c)) env.free_cells_.push_back(c);
    }

    // connected components, 4-adjacency
    std::set<CellId> unvisited = obstacle_cells;
    const double half = grid.cell_size / 2.0;
    while (!unvisited.empty()) {
        std::vector<CellId> component;
        std::vector<CellId> stack{*unvisited.begin()};
        unvisited.erase(unvisited.begin());
        while (!stack.empty()) {
            CellId c = stack.back();
            stack.pop_back();
            component.push_back(c);
            const int row = grid.row_of(c), col = grid.col_of(c);
            const int nbr_rows[4] = {row - 1, row + 1, row, row};
            const int nbr_cols[4] = {col, col, col - 1, col + 1};
            for (int k = 0; k < 4; ++k) {
                if (nbr_rows[k] < 1 || nbr_rows[k] > grid.rows || nbr_cols[k] < 1 ||
                    nbr_cols[k] > grid.cols)
                    continue;
                CellId n = grid.cell_at(nbr_rows[k], nbr_cols[k]);
                auto it = unvisited.find(n);
                if (it != unvisited.end()) {
                    unvisited.erase(it);
                    stack.push_back(n);
                }
            }
        }
        std::sort(component.begin(), component.end());

        Obstacle obs;
        obs.id = static_cast<int>(env.obstacles_.size()) + 1;
        obs.cells = component;

        std::vector<UnitEdge> horiz, vert;
        bool first = true;
        for (CellId c : component) {
            const int row = grid.row_of(c), col = grid.col_of(c);
            const long cx = 2L * (col - 1), cy = 2L * (row - 1); // lattice center
            const double x0 = (col - 1) * grid.cell_size - half;
            const double x1 = (col - 1) * grid.cell_size + half;
            const double y0 = (row - 1) * grid.cell_size - half;
            const double y1 = (row - 1) * grid.cell_size + half;
            if (first) {
                obs.bbox = {x0, x1, y0, y1};
                first = false;
            } else {
                obs.bbox.x_min = std::min(obs.bbox.x_min, x0);
                obs.bbox.x_max = std::max(obs.bbox.x_max, x1);
                obs.bbox.y_min = std::min(obs.bbox.y_min, y0);
                obs.bbox.y_max = std::max(obs.bbox.y_max, y1);
            }
            auto blocked = [&](int r, int k) {
                return r >= 1 && r <= grid.rows && k >= 1 && k <= grid.cols &&
                       obstacle_cells.count(grid.cell_at(r, k)) != 0;
            };
            // an edge is boundary iff the cell across it is not blocked
            if (!blocked(row - 1, col)) horiz.push_back({cy - 1, cx - 1, cx + 1});
            if (!blocked(row + 1, col)) horiz.push_back({cy + 1, cx - 1, cx + 1});
            if (!blocked(row, col - 1)) vert.push_back({cx - 1, cy - 1, cy + 1});
            if (!blocked(row, col + 1)) vert.push_back({cx + 1, cy - 1, cy + 1});
        }
        merge_runs(horiz);
        merge_runs(vert);

        const double unit = grid.cell_size / 2.0;
        for (const auto& e : horiz)
            obs.boundary.push_back(
                {{e.lo * unit, e.line * unit}, {e.hi * unit, e.line * unit}});
        for (const auto& e : vert)
            obs.boundary.push_back(
                {{e.line * unit, e.lo * unit}, {e.line * unit, e.hi * unit}});

        env.obstacles_.push_back(std::move(obs));
    }

    // deterministic obstacle order: by smallest cell id
    std::sort(env.obstacles_.begin(), env.obstacles_.end(),
              [](const Obstacle& a, const Obstacle& b) { return a.cells.front() < b.cells.front(); });
    for (std::size_t i = 0; i < env.obstacles_.size(); ++i)
        env.obstacles_[i].id = static_cast<int>(i) + 1;

    return env;
}

Point cell_center(const Environment& env, CellId c) {
    const GridSpec& g = env.grid();
    if (!g.valid_cell(c)) throw InvalidCell("cell id " + std::to_string(c) + " outside grid");
    return {(g.col_of(c) - 1) * g.cell_size, (g.row_of(c) - 1) * g.cell_size};
}

bool has_los(const Environment& env, const Point& u, const Point& v, double r) {
    if (distance_sq(u, v) > r * r) return false;
    if (u == v) return true;
    const Segment path{u, v};
    const BBox pb = segment_bbox(path);
    for (const Obstacle& obs : env.obstacles()) {
        if (!bbox_overlap(pb, obs.bbox)) continue;
        for (const Segment& side : obs.boundary) {
            if (segments_intersect(path, side)) return false;
        }
    }
    return true;
}

bool visible_via(const Environment& env, const Point& u, const Point& v, CellId z, double r) {
    if (!env.grid().valid_cell(z))
        throw InvalidCell("reflector cell " + std::to_string(z) + " outside grid");
    if (env.is_blocked(z))
        throw InvalidReflector("reflector cell " + std::to_string(z) + " is blocked");
    const Point zc = cell_center(env, z);
    return has_los(env, u, zc, r) && has_los(env, zc, v, r);
}

} // namespace risplan
