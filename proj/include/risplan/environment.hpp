#pragma once

#include <set>
#include <vector>

#include "risplan/geometry.hpp"

namespace risplan {

// Cells are numbered 1..rows*cols, row-major from the top-left. The center
// of cell 1 is the origin; x grows to the right, y grows downward. A cell's
// square spans half a cell size around its center.
using CellId = int;

struct GridSpec {
    int rows = 0;
    int cols = 0;
    double cell_size = 1.0;

    int cell_count() const { return rows * cols; }
    bool valid_cell(CellId c) const { return c >= 1 && c <= cell_count(); }
    int row_of(CellId c) const { return (c - 1) / cols + 1; }
    int col_of(CellId c) const { return (c - 1) % cols + 1; }
    CellId cell_at(int row, int col) const { return (row - 1) * cols + col; }
};

struct Obstacle {
    int id = 0;
    std::vector<CellId> cells;      // ascending
    std::vector<Segment> boundary;  // outline of the union of the cell squares
    BBox bbox;                      // tight box of the union
};

class Environment {
public:
    const GridSpec& grid() const { return grid_; }
    const std::vector<Obstacle>& obstacles() const { return obstacles_; }
    const std::vector<CellId>& free_cells() const { return free_cells_; }
    const std::set<CellId>& blocked_cells() const { return blocked_; }

    bool is_blocked(CellId c) const { return blocked_.count(c) != 0; }
    bool is_free(CellId c) const { return grid_.valid_cell(c) && !is_blocked(c); }

private:
    friend Environment build_environment(const GridSpec&, const std::set<CellId>&);
    GridSpec grid_;
    std::vector<Obstacle> obstacles_;
    std::vector<CellId> free_cells_;
    std::set<CellId> blocked_;
};

// Obstacles come out as the 4-adjacent connected components of the blocked
// cells, each with its merged outline and bounding box.
Environment build_environment(const GridSpec& grid, const std::set<CellId>& obstacle_cells);

Point cell_center(const Environment& env, CellId c);

// True iff dist(u,v) <= r and the segment u-v meets no obstacle boundary.
// Closed-set convention: grazing an obstacle corner blocks. u == v is always
// visible (a point crosses nothing).
bool has_los(const Environment& env, const Point& u, const Point& v, double r);

// Single-reflection visibility: u and v both see the center of free cell z.
bool visible_via(const Environment& env, const Point& u, const Point& v, CellId z, double r);

} // namespace risplan
