#pragma once

#include <cmath>

namespace risplan {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(const Point& a, const Point& b) { return !(a == b); }

inline double distance_sq(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(const Point& a, const Point& b) { return std::sqrt(distance_sq(a, b)); }

struct Segment {
    Point a;
    Point b;
};

struct BBox {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;
};

// Closed-interval overlap; touching boxes count.
inline bool bbox_overlap(const BBox& a, const BBox& b) {
    return a.x_min <= b.x_max && b.x_min <= a.x_max && a.y_min <= b.y_max && b.y_min <= a.y_max;
}

inline BBox segment_bbox(const Segment& s) {
    return {std::fmin(s.a.x, s.b.x), std::fmax(s.a.x, s.b.x), std::fmin(s.a.y, s.b.y),
            std::fmax(s.a.y, s.b.y)};
}

// Sign of the cross product (b-a) x (c-a), computed exactly: +1 for a left
// turn, -1 for a right turn, 0 for collinear points. A floating-point filter
// handles the common case; near-degenerate inputs fall back to exact
// expansion arithmetic, so corner tangencies on grid geometry are decided
// without epsilon tuning.
int orientation(const Point& a, const Point& b, const Point& c);

// Requires p collinear with a-b; true iff p lies on the closed segment.
bool on_segment(const Point& a, const Point& b, const Point& p);

// Closed-segment intersection: proper crossings, collinear overlap, endpoint
// touching, and corner tangency all count.
bool segments_intersect(const Segment& s1, const Segment& s2);

} // namespace risplan
