#include "risplan/geometry.hpp"

#include <algorithm>

// Exact orientation test after Shewchuk's adaptive predicates: evaluate the
// 2x2 determinant in doubles, accept when it clears a forward error bound,
// otherwise recompute the sign exactly with nonoverlapping floating-point
// expansions. fma gives exact product tails on every target we build for.

namespace risplan {
namespace {

// err bound for the filtered determinant (Shewchuk's ccwerrboundA)
constexpr double kEps = 2.220446049250313e-16 * 0.5; // 2^-53
constexpr double kCcwErrBoundA = (3.0 + 16.0 * kEps) * kEps;

inline void two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    const double bv = x - a;
    const double av = x - bv;
    y = (a - av) + (b - bv);
}

inline void two_diff(double a, double b, double& x, double& y) {
    x = a - b;
    const double bv = a - x;
    const double av = x + bv;
    y = (a - av) + (bv - b);
}

inline void two_product(double a, double b, double& x, double& y) {
    x = a * b;
    y = std::fma(a, b, -x);
}

// (a1 + a0) - b as a three-term expansion
inline void two_one_diff(double a1, double a0, double b, double& x2, double& x1, double& x0) {
    double i;
    two_diff(a0, b, i, x0);
    two_sum(a1, i, x2, x1);
}

// (a1 + a0) - (b1 + b0) as a four-term expansion
inline void two_two_diff(double a1, double a0, double b1, double b0, double out[4]) {
    double j, k;
    two_one_diff(a1, a0, b0, j, k, out[0]);
    two_one_diff(j, k, b1, out[3], out[2], out[1]);
}

// Add scalar b to a nonoverlapping expansion e; result stays nonoverlapping
// with components in increasing magnitude order.
inline int grow_expansion(int elen, const double* e, double b, double* h) {
    double q = b;
    for (int i = 0; i < elen; ++i) {
        double qn, hh;
        two_sum(q, e[i], qn, hh);
        h[i] = hh;
        q = qn;
    }
    h[elen] = q;
    return elen + 1;
}

inline int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

int orientation_exact(const Point& a, const Point& b, const Point& c) {
    // det = (ax*by - ax*cy) + (bx*cy - bx*ay) + (cx*ay - cx*by)
    double t1, t0, u1, u0;
    double terms_a[4], terms_b[4], terms_c[4];

    two_product(a.x, b.y, t1, t0);
    two_product(a.x, c.y, u1, u0);
    two_two_diff(t1, t0, u1, u0, terms_a);

    two_product(b.x, c.y, t1, t0);
    two_product(b.x, a.y, u1, u0);
    two_two_diff(t1, t0, u1, u0, terms_b);

    two_product(c.x, a.y, t1, t0);
    two_product(c.x, b.y, u1, u0);
    two_two_diff(t1, t0, u1, u0, terms_c);

    double e1[16], e2[16];
    int len = 4;
    std::copy(terms_a, terms_a + 4, e1);
    double* src = e1;
    double* dst = e2;
    for (double v : terms_b) {
        len = grow_expansion(len, src, v, dst);
        std::swap(src, dst);
    }
    for (double v : terms_c) {
        len = grow_expansion(len, src, v, dst);
        std::swap(src, dst);
    }
    for (int i = len - 1; i >= 0; --i) {
        if (src[i] != 0.0) return sign_of(src[i]);
    }
    return 0;
}

} // namespace

int orientation(const Point& a, const Point& b, const Point& c) {
    const double detleft = (b.x - a.x) * (c.y - a.y);
    const double detright = (b.y - a.y) * (c.x - a.x);
    const double det = detleft - detright;

    double detsum;
    if (detleft > 0.0) {
        if (detright <= 0.0) return sign_of(det);
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return sign_of(det);
        detsum = -detleft - detright;
    } else {
        return sign_of(det);
    }

    const double errbound = kCcwErrBoundA * detsum;
    if (det >= errbound || -det >= errbound) return sign_of(det);

    return orientation_exact(a, b, c);
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
    return std::fmin(a.x, b.x) <= p.x && p.x <= std::fmax(a.x, b.x) &&
           std::fmin(a.y, b.y) <= p.y && p.y <= std::fmax(a.y, b.y);
}

bool segments_intersect(const Segment& s1, const Segment& s2) {
    const int d1 = orientation(s2.a, s2.b, s1.a);
    const int d2 = orientation(s2.a, s2.b, s1.b);
    const int d3 = orientation(s1.a, s1.b, s2.a);
    const int d4 = orientation(s1.a, s1.b, s2.b);

    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;

    if (d1 == 0 && on_segment(s2.a, s2.b, s1.a)) return true;
    if (d2 == 0 && on_segment(s2.a, s2.b, s1.b)) return true;
    if (d3 == 0 && on_segment(s1.a, s1.b, s2.a)) return true;
    if (d4 == 0 && on_segment(s1.a, s1.b, s2.b)) return true;
    return false;
}

} // namespace risplan
