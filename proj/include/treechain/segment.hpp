#pragma once

#include "treechain/simplicial.hpp"

#include <algorithm>

// Exact planar segment predicates. Everything stays in squared distances.

namespace treechain::seg {

inline Rational cross(const Point& o, const Point& a, const Point& b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline Rational dot(const Point& o, const Point& a, const Point& b)
{
    return (a.x - o.x) * (b.x - o.x) + (a.y - o.y) * (b.y - o.y);
}

inline Rational dist2(const Point& p, const Point& q)
{
    Rational dx = p.x - q.x;
    Rational dy = p.y - q.y;
    return dx * dx + dy * dy;
}

inline Point lerp(const Point& a, const Point& b, const Rational& t)
{
    return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}

/// p lies on the closed segment [a, b].
inline bool on_segment(const Point& p, const Point& a, const Point& b)
{
    if (sgn(cross(a, b, p)) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

/// Closed segments [a, b] and [c, d] share at least one point.
inline bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d)
{
    int d1 = sgn(cross(c, d, a));
    int d2 = sgn(cross(c, d, b));
    int d3 = sgn(cross(a, b, c));
    int d4 = sgn(cross(a, b, d));
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    return (d1 == 0 && on_segment(a, c, d)) || (d2 == 0 && on_segment(b, c, d)) ||
           (d3 == 0 && on_segment(c, a, b)) || (d4 == 0 && on_segment(d, a, b));
}

inline Rational point_segment_dist2(const Point& p, const Point& a, const Point& b)
{
    Rational len2 = dist2(a, b);
    if (sgn(len2) == 0) return dist2(p, a);
    Rational s = dot(a, b, p) / len2;
    if (s <= 0) return dist2(p, a);
    if (s >= 1) return dist2(p, b);
    return dist2(p, lerp(a, b, s));
}

inline Rational segment_dist2(const Point& a, const Point& b, const Point& c, const Point& d)
{
    if (segments_intersect(a, b, c, d)) return Rational(0);
    Rational best = point_segment_dist2(a, c, d);
    best = std::min(best, Rational(point_segment_dist2(b, c, d)));
    best = std::min(best, Rational(point_segment_dist2(c, a, b)));
    best = std::min(best, Rational(point_segment_dist2(d, a, b)));
    return best;
}

} // namespace treechain::seg
