#include "linea/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "linea/error.hpp"

namespace linea::geometry {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;
constexpr double kMinArea = 1e-9;
constexpr double kDuplicateDist = 1e-6;

double signed_area(std::span<const Point> ring) {
    double twice = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        twice += cross(ring[i], ring[(i + 1) % n]);
    }
    return 0.5 * twice;
}

bool on_segment(Point p, Point a, Point b) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

int sign(double v, double tol = 0.0) { return (v > tol) - (v < -tol); }

}  // namespace

double norm(Point a) { return std::hypot(a.x, a.y); }

double BBox::distance_to(const BBox& o) const {
    const double dx = std::max({0.0, o.min_x - max_x, min_x - o.max_x});
    const double dy = std::max({0.0, o.min_y - max_y, min_y - o.max_y});
    return std::hypot(dx, dy);
}

Polygon::Polygon(std::vector<Point> ring) {
    for (const Point& p : ring) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error(ErrorKind::DegeneratePolygon, "non-finite coordinate");
        }
    }
    std::vector<Point> cleaned;
    cleaned.reserve(ring.size());
    for (const Point& p : ring) {
        if (cleaned.empty() || !(cleaned.back() == p)) cleaned.push_back(p);
    }
    while (cleaned.size() > 1 && cleaned.front() == cleaned.back()) cleaned.pop_back();
    if (cleaned.size() < 3) {
        throw Error(ErrorKind::DegeneratePolygon, "fewer than 3 distinct vertices");
    }
    const double area = signed_area(cleaned);
    if (std::abs(area) < kMinArea) {
        throw Error(ErrorKind::DegeneratePolygon, "area below 1e-9 m^2");
    }
    if (area < 0.0) std::reverse(cleaned.begin(), cleaned.end());

    const std::size_t n = cleaned.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_intersect(cleaned[i], cleaned[(i + 1) % n], cleaned[j], cleaned[(j + 1) % n])) {
                throw Error(ErrorKind::DegeneratePolygon, "ring self-intersects");
            }
        }
    }

    ring_ = std::move(cleaned);
    bbox_ = {ring_[0].x, ring_[0].y, ring_[0].x, ring_[0].y};
    for (const Point& p : ring_) {
        bbox_.min_x = std::min(bbox_.min_x, p.x);
        bbox_.min_y = std::min(bbox_.min_y, p.y);
        bbox_.max_x = std::max(bbox_.max_x, p.x);
        bbox_.max_y = std::max(bbox_.max_y, p.y);
    }
}

std::vector<Point> OrientedRect::corners() const {
    const double rad = axis_deg / kDegPerRad;
    const Point u{std::cos(rad), std::sin(rad)};
    const Point v{-u.y, u.x};
    return {center - half_len * u - half_wid * v, center + half_len * u - half_wid * v,
            center + half_len * u + half_wid * v, center - half_len * u + half_wid * v};
}

double polygon_area(const Polygon& p) { return signed_area(p.ring()); }

int edge_count(const Polygon& p, double collinear_tol_deg) {
    std::vector<Point> ring;
    for (const Point& pt : p.ring()) {
        if (ring.empty() || norm(pt - ring.back()) > kDuplicateDist) ring.push_back(pt);
    }
    while (ring.size() > 1 && norm(ring.front() - ring.back()) <= kDuplicateDist) ring.pop_back();

    bool changed = true;
    while (changed && ring.size() >= 3) {
        changed = false;
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point prev = ring[(i + n - 1) % n];
            const Point cur = ring[i];
            const Point next = ring[(i + 1) % n];
            const Point in = cur - prev;
            const Point out = next - cur;
            const double turn = std::abs(std::atan2(cross(in, out), dot(in, out))) * kDegPerRad;
            if (turn < collinear_tol_deg) {
                ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    if (ring.size() < 3) {
        throw Error(ErrorKind::DegeneratePolygon, "simplification left fewer than 3 vertices");
    }
    return static_cast<int>(ring.size());
}

std::vector<Point> convex_hull(std::span<const Point> pts) {
    std::vector<Point> sorted(pts.begin(), pts.end());
    std::sort(sorted.begin(), sorted.end(),
              [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() < 3) return sorted;

    std::vector<Point> hull(2 * sorted.size());
    std::size_t k = 0;
    for (const Point& p : sorted) {
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = sorted.size() - 1, lower = k + 1; i-- > 0;) {
        const Point& p = sorted[i];
        while (k >= lower && orient(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return hull;
}

double fold_180(double deg) {
    double a = std::fmod(deg, 180.0);
    if (a < 0.0) a += 180.0;
    // Snap values that round up to the period back onto 0.
    if (a >= 180.0 - 1e-9) a = 0.0;
    return a;
}

double direction_deg(Point a, Point b) {
    const Point d = b - a;
    return fold_180(std::atan2(d.y, d.x) * kDegPerRad);
}

OrientedRect min_bounding_rect(const Polygon& p) {
    const std::vector<Point> hull = convex_hull(p.ring());
    if (hull.size() < 3) throw Error(ErrorKind::DegeneratePolygon, "degenerate hull");

    // Rotating calipers: the optimal rectangle has a side flush with a hull edge.
    OrientedRect best;
    double best_area = std::numeric_limits<double>::infinity();
    const std::size_t n = hull.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point e = hull[(i + 1) % n] - hull[i];
        const double len = norm(e);
        if (len == 0.0) continue;
        const Point u = (1.0 / len) * e;
        const Point v{-u.y, u.x};
        double min_u = std::numeric_limits<double>::infinity(), max_u = -min_u;
        double min_v = min_u, max_v = -min_u;
        for (const Point& q : hull) {
            const double pu = dot(q, u);
            const double pv = dot(q, v);
            min_u = std::min(min_u, pu);
            max_u = std::max(max_u, pu);
            min_v = std::min(min_v, pv);
            max_v = std::max(max_v, pv);
        }
        const double ext_u = max_u - min_u;
        const double ext_v = max_v - min_v;
        const double area = ext_u * ext_v;

        OrientedRect cand;
        cand.center = (0.5 * (min_u + max_u)) * u + (0.5 * (min_v + max_v)) * v;
        const double ang_u = fold_180(std::atan2(u.y, u.x) * kDegPerRad);
        const double ang_v = fold_180(std::atan2(v.y, v.x) * kDegPerRad);
        const double tol = 1e-9 * std::max(ext_u, ext_v);
        if (std::abs(ext_u - ext_v) <= tol) {
            cand.axis_deg = std::min(ang_u, ang_v);
        } else {
            cand.axis_deg = ext_u > ext_v ? ang_u : ang_v;
        }
        cand.half_len = 0.5 * std::max(ext_u, ext_v);
        cand.half_wid = 0.5 * std::min(ext_u, ext_v);

        const double area_tol = 1e-9 * std::max(area, best_area == std::numeric_limits<double>::infinity() ? area : best_area);
        if (area < best_area - area_tol) {
            best = cand;
            best_area = area;
        } else if (std::abs(area - best_area) <= area_tol && cand.axis_deg < best.axis_deg) {
            // Equal-area candidates (e.g. squares, regular polygons): smallest axis wins.
            best = cand;
            best_area = std::min(area, best_area);
        }
    }
    return best;
}

double angle_diff_180(double a, double b) {
    const double d = std::abs(fold_180(a) - fold_180(b));
    return std::min(d, 180.0 - d);
}

double point_segment_distance(Point p, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return norm(p - a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

bool segments_intersect(Point a, Point b, Point c, Point d) {
    // Orientations within rounding noise count as collinear; otherwise two
    // disjoint pieces of one rotated line can look like a proper crossing.
    const double tol = 1e-9 * norm(b - a) * norm(d - c);
    const int o1 = sign(orient(a, b, c), tol);
    const int o2 = sign(orient(a, b, d), tol);
    const int o3 = sign(orient(c, d, a), tol);
    const int o4 = sign(orient(c, d, b), tol);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(c, a, b)) return true;
    if (o2 == 0 && on_segment(d, a, b)) return true;
    if (o3 == 0 && on_segment(a, c, d)) return true;
    if (o4 == 0 && on_segment(b, c, d)) return true;
    return false;
}

double segment_distance(Point a, Point b, Point c, Point d) {
    if (segments_intersect(a, b, c, d)) return 0.0;
    return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                     point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

bool point_in_polygon(Point pt, const Polygon& poly) {
    bool inside = false;
    const auto ring = poly.ring();
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = ring[i];
        const Point& b = ring[j];
        if ((a.y > pt.y) != (b.y > pt.y)) {
            const double x = a.x + (pt.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (pt.x < x) inside = !inside;
        }
    }
    return inside;
}

double min_distance(const Polygon& p, const Polygon& q) {
    if (point_in_polygon(p[0], q) || point_in_polygon(q[0], p)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = p.size();
    const std::size_t m = q.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = p[i];
        const Point b = p[(i + 1) % n];
        for (std::size_t j = 0; j < m; ++j) {
            const double d = segment_distance(a, b, q[j], q[(j + 1) % m]);
            if (d == 0.0) return 0.0;
            best = std::min(best, d);
        }
    }
    return best;
}

Point centroid(const Polygon& p) {
    const auto ring = p.ring();
    const std::size_t n = ring.size();
    // Shift to the first vertex to limit cancellation for large coordinates.
    const Point origin = ring[0];
    double twice_area = 0.0;
    Point acc{};
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = ring[i] - origin;
        const Point b = ring[(i + 1) % n] - origin;
        const double c = cross(a, b);
        twice_area += c;
        acc = acc + c * (a + b);
    }
    if (std::abs(twice_area) < 2.0 * kMinArea) throw Error(ErrorKind::DegeneratePolygon, "zero area");
    return origin + (1.0 / (3.0 * twice_area)) * acc;
}

namespace {

struct Interval {
    double lo, hi;
};

Interval project(const OrientedRect& r, Point dir) {
    const double rad = r.axis_deg / kDegPerRad;
    const Point u{std::cos(rad), std::sin(rad)};
    const Point v{-u.y, u.x};
    const double c = dot(r.center, dir);
    const double ext = r.half_len * std::abs(dot(u, dir)) + r.half_wid * std::abs(dot(v, dir));
    return {c - ext, c + ext};
}

double overlap_ratio(Interval a, Interval b) {
    const double overlap = std::max(0.0, std::min(a.hi, b.hi) - std::max(a.lo, b.lo));
    const double span = std::max(a.hi, b.hi) - std::min(a.lo, b.lo);
    return span > 0.0 ? overlap / span : 0.0;
}

// Total order used only to break exact area ties, so the result does not depend
// on argument order.
bool rect_key_less(const OrientedRect& a, const OrientedRect& b) {
    if (a.center.x != b.center.x) return a.center.x < b.center.x;
    if (a.center.y != b.center.y) return a.center.y < b.center.y;
    if (a.axis_deg != b.axis_deg) return a.axis_deg < b.axis_deg;
    if (a.half_len != b.half_len) return a.half_len < b.half_len;
    return a.half_wid < b.half_wid;
}

}  // namespace

double facing_ratio(const OrientedRect& r1, const OrientedRect& r2, FrCombine combine) {
    const double a1 = r1.area();
    const double a2 = r2.area();
    bool first_is_ref = a1 > a2;
    if (a1 == a2) first_is_ref = !rect_key_less(r2, r1);
    const OrientedRect& ref = first_is_ref ? r1 : r2;

    const double rad = ref.axis_deg / kDegPerRad;
    const Point u{std::cos(rad), std::sin(rad)};
    const Point v{-u.y, u.x};
    const double along = overlap_ratio(project(r1, u), project(r2, u));
    const double across = overlap_ratio(project(r1, v), project(r2, v));
    return combine == FrCombine::Max ? std::max(along, across) : std::min(along, across);
}

bool segment_crosses_polyline(Point a, Point b, const Polyline& road) {
    const auto& pts = road.points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Point c = pts[i];
        const Point d = pts[i + 1];
        const double o1 = orient(a, b, c);
        const double o2 = orient(a, b, d);
        const double o3 = orient(c, d, a);
        const double o4 = orient(c, d, b);
        if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) {
            return true;
        }
    }
    // A road passing exactly through one of its own interior vertices lying on ab
    // still separates the two ends.
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const Point mid = pts[i];
        if (orient(a, b, mid) != 0.0 || !on_segment(mid, a, b) || mid == a || mid == b) continue;
        const double before = orient(a, b, pts[i - 1]);
        const double after = orient(a, b, pts[i + 1]);
        if ((before > 0 && after < 0) || (before < 0 && after > 0)) return true;
    }
    return false;
}

Polygon translated(const Polygon& p, Point offset) {
    std::vector<Point> ring;
    for (const Point& q : p.ring()) ring.push_back(q + offset);
    return Polygon(std::move(ring));
}

Polygon rotated(const Polygon& p, double deg, Point pivot) {
    const double rad = deg / kDegPerRad;
    const double c = std::cos(rad);
    const double s = std::sin(rad);
    std::vector<Point> ring;
    for (const Point& q : p.ring()) {
        const Point d = q - pivot;
        ring.push_back(pivot + Point{c * d.x - s * d.y, s * d.x + c * d.y});
    }
    return Polygon(std::move(ring));
}

Polygon scaled(const Polygon& p, double factor) {
    std::vector<Point> ring;
    for (const Point& q : p.ring()) ring.push_back(factor * q);
    return Polygon(std::move(ring));
}

Polygon rectangle(Point center, double length, double width, double axis_deg) {
    OrientedRect r{center, axis_deg, 0.5 * length, 0.5 * width};
    return Polygon(r.corners());
}

}  // namespace linea::geometry
