#pragma once

#include <span>
#include <vector>

namespace linea::geometry {

// Planar projected coordinates, meters.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point a);

// Sign of the turn o->a->b: >0 counter-clockwise, <0 clockwise, 0 collinear.
inline double orient(Point o, Point a, Point b) { return cross(a - o, b - o); }

struct BBox {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

    [[nodiscard]] double distance_to(const BBox& other) const;
};

// Exterior ring of a building footprint, stored counter-clockwise without the
// closing vertex. Construction validates: at least three distinct vertices, no
// self-intersection, area above 1e-9 m^2.
class Polygon {
public:
    explicit Polygon(std::vector<Point> ring);

    [[nodiscard]] std::span<const Point> ring() const { return ring_; }
    [[nodiscard]] std::size_t size() const { return ring_.size(); }
    [[nodiscard]] const Point& operator[](std::size_t i) const { return ring_[i]; }
    [[nodiscard]] BBox bbox() const { return bbox_; }

private:
    std::vector<Point> ring_;
    BBox bbox_{};
};

// Minimum-area enclosing rectangle. axis_deg is the direction of the longer
// side, folded into [0,180).
struct OrientedRect {
    Point center;
    double axis_deg = 0.0;
    double half_len = 0.0;
    double half_wid = 0.0;

    [[nodiscard]] double area() const { return 4.0 * half_len * half_wid; }
    [[nodiscard]] std::vector<Point> corners() const;
};

struct Polyline {
    std::vector<Point> points;
};

enum class FrCombine { Max, Min };

double polygon_area(const Polygon& p);
int edge_count(const Polygon& p, double collinear_tol_deg = 1.0);
OrientedRect min_bounding_rect(const Polygon& p);
double angle_diff_180(double a, double b);
double fold_180(double deg);
double min_distance(const Polygon& p, const Polygon& q);
Point centroid(const Polygon& p);
double facing_ratio(const OrientedRect& r1, const OrientedRect& r2, FrCombine combine = FrCombine::Max);
bool segment_crosses_polyline(Point a, Point b, const Polyline& road);

// Building blocks shared with the test oracles.
double point_segment_distance(Point p, Point a, Point b);
bool segments_intersect(Point a, Point b, Point c, Point d);
double segment_distance(Point a, Point b, Point c, Point d);
bool point_in_polygon(Point pt, const Polygon& poly);
std::vector<Point> convex_hull(std::span<const Point> pts);

// Direction of b - a in degrees, folded into [0,180).
double direction_deg(Point a, Point b);

Polygon translated(const Polygon& p, Point offset);
Polygon rotated(const Polygon& p, double deg, Point pivot = {});
Polygon scaled(const Polygon& p, double factor);
Polygon rectangle(Point center, double length, double width, double axis_deg = 0.0);

}  // namespace linea::geometry
