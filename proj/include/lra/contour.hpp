#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace lra {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

// Closed polygon; the edge from the last vertex back to the first is
// implicit. Vertex order follows the annotation convention: top side left
// to right, then bottom side right to left.
struct Contour {
    std::vector<Vec2> vertices;

    std::size_t size() const { return vertices.size(); }
};

// Interleaved coordinate vector [x1, y1, ..., xN, yN] of a contour.
struct FlatContour {
    std::vector<double> coords;

    std::size_t n_vertices() const { return coords.size() / 2; }
};

enum class OriginPolicy { BBoxCenter, None };

inline constexpr std::size_t min_contour_vertices = 4;

struct BBox {
    Vec2 lo;
    Vec2 hi;

    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    Vec2 center() const { return {0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)}; }
};

BBox bounding_box(const Contour& c);
Contour translate(const Contour& c, Vec2 offset);

// Signed area (shoelace); sign depends on traversal direction.
double polygon_area(const Contour& c);

// Area centroid; falls back to the vertex mean for near-zero-area polygons.
Vec2 polygon_centroid(const Contour& c);

// Drops consecutive duplicate vertices (the closing pair included) and, under
// BBoxCenter, shifts the bounding-box center to the origin. Fails with
// invalid_contour_error when fewer than 4 distinct vertices remain.
Contour canonicalize(const Contour& raw, OriginPolicy policy);

// Places n vertices at uniform arc-length stations along the closed periodic
// cubic spline through c's vertices (chord-length knots). The first output
// vertex is c's first vertex; traversal direction is preserved.
Contour resample(const Contour& c, std::size_t n);

// Raster IoU: both polygons filled even-odd onto a shared grid with
// `resolution` cells along the longer side of the joint bounding box.
// A zero-area input yields 0 and sets *degenerate when provided.
double polygon_iou(const Contour& a, const Contour& b, std::size_t resolution,
                   bool* degenerate = nullptr);

// Exact interleaved packing and its inverse; unflatten(flatten(c)) == c.
FlatContour flatten(const Contour& c);
Contour unflatten(const FlatContour& f);

}  // namespace lra
