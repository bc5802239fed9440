#include "lra/contour.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <limits>

#include "lra/errors.hpp"

namespace lra {

namespace {

bool all_finite(const Contour& c) {
    for (const Vec2& v : c.vertices) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) return false;
    }
    return true;
}

// Tridiagonal solve (Thomas algorithm), diagonally dominant input assumed.
std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                                      std::vector<double> super, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * super[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = (rhs[i] - super[i] * x[i + 1]) / diag[i];
    }
    return x;
}

// Cyclic tridiagonal solve via Sherman-Morrison: corner entries `corner`
// sit at (0, n-1) and (n-1, 0).
std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& sub,
                                             const std::vector<double>& diag,
                                             const std::vector<double>& super, double corner,
                                             const std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    const double gamma = -diag[0];
    std::vector<double> diag_mod = diag;
    diag_mod[0] -= gamma;
    diag_mod[n - 1] -= corner * corner / gamma;

    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = corner;

    std::vector<double> y = solve_tridiagonal(sub, diag_mod, super, rhs);
    std::vector<double> z = solve_tridiagonal(sub, diag_mod, super, u);

    const double vy = y[0] + (corner / gamma) * y[n - 1];
    const double vz = z[0] + (corner / gamma) * z[n - 1];
    const double factor = vy / (1.0 + vz);
    for (std::size_t i = 0; i < n; ++i) y[i] -= factor * z[i];
    return y;
}

// Closed C2 cubic spline through the contour vertices with chord-length
// knots. Stored as knot positions plus second-derivative moments.
class PeriodicSpline {
public:
    explicit PeriodicSpline(const Contour& c) : pts_(c.vertices) {
        const std::size_t n = pts_.size();
        knots_.resize(n + 1);
        knots_[0] = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 d = pts_[(i + 1) % n] - pts_[i];
            const double h = norm(d);
            if (!(h > 0.0)) {
                throw invalid_contour_error("resample: contour has coincident consecutive vertices");
            }
            knots_[i + 1] = knots_[i] + h;
        }
        if (!(knots_[n] > 0.0)) {
            throw invalid_contour_error("resample: contour has zero total arc length");
        }
        mx_ = solve_moments(true);
        my_ = solve_moments(false);
    }

    double period() const { return knots_.back(); }
    std::size_t segments() const { return pts_.size(); }
    double knot(std::size_t i) const { return knots_[i]; }

    Vec2 eval(std::size_t seg, double u) const {
        const std::size_t n = pts_.size();
        const double h = knots_[seg + 1] - knots_[seg];
        const std::size_t j = (seg + 1) % n;
        const double a = knots_[seg + 1] - (knots_[seg] + u);  // h - u
        return {cubic(pts_[seg].x, pts_[j].x, mx_[seg], mx_[j], h, a, u),
                cubic(pts_[seg].y, pts_[j].y, my_[seg], my_[j], h, a, u)};
    }

    Vec2 derivative(std::size_t seg, double u) const {
        const std::size_t n = pts_.size();
        const double h = knots_[seg + 1] - knots_[seg];
        const std::size_t j = (seg + 1) % n;
        const double a = knots_[seg + 1] - (knots_[seg] + u);
        return {cubic_d(pts_[seg].x, pts_[j].x, mx_[seg], mx_[j], h, a, u),
                cubic_d(pts_[seg].y, pts_[j].y, my_[seg], my_[j], h, a, u)};
    }

    Vec2 eval_global(double t) const {
        const std::size_t seg = locate(t);
        return eval(seg, t - knots_[seg]);
    }

private:
    static double cubic(double p0, double p1, double m0, double m1, double h, double a, double u) {
        return m0 * a * a * a / (6.0 * h) + m1 * u * u * u / (6.0 * h) +
               (p0 / h - m0 * h / 6.0) * a + (p1 / h - m1 * h / 6.0) * u;
    }

    static double cubic_d(double p0, double p1, double m0, double m1, double h, double a, double u) {
        return -m0 * a * a / (2.0 * h) + m1 * u * u / (2.0 * h) -
               (p0 / h - m0 * h / 6.0) + (p1 / h - m1 * h / 6.0);
    }

    std::size_t locate(double t) const {
        const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
        std::size_t seg = static_cast<std::size_t>(std::distance(knots_.begin(), it));
        seg = seg == 0 ? 0 : seg - 1;
        return std::min(seg, pts_.size() - 1);
    }

    std::vector<double> solve_moments(bool x_axis) const {
        const std::size_t n = pts_.size();
        auto coord = [&](std::size_t i) { return x_axis ? pts_[i].x : pts_[i].y; };
        auto h = [&](std::size_t i) { return knots_[i + 1] - knots_[i]; };

        std::vector<double> sub(n), diag(n), super(n), rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t prev = (i + n - 1) % n;
            const double hp = h(prev);
            const double hi = h(i);
            sub[i] = hp / 6.0;
            diag[i] = (hp + hi) / 3.0;
            super[i] = hi / 6.0;
            rhs[i] = (coord((i + 1) % n) - coord(i)) / hi - (coord(i) - coord(prev)) / hp;
        }
        return solve_cyclic_tridiagonal(sub, diag, super, h(n - 1) / 6.0, rhs);
    }

    std::vector<Vec2> pts_;
    std::vector<double> knots_;  // size n+1, last entry = period
    std::vector<double> mx_, my_;
};

// 5-point Gauss-Legendre nodes/weights on [0, 1].
constexpr std::array<double, 5> gl_nodes = {0.046910077030668, 0.230765344947158, 0.5,
                                            0.769234655052842, 0.953089922969332};
constexpr std::array<double, 5> gl_weights = {0.118463442528095, 0.239314335249683,
                                              0.284444444444444, 0.239314335249683,
                                              0.118463442528095};

constexpr std::size_t arc_subdivisions = 64;  // per spline segment

double segment_speed(const PeriodicSpline& s, std::size_t seg, double u) {
    return norm(s.derivative(seg, u));
}

// Arc length of [u0, u1] inside one segment.
double arc_quadrature(const PeriodicSpline& s, std::size_t seg, double u0, double u1) {
    const double len = u1 - u0;
    double sum = 0.0;
    for (std::size_t i = 0; i < gl_nodes.size(); ++i) {
        sum += gl_weights[i] * segment_speed(s, seg, u0 + gl_nodes[i] * len);
    }
    return sum * len;
}

struct ArcTable {
    // cumulative[seg][k] = arc length from segment start to sub-boundary k
    std::vector<std::array<double, arc_subdivisions + 1>> cumulative;
    std::vector<double> segment_start;  // arc length at each segment's start
    double total = 0.0;
};

ArcTable build_arc_table(const PeriodicSpline& s) {
    ArcTable t;
    const std::size_t n = s.segments();
    t.cumulative.resize(n);
    t.segment_start.resize(n);
    double acc = 0.0;
    for (std::size_t seg = 0; seg < n; ++seg) {
        t.segment_start[seg] = acc;
        const double h = s.knot(seg + 1) - s.knot(seg);
        t.cumulative[seg][0] = 0.0;
        for (std::size_t k = 0; k < arc_subdivisions; ++k) {
            const double u0 = h * static_cast<double>(k) / arc_subdivisions;
            const double u1 = h * static_cast<double>(k + 1) / arc_subdivisions;
            t.cumulative[seg][k + 1] = t.cumulative[seg][k] + arc_quadrature(s, seg, u0, u1);
        }
        acc += t.cumulative[seg][arc_subdivisions];
    }
    t.total = acc;
    return t;
}

// Parameter u inside `seg` whose arc length from the segment start equals
// `target`. Newton iteration bracketed by the subdivision table.
double invert_arc_length(const PeriodicSpline& s, const ArcTable& t, std::size_t seg,
                         double target) {
    const double h = s.knot(seg + 1) - s.knot(seg);
    const auto& cum = t.cumulative[seg];
    target = std::min(target, cum[arc_subdivisions]);

    std::size_t k = 0;
    while (k + 1 < arc_subdivisions && cum[k + 1] < target) ++k;
    double lo = h * static_cast<double>(k) / arc_subdivisions;
    double hi = h * static_cast<double>(k + 1) / arc_subdivisions;
    double base = cum[k];

    double u = lo + (hi - lo) * 0.5;
    const double tol = 1e-13 * std::max(t.total, 1.0);
    for (int it = 0; it < 60; ++it) {
        const double f = base + arc_quadrature(s, seg, h * static_cast<double>(k) / arc_subdivisions, u) - target;
        if (std::abs(f) <= tol) break;
        if (f > 0.0) hi = u; else lo = u;
        const double speed = segment_speed(s, seg, u);
        double next = speed > 0.0 ? u - f / speed : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        u = next;
    }
    return u;
}

struct RasterGrid {
    Vec2 origin;
    double cell = 0.0;
    std::size_t nx = 0, ny = 0;
};

// One polygon's even-odd fill as a packed bitmask, one row at a time.
class RasterMask {
public:
    RasterMask(const Contour& poly, const RasterGrid& g)
        : words_per_row_((g.nx + 63) / 64), bits_(words_per_row_ * g.ny, 0), count_(0) {
        std::vector<double> crossings;
        const std::size_t n = poly.size();
        for (std::size_t j = 0; j < g.ny; ++j) {
            const double yc = g.origin.y + (static_cast<double>(j) + 0.5) * g.cell;
            crossings.clear();
            for (std::size_t e = 0; e < n; ++e) {
                const Vec2 p = poly.vertices[e];
                const Vec2 q = poly.vertices[(e + 1) % n];
                if ((p.y <= yc && q.y > yc) || (q.y <= yc && p.y > yc)) {
                    crossings.push_back(p.x + (yc - p.y) / (q.y - p.y) * (q.x - p.x));
                }
            }
            std::sort(crossings.begin(), crossings.end());
            for (std::size_t c = 0; c + 1 < crossings.size(); c += 2) {
                fill_span(g, j, crossings[c], crossings[c + 1]);
            }
        }
    }

    std::size_t count() const { return count_; }

    static std::pair<std::size_t, std::size_t> overlap(const RasterMask& a, const RasterMask& b) {
        std::size_t inter = 0, uni = 0;
        for (std::size_t w = 0; w < a.bits_.size(); ++w) {
            inter += static_cast<std::size_t>(std::popcount(a.bits_[w] & b.bits_[w]));
            uni += static_cast<std::size_t>(std::popcount(a.bits_[w] | b.bits_[w]));
        }
        return {inter, uni};
    }

private:
    void fill_span(const RasterGrid& g, std::size_t row, double x0, double x1) {
        // cells whose center lies strictly inside (x0, x1)
        const double f0 = (x0 - g.origin.x) / g.cell - 0.5;
        const double f1 = (x1 - g.origin.x) / g.cell - 0.5;
        long i0 = static_cast<long>(std::floor(f0)) + 1;
        long i1 = static_cast<long>(std::ceil(f1)) - 1;
        i0 = std::max(i0, 0L);
        i1 = std::min(i1, static_cast<long>(g.nx) - 1);
        for (long i = i0; i <= i1; ++i) {
            auto& word = bits_[row * words_per_row_ + static_cast<std::size_t>(i) / 64];
            const std::uint64_t bit = 1ULL << (static_cast<std::size_t>(i) % 64);
            if (!(word & bit)) {
                word |= bit;
                ++count_;
            }
        }
    }

    std::size_t words_per_row_;
    std::vector<std::uint64_t> bits_;
    std::size_t count_;
};

}  // namespace

BBox bounding_box(const Contour& c) {
    BBox b{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
           {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
    for (const Vec2& v : c.vertices) {
        b.lo.x = std::min(b.lo.x, v.x);
        b.lo.y = std::min(b.lo.y, v.y);
        b.hi.x = std::max(b.hi.x, v.x);
        b.hi.y = std::max(b.hi.y, v.y);
    }
    return b;
}

Contour translate(const Contour& c, Vec2 offset) {
    Contour out = c;
    for (Vec2& v : out.vertices) v = v + offset;
    return out;
}

double polygon_area(const Contour& c) {
    const std::size_t n = c.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = c.vertices[i];
        const Vec2 q = c.vertices[(i + 1) % n];
        acc += p.x * q.y - q.x * p.y;
    }
    return 0.5 * acc;
}

Vec2 polygon_centroid(const Contour& c) {
    const std::size_t n = c.size();
    const double area = polygon_area(c);
    Vec2 mean{0.0, 0.0};
    for (const Vec2& v : c.vertices) mean = mean + v;
    mean = (1.0 / static_cast<double>(n)) * mean;
    const BBox box = bounding_box(c);
    const double scale = std::max({box.width(), box.height(), 1e-300});
    if (std::abs(area) < 1e-12 * scale * scale) return mean;

    Vec2 acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = c.vertices[i];
        const Vec2 q = c.vertices[(i + 1) % n];
        const double w = p.x * q.y - q.x * p.y;
        acc.x += (p.x + q.x) * w;
        acc.y += (p.y + q.y) * w;
    }
    return (1.0 / (6.0 * area)) * acc;
}

Contour canonicalize(const Contour& raw, OriginPolicy policy) {
    if (raw.size() < min_contour_vertices) {
        throw invalid_contour_error("canonicalize: contour needs at least 4 vertices");
    }
    if (!all_finite(raw)) {
        throw invalid_contour_error("canonicalize: non-finite vertex coordinates");
    }
    Contour out;
    out.vertices.reserve(raw.size());
    for (const Vec2& v : raw.vertices) {
        if (!out.vertices.empty()) {
            const Vec2& last = out.vertices.back();
            if (last.x == v.x && last.y == v.y) continue;
        }
        out.vertices.push_back(v);
    }
    // closing pair counts as consecutive
    while (out.size() > 1 && out.vertices.front().x == out.vertices.back().x &&
           out.vertices.front().y == out.vertices.back().y) {
        out.vertices.pop_back();
    }
    if (out.size() < min_contour_vertices) {
        throw invalid_contour_error("canonicalize: fewer than 4 distinct vertices");
    }
    if (policy == OriginPolicy::BBoxCenter) {
        const Vec2 c = bounding_box(out).center();
        out = translate(out, {-c.x, -c.y});
    }
    return out;
}

Contour resample(const Contour& c, std::size_t n) {
    if (n < min_contour_vertices) {
        throw argument_error("resample: target vertex count must be at least 4");
    }
    if (c.size() < min_contour_vertices) {
        throw invalid_contour_error("resample: contour needs at least 4 vertices");
    }
    if (!all_finite(c)) {
        throw invalid_contour_error("resample: non-finite vertex coordinates");
    }

    const PeriodicSpline spline(c);
    const ArcTable table = build_arc_table(spline);
    if (!(table.total > 0.0)) {
        throw invalid_contour_error("resample: contour has zero total arc length");
    }

    Contour out;
    out.vertices.resize(n);
    out.vertices[0] = c.vertices[0];  // phase anchor

    const std::size_t segs = spline.segments();
    std::size_t seg = 0;
    for (std::size_t k = 1; k < n; ++k) {
        const double target = table.total * static_cast<double>(k) / static_cast<double>(n);
        while (seg + 1 < segs && table.segment_start[seg + 1] <= target) ++seg;
        const double u = invert_arc_length(spline, table, seg, target - table.segment_start[seg]);
        out.vertices[k] = spline.eval(seg, u);
    }
    return out;
}

double polygon_iou(const Contour& a, const Contour& b, std::size_t resolution, bool* degenerate) {
    if (resolution < 64) {
        throw argument_error("polygon_iou: resolution must be at least 64");
    }
    if (a.size() < 3 || b.size() < 3 || !all_finite(a) || !all_finite(b)) {
        throw invalid_contour_error("polygon_iou: invalid polygon input");
    }
    if (degenerate) *degenerate = false;

    BBox box = bounding_box(a);
    const BBox bb = bounding_box(b);
    box.lo.x = std::min(box.lo.x, bb.lo.x);
    box.lo.y = std::min(box.lo.y, bb.lo.y);
    box.hi.x = std::max(box.hi.x, bb.hi.x);
    box.hi.y = std::max(box.hi.y, bb.hi.y);

    const double longer = std::max(box.width(), box.height());
    if (!(longer > 0.0)) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }

    RasterGrid g;
    g.origin = box.lo;
    g.cell = longer / static_cast<double>(resolution);
    g.nx = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(box.width() / g.cell - 1e-9)));
    g.ny = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(box.height() / g.cell - 1e-9)));

    const RasterMask ra(a, g);
    const RasterMask rb(b, g);
    if (ra.count() == 0 || rb.count() == 0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    const auto [inter, uni] = RasterMask::overlap(ra, rb);
    if (uni == 0) return 0.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

FlatContour flatten(const Contour& c) {
    FlatContour f;
    f.coords.reserve(2 * c.size());
    for (const Vec2& v : c.vertices) {
        f.coords.push_back(v.x);
        f.coords.push_back(v.y);
    }
    return f;
}

Contour unflatten(const FlatContour& f) {
    if (f.coords.size() % 2 != 0) {
        throw data_error("unflatten: coordinate vector has odd length");
    }
    Contour c;
    c.vertices.reserve(f.coords.size() / 2);
    for (std::size_t i = 0; i + 1 < f.coords.size(); i += 2) {
        c.vertices.push_back({f.coords[i], f.coords[i + 1]});
    }
    return c;
}

}  // namespace lra
