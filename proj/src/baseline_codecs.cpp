#include "lra/baseline_codecs.hpp"

#include <algorithm>
#include <cmath>

#include "lra/errors.hpp"
#include "lra/linalg.hpp"

namespace lra {

std::string codec_kind_name(CodecKind kind) {
    switch (kind) {
        case CodecKind::LowRank: return "lra";
        case CodecKind::ChebyshevPolar: return "chebyshev";
        case CodecKind::FourierContour: return "fourier";
        case CodecKind::BezierSides: return "bezier";
    }
    return "unknown";
}

namespace {

constexpr double two_pi = 2.0 * M_PI;

// farthest boundary intersection of the ray origin + t*(cos a, sin a), t > 0
bool farthest_ray_hit(const Contour& poly, Vec2 origin, double angle, double* radius) {
    const Vec2 dir{std::cos(angle), std::sin(angle)};
    const std::size_t n = poly.size();
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly.vertices[i];
        const Vec2 b = poly.vertices[(i + 1) % n];
        const Vec2 e = b - a;
        const double denom = dir.x * (-e.y) - dir.y * (-e.x);
        if (std::abs(denom) < 1e-300) continue;
        const Vec2 rhs = a - origin;
        const double t = (rhs.x * (-e.y) - rhs.y * (-e.x)) / denom;
        const double s = (dir.x * rhs.y - dir.y * rhs.x) / denom;
        if (t > 0.0 && s >= 0.0 && s <= 1.0) best = std::max(best, t);
    }
    if (best < 0.0) return false;
    *radius = best;
    return true;
}

bool point_in_polygon(const Contour& poly, Vec2 pt) {
    // even-odd crossing test
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly.vertices[i];
        const Vec2 b = poly.vertices[(i + 1) % n];
        if ((a.y <= pt.y && b.y > pt.y) || (b.y <= pt.y && a.y > pt.y)) {
            const double x = a.x + (pt.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (x > pt.x) inside = !inside;
        }
    }
    return inside;
}

double cheb_eval(const std::vector<double>& coeffs, double u) {
    // Clenshaw over T_j(u), u in [-1, 1]
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 1;) {
        const double b0 = 2.0 * u * b1 - b2 + coeffs[j];
        b2 = b1;
        b1 = b0;
    }
    return u * b1 - b2 + (coeffs.empty() ? 0.0 : coeffs[0]);
}

constexpr std::size_t cheb_angle_samples = 256;

// cumulative chord-length parameters in [0, 1], endpoints pinned
std::vector<double> chord_parameters(const std::vector<Vec2>& pts) {
    std::vector<double> t(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        t[i] = t[i - 1] + norm(pts[i] - pts[i - 1]);
    }
    const double total = t.back();
    if (total > 0.0) {
        for (double& v : t) v /= total;
    } else {
        for (std::size_t i = 0; i < t.size(); ++i) {
            t[i] = pts.size() > 1 ? static_cast<double>(i) / (static_cast<double>(pts.size()) - 1.0) : 0.0;
        }
    }
    return t;
}

// cubic Bezier least squares with P0, P3 pinned; solves the 2x2 normal
// equations for P1, P2 per coordinate
void fit_side(const std::vector<Vec2>& pts, Vec2* out) {
    const Vec2 p0 = pts.front();
    const Vec2 p3 = pts.back();
    out[0] = p0;
    out[3] = p3;

    if (pts.size() <= 2) {
        out[1] = p0 + (1.0 / 3.0) * (p3 - p0);
        out[2] = p0 + (2.0 / 3.0) * (p3 - p0);
        return;
    }

    const std::vector<double> t = chord_parameters(pts);
    double g11 = 0.0, g12 = 0.0, g22 = 0.0;
    Vec2 r1{0.0, 0.0}, r2{0.0, 0.0};
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const double u = t[i];
        const double w = 1.0 - u;
        const double b1 = 3.0 * w * w * u;
        const double b2 = 3.0 * w * u * u;
        const Vec2 resid = pts[i] - Vec2{w * w * w * p0.x + u * u * u * p3.x,
                                         w * w * w * p0.y + u * u * u * p3.y};
        g11 += b1 * b1;
        g12 += b1 * b2;
        g22 += b2 * b2;
        r1 = r1 + b1 * resid;
        r2 = r2 + b2 * resid;
    }
    const double det = g11 * g22 - g12 * g12;
    if (std::abs(det) < 1e-12 * std::max(g11 * g22, 1e-300)) {
        out[1] = p0 + (1.0 / 3.0) * (p3 - p0);
        out[2] = p0 + (2.0 / 3.0) * (p3 - p0);
        return;
    }
    out[1] = {(g22 * r1.x - g12 * r2.x) / det, (g22 * r1.y - g12 * r2.y) / det};
    out[2] = {(g11 * r2.x - g12 * r1.x) / det, (g11 * r2.y - g12 * r1.y) / det};
}

Vec2 bezier_point(const Vec2* cp, double u) {
    const double w = 1.0 - u;
    const double b0 = w * w * w;
    const double b1 = 3.0 * w * w * u;
    const double b2 = 3.0 * w * u * u;
    const double b3 = u * u * u;
    return {b0 * cp[0].x + b1 * cp[1].x + b2 * cp[2].x + b3 * cp[3].x,
            b0 * cp[0].y + b1 * cp[1].y + b2 * cp[2].y + b3 * cp[3].y};
}

}  // namespace

ChebCoefficients cheb_encode(const Contour& p, std::size_t k) {
    if (k < 1) throw argument_error("cheb_encode: need at least one coefficient");
    if (p.size() < 3) throw invalid_contour_error("cheb_encode: degenerate contour");

    ChebCoefficients out;
    out.center = polygon_centroid(p);
    out.centroid_outside = !point_in_polygon(p, out.center);
    out.radial.assign(k, 0.0);

    // radius samples at uniform angles; rays that miss contribute nothing
    std::vector<double> us, radii;
    us.reserve(cheb_angle_samples);
    radii.reserve(cheb_angle_samples);
    for (std::size_t i = 0; i < cheb_angle_samples; ++i) {
        const double theta = two_pi * static_cast<double>(i) / cheb_angle_samples;
        double r = 0.0;
        if (farthest_ray_hit(p, out.center, theta, &r)) {
            us.push_back(theta / M_PI - 1.0);
            radii.push_back(r);
        }
    }
    if (us.size() < k) {
        // not enough usable rays for the requested order; fit what we can
        out.centroid_outside = true;
        if (us.empty()) return out;
    }

    const std::size_t terms = std::min(k, us.size());
    Matrix design(us.size(), terms);
    for (std::size_t i = 0; i < us.size(); ++i) {
        // T_0 .. T_{terms-1} by recurrence
        double t0 = 1.0, t1 = us[i];
        for (std::size_t j = 0; j < terms; ++j) {
            const double tj = j == 0 ? 1.0 : (j == 1 ? t1 : 2.0 * us[i] * t1 - t0);
            if (j >= 2) {
                t0 = t1;
                t1 = tj;
            }
            design(i, j) = tj;
        }
    }
    Matrix normal(terms, terms);
    std::vector<double> rhs(terms, 0.0);
    for (std::size_t i = 0; i < us.size(); ++i) {
        for (std::size_t a = 0; a < terms; ++a) {
            rhs[a] += design(i, a) * radii[i];
            for (std::size_t b = a; b < terms; ++b) {
                normal(a, b) += design(i, a) * design(i, b);
            }
        }
    }
    for (std::size_t a = 0; a < terms; ++a) {
        for (std::size_t b = 0; b < a; ++b) normal(a, b) = normal(b, a);
        normal(a, a) += 1e-9;  // ridge for sparse-ray degeneracies
    }
    const std::vector<double> solution = solve_spd(normal, rhs);
    std::copy(solution.begin(), solution.end(), out.radial.begin());
    return out;
}

Contour cheb_decode(const ChebCoefficients& coeffs, std::size_t n) {
    if (n < min_contour_vertices) throw argument_error("cheb_decode: need at least 4 vertices");
    Contour out;
    out.vertices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = two_pi * static_cast<double>(i) / static_cast<double>(n);
        const double r = cheb_eval(coeffs.radial, theta / M_PI - 1.0);
        out.vertices.push_back(
            {coeffs.center.x + r * std::cos(theta), coeffs.center.y + r * std::sin(theta)});
    }
    return out;
}

std::vector<double> fourier_encode(const Contour& p, std::size_t harmonics) {
    const std::size_t n = p.size();
    if (n < 2 * harmonics + 1) {
        throw argument_error("fourier_encode: contour needs at least 2k+1 vertices");
    }
    std::vector<double> out;
    out.reserve(4 * harmonics + 2);

    auto push_frequency = [&](long f) {
        double re = 0.0, im = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            const double ang = -two_pi * static_cast<double>(f) * static_cast<double>(v) /
                               static_cast<double>(n);
            const double c = std::cos(ang);
            const double s = std::sin(ang);
            re += p.vertices[v].x * c - p.vertices[v].y * s;
            im += p.vertices[v].x * s + p.vertices[v].y * c;
        }
        out.push_back(re / static_cast<double>(n));
        out.push_back(im / static_cast<double>(n));
    };

    push_frequency(0);
    for (std::size_t k = 1; k <= harmonics; ++k) {
        push_frequency(static_cast<long>(k));
        push_frequency(-static_cast<long>(k));
    }
    return out;
}

Contour fourier_decode(const std::vector<double>& coeffs, std::size_t n) {
    if (coeffs.size() < 2 || coeffs.size() % 4 != 2) {
        throw argument_error("fourier_decode: coefficient count must be 4k+2");
    }
    if (n < min_contour_vertices) throw argument_error("fourier_decode: need at least 4 vertices");
    const std::size_t harmonics = (coeffs.size() - 2) / 4;

    Contour out;
    out.vertices.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        double x = coeffs[0];
        double y = coeffs[1];
        for (std::size_t k = 1; k <= harmonics; ++k) {
            for (int sign = 0; sign < 2; ++sign) {
                const std::size_t base = 2 * (2 * (k - 1) + static_cast<std::size_t>(sign)) + 2;
                const double f = sign == 0 ? static_cast<double>(k) : -static_cast<double>(k);
                const double ang = two_pi * f * static_cast<double>(v) / static_cast<double>(n);
                const double c = std::cos(ang);
                const double s = std::sin(ang);
                x += coeffs[base] * c - coeffs[base + 1] * s;
                y += coeffs[base] * s + coeffs[base + 1] * c;
            }
        }
        out.vertices.push_back({x, y});
    }
    return out;
}

std::array<double, 16> bezier_encode(const Contour& p) {
    const std::size_t n = p.size();
    if (n < min_contour_vertices) {
        throw invalid_contour_error("bezier_encode: contour needs at least 4 vertices");
    }
    const std::size_t half = n / 2;
    std::vector<Vec2> top(p.vertices.begin(), p.vertices.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<Vec2> bottom(p.vertices.begin() + static_cast<std::ptrdiff_t>(half), p.vertices.end());

    Vec2 control[8];
    fit_side(top, control);
    fit_side(bottom, control + 4);

    std::array<double, 16> out{};
    for (std::size_t i = 0; i < 8; ++i) {
        out[2 * i] = control[i].x;
        out[2 * i + 1] = control[i].y;
    }
    return out;
}

Contour bezier_decode(const std::array<double, 16>& control, std::size_t n) {
    if (n < min_contour_vertices || n % 2 != 0) {
        throw argument_error("bezier_decode: vertex count must be even and at least 4");
    }
    Vec2 cp[8];
    for (std::size_t i = 0; i < 8; ++i) cp[i] = {control[2 * i], control[2 * i + 1]};

    const std::size_t per_side = n / 2;
    Contour out;
    out.vertices.reserve(n);
    for (std::size_t side = 0; side < 2; ++side) {
        for (std::size_t i = 0; i < per_side; ++i) {
            const double u = per_side > 1 ? static_cast<double>(i) / (static_cast<double>(per_side) - 1.0)
                                          : 0.0;
            out.vertices.push_back(bezier_point(cp + 4 * side, u));
        }
    }
    return out;
}

}  // namespace lra
