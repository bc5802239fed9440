#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "lra/contour.hpp"

namespace lra {

// Competing parameterized shape codecs behind one encode/decode contract.
enum class CodecKind { LowRank, ChebyshevPolar, FourierContour, BezierSides };

struct CodecSpec {
    CodecKind kind = CodecKind::LowRank;
    std::size_t dim = 0;         // total real parameter count
    std::size_t n_vertices = 0;  // decoded polygon size
};

std::string codec_kind_name(CodecKind kind);

// --- Chebyshev radius-vs-angle fit under the polar system -----------------
//
// dim accounting: k radial coefficients plus the stored center = k + 2.

struct ChebCoefficients {
    Vec2 center;                 // ray origin used at encode time
    std::vector<double> radial;  // Chebyshev series over theta in [0, 2pi)
    bool centroid_outside = false;
};

// Least-squares Chebyshev fit of the centroid-ray radius profile. Rays that
// cross the boundary several times keep the farthest hit; a centroid outside
// the polygon sets the degeneracy flag and the fit proceeds on the rays that
// do hit.
ChebCoefficients cheb_encode(const Contour& p, std::size_t k);
Contour cheb_decode(const ChebCoefficients& coeffs, std::size_t n);

// --- Truncated Fourier series of the complex vertex sequence --------------
//
// Keeps DC plus the k lowest positive and negative frequencies: 4k + 2 reals
// as [re, im] pairs ordered DC, +1, -1, +2, -2, ...

std::vector<double> fourier_encode(const Contour& p, std::size_t harmonics);
Contour fourier_decode(const std::vector<double>& coeffs, std::size_t n);

// --- Cubic Bezier per side (top then bottom), endpoints pinned ------------
//
// 8 control points = 16 reals: top P0..P3 then bottom P0..P3 in traversal
// order. Decode emits n/2 points per side.

std::array<double, 16> bezier_encode(const Contour& p);
Contour bezier_decode(const std::array<double, 16>& control, std::size_t n);

}  // namespace lra
