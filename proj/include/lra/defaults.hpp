#pragma once

#include <cstddef>

// Central defaults for every tunable constant. CLI flags and config files
// override these; library entry points take them as explicit parameters.
namespace lra::defaults {

inline constexpr std::size_t n_vertices = 32;      // resampled vertices per contour
inline constexpr std::size_t dim = 14;             // eigenanchor space dimension
inline constexpr double lambda = 2.0;              // regression weight in the matching cost
inline constexpr std::size_t k_samples = 3;        // positive samples per instance
inline constexpr std::size_t iou_resolution = 512; // raster cells along the longer bbox side
inline constexpr std::size_t nms_resolution = 256; // raster resolution used inside NMS
inline constexpr double nms_threshold = 0.5;
inline constexpr double score_epsilon = 1e-6;      // score clamp before any log
inline constexpr double rank_tolerance = 1e-12;    // singular values below tol*sigma_1 are rank noise
inline constexpr double focal_alpha = 0.25;
inline constexpr double focal_gamma = 2.0;
inline constexpr double smooth_l1_beta = 1.0;

}  // namespace lra::defaults
