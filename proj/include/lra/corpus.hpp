#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lra/contour.hpp"
#include "lra/defaults.hpp"
#include "lra/linalg.hpp"

namespace lra {

enum class AnnotationFormat { PolyLines, Json };
enum class CorpusSource { File, Synthetic };

// Canonicalized contours resampled to a shared vertex count.
struct Corpus {
    std::vector<Contour> contours;
    CorpusSource source = CorpusSource::File;
    std::size_t n_vertices = 0;

    std::size_t size() const { return contours.size(); }
};

// Text-ribbon generator settings. Shapes are spine curves swept with constant
// half width, emitted as 7 top + 7 bottom boundary points. curvature_range
// bounds the spine heading deviation in radians; 0 produces exact rotated
// quadrilaterals. Output is byte-identical for a fixed seed.
struct SynthParams {
    std::size_t count = 2000;
    std::pair<double, double> aspect_ratio_range = {1.5, 8.0};
    double curvature_range = 2.4;
    std::size_t wave_harmonics = 3;
    double rotation_range = 0.6;
    std::uint64_t seed = 42;
};

// Raw annotation polygons, one per record. PolyLines is one comma-separated
// x1,y1,...,xK,yK per line; Json is {"contours": [[[x,y],...], ...]}.
// Parse failures carry the offending line or record index.
std::vector<Contour> load_raw_annotations(const std::string& path, AnnotationFormat format);

// Raw loader composed with canonicalize + resample per contour.
Corpus load_annotations(const std::string& path, AnnotationFormat format,
                        std::size_t n_vertices = defaults::n_vertices,
                        OriginPolicy policy = OriginPolicy::BBoxCenter);

// Deterministic raw 14-point ribbons (pre-canonicalization).
std::vector<Contour> synthesize_annotations(const SynthParams& params);

Corpus generate_synthetic(const SynthParams& params,
                          std::size_t n_vertices = defaults::n_vertices,
                          OriginPolicy policy = OriginPolicy::BBoxCenter);

// Canonicalize + resample a batch of raw contours into a Corpus.
Corpus build_corpus(const std::vector<Contour>& raw, std::size_t n_vertices, OriginPolicy policy,
                    CorpusSource source);

// 2N x L matrix whose j-th column is flatten(contours[j]).
Matrix assemble_matrix(const Corpus& c);

void save_annotations(const std::vector<Contour>& contours, const std::string& path,
                      AnnotationFormat format);

}  // namespace lra
