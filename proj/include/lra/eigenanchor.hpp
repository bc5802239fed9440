#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lra/contour.hpp"
#include "lra/corpus.hpp"
#include "lra/defaults.hpp"
#include "lra/linalg.hpp"

namespace lra {

// Orthonormal shape basis learned from a contour corpus. Columns of u are the
// eigenanchors, ordered by singular value; entries of sigma beyond the corpus
// rank are ~0 and the matching columns complete the orthonormal set.
struct EigenanchorBasis {
    Matrix u;                   // 2N x M
    std::vector<double> sigma;  // leading M singular values
    std::size_t n_vertices = 0;
    std::size_t dim = 0;
    std::size_t corpus_size = 0;
    OriginPolicy origin_policy = OriginPolicy::BBoxCenter;

    // Hash of the numeric payload; coefficient vectors are only decodable
    // against the basis that produced them.
    std::uint64_t content_hash() const;
};

struct CoefficientVector {
    std::vector<double> c;
    std::uint64_t basis_id = 0;
};

// Stacks the corpus into the 2N x L contour matrix and keeps the m leading
// left singular vectors. m may exceed the corpus rank (the orthonormal
// complement fills in, with ~0 singular values) but not 2N.
EigenanchorBasis learn_basis(const Corpus& corpus, std::size_t m);

// c = U_M^T p; p must be canonicalized consistently with the basis.
CoefficientVector encode(const EigenanchorBasis& basis, const FlatContour& p);

// p~ = U_M c.
FlatContour decode(const EigenanchorBasis& basis, const CoefficientVector& c);

// Full representation-quality pipeline for one raw contour: resample,
// canonicalize, encode, decode, translate back, rasterized IoU against the
// original polygon.
double reconstruction_iou(const EigenanchorBasis& basis, const Contour& p,
                          std::size_t resolution = defaults::iou_resolution);

// Versioned basis container (JSON, decimal text payload). Readers verify the
// format version and the content hash.
void save_basis(const EigenanchorBasis& basis, const std::string& path);
EigenanchorBasis load_basis(const std::string& path);

}  // namespace lra
