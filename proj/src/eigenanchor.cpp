#include "lra/eigenanchor.hpp"

#include <cmath>
#include <cstring>

#include "lra/errors.hpp"

namespace lra {

namespace {

void hash_bytes(std::uint64_t& h, const void* data, std::size_t len) {
    // FNV-1a 64
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
}

void hash_double(std::uint64_t& h, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    hash_bytes(h, &bits, sizeof bits);
}

void hash_u64(std::uint64_t& h, std::uint64_t v) { hash_bytes(h, &v, sizeof v); }

}  // namespace

std::uint64_t EigenanchorBasis::content_hash() const {
    std::uint64_t h = 1469598103934665603ULL;  // FNV offset basis
    hash_u64(h, 1);                            // payload layout version
    hash_u64(h, n_vertices);
    hash_u64(h, dim);
    hash_u64(h, corpus_size);
    hash_u64(h, origin_policy == OriginPolicy::BBoxCenter ? 1 : 0);
    for (double s : sigma) hash_double(h, s);
    for (double v : u.data) hash_double(h, v);
    return h;
}

EigenanchorBasis learn_basis(const Corpus& corpus, std::size_t m) {
    if (corpus.contours.empty()) throw data_error("learn_basis: empty corpus");
    const std::size_t two_n = 2 * corpus.n_vertices;
    if (m < 1 || m > two_n) {
        throw argument_error("learn_basis: dimension must lie in [1, 2N]");
    }

    const Matrix a = assemble_matrix(corpus);  // validates uniform N

    // Same route as svd(): eigenvectors of A A^T, singular values read off as
    // ||A^T u||. Running on the full 2N x 2N spectrum keeps the orthonormal
    // complement available when m exceeds the corpus rank.
    Matrix gram(two_n, two_n);
    for (std::size_t i = 0; i < two_n; ++i) {
        for (std::size_t j = i; j < two_n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) acc += a(i, k) * a(j, k);
            gram(i, j) = gram(j, i) = acc;
        }
    }
    const SymmetricEigen eig = symmetric_eigen(gram);

    EigenanchorBasis basis;
    basis.n_vertices = corpus.n_vertices;
    basis.dim = m;
    basis.corpus_size = corpus.contours.size();
    basis.origin_policy = OriginPolicy::BBoxCenter;
    basis.u = Matrix(two_n, m);
    basis.sigma.resize(m);

    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> col(two_n);
        for (std::size_t i = 0; i < two_n; ++i) col[i] = eig.vectors(i, j);
        const std::vector<double> mapped = matvec_transposed(a, col);
        double nrm = 0.0;
        for (double v : mapped) nrm += v * v;
        basis.sigma[j] = std::sqrt(nrm);

        // deterministic sign: largest-magnitude entry positive
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < two_n; ++i) {
            if (std::abs(col[i]) > best) {
                best = std::abs(col[i]);
                arg = i;
            }
        }
        const double flip = col[arg] < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < two_n; ++i) basis.u(i, j) = flip * col[i];
    }
    return basis;
}

CoefficientVector encode(const EigenanchorBasis& basis, const FlatContour& p) {
    if (p.coords.size() != 2 * basis.n_vertices) {
        throw argument_error("encode: contour length does not match the basis");
    }
    CoefficientVector out;
    out.basis_id = basis.content_hash();
    out.c = matvec_transposed(basis.u, p.coords);
    return out;
}

FlatContour decode(const EigenanchorBasis& basis, const CoefficientVector& c) {
    if (c.c.size() != basis.dim) {
        throw argument_error("decode: coefficient length does not match the basis dimension");
    }
    if (c.basis_id != 0 && c.basis_id != basis.content_hash()) {
        throw argument_error("decode: coefficients were encoded against a different basis");
    }
    FlatContour out;
    out.coords = matvec(basis.u, c.c);
    return out;
}

double reconstruction_iou(const EigenanchorBasis& basis, const Contour& p,
                          std::size_t resolution) {
    const Contour deduped = canonicalize(p, OriginPolicy::None);
    const Contour resampled = resample(deduped, basis.n_vertices);

    Vec2 offset{0.0, 0.0};
    Contour canonical = resampled;
    if (basis.origin_policy == OriginPolicy::BBoxCenter) {
        offset = bounding_box(resampled).center();
        canonical = translate(resampled, {-offset.x, -offset.y});
    }

    const CoefficientVector c = encode(basis, flatten(canonical));
    const Contour reconstructed = translate(unflatten(decode(basis, c)), offset);
    return polygon_iou(p, reconstructed, resolution);
}

}  // namespace lra
