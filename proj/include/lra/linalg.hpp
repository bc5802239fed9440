#pragma once

#include <cstddef>
#include <vector>

namespace lra {

// Dense row-major matrix, double precision.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
double frobenius_norm(const Matrix& a);
bool all_finite(const Matrix& a);

// y = a * x
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);
// y = a^T * x
std::vector<double> matvec_transposed(const Matrix& a, const std::vector<double>& x);

// Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.
// Eigenvalues descending; `vectors` holds the eigenvectors as columns.
struct SymmetricEigen {
    Matrix vectors;
    std::vector<double> values;
};
SymmetricEigen symmetric_eigen(const Matrix& s);

// Thin SVD a = u * diag(sigma) * v^T with sigma descending and rank detected
// at sigma_i > rank_tolerance * sigma_1. u is rows x r, v is cols x r.
struct SvdResult {
    Matrix u;
    std::vector<double> sigma;
    Matrix v;
    std::size_t rank = 0;
};
SvdResult svd(const Matrix& a);

// Leading-m slice of an SVD; requires 1 <= m <= rank.
struct TruncatedSvd {
    Matrix u;
    std::vector<double> sigma;
    Matrix v;
};
TruncatedSvd truncate(const SvdResult& s, std::size_t m);

// Reassemble u * diag(sigma) * v^T.
Matrix reconstruct(const Matrix& u, const std::vector<double>& sigma, const Matrix& v);

// Cholesky solve of a symmetric positive definite system (small fit problems).
std::vector<double> solve_spd(Matrix s, std::vector<double> rhs);

}  // namespace lra
