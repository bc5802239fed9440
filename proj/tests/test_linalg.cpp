#include <cmath>

#include "doctest.h"
#include "lra/errors.hpp"
#include "lra/linalg.hpp"
#include "test_helpers.hpp"

using namespace lra;

namespace {

Matrix random_matrix(testutil::Rng& rng, std::size_t r, std::size_t c, double scale = 1.0) {
    Matrix m(r, c);
    for (double& v : m.data) v = rng.uniform(-scale, scale);
    return m;
}

double max_orthonormality_residual(const Matrix& q) {
    double worst = 0.0;
    for (std::size_t i = 0; i < q.cols; ++i) {
        for (std::size_t j = 0; j < q.cols; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < q.rows; ++k) acc += q(k, i) * q(k, j);
            worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

double relative_reconstruction_error(const Matrix& a, const SvdResult& s) {
    const Matrix back = reconstruct(s.u, s.sigma, s.v);
    Matrix diff = a;
    for (std::size_t i = 0; i < diff.data.size(); ++i) diff.data[i] -= back.data[i];
    const double na = frobenius_norm(a);
    return na > 0.0 ? frobenius_norm(diff) / na : frobenius_norm(diff);
}

}  // namespace

TEST_CASE("svd of the identity") {
    const Matrix eye = Matrix::identity(3);
    const SvdResult s = svd(eye);
    REQUIRE(s.rank == 3);
    for (double sig : s.sigma) CHECK(sig == doctest::Approx(1.0).epsilon(1e-12));
    const Matrix uv = matmul(s.u, transpose(s.v));
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(uv(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("svd of a rank-1 outer product") {
    // 3 * u0 v0^T with unit u0, v0
    const double u0[3] = {1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
    const double v0[4] = {0.5, 0.5, 0.5, 0.5};
    Matrix a(3, 4);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 4; ++j) a(i, j) = 3.0 * u0[i] * v0[j];
    }
    const SvdResult s = svd(a);
    REQUIRE(s.rank == 1);
    CHECK(s.sigma[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(relative_reconstruction_error(a, s) < 1e-12);
}

TEST_CASE("svd reconstructs random rectangular matrices") {
    testutil::Rng rng(99);
    SUBCASE("wide 28x500") {
        const Matrix a = random_matrix(rng, 28, 500);
        const SvdResult s = svd(a);
        CHECK(relative_reconstruction_error(a, s) < 1e-10);
        CHECK(max_orthonormality_residual(s.u) < 1e-8);
        CHECK(max_orthonormality_residual(s.v) < 1e-8);
        for (std::size_t i = 1; i < s.sigma.size(); ++i) CHECK(s.sigma[i] <= s.sigma[i - 1]);
    }
    SUBCASE("tall 200x14") {
        const Matrix a = random_matrix(rng, 200, 14);
        const SvdResult s = svd(a);
        CHECK(relative_reconstruction_error(a, s) < 1e-10);
        CHECK(max_orthonormality_residual(s.u) < 1e-8);
        CHECK(max_orthonormality_residual(s.v) < 1e-8);
    }
    SUBCASE("single column") {
        const Matrix a = random_matrix(rng, 8, 1);
        const SvdResult s = svd(a);
        REQUIRE(s.rank == 1);
        CHECK(relative_reconstruction_error(a, s) < 1e-12);
    }
}

TEST_CASE("svd rejects bad input") {
    Matrix bad(2, 2);
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(svd(bad), numeric_error);
    CHECK_THROWS_AS(svd(Matrix()), argument_error);
}

TEST_CASE("svd is reproducible") {
    testutil::Rng rng(3);
    const Matrix a = random_matrix(rng, 20, 120);
    const SvdResult s1 = svd(a);
    const SvdResult s2 = svd(a);
    REQUIRE(s1.rank == s2.rank);
    for (std::size_t i = 0; i < s1.sigma.size(); ++i) {
        CHECK(std::abs(s1.sigma[i] - s2.sigma[i]) <= 1e-12 * s1.sigma[0]);
    }
    for (std::size_t i = 0; i < s1.u.data.size(); ++i) {
        CHECK(s1.u.data[i] == s2.u.data[i]);
    }
}

TEST_CASE("squared singular values sum to the squared Frobenius norm") {
    testutil::Rng rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        const Matrix a = random_matrix(rng, 5 + rng.index(40), 5 + rng.index(200));
        const SvdResult s = svd(a);
        double sum = 0.0;
        for (double sig : s.sigma) sum += sig * sig;
        const double nf2 = frobenius_norm(a) * frobenius_norm(a);
        CHECK(std::abs(sum - nf2) <= 1e-8 * nf2);
    }
}

TEST_CASE("truncate keeps the leading block and satisfies the tail identity") {
    testutil::Rng rng(31);
    const Matrix a = random_matrix(rng, 28, 200);
    const SvdResult s = svd(a);
    REQUIRE(s.rank == 28);

    SUBCASE("full rank kept reproduces the matrix") {
        const TruncatedSvd t = truncate(s, s.rank);
        const Matrix back = reconstruct(t.u, t.sigma, t.v);
        Matrix diff = a;
        for (std::size_t i = 0; i < diff.data.size(); ++i) diff.data[i] -= back.data[i];
        CHECK(frobenius_norm(diff) / frobenius_norm(a) < 1e-10);
    }
    SUBCASE("m = 14 residual matches the tail of the spectrum") {
        const TruncatedSvd t = truncate(s, 14);
        const Matrix back = reconstruct(t.u, t.sigma, t.v);
        Matrix diff = a;
        for (std::size_t i = 0; i < diff.data.size(); ++i) diff.data[i] -= back.data[i];
        double tail = 0.0;
        for (std::size_t i = 14; i < s.sigma.size(); ++i) tail += s.sigma[i] * s.sigma[i];
        const double lhs = frobenius_norm(diff);
        const double rhs = std::sqrt(tail);
        CHECK(std::abs(lhs - rhs) <= 1e-8 * rhs);
    }
    SUBCASE("out of range m is rejected") {
        CHECK_THROWS_AS(truncate(s, 0), argument_error);
        CHECK_THROWS_AS(truncate(s, s.rank + 1), argument_error);
    }
}

TEST_CASE("truncation beats random competitors of the same rank") {
    testutil::Rng rng(41);
    const Matrix a = random_matrix(rng, 16, 80);
    const SvdResult s = svd(a);
    const std::size_t m = 6;
    const TruncatedSvd t = truncate(s, m);
    const Matrix best = reconstruct(t.u, t.sigma, t.v);
    Matrix diff = a;
    for (std::size_t i = 0; i < diff.data.size(); ++i) diff.data[i] -= best.data[i];
    const double optimal = frobenius_norm(diff);

    for (int rep = 0; rep < 200; ++rep) {
        const Matrix x = random_matrix(rng, 16, m);
        const Matrix y = random_matrix(rng, m, 80);
        const Matrix b = matmul(x, y);
        Matrix d = a;
        for (std::size_t i = 0; i < d.data.size(); ++i) d.data[i] -= b.data[i];
        CHECK(frobenius_norm(d) >= optimal);
    }
}

TEST_CASE("exactly rank-deficient matrices are detected") {
    testutil::Rng rng(53);
    // rank 3 by construction
    const Matrix x = random_matrix(rng, 20, 3);
    const Matrix y = random_matrix(rng, 3, 60);
    const Matrix a = matmul(x, y);
    const SvdResult s = svd(a);
    CHECK(s.rank == 3);
    CHECK(relative_reconstruction_error(a, s) < 1e-10);
}

TEST_CASE("symmetric eigen solves a known 2x2 system") {
    Matrix s(2, 2);
    s(0, 0) = 2.0;
    s(0, 1) = s(1, 0) = 1.0;
    s(1, 1) = 2.0;
    const SymmetricEigen e = symmetric_eigen(s);
    CHECK(e.values[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_spd solves small positive definite systems") {
    testutil::Rng rng(61);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 2 + rng.index(8);
        const Matrix g = random_matrix(rng, n + 2, n);
        Matrix s(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double acc = i == j ? 1e-3 : 0.0;
                for (std::size_t k = 0; k < n + 2; ++k) acc += g(k, i) * g(k, j);
                s(i, j) = acc;
            }
        }
        std::vector<double> truth(n);
        for (double& v : truth) v = rng.uniform(-1.0, 1.0);
        const std::vector<double> rhs = matvec(s, truth);
        const std::vector<double> got = solve_spd(s, rhs);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(got[i] - truth[i]) < 1e-8);
        }
    }
}
