#include "lra/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lra/defaults.hpp"
#include "lra/errors.hpp"

namespace lra {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw argument_error("matmul: inner dimensions differ");
    Matrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix out(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) out(j, i) = a(i, j);
    }
    return out;
}

double frobenius_norm(const Matrix& a) {
    double acc = 0.0;
    for (double v : a.data) acc += v * v;
    return std::sqrt(acc);
}

bool all_finite(const Matrix& a) {
    return std::all_of(a.data.begin(), a.data.end(), [](double v) { return std::isfinite(v); });
}

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
    if (x.size() != a.cols) throw argument_error("matvec: dimension mismatch");
    std::vector<double> y(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

std::vector<double> matvec_transposed(const Matrix& a, const std::vector<double>& x) {
    if (x.size() != a.rows) throw argument_error("matvec_transposed: dimension mismatch");
    std::vector<double> y(a.cols, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (std::size_t j = 0; j < a.cols; ++j) y[j] += a(i, j) * xi;
    }
    return y;
}

SymmetricEigen symmetric_eigen(const Matrix& s) {
    if (s.rows != s.cols) throw argument_error("symmetric_eigen: matrix must be square");
    if (!all_finite(s)) throw numeric_error("symmetric_eigen: non-finite entries");

    const std::size_t n = s.rows;
    Matrix a = s;
    Matrix q = Matrix::identity(n);

    auto offdiag_norm = [&]() {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) acc += a(i, j) * a(i, j);
        }
        return std::sqrt(2.0 * acc);
    };

    const double total = frobenius_norm(a);
    const double tol = 1e-14 * std::max(total, 1e-300);

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (offdiag_norm() <= tol) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t qi = p + 1; qi < n; ++qi) {
                const double apq = a(p, qi);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a(qi, qi) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);

                const double app = a(p, p);
                const double aqq = a(qi, qi);
                a(p, p) = app - t * apq;
                a(qi, qi) = aqq + t * apq;
                a(p, qi) = 0.0;
                a(qi, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r != p && r != qi) {
                        const double arp = a(r, p);
                        const double arq = a(r, qi);
                        a(r, p) = a(p, r) = arp - sn * (arq + tau * arp);
                        a(r, qi) = a(qi, r) = arq + sn * (arp - tau * arq);
                    }
                    const double qrp = q(r, p);
                    const double qrq = q(r, qi);
                    q(r, p) = qrp - sn * (qrq + tau * qrp);
                    q(r, qi) = qrq + sn * (qrp - tau * qrq);
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = q(i, order[j]);
    }
    return out;
}

namespace {

// Flip each column of u (paired with v) so its largest-magnitude entry is
// positive; first index wins ties. Keeps basis files reproducible.
void fix_column_signs(Matrix& u, Matrix* v) {
    for (std::size_t j = 0; j < u.cols; ++j) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < u.rows; ++i) {
            const double mag = std::abs(u(i, j));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (u(arg, j) < 0.0) {
            for (std::size_t i = 0; i < u.rows; ++i) u(i, j) = -u(i, j);
            if (v) {
                for (std::size_t i = 0; i < v->rows; ++i) (*v)(i, j) = -(*v)(i, j);
            }
        }
    }
}

// Orthonormalize columns in place: modified Gram-Schmidt with one
// reorthogonalization pass.
void orthonormalize_columns(Matrix& w) {
    const std::size_t n = w.rows;
    const std::size_t m = w.cols;
    for (std::size_t j = 0; j < m; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                double proj = 0.0;
                for (std::size_t i = 0; i < n; ++i) proj += w(i, k) * w(i, j);
                for (std::size_t i = 0; i < n; ++i) w(i, j) -= proj * w(i, k);
            }
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += w(i, j) * w(i, j);
        nrm = std::sqrt(nrm);
        if (nrm > 0.0) {
            for (std::size_t i = 0; i < n; ++i) w(i, j) /= nrm;
        }
    }
}

}  // namespace

SvdResult svd(const Matrix& a) {
    if (a.rows == 0 || a.cols == 0) throw argument_error("svd: empty matrix");
    if (!all_finite(a)) throw numeric_error("svd: non-finite entries");

    // Eigendecompose the smaller Gram matrix, then recover the other factor
    // by applying the matrix; column norms are the singular values.
    const bool transposed = a.rows > a.cols;
    const std::size_t m = transposed ? a.cols : a.rows;

    Matrix gram(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            double acc = 0.0;
            if (!transposed) {
                for (std::size_t k = 0; k < a.cols; ++k) acc += a(i, k) * a(j, k);
            } else {
                for (std::size_t k = 0; k < a.rows; ++k) acc += a(k, i) * a(k, j);
            }
            gram(i, j) = gram(j, i) = acc;
        }
    }

    const SymmetricEigen eig = symmetric_eigen(gram);

    Matrix w(transposed ? a.rows : a.cols, m);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> col(m);
        for (std::size_t i = 0; i < m; ++i) col[i] = eig.vectors(i, j);
        const std::vector<double> mapped = transposed ? matvec(a, col) : matvec_transposed(a, col);
        for (std::size_t i = 0; i < w.rows; ++i) w(i, j) = mapped[i];
    }

    std::vector<double> raw_sigma(m);
    for (std::size_t j = 0; j < m; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < w.rows; ++i) acc += w(i, j) * w(i, j);
        raw_sigma[j] = std::sqrt(acc);
    }

    const double sigma_max =
        raw_sigma.empty() ? 0.0 : *std::max_element(raw_sigma.begin(), raw_sigma.end());
    const double threshold = defaults::rank_tolerance * sigma_max;

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return raw_sigma[i] > raw_sigma[j]; });

    std::size_t rank = 0;
    for (std::size_t j = 0; j < m; ++j) {
        if (raw_sigma[order[j]] > threshold && raw_sigma[order[j]] > 0.0) ++rank;
    }

    Matrix small(m, rank);       // eigenvector side
    Matrix large(w.rows, rank);  // mapped side
    std::vector<double> sigma(rank);
    for (std::size_t j = 0; j < rank; ++j) {
        const std::size_t src = order[j];
        sigma[j] = raw_sigma[src];
        for (std::size_t i = 0; i < m; ++i) small(i, j) = eig.vectors(i, src);
        for (std::size_t i = 0; i < w.rows; ++i) large(i, j) = w(i, src);
    }
    orthonormalize_columns(large);

    SvdResult out;
    out.sigma = std::move(sigma);
    out.rank = rank;
    if (!transposed) {
        out.u = std::move(small);
        out.v = std::move(large);
    } else {
        out.u = std::move(large);
        out.v = std::move(small);
    }
    fix_column_signs(out.u, &out.v);
    return out;
}

TruncatedSvd truncate(const SvdResult& s, std::size_t m) {
    if (m < 1 || m > s.rank) throw argument_error("truncate: m out of range [1, rank]");
    TruncatedSvd out;
    out.u = Matrix(s.u.rows, m);
    out.v = Matrix(s.v.rows, m);
    out.sigma.assign(s.sigma.begin(), s.sigma.begin() + static_cast<std::ptrdiff_t>(m));
    for (std::size_t i = 0; i < s.u.rows; ++i) {
        for (std::size_t j = 0; j < m; ++j) out.u(i, j) = s.u(i, j);
    }
    for (std::size_t i = 0; i < s.v.rows; ++i) {
        for (std::size_t j = 0; j < m; ++j) out.v(i, j) = s.v(i, j);
    }
    return out;
}

Matrix reconstruct(const Matrix& u, const std::vector<double>& sigma, const Matrix& v) {
    if (u.cols != sigma.size() || v.cols != sigma.size()) {
        throw argument_error("reconstruct: factor dimensions differ");
    }
    Matrix out(u.rows, v.rows);
    for (std::size_t i = 0; i < u.rows; ++i) {
        for (std::size_t k = 0; k < sigma.size(); ++k) {
            const double scaled = u(i, k) * sigma[k];
            if (scaled == 0.0) continue;
            for (std::size_t j = 0; j < v.rows; ++j) out(i, j) += scaled * v(j, k);
        }
    }
    return out;
}

std::vector<double> solve_spd(Matrix s, std::vector<double> rhs) {
    const std::size_t n = s.rows;
    if (s.cols != n || rhs.size() != n) throw argument_error("solve_spd: dimension mismatch");

    // Cholesky s = L L^T, lower triangle stored in place
    for (std::size_t j = 0; j < n; ++j) {
        double d = s(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= s(j, k) * s(j, k);
        if (!(d > 0.0)) throw numeric_error("solve_spd: matrix not positive definite");
        const double ljj = std::sqrt(d);
        s(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double acc = s(i, j);
            for (std::size_t k = 0; k < j; ++k) acc -= s(i, k) * s(j, k);
            s(i, j) = acc / ljj;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double acc = rhs[i];
        for (std::size_t k = 0; k < i; ++k) acc -= s(i, k) * rhs[k];
        rhs[i] = acc / s(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        double acc = rhs[i];
        for (std::size_t k = i + 1; k < n; ++k) acc -= s(k, i) * rhs[k];
        rhs[i] = acc / s(i, i);
    }
    return rhs;
}

}  // namespace lra
