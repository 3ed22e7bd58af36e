#include "frontier/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace frontier {

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            t(j, i) = m(i, j);
    return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

LeastSquaresResult least_squares(const Matrix& x, const std::vector<double>& y,
                                 double rank_tol) {
    const std::size_t n = x.rows();
    const std::size_t k = x.cols();
    LeastSquaresResult res;

    // Householder QR, transforming a working copy of [X | y] in place.
    Matrix a = x;
    std::vector<double> b = y;

    for (std::size_t j = 0; j < k && j < n; ++j) {
        double norm = 0.0;
        for (std::size_t i = j; i < n; ++i) norm += a(i, j) * a(i, j);
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        const double alpha = (a(j, j) > 0.0) ? -norm : norm;
        std::vector<double> v(n, 0.0);
        v[j] = a(j, j) - alpha;
        for (std::size_t i = j + 1; i < n; ++i) v[i] = a(i, j);
        double vtv = 0.0;
        for (std::size_t i = j; i < n; ++i) vtv += v[i] * v[i];
        if (vtv == 0.0) continue;
        for (std::size_t c = j; c < k; ++c) {
            double dot = 0.0;
            for (std::size_t i = j; i < n; ++i) dot += v[i] * a(i, c);
            const double f = 2.0 * dot / vtv;
            for (std::size_t i = j; i < n; ++i) a(i, c) -= f * v[i];
        }
        double dot = 0.0;
        for (std::size_t i = j; i < n; ++i) dot += v[i] * b[i];
        const double f = 2.0 * dot / vtv;
        for (std::size_t i = j; i < n; ++i) b[i] -= f * v[i];
    }

    // Rank check on the diagonal of R.
    double rmax = 0.0;
    for (std::size_t j = 0; j < k; ++j) rmax = std::max(rmax, std::fabs(a(j, j)));
    for (std::size_t j = 0; j < k; ++j) {
        if (std::fabs(a(j, j)) <= rank_tol * std::max(1.0, rmax)) {
            res.rank_ok = false;
            res.deficient_cols.push_back(j);
        }
    }
    if (!res.rank_ok) return res;

    // Back-substitution for beta.
    res.beta.assign(k, 0.0);
    for (std::size_t jj = k; jj-- > 0;) {
        double s = b[jj];
        for (std::size_t c = jj + 1; c < k; ++c) s -= a(jj, c) * res.beta[c];
        res.beta[jj] = s / a(jj, jj);
    }

    // Residual sum of squares from the tail of Q'y.
    double rss = 0.0;
    for (std::size_t i = k; i < n; ++i) rss += b[i] * b[i];
    res.rss = rss;

    // (X'X)^{-1} = R^{-1} R^{-T}.
    Matrix rinv(k, k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        rinv(j, j) = 1.0 / a(j, j);
        for (std::size_t i = j; i-- > 0;) {
            double s = 0.0;
            for (std::size_t c = i + 1; c <= j; ++c) s += a(i, c) * rinv(c, j);
            rinv(i, j) = -s / a(i, i);
        }
    }
    res.xtx_inv = Matrix(k, k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0.0;
            for (std::size_t c = std::max(i, j); c < k; ++c) s += rinv(i, c) * rinv(j, c);
            res.xtx_inv(i, j) = s;
        }
    return res;
}

bool cholesky_solve(const Matrix& a, const std::vector<double>& b, std::vector<double>& out) {
    const std::size_t n = a.rows();
    Matrix l(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a(i, j);
            for (std::size_t c = 0; c < j; ++c) s -= l(i, c) * l(j, c);
            if (i == j) {
                if (s <= 0.0 || !std::isfinite(s)) return false;
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    std::vector<double> z(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t c = 0; c < i; ++c) s -= l(i, c) * z[c];
        z[i] = s / l(i, i);
    }
    out.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = z[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= l(c, i) * out[c];
        out[i] = s / l(i, i);
    }
    return true;
}

bool spd_inverse(const Matrix& a, Matrix& out) {
    const std::size_t n = a.rows();
    out = Matrix(n, n, 0.0);
    std::vector<double> e(n, 0.0), col;
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), 0.0);
        e[j] = 1.0;
        if (!cholesky_solve(a, e, col)) return false;
        for (std::size_t i = 0; i < n; ++i) out(i, j) = col[i];
    }
    return true;
}

bool solve_linear(Matrix a, std::vector<double> b, std::vector<double>& out, double pivot_tol) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (std::fabs(a(i, c)) > std::fabs(a(piv, c))) piv = i;
        if (std::fabs(a(piv, c)) <= pivot_tol) return false;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
            std::swap(b[c], b[piv]);
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            const double f = a(i, c) / a(c, c);
            if (f == 0.0) continue;
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
            b[i] -= f * b[c];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * out[j];
        out[i] = s / a(i, i);
    }
    return true;
}

} // namespace frontier
