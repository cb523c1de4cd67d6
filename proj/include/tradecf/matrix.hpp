// Dense row-major matrix and the small amount of linear algebra the
// estimators need: Cholesky solves, Householder-QR least squares, and a
// deterministic first-kept collinearity filter.
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "tradecf/common.hpp"

namespace tradecf {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const double* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }
    double* row_ptr(std::size_t i) { return data_.data() + i * cols_; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    std::vector<double> column(std::size_t j) const {
        std::vector<double> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = data_[i * cols_ + j];
        return out;
    }

    Matrix select_rows(const std::vector<std::size_t>& idx) const {
        Matrix out(idx.size(), cols_);
        for (std::size_t r = 0; r < idx.size(); ++r) {
            const double* src = row_ptr(idx[r]);
            double* dst = out.row_ptr(r);
            for (std::size_t j = 0; j < cols_; ++j) dst[j] = src[j];
        }
        return out;
    }

    Matrix select_cols(const std::vector<std::size_t>& idx) const {
        Matrix out(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i) {
            const double* src = row_ptr(i);
            double* dst = out.row_ptr(i);
            for (std::size_t j = 0; j < idx.size(); ++j) dst[j] = src[idx[j]];
        }
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// y = X b for a coefficient vector of length cols.
inline std::vector<double> mat_vec(const Matrix& x, const std::vector<double>& b) {
    std::vector<double> out(x.rows(), 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double* row = x.row_ptr(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < x.cols(); ++j) acc += row[j] * b[j];
        out[i] = acc;
    }
    return out;
}

// Solves A x = b for symmetric positive definite A (in place Cholesky).
// Returns false when the factorization breaks down.
inline bool cholesky_solve(Matrix a, std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) return false;
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        a(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / ljj;
        }
    }
    // forward then backward substitution
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a(i, k) * b[k];
        b[i] = s / a(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= a(k, ii) * b[k];
        b[ii] = s / a(ii, ii);
    }
    x = std::move(b);
    return true;
}

// Deterministic collinearity filter: walks columns left to right and keeps a
// column iff its residual after projecting on the already-kept ones exceeds
// tol times its own norm (modified Gram-Schmidt). Zero columns are dropped.
inline std::vector<std::size_t> first_kept_columns(const Matrix& x, double tol = 1e-9) {
    const std::size_t n = x.rows();
    const std::size_t p = x.cols();
    std::vector<std::size_t> kept;
    std::vector<std::vector<double>> basis;  // orthonormal columns
    for (std::size_t j = 0; j < p; ++j) {
        std::vector<double> v = x.column(j);
        double norm0 = 0.0;
        for (double t : v) norm0 += t * t;
        norm0 = std::sqrt(norm0);
        if (norm0 <= 0.0) continue;
        for (const auto& q : basis) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += q[i] * v[i];
            for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q[i];
        }
        double norm1 = 0.0;
        for (double t : v) norm1 += t * t;
        norm1 = std::sqrt(norm1);
        if (norm1 > tol * norm0) {
            for (double& t : v) t /= norm1;
            basis.push_back(std::move(v));
            kept.push_back(j);
        }
    }
    return kept;
}

struct LeastSquaresResult {
    std::vector<double> coef;        // length = cols of the (kept) design
    std::vector<double> residuals;   // length = rows
    double rss = 0.0;
    // Unscaled inverse Gram diagonal, (X'X)^{-1}_jj, for classical SEs.
    std::vector<double> xtx_inv_diag;
};

// Householder QR least squares on a full-column-rank design.
// Throws DataError when the design is numerically rank deficient.
inline LeastSquaresResult qr_least_squares(const Matrix& x_in, const std::vector<double>& y) {
    const std::size_t n = x_in.rows();
    const std::size_t p = x_in.cols();
    if (y.size() != n) throw DataError("qr_least_squares: length mismatch");
    if (p == 0 || n < p) throw DataError("qr_least_squares: need rows >= cols >= 1");

    Matrix a = x_in;        // becomes R in the upper triangle
    std::vector<double> b = y;
    std::vector<double> betas(p, 0.0);

    for (std::size_t k = 0; k < p; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm += a(i, k) * a(i, k);
        norm = std::sqrt(norm);
        if (norm <= 1e-13) throw DataError("qr_least_squares: rank-deficient design");
        double alpha = a(k, k) > 0 ? -norm : norm;
        // Householder vector v stored in column k below the diagonal; v_k implicit.
        const double vk = a(k, k) - alpha;
        a(k, k) = alpha;
        for (std::size_t i = k + 1; i < n; ++i) a(i, k) /= vk;
        const double beta = -vk / alpha;  // 2 / (v'v) scaled to v_k = 1
        betas[k] = beta;
        // apply reflector to remaining columns
        for (std::size_t j = k + 1; j < p; ++j) {
            double s = a(k, j);
            for (std::size_t i = k + 1; i < n; ++i) s += a(i, k) * a(i, j);
            s *= beta;
            a(k, j) -= s;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * a(i, k);
        }
        // and to the rhs
        {
            double s = b[k];
            for (std::size_t i = k + 1; i < n; ++i) s += a(i, k) * b[i];
            s *= beta;
            b[k] -= s;
            for (std::size_t i = k + 1; i < n; ++i) b[i] -= s * a(i, k);
        }
    }

    LeastSquaresResult res;
    res.coef.assign(p, 0.0);
    for (std::size_t jj = p; jj-- > 0;) {
        double s = b[jj];
        for (std::size_t k = jj + 1; k < p; ++k) s -= a(jj, k) * res.coef[k];
        res.coef[jj] = s / a(jj, jj);
    }

    res.residuals.assign(n, 0.0);
    res.rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = 0.0;
        const double* row = x_in.row_ptr(i);
        for (std::size_t j = 0; j < p; ++j) fit += row[j] * res.coef[j];
        res.residuals[i] = y[i] - fit;
        res.rss += res.residuals[i] * res.residuals[i];
    }

    // (X'X)^{-1} = R^{-1} R^{-T}; diagonal via rows of R^{-1}.
    res.xtx_inv_diag.assign(p, 0.0);
    Matrix rinv(p, p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        rinv(j, j) = 1.0 / a(j, j);
        for (std::size_t i = j; i-- > 0;) {
            double s = 0.0;
            for (std::size_t k = i + 1; k <= j; ++k) s += a(i, k) * rinv(k, j);
            rinv(i, j) = -s / a(i, i);
        }
    }
    for (std::size_t i = 0; i < p; ++i) {
        double s = 0.0;
        for (std::size_t j = i; j < p; ++j) s += rinv(i, j) * rinv(i, j);
        res.xtx_inv_diag[i] = s;
    }
    return res;
}

}  // namespace tradecf
