#include "otd/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace otd {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("Matrix: dimensions must be positive");
    e_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

Matrix::Matrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("Matrix: dimensions must be positive");
    if (e_.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("Matrix: entry count does not match rows*cols");
}

std::size_t Matrix::idx(int r, int c) const {
    if (r < 1 || r > rows_ || c < 1 || c > cols_)
        throw std::out_of_range("Matrix: index (" + std::to_string(r) + "," +
                                std::to_string(c) + ") out of range");
    return static_cast<std::size_t>(r - 1) + static_cast<std::size_t>(c - 1) * rows_;
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 1; i <= n; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (int c = 1; c <= cols_; ++c)
        for (int r = 1; r <= rows_; ++r) t.at(c, r) = at(r, c);
    return t;
}

void Matrix::rotate_columns(int i, int j, double c, double s) {
    if (i < 1 || j < 1 || i > cols_ || j > cols_ || i == j)
        throw std::out_of_range("rotate_columns: bad column pair");
    double* ci = e_.data() + static_cast<std::size_t>(i - 1) * rows_;
    double* cj = e_.data() + static_cast<std::size_t>(j - 1) * rows_;
    if (s == 0.0 && c == 1.0) return;
    if (c == 0.0) {
        for (int r = 0; r < rows_; ++r) {
            const double u = ci[r];
            ci[r] = s * cj[r];
            cj[r] = -s * u;
        }
        return;
    }
    // correction form, rounding proportional to the angle (assumes c > 0,
    // which plane-rotation solvers guarantee; falls back gracefully otherwise)
    if (c > 0.0) {
        const double tau = s / (1.0 + c);
        for (int r = 0; r < rows_; ++r) {
            const double u = ci[r];
            const double v = cj[r];
            ci[r] = std::fma(s, std::fma(-tau, u, v), u);
            cj[r] = std::fma(-s, std::fma(tau, v, u), v);
        }
        return;
    }
    for (int r = 0; r < rows_; ++r) {
        const double u = ci[r];
        const double v = cj[r];
        ci[r] = c * u + s * v;
        cj[r] = -s * u + c * v;
    }
}

double Matrix::frobenius_norm() const {
    double acc = 0.0;
    for (double x : e_) acc += x * x;
    return std::sqrt(acc);
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("Matrix multiply: inner dimensions differ");
    Matrix out(a.rows(), b.cols());
    const double* ad = a.data().data();
    const double* bd = b.data().data();
    double* od = out.data().data();
    const int m = a.rows(), k = a.cols(), n = b.cols();
    for (int c = 0; c < n; ++c)
        for (int t = 0; t < k; ++t) {
            const double bv = bd[t + static_cast<std::size_t>(c) * k];
            if (bv == 0.0) continue;
            const double* acol = ad + static_cast<std::size_t>(t) * m;
            double* ocol = od + static_cast<std::size_t>(c) * m;
            for (int r = 0; r < m; ++r) ocol[r] += acol[r] * bv;
        }
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("Matrix subtract: shape mismatch");
    Matrix out(a.rows(), a.cols());
    for (std::size_t t = 0; t < a.data().size(); ++t)
        out.data()[t] = a.data()[t] - b.data()[t];
    return out;
}

double orthogonality_residual(const Matrix& q) {
    if (q.rows() != q.cols())
        throw std::invalid_argument("orthogonality_residual: matrix not square");
    const int n = q.rows();
    double worst = 0.0;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            double dot = 0.0;
            for (int r = 1; r <= n; ++r) dot += q.at(r, i) * q.at(r, j);
            const double target = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(dot - target));
        }
    return worst;
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
    return (a - b).frobenius_norm();
}

}  // namespace otd
