#pragma once

#include <span>
#include <vector>

namespace otd {

/// Dense real matrix, column-major storage. Public accessors are 1-based,
/// matching the index convention used throughout the library and its file
/// formats.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols);
    Matrix(int rows, int cols, std::vector<double> entries);

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    // 1-based element access.
    double& at(int r, int c) { return e_[idx(r, c)]; }
    double at(int r, int c) const { return e_[idx(r, c)]; }

    std::span<double> data() { return e_; }
    std::span<const double> data() const { return e_; }

    Matrix transposed() const;

    // In-place Givens-style column mix: col_i <- c*col_i + s*col_j,
    // col_j <- -s*col_i + c*col_j (i.e. right-multiplication by a plane
    // rotation with cosine c at (i,i),(j,j), -s at (i,j), s at (j,i)).
    void rotate_columns(int i, int j, double c, double s);

    double frobenius_norm() const;

private:
    std::size_t idx(int r, int c) const;

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> e_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

/// max |(QᵀQ - I)_{ij}|, the orthogonality residual.
double orthogonality_residual(const Matrix& q);

double frobenius_distance(const Matrix& a, const Matrix& b);

}  // namespace otd
