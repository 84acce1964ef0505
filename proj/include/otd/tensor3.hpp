#pragma once

#include "otd/matrix.hpp"

#include <span>
#include <vector>

namespace otd {

/// Dense real n x n x n tensor. Element (i,j,k) with 1-based indices lives at
/// linear offset (i-1) + (j-1)*n + (k-1)*n^2, so the first index varies
/// fastest. Entries are required to be finite; constructors validate and
/// value-producing operations keep the invariant.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(int n);  // zero tensor
    Tensor3(int n, std::vector<double> data);

    int size() const { return n_; }

    // 1-based element access.
    double& at(int i, int j, int k) { return d_[offset(i, j, k)]; }
    double at(int i, int j, int k) const { return d_[offset(i, j, k)]; }

    std::span<double> data() { return d_; }
    std::span<const double> data() const { return d_; }

    /// Throws if any entry is NaN or infinite.
    void validate_finite() const;

private:
    std::size_t offset(int i, int j, int k) const;

    int n_ = 0;
    std::vector<double> d_;
};

/// 2x2x2 subtensor at pivot pair (p,q): the eight entries of a tensor with
/// all indices drawn from {p,q}.
struct Subtensor222 {
    double ppp = 0, qpp = 0, pqp = 0, ppq = 0;
    double qqp = 0, qpq = 0, pqq = 0, qqq = 0;
    int p = 0, q = 0;
};

/// Mode-m matricization: an n x n^2 matrix whose columns are the mode-m
/// fibers. Column order (0-based col index, 1-based tensor indices):
///   m=1: col = (j-1) + (k-1)*n, entry (i, col) = x_ijk
///   m=2: col = (i-1) + (k-1)*n, entry (j, col) = x_ijk
///   m=3: col = (i-1) + (j-1)*n, entry (k, col) = x_ijk
Matrix matricize(const Tensor3& t, int mode);

/// Mode-m product with a square matrix a: the result y satisfies
/// y_(m) = a * x_(m). Input is left unchanged.
Tensor3 mode_product(const Tensor3& t, int mode, const Matrix& a);

/// In-place plane rotation along mode m at pivot (i,j), i < j: equivalent to
/// mode_product with the transpose of the rotation having cosine c at
/// (i,i),(j,j), -s at (i,j) and s at (j,i). For every fiber pair (u,v) with
/// mode-m index i resp. j:  u <- c*u + s*v,  v <- -s*u + c*v.
/// Touches only the 2n^2 entries with mode-m index in {i,j}.
void apply_plane_rotation(Tensor3& t, int mode, int i, int j, double c, double s);

double norm(const Tensor3& t);
double norm_squared(const Tensor3& t);
double diag_sq_sum(const Tensor3& t);
/// sqrt(norm_squared - diag_sq_sum), clamped at zero against rounding.
double off_norm(const Tensor3& t);
std::vector<double> diag(const Tensor3& t);
double inner(const Tensor3& a, const Tensor3& b);

Subtensor222 extract_subtensor(const Tensor3& t, int p, int q);

/// Average over all six index permutations. Computed once per sorted index
/// orbit and assigned to every member, so the output is bit-exactly
/// symmetric.
Tensor3 symmetrize(const Tensor3& t);
/// ||t - symmetrize(t)||
double asymmetry(const Tensor3& t);
/// True when every pair-swap of indices flips the sign within tol and every
/// entry with a repeated index is zero within tol (absolute tolerance).
bool is_antisymmetric(const Tensor3& t, double tol);

}  // namespace otd
