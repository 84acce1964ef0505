#pragma once

#include "otd/matrix.hpp"

#include <vector>

namespace otd {

/// Q from a Householder QR of a. Column signs are fixed so the implied R has
/// a nonnegative diagonal, which makes the factor unique (and seeded random
/// orthogonal matrices reproducible).
Matrix qr_orthonormal_factor(const Matrix& a);

struct SymmetricEigen {
    std::vector<double> values;  // unordered, values[k] pairs with column k+1
    Matrix vectors;              // orthogonal, eigenvectors in columns
};

/// Cyclic Jacobi eigenvalue iteration for a symmetric matrix. Stops once the
/// off-diagonal Frobenius norm falls below tol * ||a||_F; throws after
/// max_sweeps sweeps with the residual in the message.
SymmetricEigen jacobi_eigen_symmetric(const Matrix& a, double tol = 1e-13,
                                      int max_sweeps = 60);

/// Largest eigenvalue of a symmetric matrix: Householder tridiagonalization
/// followed by Sturm-count bisection.
double symmetric_largest_eigenvalue(const Matrix& a);

/// Householder reduction of a skew-symmetric matrix to skew tridiagonal form;
/// returns the subdiagonal. The singular values of the input equal the
/// absolute eigenvalues of the symmetric tridiagonal with zero diagonal and
/// this subdiagonal.
std::vector<double> skew_tridiagonal_subdiagonal(const Matrix& skew);

/// Largest eigenvalue of a symmetric tridiagonal (diagonal d, subdiagonal e)
/// by Sturm-count bisection.
double tridiagonal_largest_eigenvalue(const std::vector<double>& d,
                                      const std::vector<double>& e);

/// Decides whether the largest eigenvalue is <= bound, stopping the bisection
/// as soon as the bracketing interval clears the bound.
bool tridiagonal_largest_eigenvalue_at_most(const std::vector<double>& d,
                                            const std::vector<double>& e, double bound);

/// Largest eigenvalue by power iteration (Rayleigh quotient), start vector of
/// all ones, relative tolerance 1e-10, at most 10000 iterations. Intended for
/// positive semidefinite input.
double power_iteration_largest_eigenvalue(const Matrix& a);

}  // namespace otd
