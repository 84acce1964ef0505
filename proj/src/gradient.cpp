#include "otd/gradient.hpp"

#include "otd/linalg.hpp"
#include "otd/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace otd {

SkewMatrix::SkewMatrix(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("SkewMatrix: n must be positive");
    upper_.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0.0);
}

std::size_t SkewMatrix::upper_index(int i, int j) const {
    if (i < 1 || j <= i || j > n_)
        throw std::out_of_range("SkewMatrix: need 1 <= i < j <= n");
    // row-major over the strict upper triangle
    const std::size_t row_start =
        static_cast<std::size_t>(i - 1) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2;
    return row_start + static_cast<std::size_t>(j - i - 1);
}

double SkewMatrix::entry(int i, int j) const {
    if (i == j) return 0.0;
    if (i < j) return upper_[upper_index(i, j)];
    return -upper_[upper_index(j, i)];
}

void SkewMatrix::set_upper(int i, int j, double v) { upper_[upper_index(i, j)] = v; }

double SkewMatrix::frobenius_norm() const {
    double acc = 0.0;
    for (double x : upper_) acc += x * x;
    return std::sqrt(2.0 * acc);
}

double SkewMatrix::max_abs_entry() const {
    double m = 0.0;
    for (double x : upper_) m = std::max(m, std::abs(x));
    return m;
}

namespace {

Matrix densify(const SkewMatrix& lam) {
    const int n = lam.size();
    Matrix dense(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) dense.at(i, j) = lam.entry(i, j);
    return dense;
}

// -L^2, symmetric positive semidefinite; kept for the power-iteration path.
Matrix gram_of(const Matrix& dense) {
    const int n = dense.rows();
    Matrix b(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            double acc = 0.0;
            for (int k = 1; k <= n; ++k) acc += dense.at(i, k) * dense.at(j, k);
            b.at(i, j) = acc;
            b.at(j, i) = acc;
        }
    return b;
}

}  // namespace

double SkewMatrix::spectral_norm() const {
    const int n = n_;
    bool all_zero = true;
    for (double x : upper_)
        if (x != 0.0) {
            all_zero = false;
            break;
        }
    if (all_zero) return 0.0;
    if (n == 1) return 0.0;

    const Matrix dense = densify(*this);
    if (n > 512)
        return std::sqrt(std::max(power_iteration_largest_eigenvalue(gram_of(dense)), 0.0));
    // singular values of a skew matrix are the |eigenvalues| of the symmetric
    // tridiagonal sharing its Householder subdiagonal
    const std::vector<double> e = skew_tridiagonal_subdiagonal(dense);
    return std::max(tridiagonal_largest_eigenvalue(std::vector<double>(n, 0.0), e), 0.0);
}

SkewMatrix lambda_of(const Tensor3& core, int mode) {
    if (mode < 1 || mode > 3)
        throw std::invalid_argument("lambda_of: mode must be 1, 2 or 3");
    const int n = core.size();
    SkewMatrix lam(n);
    std::vector<double> d = diag(core);
    for (int l = 1; l <= n; ++l)
        for (int p = l + 1; p <= n; ++p) {
            double slp, spl;  // the two off-diagonal factors per mode pattern
            switch (mode) {
                case 1:
                    slp = core.at(l, p, p);
                    spl = core.at(p, l, l);
                    break;
                case 2:
                    slp = core.at(p, l, p);
                    spl = core.at(l, p, l);
                    break;
                default:
                    slp = core.at(p, p, l);
                    spl = core.at(l, l, p);
                    break;
            }
            lam.set_upper(l, p, d[p - 1] * slp - d[l - 1] * spl);
        }
    return lam;
}

GradientTriple gradient_triple(const Tensor3& core) {
    return {lambda_of(core, 1), lambda_of(core, 2), lambda_of(core, 3)};
}

std::array<double, 3> grad_norms(const Tensor3& core) {
    return {lambda_of(core, 1).spectral_norm(), lambda_of(core, 2).spectral_norm(),
            lambda_of(core, 3).spectral_norm()};
}

bool admissible(const SkewMatrix& lam, int i, int j, double eta, PivotNorm norm_kind) {
    const double lhs = 2.0 * std::abs(lam.entry(i, j));
    const double fro = lam.frobenius_norm();
    if (fro == 0.0) return false;
    if (norm_kind == PivotNorm::Frobenius) return lhs >= eta * fro;
    // cheap two-sided bounds: max-entry <= ||L||_2 <= ||L||_F, and
    // ||L||_F / sqrt(n) <= ||L||_2
    if (lhs >= eta * fro) return true;
    if (lhs < eta * lam.max_abs_entry()) return false;
    if (lhs < eta * fro / std::sqrt(static_cast<double>(lam.size()))) return false;
    const int n = lam.size();
    if (n > 512) return lhs >= eta * lam.spectral_norm();
    const std::vector<double> e = skew_tridiagonal_subdiagonal(densify(lam));
    return tridiagonal_largest_eigenvalue_at_most(std::vector<double>(n, 0.0), e, lhs / eta);
}

bool pivot_admissible(const Tensor3& core, int mode, int i, int j, double eta,
                      PivotNorm norm_kind) {
    const int n = core.size();
    if (!(eta > 0.0) || eta > 2.0 / n)
        throw std::invalid_argument("pivot_admissible: eta must lie in (0, 2/n], n=" +
                                    std::to_string(n));
    if (i < 1 || j <= i || j > n)
        throw std::invalid_argument("pivot_admissible: need 1 <= i < j <= n");
    return admissible(lambda_of(core, mode), i, j, eta, norm_kind);
}

double objective_f(const Tensor3& core) { return diag_sq_sum(core); }

}  // namespace otd
