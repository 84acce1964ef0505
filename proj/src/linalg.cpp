#include "otd/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace otd {

namespace {

// Applies the reflector H = I - 2vvᵀ/(vᵀv) to each column of m, rows
// first..rows-1 (0-based view on the raw storage).
void apply_reflector(std::vector<double>& m, int rows, int cols, int first,
                     const std::vector<double>& v, double vnorm2) {
    if (vnorm2 == 0.0) return;
    for (int c = 0; c < cols; ++c) {
        double* col = m.data() + static_cast<std::size_t>(c) * rows;
        double dot = 0.0;
        for (int r = first; r < rows; ++r) dot += v[r - first] * col[r];
        const double f = 2.0 * dot / vnorm2;
        for (int r = first; r < rows; ++r) col[r] -= f * v[r - first];
    }
}

}  // namespace

Matrix qr_orthonormal_factor(const Matrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("qr_orthonormal_factor: matrix not square");
    const int n = a.rows();
    std::vector<double> r(a.data().begin(), a.data().end());
    std::vector<std::vector<double>> reflectors(n);
    std::vector<double> vnorm2(n, 0.0);
    std::vector<double> rdiag(n, 0.0);

    for (int k = 0; k < n; ++k) {
        double colnorm = 0.0;
        for (int i = k; i < n; ++i) {
            const double x = r[i + static_cast<std::size_t>(k) * n];
            colnorm += x * x;
        }
        colnorm = std::sqrt(colnorm);
        const double xk = r[k + static_cast<std::size_t>(k) * n];
        if (colnorm == 0.0) {
            rdiag[k] = 0.0;
            continue;
        }
        const double beta = (xk > 0.0) ? -colnorm : colnorm;
        std::vector<double> v(n - k);
        for (int i = k; i < n; ++i) v[i - k] = r[i + static_cast<std::size_t>(k) * n];
        v[0] -= beta;
        double vn2 = 0.0;
        for (double x : v) vn2 += x * x;
        apply_reflector(r, n, n, k, v, vn2);
        reflectors[k] = std::move(v);
        vnorm2[k] = vn2;
        rdiag[k] = beta;
    }

    Matrix q = Matrix::identity(n);
    std::vector<double> qd(q.data().begin(), q.data().end());
    for (int k = n - 1; k >= 0; --k)
        if (!reflectors[k].empty()) apply_reflector(qd, n, n, k, reflectors[k], vnorm2[k]);
    Matrix out(n, n, std::move(qd));
    for (int k = 0; k < n; ++k)
        if (rdiag[k] < 0.0)
            for (int i = 1; i <= n; ++i) out.at(i, k + 1) = -out.at(i, k + 1);
    return out;
}

SymmetricEigen jacobi_eigen_symmetric(const Matrix& a, double tol, int max_sweeps) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("jacobi_eigen_symmetric: matrix not square");
    const int n = a.rows();
    Matrix b = a;
    Matrix v = Matrix::identity(n);
    const double scale = a.frobenius_norm();
    const double target = tol * scale;

    auto off_norm = [&]() {
        double acc = 0.0;
        for (int p = 1; p <= n; ++p)
            for (int q = p + 1; q <= n; ++q) acc += b.at(p, q) * b.at(p, q);
        return std::sqrt(2.0 * acc);
    };

    if (scale == 0.0 || off_norm() <= target) {
        SymmetricEigen out{std::vector<double>(n), std::move(v)};
        for (int i = 0; i < n; ++i) out.values[i] = b.at(i + 1, i + 1);
        return out;
    }

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (int p = 1; p <= n; ++p) {
            for (int q = p + 1; q <= n; ++q) {
                const double apq = b.at(p, q);
                if (apq == 0.0) continue;
                const double theta = (b.at(q, q) - b.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                                     : 1.0 / (theta - std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                b.at(p, p) -= t * apq;
                b.at(q, q) += t * apq;
                b.at(p, q) = 0.0;
                b.at(q, p) = 0.0;
                for (int i = 1; i <= n; ++i) {
                    if (i == p || i == q) continue;
                    const double g = b.at(i, p);
                    const double h = b.at(i, q);
                    b.at(i, p) = c * g - s * h;
                    b.at(i, q) = s * g + c * h;
                    b.at(p, i) = b.at(i, p);
                    b.at(q, i) = b.at(i, q);
                }
                v.rotate_columns(p, q, c, -s);
            }
        }
        if (off_norm() <= target) {
            SymmetricEigen out{std::vector<double>(n), std::move(v)};
            for (int i = 0; i < n; ++i) out.values[i] = b.at(i + 1, i + 1);
            return out;
        }
    }
    throw std::runtime_error("jacobi_eigen_symmetric: no convergence after " +
                             std::to_string(max_sweeps) +
                             " sweeps, off-norm residual " + std::to_string(off_norm()));
}

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form; only the
// diagonal d and subdiagonal e are produced.
void tridiagonalize(const Matrix& a, std::vector<double>& d, std::vector<double>& e) {
    const int n = a.rows();
    std::vector<double> b(a.data().begin(), a.data().end());
    auto at = [&](int i, int j) -> double& { return b[i + static_cast<std::size_t>(j) * n]; };
    d.assign(n, 0.0);
    e.assign(n > 1 ? n - 1 : 0, 0.0);

    std::vector<double> v(n), p(n), w(n);
    for (int k = 0; k < n - 2; ++k) {
        double colnorm = 0.0;
        for (int i = k + 1; i < n; ++i) colnorm += at(i, k) * at(i, k);
        colnorm = std::sqrt(colnorm);
        if (colnorm == 0.0) {
            e[k] = 0.0;
            continue;
        }
        const double alpha = (at(k + 1, k) > 0.0) ? -colnorm : colnorm;
        double vn2 = 0.0;
        for (int i = k + 1; i < n; ++i) v[i] = at(i, k);
        v[k + 1] -= alpha;
        for (int i = k + 1; i < n; ++i) vn2 += v[i] * v[i];
        if (vn2 == 0.0) {
            e[k] = alpha;
            continue;
        }
        // p = 2/vᵀv * B v ; w = p - (pᵀv/vᵀv) v ; B <- B - vwᵀ - wvᵀ
        for (int i = k + 1; i < n; ++i) {
            double acc = 0.0;
            for (int j = k + 1; j < n; ++j) acc += at(i, j) * v[j];
            p[i] = 2.0 * acc / vn2;
        }
        double pv = 0.0;
        for (int i = k + 1; i < n; ++i) pv += p[i] * v[i];
        const double kf = pv / vn2;
        for (int i = k + 1; i < n; ++i) w[i] = p[i] - kf * v[i];
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) at(i, j) -= v[i] * w[j] + w[i] * v[j];
        at(k + 1, k) = alpha;
        e[k] = alpha;
    }
    if (n > 1) e[n - 2] = at(n - 1, n - 2);
    for (int i = 0; i < n; ++i) d[i] = at(i, i);
}

// Number of eigenvalues of the tridiagonal (d, e) strictly below x, by the
// Sturm LDLᵀ sign count.
int sturm_count_below(const std::vector<double>& d, const std::vector<double>& e,
                      double x, double pivmin) {
    int count = 0;
    double q = d[0] - x;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (std::abs(q) < pivmin) q = (q < 0.0) ? -pivmin : pivmin;
        q = (d[i] - x) - e[i - 1] * e[i - 1] / q;
        if (q < 0.0) ++count;
    }
    return count;
}

}  // namespace

// Bisection for the largest eigenvalue of the tridiagonal (d, e). When
// `bound` is finite the search stops once the bracket clears it and only the
// comparison outcome is meaningful.
struct BisectionResult {
    double value;
    bool at_most_bound;
};

static BisectionResult bisect_largest(const std::vector<double>& d,
                                      const std::vector<double>& e, bool bounded,
                                      double bound) {
    const int n = static_cast<int>(d.size());
    double lo = d[0], hi = d[0], scale = 0.0;
    for (int i = 0; i < n; ++i) {
        const double left = (i > 0) ? std::abs(e[i - 1]) : 0.0;
        const double right = (i < n - 1) ? std::abs(e[i]) : 0.0;
        lo = std::min(lo, d[i] - left - right);
        hi = std::max(hi, d[i] + left + right);
        scale = std::max({scale, std::abs(d[i]), left, right});
    }
    if (scale == 0.0) return {0.0, 0.0 <= bound};
    const double eps = std::numeric_limits<double>::epsilon();
    const double pivmin = eps * eps * scale;

    for (int iter = 0; iter < 200; ++iter) {
        if (bounded) {
            if (hi <= bound) return {0.5 * (lo + hi), true};
            if (lo > bound) return {0.5 * (lo + hi), false};
        }
        if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi)) + pivmin) break;
        const double mid = 0.5 * (lo + hi);
        if (sturm_count_below(d, e, mid, pivmin) >= n)
            hi = mid;
        else
            lo = mid;
    }
    const double value = 0.5 * (lo + hi);
    return {value, value <= bound};
}

double tridiagonal_largest_eigenvalue(const std::vector<double>& d,
                                      const std::vector<double>& e) {
    if (d.empty()) throw std::invalid_argument("tridiagonal_largest_eigenvalue: empty");
    if (e.size() + 1 != d.size())
        throw std::invalid_argument("tridiagonal_largest_eigenvalue: size mismatch");
    return bisect_largest(d, e, false, 0.0).value;
}

bool tridiagonal_largest_eigenvalue_at_most(const std::vector<double>& d,
                                            const std::vector<double>& e, double bound) {
    if (d.empty() || e.size() + 1 != d.size())
        throw std::invalid_argument("tridiagonal_largest_eigenvalue_at_most: size mismatch");
    return bisect_largest(d, e, true, bound).at_most_bound;
}

double symmetric_largest_eigenvalue(const Matrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("symmetric_largest_eigenvalue: matrix not square");
    const int n = a.rows();
    if (n == 1) return a.at(1, 1);

    std::vector<double> d, e;
    tridiagonalize(a, d, e);
    return tridiagonal_largest_eigenvalue(d, e);
}

std::vector<double> skew_tridiagonal_subdiagonal(const Matrix& skew) {
    if (skew.rows() != skew.cols())
        throw std::invalid_argument("skew_tridiagonal_subdiagonal: matrix not square");
    const int n = skew.rows();
    std::vector<double> b(skew.data().begin(), skew.data().end());
    auto at = [&](int i, int j) -> double& { return b[i + static_cast<std::size_t>(j) * n]; };
    std::vector<double> e(n > 1 ? n - 1 : 0, 0.0);

    // H B H with H = I - beta v vᵀ keeps B skew; since vᵀBv = 0 the update is
    // the rank-2 correction B += beta (v uᵀ - u vᵀ) with u = B v.
    std::vector<double> v(n), u(n);
    for (int k = 0; k < n - 2; ++k) {
        double colnorm = 0.0;
        for (int i = k + 1; i < n; ++i) colnorm += at(i, k) * at(i, k);
        colnorm = std::sqrt(colnorm);
        if (colnorm == 0.0) {
            e[k] = 0.0;
            continue;
        }
        const double alpha = (at(k + 1, k) > 0.0) ? -colnorm : colnorm;
        double vn2 = 0.0;
        for (int i = k + 1; i < n; ++i) v[i] = at(i, k);
        v[k + 1] -= alpha;
        for (int i = k + 1; i < n; ++i) vn2 += v[i] * v[i];
        if (vn2 == 0.0) {
            e[k] = alpha;
            continue;
        }
        const double beta = 2.0 / vn2;
        for (int i = k + 1; i < n; ++i) {
            double acc = 0.0;
            for (int j = k + 1; j < n; ++j) acc += at(i, j) * v[j];
            u[i] = acc;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) at(i, j) += beta * (v[i] * u[j] - u[i] * v[j]);
        e[k] = alpha;
    }
    if (n > 1) e[n - 2] = at(n - 1, n - 2);
    return e;
}

double power_iteration_largest_eigenvalue(const Matrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("power_iteration_largest_eigenvalue: matrix not square");
    const int n = a.rows();
    std::vector<double> x(n, 1.0), y(n);
    const double* ad = a.data().data();

    auto matvec = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (int i = 0; i < n; ++i) out[i] = 0.0;
        for (int c = 0; c < n; ++c) {
            const double xi = in[c];
            if (xi == 0.0) continue;
            const double* col = ad + static_cast<std::size_t>(c) * n;
            for (int r = 0; r < n; ++r) out[r] += col[r] * xi;
        }
    };

    double lambda = 0.0;
    for (int iter = 0; iter < 10000; ++iter) {
        matvec(x, y);
        double ynorm = 0.0, xy = 0.0, xx = 0.0;
        for (int i = 0; i < n; ++i) {
            ynorm += y[i] * y[i];
            xy += x[i] * y[i];
            xx += x[i] * x[i];
        }
        ynorm = std::sqrt(ynorm);
        if (ynorm == 0.0) {
            // start vector in the nullspace; restart once with a ramp
            bool already_ramp = true;
            for (int i = 0; i < n && already_ramp; ++i)
                if (x[i] != static_cast<double>(i + 1)) already_ramp = false;
            if (already_ramp) return 0.0;
            for (int i = 0; i < n; ++i) x[i] = static_cast<double>(i + 1);
            continue;
        }
        const double next = xy / xx;
        for (int i = 0; i < n; ++i) x[i] = y[i] / ynorm;
        if (iter > 0 && std::abs(next - lambda) <= 1e-10 * std::max(std::abs(next), 1e-300)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return lambda;
}

}  // namespace otd
