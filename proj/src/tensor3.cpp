#include "otd/tensor3.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace otd {

namespace {

void check_mode(int mode) {
    if (mode < 1 || mode > 3)
        throw std::invalid_argument("mode must be 1, 2 or 3, got " + std::to_string(mode));
}

void check_pivot(int i, int j, int n) {
    if (i < 1 || j > n || i >= j)
        throw std::invalid_argument("pivot pair (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") invalid for n=" + std::to_string(n));
}

}  // namespace

Tensor3::Tensor3(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("Tensor3: n must be positive");
    d_.assign(static_cast<std::size_t>(n) * n * n, 0.0);
}

Tensor3::Tensor3(int n, std::vector<double> data) : n_(n), d_(std::move(data)) {
    if (n < 1) throw std::invalid_argument("Tensor3: n must be positive");
    if (d_.size() != static_cast<std::size_t>(n) * n * n)
        throw std::invalid_argument("Tensor3: data length must be n^3");
    validate_finite();
}

std::size_t Tensor3::offset(int i, int j, int k) const {
    if (i < 1 || i > n_ || j < 1 || j > n_ || k < 1 || k > n_)
        throw std::out_of_range("Tensor3: index (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) + ") out of range");
    return static_cast<std::size_t>(i - 1) + static_cast<std::size_t>(j - 1) * n_ +
           static_cast<std::size_t>(k - 1) * n_ * n_;
}

void Tensor3::validate_finite() const {
    for (double x : d_)
        if (!std::isfinite(x)) throw std::invalid_argument("Tensor3: non-finite entry");
}

Matrix matricize(const Tensor3& t, int mode) {
    check_mode(mode);
    const int n = t.size();
    Matrix m(n, n * n);
    for (int k = 1; k <= n; ++k)
        for (int j = 1; j <= n; ++j)
            for (int i = 1; i <= n; ++i) {
                const double x = t.at(i, j, k);
                switch (mode) {
                    case 1: m.at(i, (j - 1) + (k - 1) * n + 1) = x; break;
                    case 2: m.at(j, (i - 1) + (k - 1) * n + 1) = x; break;
                    default: m.at(k, (i - 1) + (j - 1) * n + 1) = x; break;
                }
            }
    return m;
}

Tensor3 mode_product(const Tensor3& t, int mode, const Matrix& a) {
    check_mode(mode);
    const int n = t.size();
    if (a.rows() != n || a.cols() != n)
        throw std::invalid_argument("mode_product: matrix must be n x n");

    Tensor3 y(n);
    const double* src = t.data().data();
    const double* ad = a.data().data();
    double* dst = y.data().data();
    const std::size_t nn = static_cast<std::size_t>(n) * n;

    // Fiber stride and count of fibers along the chosen mode.
    const std::size_t stride = (mode == 1) ? 1 : (mode == 2) ? static_cast<std::size_t>(n) : nn;
    for (int f = 0; f < n * n; ++f) {
        std::size_t base;
        if (mode == 1)
            base = static_cast<std::size_t>(f) * n;
        else if (mode == 2)
            base = static_cast<std::size_t>(f % n) + static_cast<std::size_t>(f / n) * nn;
        else
            base = static_cast<std::size_t>(f);
        for (int r = 0; r < n; ++r) {
            double acc = 0.0;
            for (int c = 0; c < n; ++c)
                acc += ad[r + static_cast<std::size_t>(c) * n] * src[base + c * stride];
            dst[base + r * stride] = acc;
        }
    }
    y.validate_finite();
    return y;
}

void apply_plane_rotation(Tensor3& t, int mode, int i, int j, double c, double s) {
    check_mode(mode);
    const int n = t.size();
    check_pivot(i, j, n);
    if (std::abs(c * c + s * s - 1.0) > 1e-12)
        throw std::invalid_argument("apply_plane_rotation: c^2+s^2 differs from 1 beyond 1e-12");

    double* d = t.data().data();
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    const std::size_t stride = (mode == 1) ? 1 : (mode == 2) ? static_cast<std::size_t>(n) : nn;
    const std::size_t oi = static_cast<std::size_t>(i - 1) * stride;
    const std::size_t oj = static_cast<std::size_t>(j - 1) * stride;

    if (s == 0.0 && c == 1.0) return;
    // c >= 0 in every solver output, so tau = s/(1+c) = tan(phi/2) is stable;
    // the correction form keeps rounding proportional to the angle, which is
    // what preserves the norm over very long runs
    const bool quarter_turn = c == 0.0;
    const double tau = quarter_turn ? 0.0 : s / (1.0 + c);

    bool ok = true;
    for (int f = 0; f < n * n; ++f) {
        std::size_t base;
        if (mode == 1)
            base = static_cast<std::size_t>(f) * n;
        else if (mode == 2)
            base = static_cast<std::size_t>(f % n) + static_cast<std::size_t>(f / n) * nn;
        else
            base = static_cast<std::size_t>(f);
        const double u = d[base + oi];
        const double v = d[base + oj];
        double nu, nv;
        if (quarter_turn) {
            nu = s * v;
            nv = -s * u;
        } else {
            nu = std::fma(s, std::fma(-tau, u, v), u);
            nv = std::fma(-s, std::fma(tau, v, u), v);
        }
        d[base + oi] = nu;
        d[base + oj] = nv;
        ok = ok && std::isfinite(nu) && std::isfinite(nv);
    }
    if (!ok) throw std::runtime_error("apply_plane_rotation: produced non-finite entry");
}

double norm_squared(const Tensor3& t) {
    double acc = 0.0;
    for (double x : t.data()) acc += x * x;
    return acc;
}

double norm(const Tensor3& t) { return std::sqrt(norm_squared(t)); }

double diag_sq_sum(const Tensor3& t) {
    double acc = 0.0;
    for (int i = 1; i <= t.size(); ++i) {
        const double v = t.at(i, i, i);
        acc += v * v;
    }
    return acc;
}

double off_norm(const Tensor3& t) {
    return std::sqrt(std::max(norm_squared(t) - diag_sq_sum(t), 0.0));
}

std::vector<double> diag(const Tensor3& t) {
    std::vector<double> out(t.size());
    for (int i = 1; i <= t.size(); ++i) out[i - 1] = t.at(i, i, i);
    return out;
}

double inner(const Tensor3& a, const Tensor3& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("inner: tensors differ in size");
    double acc = 0.0;
    for (std::size_t t = 0; t < a.data().size(); ++t) acc += a.data()[t] * b.data()[t];
    return acc;
}

Subtensor222 extract_subtensor(const Tensor3& t, int p, int q) {
    check_pivot(p, q, t.size());
    Subtensor222 s;
    s.p = p;
    s.q = q;
    s.ppp = t.at(p, p, p);
    s.qpp = t.at(q, p, p);
    s.pqp = t.at(p, q, p);
    s.ppq = t.at(p, p, q);
    s.qqp = t.at(q, q, p);
    s.qpq = t.at(q, p, q);
    s.pqq = t.at(p, q, q);
    s.qqq = t.at(q, q, q);
    return s;
}

Tensor3 symmetrize(const Tensor3& t) {
    const int n = t.size();
    Tensor3 out(n);
    for (int k = 1; k <= n; ++k)
        for (int j = 1; j <= n; ++j)
            for (int i = 1; i <= n; ++i) {
                if (i > j || j > k) continue;  // canonical representative i <= j <= k
                const double v0 = t.at(i, j, k);
                const double v1 = t.at(i, k, j);
                const double v2 = t.at(j, i, k);
                const double v3 = t.at(j, k, i);
                const double v4 = t.at(k, i, j);
                const double v5 = t.at(k, j, i);
                // an orbit that already agrees passes through unchanged, which
                // makes the map exactly idempotent
                const bool equal =
                    v0 == v1 && v0 == v2 && v0 == v3 && v0 == v4 && v0 == v5;
                const double m = equal ? v0 : (v0 + v1 + v2 + v3 + v4 + v5) / 6.0;
                out.at(i, j, k) = m;
                out.at(i, k, j) = m;
                out.at(j, i, k) = m;
                out.at(j, k, i) = m;
                out.at(k, i, j) = m;
                out.at(k, j, i) = m;
            }
    out.validate_finite();
    return out;
}

double asymmetry(const Tensor3& t) {
    const Tensor3 s = symmetrize(t);
    double acc = 0.0;
    for (std::size_t i = 0; i < t.data().size(); ++i) {
        const double d = t.data()[i] - s.data()[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

bool is_antisymmetric(const Tensor3& t, double tol) {
    if (tol < 0.0) throw std::invalid_argument("is_antisymmetric: tol must be >= 0");
    const int n = t.size();
    for (int k = 1; k <= n; ++k)
        for (int j = 1; j <= n; ++j)
            for (int i = 1; i <= n; ++i) {
                const double x = t.at(i, j, k);
                if (i == j || j == k || i == k) {
                    if (std::abs(x) > tol) return false;
                    continue;
                }
                if (std::abs(x + t.at(i, k, j)) > tol) return false;
                if (std::abs(x + t.at(j, i, k)) > tol) return false;
                if (std::abs(x + t.at(k, j, i)) > tol) return false;
            }
    return true;
}

}  // namespace otd
