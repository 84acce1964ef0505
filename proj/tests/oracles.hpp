// Test-only reference implementations, kept independent of the library code
// paths they are used to check.
#pragma once

#include "otd/driver.hpp"
#include "otd/matrix.hpp"
#include "otd/rotation_solver.hpp"
#include "otd/tensor3.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace oracles {

// Entry-by-entry matricization: every (i,j,k) is placed in the column built
// from the stated ordering, with no fiber copying.
inline otd::Matrix matricize_bruteforce(const otd::Tensor3& t, int mode) {
    const int n = t.size();
    otd::Matrix m(n, n * n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                int row, col;
                if (mode == 1) {
                    row = i;
                    col = (j - 1) + (k - 1) * n;
                } else if (mode == 2) {
                    row = j;
                    col = (i - 1) + (k - 1) * n;
                } else {
                    row = k;
                    col = (i - 1) + (j - 1) * n;
                }
                m.at(row, col + 1) = t.at(i, j, k);
            }
    return m;
}

// Dense plane rotation: assemble R(i,j,phi), transpose it, and run the full
// mode product.
inline otd::Tensor3 rotate_dense(const otd::Tensor3& t, int mode, int i, int j, double c,
                                 double s) {
    const int n = t.size();
    otd::Matrix r = otd::Matrix::identity(n);
    r.at(i, i) = c;
    r.at(j, j) = c;
    r.at(i, j) = -s;
    r.at(j, i) = s;
    return otd::mode_product(t, mode, r.transposed());
}

// Tensor filled with independent N(0,1) draws from a std::mt19937_64; only
// used to make inputs, so the exact distribution does not matter.
inline otd::Tensor3 random_tensor(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    otd::Tensor3 t(n);
    for (double& x : t.data()) x = dist(rng);
    return t;
}

inline otd::Matrix random_matrix(int rows, int cols, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    otd::Matrix m(rows, cols);
    for (double& x : m.data()) x = dist(rng);
    return m;
}

inline otd::Subtensor222 random_subtensor(std::mt19937_64& rng) {
    std::normal_distribution<double> dist;
    otd::Subtensor222 s;
    s.ppp = dist(rng);
    s.qpp = dist(rng);
    s.pqp = dist(rng);
    s.ppq = dist(rng);
    s.qqp = dist(rng);
    s.qpq = dist(rng);
    s.pqq = dist(rng);
    s.qqq = dist(rng);
    s.p = 1;
    s.q = 2;
    return s;
}

// Exact entries of the symmetric stationary core the structured 3x3x3
// example converges to: 8/9 on the diagonal, -1/9 where all indices differ,
// -4/9 otherwise.
inline otd::Tensor3 stationary_symmetric_core() {
    otd::Tensor3 s(3);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) {
                if (i == j && j == k)
                    s.at(i, j, k) = 8.0 / 9.0;
                else if (i != j && j != k && i != k)
                    s.at(i, j, k) = -1.0 / 9.0;
                else
                    s.at(i, j, k) = -4.0 / 9.0;
            }
    return s;
}

// True when b equals a up to a joint index permutation and per-axis column
// sign flips, within tol (max-entry).
inline bool equal_up_to_sign_permutation(const otd::Tensor3& a, const otd::Tensor3& b,
                                         double tol) {
    const int n = a.size();
    if (n != b.size() || n != 3) return false;
    const int perms[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                             {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    for (const auto& p : perms)
        for (int mask = 0; mask < 512; ++mask) {
            double d1[3], d2[3], d3[3];
            for (int t = 0; t < 3; ++t) {
                d1[t] = (mask >> t & 1) ? -1.0 : 1.0;
                d2[t] = (mask >> (3 + t) & 1) ? -1.0 : 1.0;
                d3[t] = (mask >> (6 + t) & 1) ? -1.0 : 1.0;
            }
            double worst = 0.0;
            for (int i = 1; i <= 3 && worst <= tol; ++i)
                for (int j = 1; j <= 3; ++j)
                    for (int k = 1; k <= 3; ++k) {
                        const double want = d1[i - 1] * d2[j - 1] * d3[k - 1] *
                                            a.at(p[i - 1], p[j - 1], p[k - 1]);
                        worst = std::max(worst, std::abs(b.at(i, j, k) - want));
                    }
            if (worst <= tol) return true;
        }
    return false;
}

}  // namespace oracles
