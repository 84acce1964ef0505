#include "otd/generators.hpp"

#include "otd/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace otd {

namespace {

void check_size(int n) {
    if (n < 2) throw std::invalid_argument("generator: n must be >= 2");
}

}  // namespace

double NormalSampler::operator()() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // (x >> 11) has 53 random bits; +1 keeps u1 in (0, 1] so log is finite.
    const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

Matrix random_orthogonal(int n, NormalSampler& sampler) {
    Matrix m(n, n);
    for (double& x : m.data()) x = sampler();
    return qr_orthonormal_factor(m);
}

Tensor3 gen_random(int n, std::uint64_t seed) {
    check_size(n);
    NormalSampler sampler(seed);
    Tensor3 t(n);
    for (double& x : t.data()) x = sampler();
    return t;
}

Tensor3 gen_diagonalizable(int n, std::uint64_t seed) {
    check_size(n);
    NormalSampler sampler(seed);
    Tensor3 t(n);
    for (int i = 1; i <= n; ++i) t.at(i, i, i) = sampler();
    const Matrix q1 = random_orthogonal(n, sampler);
    const Matrix q2 = random_orthogonal(n, sampler);
    const Matrix q3 = random_orthogonal(n, sampler);
    return mode_product(mode_product(mode_product(t, 1, q1), 2, q2), 3, q3);
}

Tensor3 gen_symmetric(int n, std::uint64_t seed) {
    return symmetrize(gen_random(n, seed));
}

Tensor3 gen_antisymmetric(int n, std::uint64_t seed) {
    check_size(n);
    const Tensor3 src = gen_random(n, seed);
    Tensor3 out(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                const double v = (src.at(i, j, k) - src.at(i, k, j) - src.at(j, i, k) +
                                  src.at(j, k, i) + src.at(k, i, j) - src.at(k, j, i)) /
                                 6.0;
                out.at(i, j, k) = v;
                out.at(j, k, i) = v;
                out.at(k, i, j) = v;
                out.at(i, k, j) = -v;
                out.at(j, i, k) = -v;
                out.at(k, j, i) = -v;
            }
    if (!is_antisymmetric(out, 0.0))
        throw std::runtime_error("gen_antisymmetric: projection is not antisymmetric");
    return out;
}

Tensor3 gen_paper_t() {
    Tensor3 t(3);
    t.at(1, 2, 3) = 1.0;
    t.at(1, 3, 2) = 1.0;
    t.at(2, 1, 3) = 1.0;
    t.at(2, 3, 1) = 1.0;
    t.at(3, 1, 2) = 1.0;
    t.at(3, 2, 1) = 1.0;
    return t;
}

}  // namespace otd
