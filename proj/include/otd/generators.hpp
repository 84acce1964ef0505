#pragma once

#include "otd/matrix.hpp"
#include "otd/tensor3.hpp"

#include <cstdint>
#include <random>

namespace otd {

/// Standard normal draws from a seeded mt19937_64 via Box-Muller. The uniform
/// inputs are built from the raw 64-bit output directly, so a given seed
/// produces the same stream regardless of the standard library's
/// distribution implementations.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}
    double operator()();

private:
    std::mt19937_64 rng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Haar-like random orthogonal matrix: QR of a matrix of standard normal
/// entries (filled column-major from the sampler), with column signs fixed so
/// R has a nonnegative diagonal.
Matrix random_orthogonal(int n, NormalSampler& sampler);

/// i.i.d. standard normal entries.
Tensor3 gen_random(int n, std::uint64_t seed);

/// Diagonal tensor with standard normal diagonal, multiplied in each mode by
/// an independent random orthogonal matrix. Orthogonally diagonalizable by
/// construction.
Tensor3 gen_diagonalizable(int n, std::uint64_t seed);

/// symmetrize(gen_random(n, seed)).
Tensor3 gen_symmetric(int n, std::uint64_t seed);

/// Projection of gen_random(n, seed) onto the antisymmetric subspace (signed
/// average over index permutations). Entries with a repeated index are set to
/// exact zeros.
Tensor3 gen_antisymmetric(int n, std::uint64_t seed);

/// The fixed 3x3x3 tensor with unit entries at every permutation of (1,2,3)
/// and zeros elsewhere. Symmetric, zero diagonal.
Tensor3 gen_paper_t();

}  // namespace otd
