#pragma once

#include "otd/tensor3.hpp"

#include <array>

namespace otd {

/// Skew-symmetric n x n matrix; only the strict upper triangle is stored, so
/// entry(i,j) = -entry(j,i) holds exactly by construction.
class SkewMatrix {
public:
    SkewMatrix() = default;
    explicit SkewMatrix(int n);

    int size() const { return n_; }

    // 1-based; i == j yields 0.
    double entry(int i, int j) const;
    void set_upper(int i, int j, double v);  // requires i < j

    double frobenius_norm() const;
    double max_abs_entry() const;

    /// Spectral norm (largest singular value). Exact symmetric eigensolve of
    /// -L^2 up to n = 512, power iteration beyond.
    double spectral_norm() const;

private:
    std::size_t upper_index(int i, int j) const;

    int n_ = 0;
    std::vector<double> upper_;
};

enum class PivotNorm { Spectral, Frobenius };

/// Projected-gradient block of the diagonal-energy objective for one mode,
/// computed entrywise from the current core tensor S:
///   m=1: L_lp = S_ppp*S_lpp - S_lll*S_pll
///   m=2: L_lp = S_ppp*S_plp - S_lll*S_lpl
///   m=3: L_lp = S_ppp*S_ppl - S_lll*S_llp
SkewMatrix lambda_of(const Tensor3& core, int mode);

struct GradientTriple {
    SkewMatrix lu, lv, lw;
};

GradientTriple gradient_triple(const Tensor3& core);

/// Spectral norms of the three projected-gradient blocks.
std::array<double, 3> grad_norms(const Tensor3& core);

/// Pivot admissibility test on a precomputed block: 2*|L_ij| >= eta*||L||
/// with the selected norm; a zero block admits nothing. For the spectral
/// norm, the Frobenius bounds ||L||_F / sqrt(n) <= ||L||_2 <= ||L||_F decide
/// most cases without an eigensolve.
bool admissible(const SkewMatrix& lam, int i, int j, double eta, PivotNorm norm_kind);

/// Same test with the block computed from the core tensor. eta must lie in
/// (0, 2/n].
bool pivot_admissible(const Tensor3& core, int mode, int i, int j, double eta,
                      PivotNorm norm_kind);

/// Objective value at the current core: sum of squared diagonal entries.
double objective_f(const Tensor3& core);

}  // namespace otd
