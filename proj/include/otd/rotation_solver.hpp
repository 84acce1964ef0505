#pragma once

#include "otd/tensor3.hpp"

#include <optional>
#include <utility>

namespace otd {

enum class AngleStatus { Rotated, Degenerate };

/// Solution of a 2x2x2 single-mode angle subproblem.
struct AngleSolution {
    double c = 1.0;   // cos(phi)
    double s = 0.0;   // sin(phi)
    double gain = 0.0;  // pair objective at the chosen angle
    AngleStatus status = AngleStatus::Rotated;
};

/// Roots of lambda*t^2 + 2*mu*t - lambda = 0 in t = tan(phi), with the
/// cancellation-free form t1 = lambda / (mu + sqrt(mu^2 + lambda^2)).
/// Requires mu >= 0. Returns:
///   lambda != 0          -> (t1, t2)
///   lambda == 0, mu > 0  -> (0, +infinity), i.e. candidate angles {0, pi/2}
///   lambda == 0, mu == 0 -> nullopt (no information in the subproblem)
std::optional<std::pair<double, double>> tangent_roots(double lambda, double mu);

/// Pair objective after rotating the subtensor by phi in mode m: the sum of
/// squares of the two diagonal entries it controls,
///   m=1: (ppp*cos + qpp*sin)^2 + (qqq*cos - pqq*sin)^2
///   m=2: (ppp*cos + pqp*sin)^2 + (qqq*cos - qpq*sin)^2
///   m=3: (ppp*cos + ppq*sin)^2 + (qqq*cos - qqp*sin)^2
double pair_objective_g(const Subtensor222& sub, int mode, double phi);

/// Maximizer of the mode-m pair objective. Both tangent roots (or the {0,
/// pi/2} pair when the numerator vanishes) are evaluated exactly and the
/// larger value wins; ties go to the smaller |phi|. Degenerate means both the
/// angle numerator and denominator vanish (|lambda|, |mu| <= degenerate_eps
/// times the squared subtensor norm); the identity rotation is returned.
AngleSolution solve_mode_angle(const Subtensor222& sub, int mode,
                               double degenerate_eps = 0.0);

}  // namespace otd
