#include "otd/rotation_solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace otd {

namespace {

// The mode-m subproblem reduces to four numbers: the two diagonal entries
// d_p, d_q and the two entries x, y they mix with under the rotation.
struct PairProblem {
    double dp, dq, x, y;
};

PairProblem pick(const Subtensor222& sub, int mode) {
    switch (mode) {
        case 1: return {sub.ppp, sub.qqq, sub.qpp, sub.pqq};
        case 2: return {sub.ppp, sub.qqq, sub.pqp, sub.qpq};
        case 3: return {sub.ppp, sub.qqq, sub.ppq, sub.qqp};
        default: throw std::invalid_argument("mode must be 1, 2 or 3");
    }
}

double eval_g(const PairProblem& pp, double c, double s) {
    const double d1 = pp.dp * c + pp.x * s;
    const double d2 = pp.dq * c - pp.y * s;
    return d1 * d1 + d2 * d2;
}

// cos/sin from a tangent without overflowing for huge |t|; t = +inf maps to
// (0, 1).
void cos_sin_from_tan(double t, double& c, double& s) {
    if (std::isinf(t)) {
        c = 0.0;
        s = (t > 0.0) ? 1.0 : -1.0;
        return;
    }
    if (std::abs(t) <= 1.0) {
        c = 1.0 / std::sqrt(1.0 + t * t);
        s = t * c;
    } else {
        const double r = 1.0 / t;
        s = std::copysign(1.0 / std::sqrt(1.0 + r * r), t);
        c = s * r;
    }
}

}  // namespace

std::optional<std::pair<double, double>> tangent_roots(double lambda, double mu) {
    if (mu < 0.0) throw std::invalid_argument("tangent_roots: mu must be >= 0");
    if (lambda == 0.0) {
        if (mu == 0.0) return std::nullopt;
        return std::make_pair(0.0, std::numeric_limits<double>::infinity());
    }
    const double h = std::hypot(mu, lambda);
    return std::make_pair(lambda / (mu + h), -(mu + h) / lambda);
}

double pair_objective_g(const Subtensor222& sub, int mode, double phi) {
    return eval_g(pick(sub, mode), std::cos(phi), std::sin(phi));
}

AngleSolution solve_mode_angle(const Subtensor222& sub, int mode, double degenerate_eps) {
    const PairProblem pp = pick(sub, mode);

    const double num = 2.0 * (pp.dp * pp.x - pp.y * pp.dq);
    const double den = pp.dp * pp.dp + pp.dq * pp.dq - pp.y * pp.y - pp.x * pp.x;
    const double lambda = (den >= 0.0) ? num : -num;
    const double mu = std::abs(den);

    double sub_norm2 = sub.ppp * sub.ppp + sub.qpp * sub.qpp + sub.pqp * sub.pqp +
                       sub.ppq * sub.ppq + sub.qqp * sub.qqp + sub.qpq * sub.qpq +
                       sub.pqq * sub.pqq + sub.qqq * sub.qqq;
    const double thresh = degenerate_eps * sub_norm2;
    if (std::abs(lambda) <= thresh && mu <= thresh) {
        AngleSolution out;
        out.status = AngleStatus::Degenerate;
        out.gain = eval_g(pp, 1.0, 0.0);
        return out;
    }

    const auto roots = tangent_roots(lambda, mu);
    if (!roots) {
        AngleSolution out;
        out.status = AngleStatus::Degenerate;
        out.gain = eval_g(pp, 1.0, 0.0);
        return out;
    }

    AngleSolution best;
    bool have = false;
    double best_abs_t = 0.0;
    for (double t : {roots->first, roots->second}) {
        double c, s;
        cos_sin_from_tan(t, c, s);
        const double g = eval_g(pp, c, s);
        const double abs_t = std::isinf(t) ? std::numeric_limits<double>::infinity()
                                           : std::abs(t);
        if (!have || g > best.gain || (g == best.gain && abs_t < best_abs_t)) {
            best.c = c;
            best.s = s;
            best.gain = g;
            best_abs_t = abs_t;
            have = true;
        }
    }
    best.status = AngleStatus::Rotated;
    return best;
}

}  // namespace otd
