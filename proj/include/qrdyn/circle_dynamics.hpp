#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qrdyn/core_map.hpp"
#include "qrdyn/fixed_rays.hpp"

namespace qrdyn {

/// Induced map on S^1, result in (-pi, pi].
double circle_map(const MapParams& p, double phi);

/// Continuous increasing lift: lift(phi + 2 pi) = lift(phi) + 4 pi, lift(theta) = 2 theta.
double circle_map_lift(const MapParams& p, double phi);

double circle_map_deriv(const MapParams& p, double phi);
double circle_map_deriv2(const MapParams& p, double phi);

/// Argument of h(e^{i phi}), defined modulo pi.
double arg_h(const MapParams& p, double phi);

/// The two preimages (phi, phi + pi) of psi, both normalized.
std::pair<double, double> circle_preimages(const MapParams& p, double psi);

/// [phi, H(phi), ..., H^n(phi)].
std::vector<double> orbit(const MapParams& p, double phi, std::size_t n);

enum class LimitOutcome { ConvergedTo, LandedOnRepeller, Undecided };

struct LimitReport {
    LimitOutcome outcome;
    double target;  ///< the fixed angle converged to or landed on; NaN when Undecided
    std::size_t iterations;
    double final_angle;
};

struct ClassifyOptions {
    std::size_t max_iter = 10000;
    double tol = 1e-9;          ///< for attracting targets and repeller landing
    double neutral_tol = 1e-3;  ///< for neutral targets, whose attraction is only polynomial
    std::size_t confirm = 5;
};

/// ConvergedTo requires the distance to a non-repelling fixed angle to stay below the
/// tolerance and non-increasing for `confirm` consecutive steps; `iterations` is the
/// step where that streak began.
LimitReport classify_limit(const MapParams& p, const RegimeReport& rays, double phi,
                           const ClassifyOptions& opt = {});
LimitReport classify_limit(const MapParams& p, double phi, const ClassifyOptions& opt = {});

struct BackwardTree {
    std::vector<double> angles;  ///< sorted, in (-pi, pi]
    double max_gap;              ///< largest circular gap, wraparound included
};

/// All depth-level preimages of phi. depth > 20 throws ResourceLimit.
BackwardTree backward_tree(const MapParams& p, double phi, int depth);

/// Largest gap between consecutive sorted angles, including the wrap from last to first.
double max_circular_gap(const std::vector<double>& sorted_angles);

}  // namespace qrdyn
