#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrdyn/core_map.hpp"

namespace qrdyn {

enum class Stability { Attracting, Repelling, Neutral };
enum class Regime { OneRepelling, OneParabolic, TwoWithNeutral, Three };

std::string to_string(Stability s);
std::string to_string(Regime r);

struct FixedRay {
    double angle;
    double multiplier;  ///< derivative of the circle map at the angle
    Stability stability;
    double trace_sq;
    double contraction_k;
    int multiplicity = 1;  ///< multiplicity of the underlying cubic root
};

struct RegimeReport {
    Regime regime;
    std::vector<FixedRay> rays;     ///< ascending by angle
    std::optional<double> k_theta;  ///< absent at theta = pi/2
};

/// P(t) = a t^3 + b t^2 + c t + d with t = tan((phi - theta)/2).
struct CubicCoeffs {
    double a, b, c, d;
};

struct CubicRoot {
    double t;
    int multiplicity;
};

CubicCoeffs cubic_coeffs(const MapParams& p);

/// Real roots in ascending order. Roots closer than 1e-7 are merged and reported
/// with their combined multiplicity. Requires a != 0.
std::vector<CubicRoot> solve_cubic(const CubicCoeffs& c);

RegimeReport fixed_rays(const MapParams& p);

/// Squared trace (K+1)^2 (1 + cos phi) / (2K) of the fixed-ray Mobius map.
double ray_trace_sq(const MapParams& p, double phi);

/// theta = arccos[((2K-1)/(K^2-1))^{3/2} (K-1)], defined for K >= 2.
double theta_of_K(double K);

/// Critical stretch K_theta: inverse of theta_of_K. k_theta(0) = 2; k_theta(-t) = k_theta(t).
double k_theta(double theta);

/// Interval (theta - eta, theta + eta) on which the circle map contracts. Empty for K < 2.
std::optional<std::pair<double, double>> interval_J(const MapParams& p);

}  // namespace qrdyn
