#pragma once

#include <complex>
#include <numbers>

namespace qrdyn {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Parameters of h(z) = ((K+1)/2) z + e^{2i theta} ((K-1)/2) conj(z) and H = h^2.
struct MapParams {
    double K;
    double theta;  ///< normalized into (-pi/2, pi/2]
    cplx mu;       ///< e^{2i theta} (K-1)/(K+1)
};

struct Polar {
    double r;
    double phi;
};

/// Reduces an angle into (-pi, pi].
double normalize_angle(double phi);

/// Reduces theta into (-pi/2, pi/2] by multiples of pi.
double normalize_theta(double theta);

/// Distance between two angles on the circle, in [0, pi].
double circle_dist(double a, double b);

Polar to_polar(cplx z);
cplx from_polar(const Polar& p);

MapParams make_params(double K, double theta);
cplx mu_of_params(const MapParams& p);
MapParams params_of_mu(cplx mu);

cplx eval_h(const MapParams& p, cplx z);
cplx eval_H(const MapParams& p, cplx z);
Polar eval_H_polar(const MapParams& p, double r, double phi);

/// Radial stretch factor 1 + (K^2-1) cos^2(phi - theta), so |H(re^{i phi})| = alpha r^2.
double radial_factor(const MapParams& p, double phi);

}  // namespace qrdyn
