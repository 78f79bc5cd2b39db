#include "qrdyn/core_map.hpp"

#include <cmath>
#include <string>

#include "qrdyn/error.hpp"

namespace qrdyn {

double normalize_angle(double phi) {
    double r = std::remainder(phi, two_pi);
    if (r <= -pi) r += two_pi;
    if (r > pi) r -= two_pi;
    return r;
}

double normalize_theta(double theta) {
    double n = std::ceil((theta - pi / 2) / pi);
    double t = theta - n * pi;
    if (t <= -pi / 2) t += pi;
    if (t > pi / 2) t -= pi;
    return t;
}

double circle_dist(double a, double b) { return std::abs(normalize_angle(a - b)); }

Polar to_polar(cplx z) { return {std::abs(z), std::arg(z)}; }

cplx from_polar(const Polar& p) { return std::polar(p.r, p.phi); }

MapParams make_params(double K, double theta) {
    if (!std::isfinite(K) || !std::isfinite(theta))
        throw InvalidParameter("K and theta must be finite");
    if (K <= 1.0) throw InvalidParameter("K must exceed 1, got " + std::to_string(K));
    MapParams p{K, normalize_theta(theta), {}};
    p.mu = mu_of_params(p);
    return p;
}

cplx mu_of_params(const MapParams& p) {
    return std::polar((p.K - 1.0) / (p.K + 1.0), 2.0 * p.theta);
}

MapParams params_of_mu(cplx mu) {
    double m = std::abs(mu);
    if (!std::isfinite(m) || m == 0.0 || m >= 1.0)
        throw InvalidParameter("dilatation must satisfy 0 < |mu| < 1");
    double K = (1.0 + m) / (1.0 - m);
    MapParams p{K, normalize_theta(std::arg(mu) / 2.0), mu};
    return p;
}

cplx eval_h(const MapParams& p, cplx z) {
    cplx e = std::polar(1.0, 2.0 * p.theta);
    return 0.5 * (p.K + 1.0) * z + e * (0.5 * (p.K - 1.0)) * std::conj(z);
}

cplx eval_H(const MapParams& p, cplx z) {
    cplx w = eval_h(p, z);
    return w * w;
}

double radial_factor(const MapParams& p, double phi) {
    double c = std::cos(phi - p.theta);
    return 1.0 + (p.K * p.K - 1.0) * c * c;
}

Polar eval_H_polar(const MapParams& p, double r, double phi) {
    double d = phi - p.theta;
    double out = 2.0 * p.theta + 2.0 * std::atan2(std::sin(d), p.K * std::cos(d));
    return {r * r * radial_factor(p, phi), normalize_angle(out)};
}

}  // namespace qrdyn
