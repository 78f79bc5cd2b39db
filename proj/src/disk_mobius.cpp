#include "qrdyn/disk_mobius.hpp"

#include <cmath>
#include <string>

#include "qrdyn/circle_dynamics.hpp"
#include "qrdyn/error.hpp"

namespace qrdyn {

DiskMobius mobius_make(cplx a, cplx b) {
    double det = std::norm(a) - std::norm(b);
    if (!(det > 0.0) || !std::isfinite(det))
        throw InvalidParameter("coefficients do not define a disk automorphism");
    double s = std::sqrt(det);
    return {a / s, b / s};
}

DiskMobius mobius_identity() { return {}; }

DiskMobius mobius_translation(cplx mu) {
    double m = std::abs(mu);
    if (!(m < 1.0)) throw InvalidParameter("translation needs |mu| < 1");
    double s = std::sqrt((1.0 - m) * (1.0 + m));
    return {cplx(1.0 / s, 0.0), mu / s};
}

DiskMobius mobius_step(cplx mu, double rho) {
    double m = std::abs(mu);
    if (!(m < 1.0)) throw InvalidParameter("step needs |mu| < 1");
    double s = std::sqrt((1.0 - m) * (1.0 + m));
    cplx e = std::polar(1.0, rho / 2.0);
    return {e / s, std::conj(e) * mu / s};
}

cplx mobius_apply(const DiskMobius& m, cplx w) {
    return (m.a * w + m.b) / (std::conj(m.b) * w + std::conj(m.a));
}

DiskMobius mobius_compose(const DiskMobius& m1, const DiskMobius& m2) {
    DiskMobius r{m1.a * m2.a + m1.b * std::conj(m2.b), m1.a * m2.b + m1.b * std::conj(m2.a)};
    if (!std::isfinite(std::abs(r.a)) || !std::isfinite(std::abs(r.b)))
        throw NumericalFailure("Mobius composition overflowed");
    return r;
}

DiskMobius mobius_inverse(const DiskMobius& m) { return {std::conj(m.a), -m.b}; }

double trace_sq(const DiskMobius& m) {
    double det = std::norm(m.a) - std::norm(m.b);
    if (!(det > 0.0)) throw InvalidParameter("degenerate Mobius coefficients");
    double re = m.a.real();
    return 4.0 * re * re / det;
}

bool is_hyperbolic(const DiskMobius& m) { return trace_sq(m) > 4.0 + 1e-12; }

double contraction_k(double T) {
    if (!(T > 4.0)) throw InvalidParameter("contraction factor needs a squared trace above 4");
    // k = (T - 2 - sqrt(T^2 - 4T)) / 2, rationalized.
    return 2.0 / (T - 2.0 + std::sqrt(T * (T - 4.0)));
}

double hyperbolic_dist(cplx w1, cplx w2) {
    double m1 = std::abs(w1), m2 = std::abs(w2);
    if (!(m1 < 1.0) || !(m2 < 1.0)) throw InvalidParameter("points must lie in the open disk");
    double den = std::abs(1.0 - std::conj(w1) * w2);
    double rho = std::abs(w1 - w2) / den;
    double one_minus_rho2 = (1.0 - m1) * (1.0 + m1) * (1.0 - m2) * (1.0 + m2) / (den * den);
    return 2.0 * std::log1p(rho) - std::log(one_minus_rho2);
}

double dist_from_origin(const DiskMobius& m) {
    return 2.0 * std::log(std::abs(m.a) + std::abs(m.b));
}

double distortion(cplx mu) {
    double m = std::abs(mu);
    if (!(m < 1.0)) throw InvalidParameter("distortion needs |mu| < 1");
    return (1.0 + m) / (1.0 - m);
}

namespace {

void require_fixed(const MapParams& p, double phi) {
    double residual = circle_dist(circle_map(p, phi), phi);
    if (!(residual <= 1e-8))
        throw InvalidParameter("angle is not a fixed ray (residual " + std::to_string(residual) +
                               ")");
}

void require_n(int n) {
    if (n < 1) throw InvalidParameter("iterate count must be at least 1");
}

}  // namespace

DiskMobius fixed_ray_mobius(const MapParams& p, double phi) {
    require_fixed(p, phi);
    return mobius_step(p.mu, -phi);
}

DiskMobius ray_dilatation_map(const MapParams& p, double phi, int n) {
    require_n(n);
    DiskMobius A = fixed_ray_mobius(p, phi);
    DiskMobius m = mobius_translation(p.mu);
    for (int i = 1; i < n; ++i) m = mobius_compose(A, m);
    return m;
}

cplx dilatation_on_ray(const MapParams& p, double phi, int n) {
    return mobius_apply(ray_dilatation_map(p, phi, n), 0.0);
}

DiskMobius chain_dilatation_map(const MapParams& p, cplx z, int n) {
    require_n(n);
    if (z == 0.0) throw InvalidParameter("the dilatation chain is undefined at z = 0");
    DiskMobius prefix = mobius_identity();
    double x = std::arg(z);
    for (int i = 1; i < n; ++i) {
        prefix = mobius_compose(prefix, mobius_step(p.mu, -2.0 * arg_h(p, x)));
        x = circle_map(p, x);
    }
    return mobius_compose(prefix, mobius_translation(p.mu));
}

cplx dilatation_chain(const MapParams& p, cplx z, int n) {
    return mobius_apply(chain_dilatation_map(p, z, n), 0.0);
}

std::vector<double> ray_distances(const MapParams& p, double phi, int n_max) {
    require_n(n_max);
    DiskMobius A = fixed_ray_mobius(p, phi);
    DiskMobius m = mobius_translation(p.mu);
    std::vector<double> out;
    out.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) m = mobius_compose(A, m);
        out.push_back(dist_from_origin(m));
    }
    return out;
}

std::vector<double> chain_distances(const MapParams& p, cplx z, int n_max) {
    require_n(n_max);
    if (z == 0.0) throw InvalidParameter("the dilatation chain is undefined at z = 0");
    DiskMobius T = mobius_translation(p.mu);
    DiskMobius prefix = mobius_identity();
    double x = std::arg(z);
    std::vector<double> out;
    out.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) {
            prefix = mobius_compose(prefix, mobius_step(p.mu, -2.0 * arg_h(p, x)));
            x = circle_map(p, x);
        }
        out.push_back(dist_from_origin(mobius_compose(prefix, T)));
    }
    return out;
}

GrowthFit fit_distances(const std::vector<double>& d, int n_lo, int n_hi) {
    if (n_lo < 1 || n_hi > static_cast<int>(d.size()) || n_hi - n_lo < 10)
        throw InvalidParameter("growth fit needs a window of at least 11 iterates");
    double count = n_hi - n_lo + 1;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n = n_lo; n <= n_hi; ++n) {
        double y = d[n - 1];
        sx += n;
        sy += y;
        sxx += double(n) * n;
        sxy += n * y;
    }
    double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    double intercept = (sy - slope * sx) / count;
    double residual = 0;
    for (int n = n_lo; n <= n_hi; ++n)
        residual = std::max(residual, std::abs(d[n - 1] - (slope * n + intercept)));
    return {slope, intercept, residual, n_lo, n_hi};
}

GrowthFit growth_fit_ray(const MapParams& p, double phi, int n_lo, int n_hi, int burn_in) {
    n_lo = std::max(n_lo, burn_in + 1);
    if (n_hi - n_lo < 10) throw InvalidParameter("growth fit needs a window of at least 11 iterates");
    return fit_distances(ray_distances(p, phi, n_hi), n_lo, n_hi);
}

GrowthFit growth_fit_chain(const MapParams& p, cplx z, int n_lo, int n_hi, int burn_in) {
    n_lo = std::max(n_lo, burn_in + 1);
    if (n_hi - n_lo < 10) throw InvalidParameter("growth fit needs a window of at least 11 iterates");
    return fit_distances(chain_distances(p, z, n_hi), n_lo, n_hi);
}

}  // namespace qrdyn
