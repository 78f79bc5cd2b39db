#include "qrdyn/fixed_rays.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qrdyn/circle_dynamics.hpp"
#include "qrdyn/disk_mobius.hpp"
#include "qrdyn/error.hpp"

namespace qrdyn {

std::string to_string(Stability s) {
    switch (s) {
        case Stability::Attracting: return "attracting";
        case Stability::Repelling: return "repelling";
        case Stability::Neutral: return "neutral";
    }
    return "?";
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::OneRepelling: return "one-repelling";
        case Regime::OneParabolic: return "one-parabolic";
        case Regime::TwoWithNeutral: return "two-with-neutral";
        case Regime::Three: return "three";
    }
    return "?";
}

CubicCoeffs cubic_coeffs(const MapParams& p) {
    double T = std::tan(p.theta / 2.0);
    return {p.K, (2.0 - p.K) * T, 2.0 - p.K, p.K * T};
}

namespace {

constexpr double merge_tol = 1e-7;

double poly(const CubicCoeffs& c, double t) { return ((c.a * t + c.b) * t + c.c) * t + c.d; }
double dpoly(const CubicCoeffs& c, double t) { return (3.0 * c.a * t + 2.0 * c.b) * t + c.c; }
double ddpoly(const CubicCoeffs& c, double t) { return 6.0 * c.a * t + 2.0 * c.b; }

/// Newton steps that are only kept while they reduce |f|.
template <class F, class DF>
double polish(double t, F f, DF df, int steps) {
    for (int i = 0; i < steps; ++i) {
        double fx = f(t);
        double dfx = df(t);
        if (fx == 0.0 || dfx == 0.0) break;
        double next = t - fx / dfx;
        if (!std::isfinite(next) || std::abs(f(next)) >= std::abs(fx)) break;
        t = next;
    }
    return t;
}

double one_real_root(const CubicCoeffs& c) {
    double b = c.b / c.a, cc = c.c / c.a, d = c.d / c.a;
    double shift = b / 3.0;
    double pp = cc - b * b / 3.0;
    double q = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + d;
    double disc = q * q / 4.0 + pp * pp * pp / 27.0;
    double x;
    if (disc > 0.0) {
        double s = std::sqrt(disc);
        double u = std::cbrt(-q / 2.0 + (q > 0 ? -s : s));
        x = u == 0.0 ? 0.0 : u - pp / (3.0 * u);
    } else if (pp < 0.0) {
        double m = 2.0 * std::sqrt(-pp / 3.0);
        double arg = std::clamp(3.0 * q / (pp * m), -1.0, 1.0);
        x = m * std::cos(std::acos(arg) / 3.0);
    } else {
        x = std::cbrt(-q);
    }
    return x - shift;
}

}  // namespace

std::vector<CubicRoot> solve_cubic(const CubicCoeffs& c) {
    if (c.a == 0.0) throw InvalidParameter("cubic needs a nonzero leading coefficient");
    auto f = [&](double t) { return poly(c, t); };
    auto df = [&](double t) { return dpoly(c, t); };
    auto ddf = [&](double t) { return ddpoly(c, t); };

    double r = polish(one_real_root(c), f, df, 8);
    std::vector<CubicRoot> roots{{r, 1}};

    double B = c.b + c.a * r;
    double C = c.c + B * r;
    double disc = B * B - 4.0 * c.a * C;
    if (disc >= 0.0) {
        double s = std::sqrt(disc);
        double q = -0.5 * (B + (B >= 0 ? s : -s));
        if (q == 0.0) {
            roots.push_back({0.0, 2});
        } else {
            roots.push_back({q / c.a, 1});
            roots.push_back({C / q, 1});
        }
    } else if (std::sqrt(-disc) / (2.0 * std::abs(c.a)) < merge_tol / 2.0) {
        roots.push_back({-B / (2.0 * c.a), 2});
    }

    std::sort(roots.begin(), roots.end(), [](auto& x, auto& y) { return x.t < y.t; });
    std::vector<CubicRoot> merged;
    for (const auto& x : roots) {
        if (!merged.empty() && x.t - merged.back().t < merge_tol) {
            auto& m = merged.back();
            m.t = (m.t * m.multiplicity + x.t * x.multiplicity) / (m.multiplicity + x.multiplicity);
            m.multiplicity += x.multiplicity;
        } else {
            merged.push_back(x);
        }
    }
    for (auto& m : merged) {
        if (m.multiplicity >= 3)
            m.t = -c.b / (3.0 * c.a);
        else if (m.multiplicity == 2)
            m.t = polish(m.t, df, ddf, 8);
        else
            m.t = polish(m.t, f, df, 2);
    }
    return merged;
}

double ray_trace_sq(const MapParams& p, double phi) {
    return (p.K + 1.0) * (p.K + 1.0) * (1.0 + std::cos(phi)) / (2.0 * p.K);
}

namespace {

bool in_sectors(double theta, double phi) {
    constexpr double slack = 1e-9;
    // Sectors for theta > 0; mirror for theta < 0.
    if (theta < 0) {
        theta = -theta;
        phi = -phi;
    }
    bool upper = phi > 2.0 * theta - slack && phi < theta + pi / 2 + slack;
    bool lower = phi > theta - pi / 2 - slack && phi < slack;
    return upper || lower;
}

}  // namespace

RegimeReport fixed_rays(const MapParams& p) {
    auto roots = solve_cubic(cubic_coeffs(p));
    RegimeReport rep{};
    for (const auto& root : roots) {
        double phi = normalize_angle(p.theta + 2.0 * std::atan(root.t));
        double residual = circle_dist(circle_map(p, phi), phi);
        if (!(residual <= 1e-8))
            throw NumericalFailure("fixed-ray residual " + std::to_string(residual) +
                                   " exceeds 1e-8");
        if (std::abs(p.theta) > 0 && std::abs(p.theta) < pi / 2 && !in_sectors(p.theta, phi))
            throw NumericalFailure("fixed ray outside the admissible sectors");
        FixedRay ray{};
        ray.angle = phi;
        ray.multiplier = circle_map_deriv(p, phi);
        ray.multiplicity = root.multiplicity;
        if (root.multiplicity > 1 || std::abs(ray.multiplier - 1.0) < 1e-9)
            ray.stability = Stability::Neutral;
        else
            ray.stability = ray.multiplier < 1.0 ? Stability::Attracting : Stability::Repelling;
        ray.trace_sq = ray_trace_sq(p, phi);
        ray.contraction_k = ray.trace_sq > 4.0 ? contraction_k(ray.trace_sq) : 1.0;
        rep.rays.push_back(ray);
    }
    std::sort(rep.rays.begin(), rep.rays.end(),
              [](const FixedRay& x, const FixedRay& y) { return x.angle < y.angle; });

    switch (rep.rays.size()) {
        case 1:
            rep.regime = rep.rays[0].stability == Stability::Neutral ? Regime::OneParabolic
                                                                      : Regime::OneRepelling;
            break;
        case 2: rep.regime = Regime::TwoWithNeutral; break;
        case 3: rep.regime = Regime::Three; break;
        default: throw NumericalFailure("unexpected number of fixed rays");
    }
    if (std::abs(p.theta) < pi / 2) rep.k_theta = k_theta(p.theta);
    return rep;
}

double theta_of_K(double K) {
    if (!(K >= 2.0)) throw InvalidParameter("theta_of_K needs K >= 2");
    double f = std::pow((2.0 * K - 1.0) / (K * K - 1.0), 1.5) * (K - 1.0);
    return std::acos(std::clamp(f, -1.0, 1.0));
}

double k_theta(double theta) {
    if (!std::isfinite(theta)) throw InvalidParameter("theta must be finite");
    theta = std::abs(theta);
    if (theta >= pi / 2) throw InvalidParameter("no neutral fixed ray for |theta| >= pi/2");
    if (theta == 0.0) return 2.0;
    double lo = 2.0;
    double hi = 1e6;
    while (theta_of_K(hi) < theta) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e30) throw NumericalFailure("K_theta exceeds 1e30");
    }
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (theta_of_K(mid) < theta ? lo : hi) = mid;
    }
    return std::abs(theta_of_K(lo) - theta) < std::abs(theta_of_K(hi) - theta) ? lo : hi;
}

std::optional<std::pair<double, double>> interval_J(const MapParams& p) {
    if (p.K < 2.0) return std::nullopt;
    if (p.K == 2.0) return std::pair{p.theta, p.theta};
    double eta = std::acos(std::sqrt((2.0 * p.K - 1.0) / (p.K * p.K - 1.0)));
    return std::pair{p.theta - eta, p.theta + eta};
}

}  // namespace qrdyn
