#include "qrdyn/circle_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qrdyn/error.hpp"

namespace qrdyn {

double circle_map(const MapParams& p, double phi) {
    double d = phi - p.theta;
    return normalize_angle(2.0 * p.theta + 2.0 * std::atan2(std::sin(d), p.K * std::cos(d)));
}

double circle_map_lift(const MapParams& p, double phi) {
    double d = phi - p.theta;
    double n = std::floor((d + pi / 2) / pi);
    double d0 = d - n * pi;
    double g = std::atan2(std::sin(d0), p.K * std::cos(d0)) + n * pi;
    return 2.0 * p.theta + 2.0 * g;
}

double circle_map_deriv(const MapParams& p, double phi) {
    double c = std::cos(phi - p.theta);
    return 2.0 * p.K / (1.0 + (p.K * p.K - 1.0) * c * c);
}

double circle_map_deriv2(const MapParams& p, double phi) {
    double d = phi - p.theta;
    double c = std::cos(d);
    double s = std::sin(d);
    double q = 1.0 + (p.K * p.K - 1.0) * c * c;
    return 4.0 * p.K * (p.K * p.K - 1.0) * s * c / (q * q);
}

double arg_h(const MapParams& p, double phi) {
    double d = phi - p.theta;
    return p.theta + std::atan2(std::sin(d), p.K * std::cos(d));
}

std::pair<double, double> circle_preimages(const MapParams& p, double psi) {
    double u = 0.5 * normalize_angle(psi - 2.0 * p.theta);
    double phi = p.theta + std::atan2(p.K * std::sin(u), std::cos(u));
    return {normalize_angle(phi), normalize_angle(phi + pi)};
}

std::vector<double> orbit(const MapParams& p, double phi, std::size_t n) {
    std::vector<double> out;
    out.reserve(n + 1);
    double x = normalize_angle(phi);
    out.push_back(x);
    for (std::size_t i = 0; i < n; ++i) {
        x = circle_map(p, x);
        out.push_back(x);
    }
    return out;
}

LimitReport classify_limit(const MapParams& p, const RegimeReport& rays, double phi,
                           const ClassifyOptions& opt) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    double x = normalize_angle(phi);
    std::size_t streak = 0;
    std::size_t streak_start = 0;
    double last_dist = std::numeric_limits<double>::infinity();
    const FixedRay* last_target = nullptr;

    for (std::size_t it = 0; it <= opt.max_iter; ++it) {
        const FixedRay* target = nullptr;
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& r : rays.rays) {
            double dd = circle_dist(x, r.angle);
            if (r.stability == Stability::Repelling) {
                if (dd < opt.tol) return {LimitOutcome::LandedOnRepeller, r.angle, it, x};
                continue;
            }
            double t = r.stability == Stability::Neutral ? opt.neutral_tol : opt.tol;
            if (dd < t && dd < dist) {
                dist = dd;
                target = &r;
            }
        }
        if (target != nullptr && target == last_target && dist <= last_dist) {
            ++streak;
        } else if (target != nullptr) {
            streak = 1;
            streak_start = it;
        } else {
            streak = 0;
        }
        last_target = target;
        last_dist = dist;
        if (streak >= opt.confirm)
            return {LimitOutcome::ConvergedTo, target->angle, streak_start, x};
        if (it < opt.max_iter) x = circle_map(p, x);
    }
    return {LimitOutcome::Undecided, nan, opt.max_iter, x};
}

LimitReport classify_limit(const MapParams& p, double phi, const ClassifyOptions& opt) {
    return classify_limit(p, fixed_rays(p), phi, opt);
}

double max_circular_gap(const std::vector<double>& a) {
    if (a.size() < 2) return two_pi;
    double gap = a.front() + two_pi - a.back();
    for (std::size_t i = 1; i < a.size(); ++i) gap = std::max(gap, a[i] - a[i - 1]);
    return gap;
}

namespace {

void dedupe_sorted(std::vector<double>& a) {
    constexpr double eps = 1e-13;
    std::vector<double> out;
    out.reserve(a.size());
    for (double x : a)
        if (out.empty() || x - out.back() >= eps) out.push_back(x);
    while (out.size() > 1 && out.front() + two_pi - out.back() < eps) out.pop_back();
    a.swap(out);
}

}  // namespace

BackwardTree backward_tree(const MapParams& p, double phi, int depth) {
    if (depth < 0) throw InvalidParameter("depth must be non-negative");
    if (depth > 20) throw ResourceLimit("backward tree depth is capped at 20");
    std::vector<double> level{normalize_angle(phi)};
    for (int d = 0; d < depth; ++d) {
        std::vector<double> next;
        next.reserve(2 * level.size());
        for (double x : level) {
            auto [a, b] = circle_preimages(p, x);
            next.push_back(a);
            next.push_back(b);
        }
        std::sort(next.begin(), next.end());
        dedupe_sorted(next);
        level.swap(next);
    }
    BackwardTree t{std::move(level), 0.0};
    t.max_gap = max_circular_gap(t.angles);
    return t;
}

}  // namespace qrdyn
