#include "qrdyn/blaschke.hpp"

#include <cmath>
#include <random>

#include "qrdyn/circle_dynamics.hpp"
#include "qrdyn/error.hpp"

namespace qrdyn {

BlaschkeMap blaschke_of_params(const MapParams& p) {
    double m = std::sqrt((p.K - 1.0) / (p.K + 1.0));
    return {p.mu, std::polar(m, p.theta - pi / 2)};
}

cplx blaschke_apply(const BlaschkeMap& B, cplx z) {
    if (!(std::abs(z) <= 1.0 + 1e-9)) throw InvalidParameter("Blaschke product evaluated off the closed disk");
    cplx z2 = z * z;
    return (z2 + B.mu) / (1.0 + std::conj(B.mu) * z2);
}

std::string to_string(JuliaKind k) {
    return k == JuliaKind::FullCircle ? "full-circle" : "cantor-on-circle";
}

JuliaClassification julia_classification(const MapParams& p) {
    Regime r = fixed_rays(p).regime;
    bool full = r == Regime::OneRepelling || r == Regime::OneParabolic;
    return {full ? JuliaKind::FullCircle : JuliaKind::CantorOnCircle, r};
}

std::vector<double> julia_sample(const MapParams& p, std::size_t count, std::uint64_t seed) {
    if (count < 1) throw InvalidParameter("julia_sample needs count >= 1");
    auto rep = fixed_rays(p);
    double x = rep.rays.front().angle;
    for (const auto& r : rep.rays)
        if (r.stability == Stability::Repelling) {
            x = r.angle;
            break;
        }
    std::mt19937_64 rng(seed);
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count + julia_burn_in; ++i) {
        auto [a, b] = circle_preimages(p, x);
        x = (rng() & 1u) ? b : a;
        if (i >= julia_burn_in) out.push_back(x);
    }
    return out;
}

double CircularInterval::length() const {
    double len = std::fmod(hi - lo, two_pi);
    return len < 0 ? len + two_pi : len;
}

bool CircularInterval::contains(double phi, double margin) const {
    double x = std::fmod(phi - lo, two_pi);
    if (x < 0) x += two_pi;
    return x > margin && x < length() - margin;
}

CircularInterval immediate_basin(const MapParams& p) {
    auto rep = fixed_rays(p);
    if (rep.regime == Regime::Three) {
        const auto& r = rep.rays;
        return {r.front().angle, r.back().angle, false, false};
    }
    if (rep.regime == Regime::TwoWithNeutral) {
        const FixedRay* rep_ray = nullptr;
        const FixedRay* neu_ray = nullptr;
        for (const auto& r : rep.rays) (r.stability == Stability::Neutral ? neu_ray : rep_ray) = &r;
        if (rep_ray == nullptr || neu_ray == nullptr)
            throw NumericalFailure("two-ray regime without a repelling/neutral pair");
        // With positive second derivative the neutral ray attracts from below.
        if (circle_map_deriv2(p, neu_ray->angle) > 0)
            return {rep_ray->angle, neu_ray->angle, false, true};
        return {neu_ray->angle, rep_ray->angle, true, false};
    }
    throw NoBasin("no non-repelling fixed ray in regime " + to_string(rep.regime));
}

}  // namespace qrdyn
