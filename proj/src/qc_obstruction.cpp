#include "qrdyn/qc_obstruction.hpp"

#include <algorithm>
#include <cmath>

namespace qrdyn {

std::string to_string(Verdict v) { return v == Verdict::Obstructed ? "obstructed" : "inconclusive"; }

std::string to_string(Reason r) {
    switch (r) {
        case Reason::RayCountMismatch: return "ray-count-mismatch";
        case Reason::TraceMismatch: return "trace-mismatch";
        case Reason::CorollaryFixedTheta: return "corollary-fixed-theta";
    }
    return "?";
}

namespace {

MapSummary summarize(const MapParams& p) {
    RegimeReport rep = fixed_rays(p);
    MapSummary s{p, rep.regime, rep.k_theta, {}, false};
    // Pair in the theta >= 0 frame so that (K, theta) and (K, -theta) line up.
    double sign = p.theta < 0 ? -1.0 : 1.0;
    for (const auto& r : rep.rays) s.rays.push_back({0, r.angle, r.trace_sq, r.stability});
    std::sort(s.rays.begin(), s.rays.end(),
              [&](const PairedRay& x, const PairedRay& y) { return sign * x.angle > sign * y.angle; });
    static const int three[] = {1, 0, 2};
    static const int two[] = {1, 2};
    for (std::size_t i = 0; i < s.rays.size(); ++i)
        s.rays[i].label = s.rays.size() == 3 ? three[i] : s.rays.size() == 2 ? two[i] : 0;

    s.near_bifurcation = rep.regime == Regime::TwoWithNeutral || rep.regime == Regime::OneParabolic ||
                         (rep.k_theta && std::abs(p.K / *rep.k_theta - 1.0) < 1e-9);
    return s;
}

bool differs(double x, double y, double tol) {
    return std::abs(x - y) > tol * std::max(std::abs(x), std::abs(y));
}

}  // namespace

ObstructionVerdict obstruction_report(const MapParams& p1, const MapParams& p2, double tol) {
    ObstructionVerdict v{Verdict::Inconclusive, {}, {}, summarize(p1), summarize(p2), {}};
    const auto& a = v.first;
    const auto& b = v.second;

    if (a.rays.size() != b.rays.size()) {
        if (a.near_bifurcation || b.near_bifurcation)
            v.diagnostics.push_back("ray counts differ but an input sits at the K_theta bifurcation; "
                                    "regime detection there is tolerance-dependent");
        else
            v.reasons.push_back(Reason::RayCountMismatch);
    } else {
        for (std::size_t i = 0; i < a.rays.size(); ++i)
            if (differs(a.rays[i].trace_sq, b.rays[i].trace_sq, tol))
                v.mismatched_labels.push_back(a.rays[i].label);
        if (!v.mismatched_labels.empty()) v.reasons.push_back(Reason::TraceMismatch);
    }

    bool same_theta = std::abs(p1.theta - p2.theta) <= 1e-14;
    if (same_theta && p1.theta >= 0 && p1.theta < pi / 2 && differs(p1.K, p2.K, tol))
        v.reasons.push_back(Reason::CorollaryFixedTheta);

    if (!v.reasons.empty()) v.verdict = Verdict::Obstructed;
    return v;
}

}  // namespace qrdyn
