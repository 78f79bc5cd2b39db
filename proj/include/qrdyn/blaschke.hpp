#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrdyn/core_map.hpp"
#include "qrdyn/fixed_rays.hpp"

namespace qrdyn {

/// B(z) = (z^2 + mu) / (1 + conj(mu) z^2), with zeros at +-zero.
struct BlaschkeMap {
    cplx mu;
    cplx zero;
};

BlaschkeMap blaschke_of_params(const MapParams& p);

/// Requires |z| <= 1 + 1e-9.
cplx blaschke_apply(const BlaschkeMap& B, cplx z);

enum class JuliaKind { FullCircle, CantorOnCircle };

std::string to_string(JuliaKind k);

struct JuliaClassification {
    JuliaKind kind;
    Regime regime;
};

JuliaClassification julia_classification(const MapParams& p);

inline constexpr int julia_burn_in = 30;

/// Random-branch backward orbit of a repelling fixed angle (the parabolic one when there
/// is none). The first julia_burn_in preimages are discarded.
std::vector<double> julia_sample(const MapParams& p, std::size_t count, std::uint64_t seed);

/// Counter-clockwise arc from lo to hi.
struct CircularInterval {
    double lo;
    double hi;
    bool lo_closed;
    bool hi_closed;

    double length() const;
    /// Open membership with the given margin at both ends.
    bool contains(double phi, double margin = 1e-9) const;
};

/// Immediate basin of the non-repelling fixed ray. Throws NoBasin in the one-ray regimes.
CircularInterval immediate_basin(const MapParams& p);

}  // namespace qrdyn
