#pragma once

#include <vector>

#include "qrdyn/core_map.hpp"

namespace qrdyn {

/// w -> (a w + b) / (conj(b) w + conj(a)), kept with |a|^2 - |b|^2 = 1.
struct DiskMobius {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};
};

/// Normalizes (a, b); throws InvalidParameter unless |a|^2 - |b|^2 > 0.
DiskMobius mobius_make(cplx a, cplx b);
DiskMobius mobius_identity();

/// w -> (w + mu) / (1 + conj(mu) w), sending 0 to mu.
DiskMobius mobius_translation(cplx mu);

/// w -> (mu + e^{i rho} w) / (1 + e^{i rho} conj(mu) w).
DiskMobius mobius_step(cplx mu, double rho);

cplx mobius_apply(const DiskMobius& m, cplx w);

/// m1 after m2.
DiskMobius mobius_compose(const DiskMobius& m1, const DiskMobius& m2);
DiskMobius mobius_inverse(const DiskMobius& m);

double trace_sq(const DiskMobius& m);
bool is_hyperbolic(const DiskMobius& m);

/// Contraction factor k of a hyperbolic map with squared trace T, so k + 1/k + 2 = T.
double contraction_k(double T);

double hyperbolic_dist(cplx w1, cplx w2);

/// d_h(0, m(0)) = 2 log(|a| + |b|); stays accurate when m(0) is within rounding of the circle.
double dist_from_origin(const DiskMobius& m);

/// (1 + |mu|) / (1 - |mu|).
double distortion(cplx mu);

/// The map A of a fixed ray; throws InvalidParameter if phi is not fixed (residual > 1e-8).
DiskMobius fixed_ray_mobius(const MapParams& p, double phi);

/// M with M(0) = mu of H^n along a fixed ray: A^{n-1} after the translation by mu.
DiskMobius ray_dilatation_map(const MapParams& p, double phi, int n);
cplx dilatation_on_ray(const MapParams& p, double phi, int n);

/// M with M(0) = mu of H^n at z: A_1 ... A_{n-1} after the translation by mu, where A_i
/// uses the argument of h at the (i-1)-th orbit point. Only angles are iterated.
DiskMobius chain_dilatation_map(const MapParams& p, cplx z, int n);
cplx dilatation_chain(const MapParams& p, cplx z, int n);

struct GrowthFit {
    double slope;
    double intercept;
    double residual;  ///< max |d_n - (slope n + intercept)| over the window
    int n_lo;
    int n_hi;
};

inline constexpr int default_burn_in = 5;

/// d_h(0, mu of H^n) for n = 1..n_max along a fixed ray.
std::vector<double> ray_distances(const MapParams& p, double phi, int n_max);
/// Same along the orbit of an arbitrary z != 0.
std::vector<double> chain_distances(const MapParams& p, cplx z, int n_max);

/// Least-squares line through (n, d_n) for n in [max(n_lo, burn_in + 1), n_hi].
/// Throws InvalidParameter when the window holds fewer than 11 iterates.
GrowthFit growth_fit_ray(const MapParams& p, double phi, int n_lo, int n_hi,
                         int burn_in = default_burn_in);
GrowthFit growth_fit_chain(const MapParams& p, cplx z, int n_lo, int n_hi,
                           int burn_in = default_burn_in);

/// Fit over distances[n-1] = d_n.
GrowthFit fit_distances(const std::vector<double>& distances, int n_lo, int n_hi);

}  // namespace qrdyn
