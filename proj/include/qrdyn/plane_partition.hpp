#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qrdyn/core_map.hpp"

namespace qrdyn {

inline constexpr double escape_radius = 2.0;

/// 1/(2K^2): below this radius |H(z)| <= K^2 |z|^2 < |z|/2.
double attract_radius(const MapParams& p);

enum class PointKind : std::uint8_t { Escaped, Attracted, Undecided };

std::string to_string(PointKind k);

struct PointClass {
    PointKind kind;
    std::size_t n;  ///< iterate at which the threshold was crossed; max_iter when Undecided
};

PointClass classify_point(const MapParams& p, cplx z, std::size_t max_iter);

/// r = 1/alpha on a fixed ray; throws InvalidParameter if phi is not fixed.
double radial_fixed_point(const MapParams& p, double phi);

struct Window {
    cplx center;
    double width;
    double height;

    static Window from_bounds(double x_min, double x_max, double y_min, double y_max);
    double x_min() const { return center.real() - width / 2; }
    double y_max() const { return center.imag() + height / 2; }
};

inline constexpr std::size_t max_grid_side = 8192;

struct GridStats {
    double escaped = 0;
    double attracted = 0;
    double undecided = 0;
};

struct PlaneGrid {
    Window window;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::size_t max_iter = 0;
    std::vector<PointClass> cells;  ///< row-major, row 0 at the top

    const PointClass& at(std::size_t ix, std::size_t iy) const { return cells[iy * nx + ix]; }
    /// Pixel center of cell (ix, iy).
    cplx point(std::size_t ix, std::size_t iy) const;
    GridStats stats() const;
};

/// Threads default to the hardware concurrency, capped by QRDYN_THREADS when set.
PlaneGrid render_grid(const MapParams& p, const Window& w, std::size_t nx, std::size_t ny,
                      std::size_t max_iter);

/// Binary P6 image: escaped cells hued by log2(n+1), attracted cells grey by n,
/// undecided cells black.
std::vector<std::uint8_t> to_ppm(const PlaneGrid& g);
void write_ppm(const PlaneGrid& g, const std::string& path);

}  // namespace qrdyn
