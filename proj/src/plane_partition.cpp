#include "qrdyn/plane_partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string>
#include <thread>

#include "qrdyn/circle_dynamics.hpp"
#include "qrdyn/error.hpp"

namespace qrdyn {

double attract_radius(const MapParams& p) { return 1.0 / (2.0 * p.K * p.K); }

std::string to_string(PointKind k) {
    switch (k) {
        case PointKind::Escaped: return "escaped";
        case PointKind::Attracted: return "attracted";
        case PointKind::Undecided: return "undecided";
    }
    return "?";
}

PointClass classify_point(const MapParams& p, cplx z, std::size_t max_iter) {
    if (max_iter < 1) throw InvalidParameter("max_iter must be at least 1");
    const double r_in = attract_radius(p);
    for (std::size_t n = 0;; ++n) {
        double m = std::abs(z);
        if (m > escape_radius) return {PointKind::Escaped, n};
        if (m < r_in) return {PointKind::Attracted, n};
        if (n == max_iter) return {PointKind::Undecided, max_iter};
        z = eval_H(p, z);
    }
}

double radial_fixed_point(const MapParams& p, double phi) {
    double residual = circle_dist(circle_map(p, phi), phi);
    if (!(residual <= 1e-8)) throw InvalidParameter("angle is not a fixed ray");
    return 1.0 / radial_factor(p, phi);
}

Window Window::from_bounds(double x_min, double x_max, double y_min, double y_max) {
    if (!(x_max > x_min) || !(y_max > y_min)) throw InvalidParameter("empty window");
    return {cplx(0.5 * (x_min + x_max), 0.5 * (y_min + y_max)), x_max - x_min, y_max - y_min};
}

cplx PlaneGrid::point(std::size_t ix, std::size_t iy) const {
    double x = window.x_min() + (ix + 0.5) * window.width / nx;
    double y = window.y_max() - (iy + 0.5) * window.height / ny;
    return {x, y};
}

GridStats PlaneGrid::stats() const {
    GridStats s;
    for (const auto& c : cells) {
        switch (c.kind) {
            case PointKind::Escaped: s.escaped += 1; break;
            case PointKind::Attracted: s.attracted += 1; break;
            case PointKind::Undecided: s.undecided += 1; break;
        }
    }
    double total = static_cast<double>(cells.size());
    if (total > 0) {
        s.escaped /= total;
        s.attracted /= total;
        s.undecided /= total;
    }
    return s;
}

namespace {

unsigned thread_count(std::size_t rows) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QRDYN_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return static_cast<unsigned>(std::min<std::size_t>(n, rows));
}

}  // namespace

PlaneGrid render_grid(const MapParams& p, const Window& w, std::size_t nx, std::size_t ny,
                      std::size_t max_iter) {
    if (nx == 0 || ny == 0) throw InvalidParameter("grid resolution must be positive");
    if (nx > max_grid_side || ny > max_grid_side)
        throw ResourceLimit("grid side exceeds " + std::to_string(max_grid_side));
    if (!(w.width > 0) || !(w.height > 0)) throw InvalidParameter("empty window");
    if (max_iter < 1) throw InvalidParameter("max_iter must be at least 1");

    PlaneGrid g{w, nx, ny, max_iter, std::vector<PointClass>(nx * ny)};
    unsigned workers = thread_count(ny);
    auto work = [&](unsigned k) {
        for (std::size_t iy = k; iy < ny; iy += workers)
            for (std::size_t ix = 0; ix < nx; ++ix)
                g.cells[iy * nx + ix] = classify_point(p, g.point(ix, iy), max_iter);
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < workers; ++k) pool.emplace_back(work, k);
    work(0);
    for (auto& t : pool) t.join();
    return g;
}

namespace {

void hsv_to_rgb(double h, std::uint8_t* out) {
    double hp = std::fmod(h, 1.0) * 6.0;
    double x = 1.0 - std::abs(std::fmod(hp, 2.0) - 1.0);
    double r = 0, gg = 0, b = 0;
    switch (static_cast<int>(hp)) {
        case 0: r = 1; gg = x; break;
        case 1: r = x; gg = 1; break;
        case 2: gg = 1; b = x; break;
        case 3: gg = x; b = 1; break;
        case 4: r = x; b = 1; break;
        default: r = 1; b = x; break;
    }
    out[0] = static_cast<std::uint8_t>(std::lround(255 * r));
    out[1] = static_cast<std::uint8_t>(std::lround(255 * gg));
    out[2] = static_cast<std::uint8_t>(std::lround(255 * b));
}

}  // namespace

std::vector<std::uint8_t> to_ppm(const PlaneGrid& g) {
    std::string header = "P6\n" + std::to_string(g.nx) + " " + std::to_string(g.ny) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    std::size_t offset = out.size();
    out.resize(offset + 3 * g.cells.size());
    double scale = std::log2(static_cast<double>(g.max_iter) + 1.0);
    for (std::size_t i = 0; i < g.cells.size(); ++i) {
        std::uint8_t* px = out.data() + offset + 3 * i;
        const auto& c = g.cells[i];
        if (c.kind == PointKind::Escaped) {
            hsv_to_rgb(0.85 * std::log2(c.n + 1.0) / scale, px);
        } else if (c.kind == PointKind::Attracted) {
            double v = 1.0 - std::min(1.0, std::log2(c.n + 1.0) / scale);
            auto grey = static_cast<std::uint8_t>(std::lround(64 + 191 * v));
            px[0] = px[1] = px[2] = grey;
        } else {
            px[0] = px[1] = px[2] = 0;
        }
    }
    return out;
}

void write_ppm(const PlaneGrid& g, const std::string& path) {
    auto bytes = to_ppm(g);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw Error("failed writing " + path);
}

}  // namespace qrdyn
