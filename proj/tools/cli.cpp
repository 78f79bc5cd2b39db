#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qrdyn/blaschke.hpp"
#include "qrdyn/circle_dynamics.hpp"
#include "qrdyn/disk_mobius.hpp"
#include "qrdyn/error.hpp"
#include "qrdyn/fixed_rays.hpp"
#include "qrdyn/plane_partition.hpp"
#include "qrdyn/qc_obstruction.hpp"

namespace qrdyn::cli {

namespace {

using json = nlohmann::json;
constexpr double unset = std::numeric_limits<double>::quiet_NaN();

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Flags selecting a parameter pair: --K/--theta or --mu re,im.
struct ParamFlags {
    double K = unset;
    double theta = unset;
    std::vector<double> mu;

    void attach(CLI::App* app, const std::string& suffix = "") {
        auto* k = app->add_option("--K" + suffix, K, "stretch factor K > 1");
        auto* t = app->add_option("--theta" + suffix, theta, "stretch direction");
        auto* m = app->add_option("--mu" + suffix, mu, "complex dilatation as re,im")
                      ->delimiter(',')
                      ->expected(2);
        m->excludes(k)->excludes(t);
    }

    MapParams resolve(bool degrees, const std::string& suffix = "") const {
        if (mu.size() == 2) return params_of_mu(cplx(mu[0], mu[1]));
        if (std::isnan(K) || std::isnan(theta))
            throw CLI::ValidationError("--K" + suffix + " and --theta" + suffix +
                                       " (or --mu" + suffix + ") are required");
        return make_params(K, degrees ? theta * pi / 180 : theta);
    }
};

json params_json(const MapParams& p) {
    return {{"K", p.K}, {"theta", p.theta}, {"mu", {p.mu.real(), p.mu.imag()}}};
}

struct Common {
    std::string out;
    std::string format;
    bool degrees = false;
};

void add_common(CLI::App* app, Common& c, const std::string& default_format,
                std::vector<std::string> formats) {
    c.format = default_format;
    app->add_option("--out", c.out, "output file (default: standard output)");
    app->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    app->add_flag("--degrees", c.degrees, "angles are given in degrees");
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw Error("cannot open " + c.out + " for writing");
    f << text;
    if (!f) throw Error("failed writing " + c.out);
}

json config_json(const std::string& sub, const Common& c, const MapParams* p, json extra) {
    json cfg = {{"subcommand", sub}, {"format", c.format}, {"degrees", c.degrees}};
    cfg["out"] = c.out;
    if (p) cfg["params"] = params_json(*p);
    for (auto& [k, v] : extra.items()) cfg[k] = v;
    return cfg;
}

json ray_json(const FixedRay& r) {
    return {{"angle", r.angle},           {"multiplier", r.multiplier},
            {"stability", to_string(r.stability)}, {"trace_sq", r.trace_sq},
            {"contraction_k", r.contraction_k},    {"multiplicity", r.multiplicity}};
}

double to_rad(double x, bool degrees) { return degrees ? x * pi / 180 : x; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dynamics of quasiregular maps H = h_{K,theta}^2", "qrdyn"};
    app.require_subcommand(1);
    std::function<void()> action;

    // fixed-rays
    Common fr_c;
    ParamFlags fr_p;
    auto* fr = app.add_subcommand("fixed-rays", "fixed rays, stability, regime and K_theta");
    fr_p.attach(fr);
    add_common(fr, fr_c, "json", {"json", "csv"});
    fr->callback([&] {
        action = [&] {
            auto p = fr_p.resolve(fr_c.degrees);
            auto rep = fixed_rays(p);
            if (fr_c.format == "csv") {
                std::string s = "angle,multiplier,stability,trace_sq,contraction_k,multiplicity\n";
                for (auto& r : rep.rays)
                    s += num(r.angle) + "," + num(r.multiplier) + "," + to_string(r.stability) + "," +
                         num(r.trace_sq) + "," + num(r.contraction_k) + "," +
                         std::to_string(r.multiplicity) + "\n";
                emit(fr_c, out, s);
                return;
            }
            json j;
            j["config"] = config_json("fixed-rays", fr_c, &p, json::object());
            j["regime"] = to_string(rep.regime);
            j["k_theta"] = rep.k_theta ? json(*rep.k_theta) : json(nullptr);
            j["rays"] = json::array();
            for (auto& r : rep.rays) j["rays"].push_back(ray_json(r));
            auto J = interval_J(p);
            j["interval_J"] = J ? json{J->first, J->second} : json(nullptr);
            emit(fr_c, out, j.dump(2) + "\n");
        };
    });

    // ktheta
    Common kt_c;
    double kt_theta = unset, kt_K = unset;
    auto* kt = app.add_subcommand("ktheta", "critical stretch K_theta, or theta for a given K");
    auto* kt_theta_opt = kt->add_option("--theta", kt_theta, "direction theta");
    kt->add_option("--K", kt_K, "stretch K >= 2 (computes theta instead)")->excludes(kt_theta_opt);
    add_common(kt, kt_c, "csv", {"csv", "json"});
    kt->callback([&] {
        action = [&] {
            double theta, K;
            if (!std::isnan(kt_K)) {
                K = kt_K;
                theta = theta_of_K(K);
            } else if (!std::isnan(kt_theta)) {
                theta = to_rad(kt_theta, kt_c.degrees);
                K = k_theta(theta);
            } else {
                throw CLI::ValidationError("ktheta needs --theta or --K");
            }
            if (kt_c.format == "csv") {
                emit(kt_c, out, "theta,k_theta\n" + num(theta) + "," + num(K) + "\n");
                return;
            }
            json j;
            j["config"] = config_json("ktheta", kt_c, nullptr,
                                      {{"theta", std::isnan(kt_theta) ? json(nullptr) : json(kt_theta)},
                                       {"K", std::isnan(kt_K) ? json(nullptr) : json(kt_K)}});
            j["theta"] = theta;
            j["k_theta"] = K;
            emit(kt_c, out, j.dump(2) + "\n");
        };
    });

    // orbit
    Common or_c;
    ParamFlags or_p;
    double or_phi = 0;
    std::size_t or_n = 100;
    auto* orb = app.add_subcommand("orbit", "forward orbit of an angle under the circle map");
    or_p.attach(orb);
    orb->add_option("--phi", or_phi, "starting angle")->required();
    orb->add_option("--n", or_n, "number of iterates")->capture_default_str();
    add_common(orb, or_c, "csv", {"csv", "json"});
    orb->callback([&] {
        action = [&] {
            auto p = or_p.resolve(or_c.degrees);
            auto o = orbit(p, to_rad(or_phi, or_c.degrees), or_n);
            if (or_c.format == "csv") {
                std::string s = "n,angle\n";
                for (std::size_t i = 0; i < o.size(); ++i) s += std::to_string(i) + "," + num(o[i]) + "\n";
                emit(or_c, out, s);
                return;
            }
            json j;
            j["config"] = config_json("orbit", or_c, &p, {{"phi", or_phi}, {"n", or_n}});
            j["angles"] = o;
            emit(or_c, out, j.dump(2) + "\n");
        };
    });

    // growth
    Common gr_c;
    ParamFlags gr_p;
    double gr_phi = unset;
    std::vector<double> gr_z;
    int gr_lo = 10, gr_hi = 60, gr_burn = default_burn_in;
    auto* gr = app.add_subcommand("growth", "hyperbolic growth of the dilatation of H^n");
    gr_p.attach(gr);
    auto* gr_phi_opt = gr->add_option("--phi", gr_phi, "fixed angle (on-ray growth)");
    gr->add_option("--z", gr_z, "start point re,im (orbit chain)")
        ->delimiter(',')
        ->expected(2)
        ->excludes(gr_phi_opt);
    gr->add_option("--n-lo", gr_lo, "first iterate of the fit window")->capture_default_str();
    gr->add_option("--n-hi", gr_hi, "last iterate of the fit window")->capture_default_str();
    gr->add_option("--burn-in", gr_burn, "iterates always excluded from the fit")->capture_default_str();
    add_common(gr, gr_c, "csv", {"csv", "json"});
    gr->callback([&] {
        action = [&] {
            auto p = gr_p.resolve(gr_c.degrees);
            std::vector<double> d;
            std::optional<double> expected;
            json start;
            if (gr_z.size() == 2) {
                d = chain_distances(p, cplx(gr_z[0], gr_z[1]), gr_hi);
                start = {{"z", gr_z}};
            } else if (!std::isnan(gr_phi)) {
                double phi = to_rad(gr_phi, gr_c.degrees);
                d = ray_distances(p, phi, gr_hi);
                expected = std::log(1 / contraction_k(trace_sq(fixed_ray_mobius(p, phi))));
                start = {{"phi", gr_phi}};
            } else {
                throw CLI::ValidationError("growth needs --phi or --z");
            }
            if (gr_c.format == "csv") {
                std::string s = "n,d_h\n";
                for (std::size_t i = 0; i < d.size(); ++i) s += std::to_string(i + 1) + "," + num(d[i]) + "\n";
                emit(gr_c, out, s);
                return;
            }
            int lo = std::max(gr_lo, gr_burn + 1);
            auto fit = fit_distances(d, lo, gr_hi);
            start.update({{"n_lo", gr_lo}, {"n_hi", gr_hi}, {"burn_in", gr_burn}});
            json j;
            j["config"] = config_json("growth", gr_c, &p, start);
            j["fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept},
                        {"residual", fit.residual}, {"n_lo", fit.n_lo}, {"n_hi", fit.n_hi}};
            j["expected_slope"] = expected ? json(*expected) : json(nullptr);
            j["distances"] = d;
            emit(gr_c, out, j.dump(2) + "\n");
        };
    });

    // julia
    Common ju_c;
    ParamFlags ju_p;
    std::size_t ju_count = 1000;
    std::uint64_t ju_seed = 1;
    auto* ju = app.add_subcommand("julia", "inverse-iteration sample of the Julia set on the circle");
    ju_p.attach(ju);
    ju->add_option("--count", ju_count, "number of sample angles")->capture_default_str();
    ju->add_option("--seed", ju_seed, "random seed for branch choices")->capture_default_str();
    add_common(ju, ju_c, "csv", {"csv", "json"});
    ju->callback([&] {
        action = [&] {
            auto p = ju_p.resolve(ju_c.degrees);
            auto s = julia_sample(p, ju_count, ju_seed);
            if (ju_c.format == "csv") {
                std::string t = "index,angle\n";
                for (std::size_t i = 0; i < s.size(); ++i) t += std::to_string(i) + "," + num(s[i]) + "\n";
                emit(ju_c, out, t);
                return;
            }
            auto cls = julia_classification(p);
            json j;
            j["config"] = config_json("julia", ju_c, &p, {{"count", ju_count}, {"seed", ju_seed}});
            j["kind"] = to_string(cls.kind);
            j["regime"] = to_string(cls.regime);
            j["angles"] = s;
            emit(ju_c, out, j.dump(2) + "\n");
        };
    });

    // basin
    Common ba_c;
    ParamFlags ba_p;
    std::size_t ba_samples = 0, ba_max_iter = ClassifyOptions{}.max_iter;
    std::uint64_t ba_seed = 1;
    double ba_tol = ClassifyOptions{}.tol, ba_ntol = ClassifyOptions{}.neutral_tol;
    auto* ba = app.add_subcommand("basin", "immediate basin and limit statistics of random angles");
    ba_p.attach(ba);
    ba->add_option("--samples", ba_samples, "uniform random angles to classify")->capture_default_str();
    ba->add_option("--seed", ba_seed, "random seed")->capture_default_str();
    ba->add_option("--max-iter", ba_max_iter, "iteration budget per angle")->capture_default_str();
    ba->add_option("--tol", ba_tol, "convergence tolerance for attracting rays")->capture_default_str();
    ba->add_option("--neutral-tol", ba_ntol, "convergence tolerance for neutral rays")
        ->capture_default_str();
    add_common(ba, ba_c, "json", {"json"});
    ba->callback([&] {
        action = [&] {
            auto p = ba_p.resolve(ba_c.degrees);
            auto rep = fixed_rays(p);
            json j;
            j["config"] = config_json("basin", ba_c, &p,
                                      {{"samples", ba_samples}, {"seed", ba_seed},
                                       {"max_iter", ba_max_iter}, {"tol", ba_tol},
                                       {"neutral_tol", ba_ntol}});
            j["regime"] = to_string(rep.regime);
            try {
                auto b = immediate_basin(p);
                j["basin"] = {{"lo", b.lo}, {"hi", b.hi}, {"lo_closed", b.lo_closed},
                              {"hi_closed", b.hi_closed}, {"length", b.length()}};
            } catch (const NoBasin&) {
                if (ba_samples == 0) throw;
                j["basin"] = nullptr;
            }
            if (ba_samples > 0) {
                ClassifyOptions opt{ba_max_iter, ba_tol, ba_ntol, ClassifyOptions{}.confirm};
                std::mt19937_64 rng(ba_seed);
                std::uniform_real_distribution<double> u(-pi, pi);
                std::size_t conv = 0, landed = 0, undecided = 0;
                for (std::size_t i = 0; i < ba_samples; ++i) {
                    auto r = classify_limit(p, rep, u(rng), opt);
                    (r.outcome == LimitOutcome::ConvergedTo       ? conv
                     : r.outcome == LimitOutcome::LandedOnRepeller ? landed
                                                                   : undecided)++;
                }
                double n = static_cast<double>(ba_samples);
                j["fractions"] = {{"converged", conv / n}, {"landed_on_repeller", landed / n},
                                  {"undecided", undecided / n}};
            }
            emit(ba_c, out, j.dump(2) + "\n");
        };
    });

    // render
    Common re_c;
    ParamFlags re_p;
    std::vector<double> re_window{-2, 2, -2, 2};
    std::string re_res = "512";
    std::size_t re_iter = 100;
    auto* re = app.add_subcommand("render", "classify a grid of the plane and write a PPM image");
    re_p.attach(re);
    re->add_option("--window", re_window, "x_min,x_max,y_min,y_max")
        ->delimiter(',')
        ->expected(4)
        ->capture_default_str();
    re->add_option("--res", re_res, "N or WxH pixels")->capture_default_str();
    re->add_option("--max-iter", re_iter, "iteration budget per pixel")->capture_default_str();
    add_common(re, re_c, "ppm", {"ppm"});
    re->callback([&] {
        action = [&] {
            if (re_c.out.empty()) throw CLI::ValidationError("render needs --out");
            auto p = re_p.resolve(re_c.degrees);
            std::size_t nx = 0, ny = 0;
            auto x = re_res.find('x');
            try {
                nx = std::stoul(re_res.substr(0, x));
                ny = x == std::string::npos ? nx : std::stoul(re_res.substr(x + 1));
            } catch (const std::exception&) {
                throw CLI::ValidationError("--res must be N or WxH");
            }
            auto w = Window::from_bounds(re_window[0], re_window[1], re_window[2], re_window[3]);
            auto g = render_grid(p, w, nx, ny, re_iter);
            write_ppm(g, re_c.out);
            auto s = g.stats();
            json j;
            j["config"] = config_json("render", re_c, &p,
                                      {{"window", re_window}, {"nx", nx}, {"ny", ny},
                                       {"max_iter", re_iter}});
            j["stats"] = {{"escaped", s.escaped}, {"attracted", s.attracted}, {"undecided", s.undecided}};
            j["thresholds"] = {{"escape_radius", escape_radius}, {"attract_radius", attract_radius(p)}};
            auto stats_path = std::filesystem::path(re_c.out).replace_extension(".json").string();
            Common stats_out{stats_path, "json", re_c.degrees};
            emit(stats_out, out, j.dump(2) + "\n");
        };
    });

    // obstruct
    Common ob_c;
    ParamFlags ob_p1, ob_p2;
    double ob_tol = 1e-8;
    auto* ob = app.add_subcommand("obstruct", "obstructions to quasiconformal equivalence near infinity");
    ob_p1.attach(ob, "1");
    ob_p2.attach(ob, "2");
    ob->add_option("--tol", ob_tol, "relative tolerance for trace comparison")->capture_default_str();
    add_common(ob, ob_c, "json", {"json"});
    ob->callback([&] {
        action = [&] {
            auto p1 = ob_p1.resolve(ob_c.degrees, "1");
            auto p2 = ob_p2.resolve(ob_c.degrees, "2");
            auto v = obstruction_report(p1, p2, ob_tol);
            auto summary = [](const MapSummary& s) {
                json rays = json::array();
                for (auto& r : s.rays)
                    rays.push_back({{"label", r.label}, {"angle", r.angle}, {"trace_sq", r.trace_sq},
                                    {"stability", to_string(r.stability)}});
                return json{{"params", params_json(s.params)},
                            {"regime", to_string(s.regime)},
                            {"k_theta", s.k_theta ? json(*s.k_theta) : json(nullptr)},
                            {"near_bifurcation", s.near_bifurcation},
                            {"rays", rays}};
            };
            json j;
            j["config"] = config_json("obstruct", ob_c, nullptr,
                                      {{"params1", params_json(p1)}, {"params2", params_json(p2)},
                                       {"tol", ob_tol}});
            j["verdict"] = to_string(v.verdict);
            j["reason"] = v.reasons.empty() ? json(nullptr) : json(to_string(v.reasons.front()));
            j["reasons"] = json::array();
            for (auto r : v.reasons) j["reasons"].push_back(to_string(r));
            j["mismatched_labels"] = v.mismatched_labels;
            j["first"] = summary(v.first);
            j["second"] = summary(v.second);
            j["diagnostics"] = v.diagnostics;
            emit(ob_c, out, j.dump(2) + "\n");
        };
    });

    try {
        app.parse(argc, argv);
        action();
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    } catch (const InvalidParameter& e) {
        err << "invalid parameter: " << e.what() << "\n";
        return exit_invalid;
    } catch (const NoBasin& e) {
        err << "no basin: " << e.what() << "\n";
        return exit_invalid;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const ResourceLimit& e) {
        err << "resource limit: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_ok;
}

}  // namespace qrdyn::cli
