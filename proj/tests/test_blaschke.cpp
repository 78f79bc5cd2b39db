#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "qrdyn/blaschke.hpp"
#include "qrdyn/circle_dynamics.hpp"
#include "qrdyn/error.hpp"

using namespace qrdyn;

TEST_CASE("Blaschke product agrees with the circle map") {
    auto near_one = blaschke_of_params(make_params(1 + 1e-12, 0.4));
    cplx z = std::polar(1.0, 0.7);
    CHECK(std::abs(blaschke_apply(near_one, z) - z * z) < 1e-11);

    auto B = blaschke_of_params(make_params(2, 0));
    CHECK(std::arg(blaschke_apply(B, std::polar(1.0, pi / 4))) == doctest::Approx(0.9272952180016122));

    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> uk(1.0001, 20), ut(-pi / 2, pi / 2), ua(-pi, pi);
    double worst = 0, worst_mod = 0;
    for (int i = 0; i < 10000; ++i) {
        auto p = make_params(uk(rng), ut(rng));
        double phi = ua(rng);
        cplx b = blaschke_apply(blaschke_of_params(p), std::polar(1.0, phi));
        worst = std::max(worst, std::abs(b - std::polar(1.0, circle_map(p, phi))));
        worst_mod = std::max(worst_mod, std::abs(std::abs(b) - 1));
    }
    CHECK(worst < 1e-12);
    CHECK(worst_mod < 1e-12);
    CHECK_THROWS_AS(blaschke_apply(B, 1.1), InvalidParameter);
}

TEST_CASE("zeros") {
    for (double K : {1.5, 4.0, 12.0})
        for (double theta : {-0.8, 0.0, 0.5, pi / 2}) {
            auto B = blaschke_of_params(make_params(K, theta));
            CHECK(std::norm(B.zero) == doctest::Approx((K - 1) / (K + 1)));
            CHECK(std::abs(blaschke_apply(B, B.zero)) < 1e-14);
            CHECK(std::abs(blaschke_apply(B, -B.zero)) < 1e-14);
        }
}

TEST_CASE("two preimages on the circle") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> uk(1.0001, 20), ut(-pi / 2, pi / 2), ua(-pi, pi);
    for (int i = 0; i < 500; ++i) {
        auto p = make_params(uk(rng), ut(rng));
        auto B = blaschke_of_params(p);
        double psi = ua(rng);
        auto [x, y] = circle_preimages(p, psi);
        CHECK(std::abs(blaschke_apply(B, std::polar(1.0, x)) - std::polar(1.0, psi)) < 1e-12);
        CHECK(std::abs(blaschke_apply(B, std::polar(1.0, y)) - std::polar(1.0, psi)) < 1e-12);
        // Count sign changes of the displacement to psi on a fine grid: exactly two.
        int crossings = 0;
        const int N = 4000;
        auto g = [&](double t) { return normalize_angle(circle_map(p, t) - psi); };
        for (int k = 0; k < N; ++k) {
            double a = -pi + k * two_pi / N, b = a + two_pi / N;
            double ga = g(a), gb = g(b);
            if (std::abs(ga) < 1 && std::abs(gb) < 1 && (ga < 0) != (gb < 0)) ++crossings;
        }
        CHECK(crossings == 2);
    }
}

TEST_CASE("Julia classification") {
    CHECK(julia_classification(make_params(1.5, 0)).kind == JuliaKind::FullCircle);
    CHECK(julia_classification(make_params(2, 0)).kind == JuliaKind::FullCircle);
    CHECK(julia_classification(make_params(4, 0)).kind == JuliaKind::CantorOnCircle);
    CHECK(julia_classification(make_params(k_theta(pi / 6), pi / 6)).kind ==
          JuliaKind::CantorOnCircle);
}

TEST_CASE("Julia samples") {
    auto p = make_params(4, 0);
    auto s = julia_sample(p, 5000, 1);
    CHECK(s.size() == 5000);
    CHECK(s == julia_sample(p, 5000, 1));
    CHECK(s != julia_sample(p, 5000, 2));
    auto basin = immediate_basin(p);
    for (double x : s) CHECK_FALSE(basin.contains(x, 1e-6));

    auto q = make_params(1.5, 0);
    auto gap_of = [&](std::size_t n) {
        auto v = julia_sample(q, n, 3);
        std::sort(v.begin(), v.end());
        return max_circular_gap(v);
    };
    double g1 = gap_of(100), g2 = gap_of(10000), g3 = gap_of(100000);
    CHECK(g2 < g1);
    CHECK(g3 < g2);
    CHECK_THROWS_AS(julia_sample(p, 0, 1), InvalidParameter);
}

TEST_CASE("immediate basin") {
    auto b = immediate_basin(make_params(4, 0));
    CHECK(b.lo == doctest::Approx(-1.2309594173407747));
    CHECK(b.hi == doctest::Approx(1.2309594173407747));
    CHECK(b.contains(0.0));
    CHECK(b.contains(1.2));
    CHECK_FALSE(b.contains(1.3));
    CHECK_FALSE(b.contains(3.0));

    auto p = make_params(k_theta(pi / 6), pi / 6);
    auto two = immediate_basin(p);
    auto rays = fixed_rays(p);
    CHECK(two.lo < 0);
    CHECK(two.hi > 0);
    CHECK(two.hi_closed);
    CHECK_FALSE(two.lo_closed);
    for (auto& r : rays.rays) {
        if (r.stability == Stability::Neutral) CHECK(two.hi == r.angle);
        else CHECK(two.lo == r.angle);
    }
    // Points inside drift up toward the neutral ray.
    double x = 0.5 * (two.lo + two.hi);
    for (int i = 0; i < 200; ++i) {
        double next = circle_map(p, x);
        CHECK(next > x);
        CHECK(two.contains(next));
        x = next;
    }

    auto mirrored = immediate_basin(make_params(k_theta(pi / 6), -pi / 6));
    CHECK(mirrored.lo == doctest::Approx(-two.hi));
    CHECK(mirrored.hi == doctest::Approx(-two.lo));

    CHECK_THROWS_AS(immediate_basin(make_params(1.5, 0)), NoBasin);
    CHECK_THROWS_AS(immediate_basin(make_params(2, 0)), NoBasin);
}
