#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qrdyn/core_map.hpp"
#include "qrdyn/error.hpp"

using namespace qrdyn;

TEST_CASE("make_params computes mu and normalizes theta") {
    auto p = make_params(2, 0);
    CHECK(std::abs(p.mu - cplx(1.0 / 3, 0)) < 1e-15);
    auto q = make_params(3, pi / 2);
    CHECK(std::abs(q.mu - cplx(-0.5, 0)) < 1e-15);
    CHECK(make_params(3, -pi / 2).theta == doctest::Approx(pi / 2));
    CHECK(make_params(3, 0.3 + 5 * pi).theta == doctest::Approx(0.3));
    CHECK(make_params(3, 2.0).theta == doctest::Approx(2.0 - pi));
    CHECK_THROWS_AS(make_params(1, 0.3), InvalidParameter);
    CHECK_THROWS_AS(make_params(0.5, 0), InvalidParameter);
    CHECK_THROWS_AS(make_params(std::nan(""), 0), InvalidParameter);
}

TEST_CASE("params_of_mu inverts mu_of_params") {
    auto p = params_of_mu(cplx(1.0 / 3, 0));
    CHECK(p.K == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(p.theta == doctest::Approx(0.0));
    auto q = params_of_mu(cplx(-0.5, 0));
    CHECK(q.K == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(q.theta == doctest::Approx(pi / 2));
    CHECK_THROWS_AS(params_of_mu(0.0), InvalidParameter);
    CHECK_THROWS_AS(params_of_mu(cplx(0.6, 0.8)), InvalidParameter);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uk(1.001, 50), ut(-pi / 2 + 1e-6, pi / 2);
    for (int i = 0; i < 1000; ++i) {
        auto a = make_params(uk(rng), ut(rng));
        auto b = params_of_mu(mu_of_params(a));
        CHECK(std::abs(b.K - a.K) < 1e-12 * a.K);
        CHECK(std::abs(b.theta - a.theta) < 1e-12);
    }
}

TEST_CASE("eval_h examples") {
    auto p = make_params(2, 0);
    CHECK(std::abs(eval_h(p, 1.0) - cplx(2, 0)) < 1e-15);
    CHECK(std::abs(eval_h(p, cplx(0, 1)) - cplx(0, 1)) < 1e-15);
    CHECK(std::abs(eval_h(make_params(3, 0), cplx(1, 1)) - cplx(3, 1)) < 1e-15);
}

TEST_CASE("eval_H polar examples") {
    auto p = make_params(2, 0);
    auto out = eval_H_polar(p, 0.3, 0.0);
    CHECK(out.r == doctest::Approx(4 * 0.09));
    CHECK(out.phi == doctest::Approx(0.0));
    auto fixed = eval_H_polar(p, 0.25, 0.0);
    CHECK(fixed.r == doctest::Approx(0.25));
    CHECK(fixed.phi == doctest::Approx(0.0));
    for (double theta : {-1.2, -0.4, 0.0, 0.7, 1.5}) {
        auto q = make_params(3.5, theta);
        CHECK(circle_dist(eval_H_polar(q, 1.0, theta).phi, 2 * theta) < 1e-14);
    }
}

TEST_CASE("polar and cartesian agree on random samples") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uk(1.0001, 20), ut(-pi / 2, pi / 2), ua(-pi, pi),
        ur(-3, 3);
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
        auto p = make_params(uk(rng), ut(rng));
        double r = std::pow(10.0, ur(rng)), phi = ua(rng);
        cplx z = std::polar(r, phi);
        cplx cart = eval_h(p, z);
        cart *= cart;
        auto pol = eval_H_polar(p, r, phi);
        worst = std::max(worst, std::abs(cart - from_polar(pol)) / (r * r));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("polar form is continuous across phi - theta = +-pi/2") {
    auto p = make_params(5, 0.4);
    for (double s : {1.0, -1.0}) {
        double c = p.theta + s * pi / 2;
        double a = eval_H_polar(p, 1, c - 1e-9).phi, b = eval_H_polar(p, 1, c + 1e-9).phi;
        CHECK(circle_dist(a, b) < 1e-7);
    }
}

TEST_CASE("conjugation symmetry, modulus bounds and pi-shift") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uk(1.0001, 20), ut(-pi / 2, pi / 2), ua(-pi, pi),
        ur(0.01, 10);
    for (int i = 0; i < 2000; ++i) {
        double K = uk(rng), theta = ut(rng);
        auto p = make_params(K, theta), q = make_params(K, -theta);
        cplx z = std::polar(ur(rng), ua(rng));
        cplx a = eval_H(q, z), b = std::conj(eval_H(p, std::conj(z)));
        CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
        double m = std::abs(eval_H(p, z)), r2 = std::norm(z);
        CHECK(m >= r2 * (1 - 1e-12));
        CHECK(m <= K * K * r2 * (1 + 1e-12));
        double phi = std::arg(z);
        double a1 = eval_H_polar(p, 1, phi).phi, a2 = eval_H_polar(p, 1, phi + pi).phi;
        CHECK(circle_dist(a1, a2) < 1e-12);
    }
}

TEST_CASE("cartesian H matches a direct expansion") {
    auto p = make_params(2.7, 0.9);
    cplx z(0.3, -1.1);
    CHECK(std::abs(eval_H(p, z) - oracle::H(2.7, 0.9, z)) < 1e-14);
}

TEST_CASE("polar round trip across magnitudes") {
    for (double r : {1e-12, 1e-6, 1.0, 1e6, 1e12})
        for (double phi : {-3.0, -1.0, 0.0, 0.5, 3.1}) {
            auto back = to_polar(from_polar({r, phi}));
            CHECK(std::abs(back.r - r) <= 1e-12 * r);
            CHECK(std::abs(back.phi - phi) < 1e-12);
        }
}

TEST_CASE("angle normalization") {
    CHECK(normalize_angle(pi) == doctest::Approx(pi));
    CHECK(normalize_angle(-pi) == doctest::Approx(pi));
    CHECK(normalize_angle(3 * pi / 2) == doctest::Approx(-pi / 2));
    CHECK(normalize_angle(normalize_angle(5.0)) == normalize_angle(5.0));
    CHECK(circle_dist(3.1, -3.1) == doctest::Approx(2 * pi - 6.2));
}
