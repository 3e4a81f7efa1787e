#include "barrierlab/barrier.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace barrierlab;
using geom::Polytope;

TEST_CASE("barrier value on reference bodies") {
    auto sq = geom::hypercube<double>(2);
    CHECK(barrier::barrier_value(sq, {0.0, 0.0}) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    auto seg = geom::hypercube<double>(1);
    CHECK(barrier::barrier_value(seg, {0.0}) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // polar of [-1,1] at 0.9 is [-1/1.9, 10]
    CHECK(barrier::barrier_value(seg, {0.9}) ==
          doctest::Approx(std::log(10.0 + 1.0 / 1.9)).epsilon(1e-12));

    CHECK_THROWS_AS(barrier::barrier_value(seg, {1.0}), NotInterior);
}

TEST_CASE("gradient and Hessian at the symmetry center") {
    auto sq = geom::hypercube<double>(2);
    auto ev = barrier::barrier_eval(sq, {0.0, 0.0});
    CHECK(ev.grad[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ev.grad[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ev.hess(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ev.hess(1, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ev.hess(0, 1) == doctest::Approx(0.0).epsilon(1e-12));

    auto seg = geom::hypercube<double>(1);
    auto evs = barrier::barrier_eval(seg, {0.0});
    CHECK(evs.grad[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(evs.hess(0, 0) == doctest::Approx(2.0).epsilon(1e-12));

    auto cross = geom::cross_polytope<double>(3);
    auto evc = barrier::barrier_eval(cross, {0.0, 0.0, 0.0});
    for (int i = 0; i < 3; ++i) CHECK(evc.grad[i] == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("gradient equals -(n+1) times the polar centroid") {
    Rng rng(kDefaultSeed);
    auto K = oracles::random_tangent_polytope(3, 9, rng);
    Vec<double> x{0.1, -0.15, 0.2};
    REQUIRE(geom::is_interior(K, x));
    auto ev = barrier::barrier_eval(K, x);
    auto polar = geom::polar_body(K, x);
    auto bm = moments::body_moments(polar);
    for (int i = 0; i < 3; ++i)
        CHECK(ev.grad[i] == doctest::Approx(-4.0 * bm.m1[i] / bm.vol).epsilon(1e-10));
}

TEST_CASE("directional derivatives on symmetric bodies") {
    auto sq = geom::hypercube<double>(2);
    auto dd = barrier::directional_derivatives(sq, {0.0, 0.0}, {1.0, 0.0});
    CHECK(dd.d1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dd.d2 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(dd.d3 == doctest::Approx(0.0).epsilon(1e-12));

    auto seg = geom::hypercube<double>(1);
    auto ds = barrier::directional_derivatives(seg, {0.0}, {1.0});
    CHECK(ds.d1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ds.d2 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ds.d3 == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Hessian quadratic form equals the directional second derivative") {
    Rng rng(kDefaultSeed);
    auto K = oracles::random_tangent_polytope(3, 8, rng);
    Vec<double> x{0.05, 0.1, -0.1};
    REQUIRE(geom::is_interior(K, x));
    auto ev = barrier::barrier_eval(K, x);
    auto polar = geom::polar_body(K, x);
    auto simplices = geom::triangulate(polar);
    for (int d = 0; d < 100; ++d) {
        auto h = rng.unit_vector(3);
        auto dd = barrier::derivatives_from_marginal(moments::marginal_moments(simplices, h), 3);
        double hHh = 0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) hHh += h[a] * ev.hess(a, b) * h[b];
        CHECK(dd.d2 == doctest::Approx(hHh).epsilon(1e-10));
        CHECK(dot(h, ev.grad) == doctest::Approx(dd.d1).epsilon(1e-9));
    }
}

TEST_CASE("directional derivatives match finite differences of the barrier value") {
    Rng rng(kDefaultSeed);
    for (int trial = 0; trial < 4; ++trial) {
        int n = 2 + (trial % 2);
        auto K = oracles::random_tangent_polytope(n, 3 * n + 2, rng);
        Vec<double> x(n);
        for (auto& c : x) c = rng.uniform(-0.25, 0.25);
        if (!geom::is_interior(K, x)) continue;
        auto h = rng.unit_vector(n);
        auto dd = barrier::directional_derivatives(K, x, h);
        auto fd = oracles::fd_directional(K, x, h);
        CHECK(dd.d1 == doctest::Approx(fd.d1).epsilon(1e-5));
        CHECK(dd.d2 == doctest::Approx(fd.d2).epsilon(1e-5));
        CHECK(dd.d3 == doctest::Approx(fd.d3).epsilon(1e-4));
    }
}

TEST_CASE("barrier grows monotonically toward the boundary and blows up") {
    auto sq = geom::hypercube<double>(2);
    double prev = -1e300;
    bool crossed = false;
    for (double s : {0.0, 0.3, 0.6, 0.9, 0.99, 0.9999, 1 - 1e-7}) {
        double phi = barrier::barrier_value(sq, {s, 0.0});
        if (s >= 0.3) CHECK(phi > prev);
        prev = phi;
        if (phi > 12.0) crossed = true;
    }
    CHECK(crossed);
}

TEST_CASE("certifier finds no violations on the square") {
    auto sq = geom::hypercube<double>(2);
    barrier::CertifyOptions copt;
    copt.n_points = 60;
    copt.n_dirs = 6;
    auto rep = barrier::certify_self_concordance(sq, copt);
    CHECK(rep.passed());
    CHECK(rep.samples == 360);
    CHECK(rep.max_r1 <= 1.0 + copt.slack);
    CHECK(rep.max_r3 <= 1.0 + copt.slack);

    // at the center both ratios vanish
    auto dd = barrier::directional_derivatives(sq, {0.0, 0.0}, {1.0, 0.0});
    auto [r1, r3] = barrier::concordance_ratios(dd);
    CHECK(r1 == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(r3 == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("certifier clears the 3-simplex") {
    auto K = geom::standard_simplex<double>(3);
    barrier::CertifyOptions copt;
    copt.n_points = 100;
    copt.n_dirs = 10;
    auto rep = barrier::certify_self_concordance(K, copt);
    CHECK(rep.passed());
    CHECK(rep.samples == 1000);
    CHECK(rep.max_r1 <= 1.0 + copt.slack);
}

TEST_CASE("parameter bound is approached at a simplex corner") {
    auto K = geom::standard_simplex<double>(2);
    const double eps = 1e-4;
    Vec<double> x{eps, eps};
    Vec<double> h{-1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)};
    auto dd = barrier::directional_derivatives(K, x, h);
    auto [r1, r3] = barrier::concordance_ratios(dd);
    CHECK(r1 >= 0.9);
    CHECK(r1 <= 1.0 + 1e-9);
    (void)r3;
}

TEST_CASE("certifier in exact mode with zero slack") {
    auto K = geom::hypercube<Rational>(2);
    barrier::CertifyOptions copt;
    copt.n_points = 8;
    copt.n_dirs = 3;
    copt.slack = 0.0;
    auto rep = barrier::certify_self_concordance(K, copt, geom::GeomOptions<Rational>{});
    CHECK(rep.passed());
}

TEST_CASE("certifier report does not depend on threading") {
    auto K = geom::standard_simplex<double>(2);
    barrier::CertifyOptions copt;
    copt.n_points = 24;
    copt.n_dirs = 4;
    auto par = barrier::certify_self_concordance(K, copt);
    copt.parallel = false;
    auto ser = barrier::certify_self_concordance(K, copt);
    CHECK(par.max_r1 == ser.max_r1);
    CHECK(par.max_r3 == ser.max_r3);
    CHECK(par.samples == ser.samples);
}

TEST_CASE("ratios are invariant under diagonal scaling") {
    Rng rng(kDefaultSeed);
    auto K = oracles::random_tangent_polytope(3, 8, rng);
    Vec<double> x{0.1, 0.05, -0.12};
    REQUIRE(geom::is_interior(K, x));
    Vec<double> diag{2.0, 0.5, 3.0};
    auto Ks = geom::scaled(K, diag);
    for (int t = 0; t < 10; ++t) {
        auto h = rng.unit_vector(3);
        Vec<double> xs(3), hs(3);
        for (int i = 0; i < 3; ++i) {
            xs[i] = diag[i] * x[i];
            hs[i] = h[i] / diag[i];
        }
        auto d0 = barrier::directional_derivatives(K, x, h);
        auto d1 = barrier::directional_derivatives(Ks, xs, hs);
        auto [r1a, r3a] = barrier::concordance_ratios(d0);
        auto [r1b, r3b] = barrier::concordance_ratios(d1);
        CHECK(r1a == doctest::Approx(r1b).epsilon(1e-9));
        CHECK(r3a == doctest::Approx(r3b).epsilon(1e-9));
    }
}

TEST_CASE("ell profile hits 2 sqrt(n+1) at -1/sqrt(n)") {
    auto p1 = barrier::ell_profile(1, 20001);
    CHECK(p1.c_n == doctest::Approx(0.0));
    CHECK(p1.stat_lo == doctest::Approx(-1.0));
    CHECK(p1.stat_hi == doctest::Approx(1.0));
    CHECK(p1.ell_stat_lo == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));

    auto p4 = barrier::ell_profile(4, 20001);
    CHECK(p4.ell_stat_lo == doctest::Approx(2.0 * std::sqrt(5.0)).epsilon(1e-13));

    for (int n : {1, 2, 7, 33}) {
        auto p = barrier::ell_profile(n, 50001);
        // sqrt(n) stationary point is a negative value, never the max
        CHECK(p.ell_stat_hi ==
              doctest::Approx(-2.0 * std::sqrt((n + 1.0) / n)).epsilon(1e-12));
        CHECK(p.ell_stat_hi < 0);
        CHECK(p.max_value == doctest::Approx(2.0 * std::sqrt(n + 1.0)).epsilon(1e-12));
        CHECK(p.grid_max <= p.max_value + 1e-9);
        // stationary points solve t^2 - 2 c_n t - 1 = 0
        CHECK(p.stat_lo * p.stat_lo - 2 * p.c_n * p.stat_lo - 1.0 ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
}
