#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sphgap/rng.hpp"
#include "sphgap/specfn.hpp"
#include "support/oracles.hpp"

#include <cmath>

using namespace sphgap::specfn;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("log_gamma against the half-integer recurrence ladder") {
    for (double x = 0.5; x <= 40.0; x += 0.5) {
        const double expected = oracles::log_gamma_ladder(x);
        const double got = log_gamma(x);
        CHECK(std::abs(got - expected) <= 1e-13 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("log_gamma against Stirling for large arguments") {
    for (const double x : {1e3, 1e4, 1e5, 1e6, 1e7}) {
        const double expected = oracles::log_gamma_stirling(x);
        CHECK(std::abs(log_gamma(x) - expected) <= 1e-13 * std::abs(expected));
    }
}

TEST_CASE("log_gamma against the platform lgamma") {
    sphgap::Xoshiro256 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const double x = std::exp(rng.uniform(std::log(0.5), std::log(1e7)));
        const double expected = std::lgamma(x);
        CHECK(std::abs(log_gamma(x) - expected) <=
              5e-13 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("log_gamma pinned values") {
    CHECK(std::abs(log_gamma(1.0)) <= 1e-15);
    CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-14));
    // Gamma(2.5) = 1.5 * 0.5 * sqrt(pi)
    CHECK(log_gamma(2.5) == doctest::Approx(0.2846828704729192).epsilon(1e-13));
}

TEST_CASE("log_gamma domain errors") {
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-3.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(std::nan("")), std::domain_error);
}

TEST_CASE("sphere and ball volumes") {
    CHECK(sphere_volume(1) == doctest::Approx(2.0 * kPi).epsilon(1e-13));
    CHECK(sphere_volume(2) == doctest::Approx(4.0 * kPi).epsilon(1e-13));
    CHECK(sphere_volume(3) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-13));
    CHECK(ball_volume(1) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(ball_volume(2) == doctest::Approx(kPi).epsilon(1e-13));
    CHECK(ball_volume(5) == doctest::Approx(sphere_volume(4) / 5.0).epsilon(1e-13));
    CHECK_THROWS_AS(sphere_volume(-1), std::domain_error);
    CHECK_THROWS_AS(ball_volume(0), std::domain_error);

    for (int n = 1; n <= 200; ++n) {
        const double lhs = sphere_volume(n - 1);
        const double rhs = n * ball_volume(n);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
    }
}

TEST_CASE("gap constant p(n)") {
    CHECK(gap_p(2) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
    for (int n = 2; n <= 200; ++n) {
        CHECK(gap_p(n) < 1.0);
        CHECK(gap_p(n) > 0.0);
        CHECK(std::abs(gap_p(n) - gap_p_volume_form(n)) <= 1e-10 * gap_p(n));
    }
    // Stirling limit: 1 + p -> 1 + sqrt(2/pi)
    CHECK(std::abs(1.0 + gap_p(1000000) - 1.7978845608028654) < 1e-3);
}

TEST_CASE("clifford torus volumes") {
    CHECK(clifford_volume(1, 2) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-12));
    CHECK(clifford_volume(1, 3) ==
          doctest::Approx(16.0 * kPi * kPi / (3.0 * std::sqrt(3.0))).epsilon(1e-12));
    // the formula is symmetric under k <-> n-k
    for (int n = 2; n <= 40; ++n)
        for (int k = 1; k <= n - 1; ++k)
            CHECK(clifford_volume(k, n) ==
                  doctest::Approx(clifford_volume(n - k, n)).epsilon(1e-12));
    CHECK_THROWS_AS(clifford_volume(0, 4), std::domain_error);
    CHECK_THROWS_AS(clifford_volume(4, 4), std::domain_error);
}

TEST_CASE("clifford maxima and corollary dominance sweeps") {
    for (int n = 2; n <= 100; ++n) {
        const double log_max = log_clifford_volume(1, n);
        const double log_bound = std::log1p(gap_p(n)) + log_sphere_volume(n);
        for (int k = 1; k <= n - 1; ++k) {
            CHECK(log_clifford_volume(k, n) <= log_max + 1e-12);
            CHECK(log_clifford_volume(k, n) < log_bound);
        }
        // chained lower bound from the ratio computation
        const double ratio = std::exp(log_bound - log_max);
        const double lb = (2.0 / kPi) * std::sqrt((n + 1.0) / n) *
                          std::pow(n / (n - 1.0), 0.5 * (n - 1.0));
        CHECK(lb > 1.0);
        CHECK(ratio >= lb - 1e-12);
    }
}

TEST_CASE("main-theorem bound") {
    CHECK(main_bound(2, 1) ==
          doctest::Approx(2.0 * kPi + std::sqrt(3.0) * kPi).epsilon(1e-12));
    CHECK(main_bound(1, 2) ==
          doctest::Approx(2.0 * (kPi + 2.0 * std::sqrt(2.0))).epsilon(1e-12));
    CHECK(main_bound(2, 2) == doctest::Approx(2.0 * main_bound(2, 1)).epsilon(1e-13));
    CHECK(antipodal_bound(2, 1) == doctest::Approx(4.0 * kPi).epsilon(1e-13));
    for (int n = 1; n <= 200; ++n) {
        CHECK(main_bound(n, 1) < sphere_volume(n));
        // m = 2 bound coincides with the non-embedded corollary constant
        CHECK(std::abs(main_bound(n, 2) - (1.0 + gap_p(n)) * sphere_volume(n)) <=
              1e-12 * main_bound(n, 2));
    }
    CHECK_THROWS_AS(main_bound(0, 1), std::domain_error);
    CHECK_THROWS_AS(main_bound(2, 0), std::domain_error);
}

TEST_CASE("hypersurface gap factors") {
    CHECK(hyp_gap_ie(2) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(hyp_gap_antipodal(2) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(hyp_gap_rigidity(3, 0.0) == doctest::Approx(1.12).epsilon(1e-15));
    CHECK(hyp_gap_pinched(2, 0.5) == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(hyp_gap_s_ratio(2, 2.0, 2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));

    // at the largest admissible delta the rigidity factor collapses to 1
    for (int n = 2; n <= 100; ++n) {
        const double v = hyp_gap_rigidity(n, 3.0 * n / 8.0);
        CHECK(std::abs(v - 1.0) <= 1e-12);
        CHECK(hyp_gap_rigidity(n, 0.0) > 1.0);
    }

    CHECK_THROWS_AS(hyp_gap_pinched(2, -0.1), std::domain_error);
    CHECK_THROWS_AS(hyp_gap_rigidity(2, 0.76), std::domain_error);
    CHECK_THROWS_AS(hyp_gap_s_ratio(2, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(hyp_gap_s_ratio(2, 2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(hyp_gap_ie(1), std::domain_error);

    const sphgap::specfn::HypGapParams params{0.0, 0.0, 0.0};
    CHECK(hyp_gap(HypGapKind::rigidity, 3, params) == doctest::Approx(1.12));
}

TEST_CASE("C(n,S) statistics") {
    SUBCASE("constant S picks theta1 = 1/(2n)") {
        const SStats stats{2.0, 2.0, 2.0 * 5.0, 4.0 * 5.0, 5.0};
        CHECK(theta1(2, stats) == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(theta2(2, stats) == doctest::Approx(2.0 / 11.0).epsilon(1e-15));
        CHECK(c_n_s(2, stats) == doctest::Approx(0.25).epsilon(1e-15));
    }
    SUBCASE("theta1 is scale invariant") {
        sphgap::Xoshiro256 rng(7);
        for (int i = 0; i < 50; ++i) {
            const double vol = rng.uniform(0.5, 5.0);
            const double s_max = rng.uniform(1.0, 4.0);
            const double int_s = rng.uniform(0.1, s_max * vol);
            const SStats stats{0.1, s_max, int_s, rng.uniform(0.1, 10.0), vol};
            const double c = rng.uniform(0.2, 9.0);
            const SStats scaled{0.1 * c, s_max * c, int_s * c,
                                stats.int_s2 * c * c, vol};
            CHECK(theta1(3, stats) == doctest::Approx(theta1(3, scaled)).epsilon(1e-12));
        }
    }
    SUBCASE("totally geodesic statistics are rejected") {
        const SStats zero{0.0, 0.0, 0.0, 0.0, 5.0};
        CHECK_THROWS_AS(c_n_s(2, zero), std::domain_error);
    }
}

TEST_CASE("GapConstants bundle") {
    const GapConstants c = GapConstants::for_dimension(2);
    CHECK(c.vol_sn == doctest::Approx(4.0 * kPi));
    CHECK(c.vol_bn == doctest::Approx(kPi));
    CHECK(c.p_n == doctest::Approx(std::sqrt(3.0) / 2.0));
    CHECK(c.hyp_gaps.at("ie") == doctest::Approx(4.0 / 3.0));
    CHECK(c.main_bound(2) == doctest::Approx(main_bound(2, 2)));
    CHECK(c.antipodal_bound(3) == doctest::Approx(12.0 * kPi));
    for (int n = 2; n <= 200; ++n) {
        const GapConstants g = GapConstants::for_dimension(n);
        CHECK(g.p_n > 0.0);
        CHECK(g.p_n < 1.0);
    }
}
