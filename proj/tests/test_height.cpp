#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sphgap/errors.hpp"
#include "sphgap/height.hpp"
#include "sphgap/rng.hpp"
#include "sphgap/specfn.hpp"
#include "support/oracles.hpp"

#include <cmath>

using namespace sphgap;

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::VectorXd interior(const ChartedImmersion& m, Xoshiro256& rng, double inset = 0.1) {
    Eigen::VectorXd u(m.dim());
    for (int d = 0; d < m.dim(); ++d) {
        const Interval& iv = m.domain()[d];
        const double pad = iv.periodic ? 0.0 : inset * iv.length();
        u[d] = rng.uniform(iv.lo + pad, iv.hi - pad);
    }
    return u;
}

std::vector<double> open_grid(int count) {
    std::vector<double> r(count);
    for (int i = 0; i < count; ++i) r[i] = -1.0 + 2.0 * (i + 0.5) / count;
    return r;
}

Eigen::VectorXd axis(int size, int which) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(size);
    a[which] = 1.0;
    return a;
}

} // namespace

TEST_CASE("pointwise height identities") {
    Xoshiro256 rng(61);
    const ChartedImmersion torus = make_clifford(1, 2);

    SUBCASE("self-pairing: a = f(u) gives phi = 1 and vanishing tangent part") {
        const Eigen::VectorXd u = interior(torus, rng);
        const Eigen::VectorXd a = torus.eval(u);
        CHECK(height(torus, a, u) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(tangent_sq(torus, a, u) < 1e-12);
    }

    SUBCASE("gradient bound |a^T|^2 + phi^2 <= 1") {
        for (int i = 0; i < 200; ++i) {
            const Eigen::VectorXd u = interior(torus, rng);
            const Eigen::VectorXd a = torus.eval(interior(torus, rng));
            const double phi = height(torus, a, u);
            CHECK(tangent_sq(torus, a, u) + phi * phi <= 1.0 + 1e-12);
        }
    }

    SUBCASE("hypersurface pythagoras |a^T|^2 + phi^2 + psi^2 = 1") {
        for (int i = 0; i < 100; ++i) {
            const Eigen::VectorXd u = interior(torus, rng);
            const Eigen::VectorXd a = torus.eval(interior(torus, rng));
            const double phi = height(torus, a, u);
            const double psi = normal_height(torus, a, u);
            CHECK(std::abs(tangent_sq(torus, a, u) + phi * phi + psi * psi - 1.0) < 1e-10);
        }
    }

    SUBCASE("normal height needs a hypersurface") {
        const ChartedImmersion curve = make_equator(1, 3);
        CHECK_THROWS_AS(normal_height(curve, axis(4, 0), axis(1, 0)), std::domain_error);
    }
}

TEST_CASE("laplace height residual") {
    Xoshiro256 rng(67);
    for (const char* name : {"clifford:1,2", "equator:2,3", "covered-circle:2,2"}) {
        const ChartedImmersion m = make_by_name(name);
        for (int i = 0; i < 20; ++i) {
            const Eigen::VectorXd u = interior(m, rng, 0.15);
            const Eigen::VectorXd a = m.eval(interior(m, rng));
            CHECK(laplace_height_residual(m, a, u, 1e-3) < 1e-5);
        }
    }
    // direction orthogonal to the equator's span: phi == 0 identically
    const ChartedImmersion eq = make_equator(2, 3);
    CHECK(laplace_height_residual(eq, axis(4, 3), interior(eq, rng, 0.2), 1e-3) == 0.0);
}

TEST_CASE("monotone profile") {
    Xoshiro256 rng(71);

    SUBCASE("equator with a at the chart pole has constant F == pi") {
        const ChartedImmersion eq = make_equator(2, 3);
        const HeightProfile profile =
            monotone_profile(eq, axis(4, 0), open_grid(64), GridSpec::defaults_for(eq));
        for (std::size_t i = 0; i < profile.F_values.size(); ++i)
            CHECK(std::abs(profile.F_values[i] - kPi) <=
                  3.0 * profile.F_err[i] + 1e-6);
        CHECK(max_branch_violation(profile) <= 0.0);
    }

    SUBCASE("covered circle profile is the constant 2m") {
        const ChartedImmersion circle = make_covered_circle(3, 2);
        const Eigen::VectorXd a = circle.eval(interior(circle, rng));
        const HeightProfile profile =
            monotone_profile(circle, a, open_grid(64), GridSpec::defaults_for(circle));
        for (std::size_t i = 0; i < profile.F_values.size(); ++i)
            CHECK(std::abs(profile.F_values[i] - 6.0) <= 3.0 * profile.F_err[i] + 1e-6);
    }

    SUBCASE("both branches monotone on the Clifford torus") {
        const ChartedImmersion torus = make_clifford(1, 2);
        for (int i = 0; i < 10; ++i) {
            const Eigen::VectorXd a = torus.eval(interior(torus, rng));
            const HeightProfile profile =
                monotone_profile(torus, a, open_grid(64), GridSpec::defaults_for(torus));
            CHECK(max_branch_violation(profile) <= 0.0);
            for (std::size_t j = 0; j + 1 < profile.cap_volumes.size(); ++j)
                CHECK(profile.cap_volumes[j] >= profile.cap_volumes[j + 1] - 1e-12);
        }
    }

    SUBCASE("reflection maps one branch onto the other") {
        const ChartedImmersion torus = make_clifford(1, 2);
        const auto r_grid = open_grid(64);
        for (int i = 0; i < 3; ++i) {
            const Eigen::VectorXd a = torus.eval(interior(torus, rng));
            const HeightProfile plus =
                monotone_profile(torus, a, r_grid, GridSpec::defaults_for(torus));
            const HeightProfile minus =
                monotone_profile(torus, -a, r_grid, GridSpec::defaults_for(torus));
            for (std::size_t j = 0; j < r_grid.size(); ++j) {
                const std::size_t jr = r_grid.size() - 1 - j;
                CHECK(std::abs(minus.F_values[j] - plus.F_values[jr]) <=
                      3.0 * (minus.F_err[j] + plus.F_err[jr]) + 1e-9);
            }
        }
    }

    SUBCASE("degenerate direction raises DegeneracyError") {
        const ChartedImmersion eq = make_equator(2, 3);
        CHECK_THROWS_AS(
            monotone_profile(eq, axis(4, 3), open_grid(16), GridSpec::defaults_for(eq)),
            DegeneracyError);
    }

    SUBCASE("r values outside (-1,1) are rejected") {
        const ChartedImmersion eq = make_equator(2, 3);
        CHECK_THROWS_AS(
            monotone_profile(eq, axis(4, 0), {-1.0, 0.0}, GridSpec::defaults_for(eq)),
            std::domain_error);
    }
}

TEST_CASE("xi estimates") {
    Xoshiro256 rng(73);

    SUBCASE("equator points have density 1") {
        const ChartedImmersion eq = make_equator(2, 3);
        for (int i = 0; i < 3; ++i) {
            const Eigen::VectorXd a = eq.eval(interior(eq, rng));
            const XiResult xi = xi_estimate(eq, a);
            CHECK(std::abs(xi.estimate - 1.0) <= 0.05);
        }
    }

    SUBCASE("clifford points have density 1") {
        const ChartedImmersion torus = make_clifford(1, 2);
        for (int i = 0; i < 3; ++i) {
            const Eigen::VectorXd a = torus.eval(interior(torus, rng));
            const XiResult xi = xi_estimate(torus, a);
            CHECK(std::abs(xi.estimate - 1.0) <= 0.05);
        }
    }

    SUBCASE("covered circles have density m") {
        for (int mult : {2, 3, 4}) {
            const ChartedImmersion circle = make_covered_circle(mult, 2);
            const Eigen::VectorXd a = circle.eval(interior(circle, rng));
            const XiResult xi = xi_estimate(circle, a);
            CHECK(std::abs(xi.estimate - mult) <= 0.05);
            CHECK(xi.estimate >= mult - 0.1);
        }
    }

    SUBCASE("off-image directions have zero density") {
        const ChartedImmersion eq = make_equator(2, 3);
        const XiResult xi = xi_estimate(eq, axis(4, 3));
        CHECK(xi.estimate == 0.0);
    }

    SUBCASE("fewer than three resolved levels raises ResolutionError") {
        const ChartedImmersion torus = make_clifford(1, 2);
        const Eigen::VectorXd a = torus.eval(interior(torus, rng));
        CHECK_THROWS_AS(xi_estimate(torus, a, {0.75, 0.9375}), ResolutionError);
    }
}

TEST_CASE("slab checks") {
    Xoshiro256 rng(79);

    SUBCASE("degenerate slab is the trivial equality") {
        const ChartedImmersion torus = make_clifford(1, 2);
        const Eigen::VectorXd a = torus.eval(interior(torus, rng));
        const SlabCheck check =
            slab_check(torus, a, 0.5, 0.5, 1.0, GridSpec::defaults_for(torus));
        CHECK(check.pass);
        CHECK(std::abs(check.rhs) < 1e-12);
    }

    SUBCASE("equator halfspace saturates the bound") {
        const ChartedImmersion eq = make_equator(2, 3);
        const SlabCheck check =
            slab_check(eq, axis(4, 0), 0.0, 1.0, 1.0, GridSpec::defaults_for(eq));
        CHECK(check.pass);
        CHECK(check.lhs == doctest::Approx(2.0 * kPi).epsilon(1e-4));
        CHECK(check.rhs == doctest::Approx(2.0 * kPi).epsilon(1e-10));
    }

    SUBCASE("doubly covered great circle saturates the bound") {
        const ChartedImmersion circle = make_covered_circle(2, 2);
        const SlabCheck check = slab_check(circle, axis(3, 0), 0.0, 1.0, 2.0,
                                           GridSpec::defaults_for(circle));
        CHECK(check.pass);
        CHECK(check.lhs == doctest::Approx(2.0 * kPi).epsilon(1e-4));
        CHECK(check.rhs == doctest::Approx(2.0 * kPi).epsilon(1e-10));
    }

    SUBCASE("interior slabs pass on every member") {
        for (const char* name : {"clifford:1,2", "equator:2,3", "covered-circle:3,2"}) {
            const ChartedImmersion m = make_by_name(name);
            const Eigen::VectorXd a = m.eval(interior(m, rng));
            const double xi = preimage_count(m, a);
            const SlabCheck check =
                slab_check(m, a, 0.2, 0.7, xi, GridSpec::defaults_for(m));
            CHECK(check.pass);
        }
    }

    SUBCASE("invalid slab range") {
        const ChartedImmersion torus = make_clifford(1, 2);
        CHECK_THROWS_AS(slab_check(torus, axis(4, 0), -0.1, 0.5, 1.0,
                                   GridSpec::defaults_for(torus)),
                        std::domain_error);
    }
}

TEST_CASE("halfspace audit") {
    Xoshiro256 rng(83);

    SUBCASE("doubly covered circle reproduces the 0.626 margin") {
        const ChartedImmersion circle = make_covered_circle(2, 2);
        const HalfspaceAudit audit =
            halfspace_audit(circle, axis(3, 0), GridSpec::defaults_for(circle));
        CHECK(audit.multiplicity == 2);
        CHECK(audit.halfspace_volume.pass);
        CHECK(audit.height_mass.pass);
        CHECK(audit.square_bound.pass);
        CHECK(audit.balance.pass);
        CHECK(audit.total_volume.pass);
        CHECK(audit.total_volume.lhs == doctest::Approx(4.0 * kPi).epsilon(1e-8));
        CHECK(audit.total_volume.margin ==
              doctest::Approx(2.0 * kPi - 4.0 * std::sqrt(2.0)).epsilon(1e-2));
    }

    SUBCASE("equator saturates halfspace volume and square bound") {
        const ChartedImmersion eq = make_equator(2, 3);
        const HalfspaceAudit audit =
            halfspace_audit(eq, axis(4, 0), GridSpec::defaults_for(eq));
        CHECK(audit.multiplicity == 1);
        CHECK(audit.halfspace_volume.lhs == doctest::Approx(2.0 * kPi).epsilon(1e-4));
        CHECK(audit.halfspace_volume.rhs == doctest::Approx(2.0 * kPi).epsilon(1e-12));
        for (const auto* line : {&audit.halfspace_volume, &audit.height_mass,
                                 &audit.square_bound, &audit.balance, &audit.total_volume})
            CHECK(line->pass);
    }

    SUBCASE("clifford audits pass at random image points") {
        const ChartedImmersion torus = make_clifford(1, 2);
        for (int i = 0; i < 3; ++i) {
            const Eigen::VectorXd p = torus.eval(interior(torus, rng));
            const HalfspaceAudit audit =
                halfspace_audit(torus, p, GridSpec::defaults_for(torus));
            CHECK(audit.multiplicity == 1);
            CHECK(audit.halfspace_volume.pass);
            CHECK(audit.height_mass.pass);
            CHECK(audit.square_bound.pass);
            CHECK(audit.balance.pass);
            CHECK(audit.total_volume.pass);
        }
    }

    SUBCASE("off-image point is rejected") {
        const ChartedImmersion eq = make_equator(2, 3);
        CHECK_THROWS_AS(halfspace_audit(eq, axis(4, 3), GridSpec::defaults_for(eq)),
                        std::domain_error);
    }
}

TEST_CASE("mean-square heights") {
    Xoshiro256 rng(89);

    SUBCASE("clifford value is pi^2/2, above the lemma bound") {
        const ChartedImmersion torus = make_clifford(1, 2);
        std::vector<Eigen::VectorXd> dirs;
        for (int i = 0; i < 5; ++i) dirs.push_back(torus.eval(interior(torus, rng)));
        const MeanSquareHeight msh =
            mean_square_height(torus, dirs, GridSpec::defaults_for(torus));
        for (double v : msh.values)
            CHECK(v == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-9));
        CHECK(msh.lower_bound == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-12));
        CHECK(msh.min >= msh.lower_bound);
        REQUIRE(msh.bound_holds.has_value());
        CHECK(*msh.bound_holds);
    }

    SUBCASE("equator sits exactly on the bound") {
        const ChartedImmersion eq = make_equator(2, 3);
        std::vector<Eigen::VectorXd> dirs{eq.eval(interior(eq, rng))};
        const MeanSquareHeight msh = mean_square_height(eq, dirs, GridSpec::defaults_for(eq));
        CHECK(msh.min == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-9));
        CHECK(*msh.bound_holds);
    }

    SUBCASE("rotating direction and manifold together leaves the value fixed") {
        // the integrand only sees <f(u), a>, so rotating a within the
        // equator's span is the same as rotating the chart
        const ChartedImmersion eq = make_equator(2, 3);
        Eigen::VectorXd a = Eigen::VectorXd::Zero(4);
        a[0] = std::cos(0.7);
        a[1] = std::sin(0.7);
        const MeanSquareHeight rotated =
            mean_square_height(eq, {a}, GridSpec::defaults_for(eq));
        const MeanSquareHeight base =
            mean_square_height(eq, {axis(4, 0)}, GridSpec::defaults_for(eq));
        CHECK(rotated.values[0] == doctest::Approx(base.values[0]).epsilon(1e-10));
    }

    SUBCASE("non-hypersurfaces are rejected") {
        const ChartedImmersion curve = make_equator(1, 3);
        CHECK_THROWS_AS(
            mean_square_height(curve, {axis(4, 0)}, GridSpec::defaults_for(curve)),
            std::domain_error);
    }
}
