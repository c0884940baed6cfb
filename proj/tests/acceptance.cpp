// Acceptance suite: each criterion prints one [PASS]/[FAIL] line; any
// failure exits nonzero.  Tolerances are pinned here, not configurable.

#include "sphgap/curvature.hpp"
#include "sphgap/height.hpp"
#include "sphgap/immersion.hpp"
#include "sphgap/quadrature.hpp"
#include "sphgap/report_io.hpp"
#include "sphgap/rng.hpp"
#include "sphgap/specfn.hpp"
#include "sphgap/verify.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

namespace sf = sphgap::specfn;
using sphgap::ChartedImmersion;
using sphgap::GridSpec;
using sphgap::Xoshiro256;

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;
bool g_current_ok = true;
std::string g_current_name;

void begin(const std::string& name) {
    g_current_name = name;
    g_current_ok = true;
}

void expect(bool cond, const std::string& detail) {
    if (!cond) {
        g_current_ok = false;
        std::cout << "       " << g_current_name << ": " << detail << "\n";
    }
}

void expect_close(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
        g_current_ok = false;
        std::printf("       %s: %s = %.15g, want %.15g +- %.3g\n", g_current_name.c_str(),
                    what.c_str(), got, want, tol);
    }
}

void finish(double seconds, double budget_seconds) {
    if (budget_seconds > 0.0 && seconds > budget_seconds) {
        g_current_ok = false;
        std::printf("       %s: runtime %.2fs exceeds %.0fs budget\n",
                    g_current_name.c_str(), seconds, budget_seconds);
    }
    if (g_current_ok) {
        std::printf("[PASS] %s (%.2fs)\n", g_current_name.c_str(), seconds);
    } else {
        std::printf("[FAIL] %s\n", g_current_name.c_str());
        ++g_failures;
    }
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

Eigen::VectorXd interior_point(const ChartedImmersion& m, Xoshiro256& rng, double inset) {
    Eigen::VectorXd u(m.dim());
    for (int d = 0; d < m.dim(); ++d) {
        const sphgap::Interval& iv = m.domain()[d];
        const double pad = iv.periodic ? 0.0 : inset * iv.length();
        u[d] = rng.uniform(iv.lo + pad, iv.hi - pad);
    }
    return u;
}

std::vector<ChartedImmersion> catalog_members() {
    std::vector<ChartedImmersion> members;
    for (const auto& name : sphgap::default_manifolds())
        members.push_back(sphgap::make_by_name(name));
    return members;
}

GridSpec audit_grid_for(const ChartedImmersion& m) {
    GridSpec grid = GridSpec::defaults_for(m);
    if (m.dim() == 2)
        for (int& c : grid.nodes_per_dim) c = std::min(c, 128);
    if (m.dim() >= 3) {
        for (int& c : grid.nodes_per_dim) c = std::min(c, 24);
        grid.boundary_refine_depth = 2;
    }
    return grid;
}

// --------------------------------------------------------------------------

void criterion_1_closed_form_constants() {
    begin("criterion-1 closed-form constants");
    Timer timer;
    expect_close(sf::sphere_volume(2), 4.0 * kPi, 1e-12, "Vol(S^2)");
    expect_close(sf::clifford_volume(1, 2), 2.0 * kPi * kPi, 1e-10, "Vol(M_{1,1})");
    expect_close(1.0 + sf::gap_p(1000000), 1.7978846, 1e-3, "1 + p(1e6)");
    finish(timer.seconds(), 1.0);
}

void criterion_2_remark_sweep() {
    begin("criterion-2 clifford-volume sweep");
    Timer timer;
    for (int n = 2; n <= 100; ++n) {
        const double log_max = sf::log_clifford_volume(1, n);
        const double log_bound = std::log1p(sf::gap_p(n)) + sf::log_sphere_volume(n);
        for (int k = 1; k <= n - 1; ++k) {
            const double log_vol = sf::log_clifford_volume(k, n);
            expect(log_vol <= log_max + 1e-12,
                   "Vol(M_{" + std::to_string(k) + "," + std::to_string(n - k) +
                       "}) exceeds the k=1 maximum");
            expect(log_bound - log_vol > 0.0,
                   "no strict margin below (1+p)Vol(S^n) at n=" + std::to_string(n) +
                       " k=" + std::to_string(k));
        }
    }
    finish(timer.seconds(), 1.0);
}

void criterion_3_quadrature_oracle() {
    begin("criterion-3 quadrature oracle");
    Timer timer;

    const ChartedImmersion torus = sphgap::make_clifford(1, 2);
    GridSpec grid64;
    grid64.nodes_per_dim = {64, 64};
    grid64.rule = sphgap::QuadRule::periodic_trapezoid;
    const double vol = sphgap::integrate(
        torus, [](const Eigen::VectorXd&) { return 1.0; }, grid64).value;
    expect_close(vol, 2.0 * kPi * kPi, 1e-10, "64x64 trapezoid volume of M_{1,1}");

    for (const ChartedImmersion& m : catalog_members()) {
        Xoshiro256 rng(31 + m.dim());
        std::vector<Eigen::VectorXd> dirs;
        for (int i = 0; i < 20; ++i) dirs.push_back(m.eval(interior_point(m, rng, 0.05)));
        std::vector<double> sums(dirs.size(), 0.0);
        sphgap::for_each_quadrature_node(
            m, GridSpec::defaults_for(m), [&](const Eigen::VectorXd& u, double w) {
                const double mass = w * m.metric_and_area(u).sqrt_det;
                const Eigen::VectorXd f = m.eval(u);
                for (std::size_t i = 0; i < dirs.size(); ++i)
                    sums[i] += mass * dirs[i].dot(f);
            });
        for (double s : sums)
            expect(std::abs(s) < 1e-8,
                   m.name() + ": mean height " + std::to_string(s) + " not within 1e-8");
    }
    finish(timer.seconds(), 5.0);
}

void criterion_4_takahashi_residuals() {
    begin("criterion-4 Takahashi residuals");
    Timer timer;
    for (const ChartedImmersion& m : catalog_members()) {
        Xoshiro256 rng(101 + m.ambient_dim());
        int decay_checked = 0;
        for (int i = 0; i < 100; ++i) {
            const Eigen::VectorXd u = interior_point(m, rng, 0.15);
            const Eigen::VectorXd a = m.eval(interior_point(m, rng, 0.05));
            const double res_f = sphgap::minimality_residual(m, u, 1e-3);
            const double res_phi = sphgap::laplace_height_residual(m, a, u, 1e-3);
            expect(res_f <= 1e-5, m.name() + ": |Delta f + n f| = " + std::to_string(res_f));
            expect(res_phi <= 1e-5,
                   m.name() + ": |Delta phi + n phi| = " + std::to_string(res_phi));
            if (i < 10) {
                const double fine = sphgap::minimality_residual(m, u, 5e-4);
                if (fine > 1e-12) {
                    const double ratio = res_f / fine;
                    expect(ratio >= 3.5 && ratio <= 4.5,
                           m.name() + ": decay ratio " + std::to_string(ratio));
                    ++decay_checked;
                }
            }
        }
        expect(decay_checked >= 5, m.name() + ": too few decay samples above the noise floor");
    }
    finish(timer.seconds(), 0.0);
}

void criterion_5_monotone_profiles() {
    begin("criterion-5 monotonicity profiles");
    Timer timer;
    std::vector<double> r_grid(64);
    for (int i = 0; i < 64; ++i) r_grid[i] = -1.0 + 2.0 * (i + 0.5) / 64;

    for (const char* name : {"clifford:1,2", "equator:2,3", "covered-circle:3,2"}) {
        const ChartedImmersion m = sphgap::make_by_name(name);
        const GridSpec grid = GridSpec::defaults_for(m);
        Xoshiro256 rng(811);
        for (int i = 0; i < 20; ++i) {
            const Eigen::VectorXd a = m.eval(interior_point(m, rng, 0.05));
            const sphgap::HeightProfile profile = sphgap::monotone_profile(m, a, r_grid, grid);
            const double violation = sphgap::max_branch_violation(profile);
            expect(violation <= 0.0, std::string(name) + ": branch violation " +
                                         std::to_string(violation));
            if (std::string(name) == "equator:2,3") {
                const double ref = profile.F_values[32];
                for (std::size_t j = 0; j < profile.F_values.size(); ++j)
                    expect(std::abs(profile.F_values[j] - ref) <=
                               3.0 * (profile.F_err[j] + profile.F_err[32]) + 1e-9,
                           "equator profile not constant within err_est");
            }
        }
    }
    finish(timer.seconds(), 60.0);
}

void criterion_6_xi_density() {
    begin("criterion-6 cap density xi");
    Timer timer;

    auto check_xi = [&](const ChartedImmersion& m, const Eigen::VectorXd& a, double want) {
        const int mult = sphgap::preimage_count(m, a);
        const sphgap::XiResult xi = sphgap::xi_estimate(m, a);
        expect(std::abs(xi.estimate - want) <= 0.05,
               m.name() + ": xi = " + std::to_string(xi.estimate) + ", want " +
                   std::to_string(want));
        expect(xi.estimate >= mult - 0.1,
               m.name() + ": xi below multiplicity - 0.1");
    };

    Xoshiro256 rng(977);
    const ChartedImmersion eq = sphgap::make_equator(2, 3);
    for (int i = 0; i < 2; ++i) check_xi(eq, eq.eval(interior_point(eq, rng, 0.1)), 1.0);
    const ChartedImmersion torus = sphgap::make_clifford(1, 2);
    for (int i = 0; i < 2; ++i)
        check_xi(torus, torus.eval(interior_point(torus, rng, 0.05)), 1.0);
    for (int mult : {2, 3, 4}) {
        const ChartedImmersion circle = sphgap::make_covered_circle(mult, 2);
        check_xi(circle, circle.eval(interior_point(circle, rng, 0.0)), mult);
    }
    finish(timer.seconds(), 0.0);
}

void criterion_7_slabs_and_audits() {
    begin("criterion-7 slab bounds and halfspace audits");
    Timer timer;

    for (const ChartedImmersion& m : catalog_members()) {
        const GridSpec grid = audit_grid_for(m);
        Xoshiro256 rng(1399 + m.dim());
        const Eigen::VectorXd slab_dir = m.eval(interior_point(m, rng, 0.05));
        const double xi = sphgap::preimage_count(m, slab_dir);
        const std::vector<std::pair<double, double>> slabs{
            {0.0, 1.0}, {0.2, 0.7}, {0.5, 0.5}};
        for (const auto& [s, r] : slabs) {
            const sphgap::SlabCheck check = sphgap::slab_check(m, slab_dir, s, r, xi, grid);
            expect(check.pass, m.name() + ": slab (" + std::to_string(s) + "," +
                                   std::to_string(r) + ") margin " +
                                   std::to_string(check.margin));
        }
        for (int i = 0; i < 10; ++i) {
            const Eigen::VectorXd p = m.eval(interior_point(m, rng, 0.05));
            const sphgap::HalfspaceAudit audit = sphgap::halfspace_audit(m, p, grid);
            expect(audit.halfspace_volume.pass, m.name() + ": (i) halfspace volume");
            expect(audit.height_mass.pass, m.name() + ": (ii) height mass");
            expect(audit.square_bound.pass, m.name() + ": (iii) square bound");
            expect(audit.balance.pass, m.name() + ": (iv) balance");
            expect(audit.total_volume.pass, m.name() + ": (v) total volume");
        }
    }

    const ChartedImmersion circle = sphgap::make_covered_circle(2, 2);
    Eigen::VectorXd pole = Eigen::VectorXd::Zero(3);
    pole[0] = 1.0;
    const sphgap::HalfspaceAudit audit =
        sphgap::halfspace_audit(circle, pole, GridSpec::defaults_for(circle));
    expect(audit.multiplicity == 2, "covered-circle:2 multiplicity");
    expect_close(audit.total_volume.lhs, 4.0 * kPi, 1e-8, "covered-circle:2 length");
    expect_close(audit.total_volume.margin, 0.626, 0.01,
                 "covered-circle:2 main-theorem margin");
    finish(timer.seconds(), 0.0);
}

void criterion_8_hypersurface_suite() {
    begin("criterion-8 hypersurface suite on M_{1,1}");
    Timer timer;

    const ChartedImmersion torus = sphgap::make_clifford(1, 2);
    GridSpec grid = GridSpec::defaults_for(torus);
    grid.nodes_per_dim = {64, 64};
    Xoshiro256 rng(2025);

    for (int i = 0; i < 50; ++i) {
        const sphgap::CurvatureSample sample =
            sphgap::shape_operator(torus, interior_point(torus, rng, 0.0), 1e-4);
        expect(std::abs(sample.S - 2.0) <= 1e-6, "S != 2 within 1e-6");
        expect(std::abs(sample.f3) <= 1e-6, "f3 != 0 within 1e-6");
    }

    std::vector<Eigen::VectorXd> dirs;
    for (int i = 0; i < 4; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(4);
        e[i] = 1.0;
        dirs.push_back(e);
    }
    for (int i = 0; i < 4; ++i) dirs.push_back(torus.eval(interior_point(torus, rng, 0.0)));

    const sphgap::IeChecks ie = sphgap::ie_checks(torus, dirs, grid);
    expect(ie.max_phi2_residual <= 1e-6 * ie.volume, "IE phi^2 residual");
    expect(ie.max_psi2_residual <= 1e-6 * ie.volume, "IE psi^2 residual");
    expect(ie.max_equality_residual <= 1e-6 * ie.volume, "IE equality residual");
    expect(ie.max_f3_residual <= 1e-6 * ie.volume, "IE f3 residual");
    for (const auto& row : ie.per_direction)
        expect_close(row.int_phi2, kPi * kPi / 2.0, 1e-8, "int phi^2");

    const double vol = ie.volume;
    expect(kPi * kPi / 2.0 >= 4.0 * kPi / 3.0, "mean-square lower bound");
    expect(vol >= sf::hyp_gap_ie(2) * sf::sphere_volume(2) - 1e-8, "(n+2)/(n+1) gap");
    expect(vol >= sf::hyp_gap_antipodal(2) * sf::sphere_volume(2) - 1e-8, "2n/(2n-1) gap");

    const sphgap::SStatistics stats = sphgap::s_statistics(torus, grid);
    expect_close(sf::c_n_s(2, stats.stats), 0.25, 1e-5, "C(n,S)");

    for (int i = 0; i < 20; ++i) {
        const sphgap::SimonsResidual simons =
            sphgap::simons_residual(torus, interior_point(torus, rng, 0.0));
        expect(simons.identity_residual <= 1e-4, "Simons identity residual");
        expect(simons.grad_bound_slack >= -1e-6, "Cauchy-Schwarz slack");
    }
    finish(timer.seconds(), 0.0);
}

void criterion_9_determinism() {
    begin("criterion-9 determinism and full-suite exit");
    Timer suite_timer;
    sphgap::SuiteConfig config;
    const sphgap::VerificationReport first = sphgap::run_suite(config);
    const double first_run_seconds = suite_timer.seconds();

    const sphgap::VerificationReport second = sphgap::run_suite(config);
    const std::string json_a = sphgap::report_to_json(first, config);
    const std::string json_b = sphgap::report_to_json(second, config);
    expect(json_a == json_b, "reports differ between identical runs");
    expect(first_run_seconds < 300.0, "default suite exceeded 5 minutes");

    const sphgap::SuiteSummary summary = first.summary();
    expect(summary.failed == 0,
           "default suite reports " + std::to_string(summary.failed) + " failures");
    expect(summary.passed > 0, "default suite passed nothing");
    std::printf("       suite: %d checks, %d passed, %d skipped, %.1fs\n", summary.total,
                summary.passed, summary.skipped, first_run_seconds);
    for (const auto& check : first.checks)
        if (!check.pass && !check.skipped())
            std::printf("       FAIL %s margin %.3g\n", check.id.c_str(), check.margin);
    finish(suite_timer.seconds(), 0.0);
}

} // namespace

int main() {
    criterion_1_closed_form_constants();
    criterion_2_remark_sweep();
    criterion_3_quadrature_oracle();
    criterion_4_takahashi_residuals();
    criterion_5_monotone_profiles();
    criterion_6_xi_density();
    criterion_7_slabs_and_audits();
    criterion_8_hypersurface_suite();
    criterion_9_determinism();

    if (g_failures) {
        std::printf("%d acceptance criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
