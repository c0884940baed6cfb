#include "sphgap/height.hpp"

#include "sphgap/errors.hpp"
#include "sphgap/specfn.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sphgap {

namespace {

void require_unit(const Eigen::VectorXd& a, const char* who) {
    if (std::abs(a.norm() - 1.0) > 1e-9)
        throw std::domain_error(std::string(who) + ": direction must be a unit vector");
}

double max_abs_height_scan(const ChartedImmersion& m, const Eigen::VectorXd& a) {
    const int n = m.dim();
    const int per_dim = n == 1 ? 128 : (n == 2 ? 32 : 12);
    long total = 1;
    for (int d = 0; d < n; ++d) total *= per_dim;
    Eigen::VectorXd u(n);
    double best = 0.0;
    for (long flat = 0; flat < total; ++flat) {
        long rem = flat;
        for (int d = 0; d < n; ++d) {
            const int i = static_cast<int>(rem % per_dim);
            rem /= per_dim;
            const Interval& iv = m.domain()[d];
            u[d] = iv.lo + (i + 0.5) * iv.length() / per_dim;
        }
        best = std::max(best, std::abs(a.dot(m.eval(u))));
    }
    return best;
}

} // namespace

double height(const ChartedImmersion& m, const Eigen::VectorXd& a,
              const Eigen::VectorXd& u) {
    require_unit(a, "height");
    return a.dot(m.eval(u));
}

double normal_height(const ChartedImmersion& m, const Eigen::VectorXd& a,
                     const Eigen::VectorXd& u) {
    require_unit(a, "normal_height");
    return a.dot(m.unit_normal(u));
}

double tangent_sq(const ChartedImmersion& m, const Eigen::VectorXd& a,
                  const Eigen::VectorXd& u) {
    require_unit(a, "tangent_sq");
    const Eigen::MatrixXd jac = m.jacobian(u);
    const Eigen::MatrixXd g = jac.transpose() * jac;
    const Eigen::VectorXd rhs = jac.transpose() * a;
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success)
        throw DegeneracyError("tangent_sq: metric degenerate at requested point");
    return rhs.dot(llt.solve(rhs));
}

HeightProfile monotone_profile(const ChartedImmersion& m, const Eigen::VectorXd& a,
                               const std::vector<double>& r_grid, const GridSpec& grid) {
    require_unit(a, "monotone_profile");
    for (double r : r_grid)
        if (!(r > -1.0 && r < 1.0))
            throw std::domain_error("monotone_profile: r_grid must lie in (-1, 1)");
    if (max_abs_height_scan(m, a) < 1e-9)
        throw DegeneracyError("monotone_profile: M lies in {phi_a = 0} numerically; "
                              "the monotonicity statement excludes this direction");

    const ScalarField phi = [&m, a](const Eigen::VectorXd& u) { return a.dot(m.eval(u)); };
    const ScalarField one = [](const Eigen::VectorXd&) { return 1.0; };
    const std::vector<ScalarField> fields{phi, one};

    const CumulativeProfiles fine = cumulative_profiles_detailed(m, a, fields, r_grid, grid);
    const CumulativeProfiles coarse =
        cumulative_profiles_detailed(m, a, fields, r_grid, grid.halved());
    // non-nested grid: its cut quantization is decorrelated from the fine
    // grid's, so the difference sees wobble a nested comparison can hide
    GridSpec shifted = grid;
    for (int& c : shifted.nodes_per_dim) c = std::max(4, 3 * c / 4);
    const CumulativeProfiles mid = cumulative_profiles_detailed(m, a, fields, r_grid, shifted);

    HeightProfile profile;
    profile.a = a;
    profile.r_values = r_grid;
    const double half_n = 0.5 * m.dim();
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        const double denom = std::pow(1.0 - r_grid[i] * r_grid[i], half_n);
        const double f_fine = fine.values[0][i] / denom;
        const double f_coarse = coarse.values[0][i] / denom;
        const double f_mid = mid.values[0][i] / denom;
        // budget: nested and non-nested grid comparisons plus the suffix-sum
        // quantization at the cut (interleaved level crossings resolve only
        // to single-sample granularity)
        profile.F_values.push_back(f_fine);
        profile.F_err.push_back(std::abs(f_fine - f_coarse) +
                                2.0 * std::abs(f_fine - f_mid) +
                                3.0 * fine.cut_mass[0][i] / denom +
                                1e-12 * (1.0 + std::abs(f_fine)));
        profile.cap_volumes.push_back(fine.values[1][i]);
        profile.cap_err.push_back(std::abs(fine.values[1][i] - coarse.values[1][i]) +
                                  2.0 * std::abs(fine.values[1][i] - mid.values[1][i]) +
                                  3.0 * fine.cut_mass[1][i] +
                                  1e-12 * (1.0 + std::abs(fine.values[1][i])));
    }
    return profile;
}

double max_branch_violation(const HeightProfile& profile) {
    double worst = -std::numeric_limits<double>::infinity();
    const auto& r = profile.r_values;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double budget = profile.F_err[i] + profile.F_err[i + 1];
        if (r[i + 1] <= 0.0) {
            // increasing branch
            worst = std::max(worst, profile.F_values[i] - profile.F_values[i + 1] - budget);
        } else if (r[i] > 0.0) {
            // decreasing branch
            worst = std::max(worst, profile.F_values[i + 1] - profile.F_values[i] - budget);
        }
        // pairs straddling 0 are unconstrained (the peak sits between them)
    }
    return worst;
}

namespace {

struct CapBox {
    RegionBox box;
    std::vector<int> cells;
};

// Parameter box expected to contain the cap {phi_a >= t} around one
// preimage cluster, sized from the local metric and grown until no box face
// still meets the cap.
CapBox cap_box_around(const ChartedImmersion& m, const Eigen::VectorXd& a,
                      const Eigen::VectorXd& center, double t) {
    const int n = m.dim();
    const double geodesic_radius = std::acos(std::clamp(t, -1.0, 1.0));
    const Eigen::MatrixXd jac = m.jacobian(center);
    const Eigen::MatrixXd g = jac.transpose() * jac;
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success)
        throw DegeneracyError("xi_estimate: metric degenerate at a preimage cluster");
    const Eigen::MatrixXd g_inv =
        llt.solve(Eigen::MatrixXd::Identity(n, n));

    CapBox out;
    out.box.lo.resize(n);
    out.box.hi.resize(n);
    std::vector<double> width(n);
    for (int d = 0; d < n; ++d)
        width[d] = 2.2 * geodesic_radius * std::sqrt(std::max(g_inv(d, d), 0.0));

    auto apply = [&](int d) {
        const Interval& iv = m.domain()[d];
        if (iv.periodic && 2.0 * width[d] >= iv.length()) {
            out.box.lo[d] = iv.lo;
            out.box.hi[d] = iv.hi;
        } else if (iv.periodic) {
            out.box.lo[d] = center[d] - width[d];
            out.box.hi[d] = center[d] + width[d];
        } else {
            out.box.lo[d] = std::max(iv.lo, center[d] - width[d]);
            out.box.hi[d] = std::min(iv.hi, center[d] + width[d]);
        }
    };
    for (int d = 0; d < n; ++d) apply(d);

    // grow any face that still meets the cap (unless it is pinned to a
    // non-periodic chart boundary, where the chart itself ends)
    for (int attempt = 0; attempt < 6; ++attempt) {
        bool grew = false;
        for (int d = 0; d < n; ++d) {
            const Interval& iv = m.domain()[d];
            if (out.box.hi[d] - out.box.lo[d] >= iv.length() - 1e-12) continue;
            for (int side = 0; side < 2; ++side) {
                const double face = side ? out.box.hi[d] : out.box.lo[d];
                if (!iv.periodic && (face <= iv.lo + 1e-12 || face >= iv.hi - 1e-12)) continue;
                bool face_hit = false;
                const int probes = 5;
                Eigen::VectorXd u(n);
                long total = 1;
                for (int e = 0; e < n; ++e)
                    if (e != d) total *= probes;
                for (long flat = 0; flat < total && !face_hit; ++flat) {
                    long rem = flat;
                    for (int e = 0; e < n; ++e) {
                        if (e == d) { u[e] = face; continue; }
                        const int i = static_cast<int>(rem % probes);
                        rem /= probes;
                        u[e] = out.box.lo[e] + (i + 0.5) * (out.box.hi[e] - out.box.lo[e]) / probes;
                    }
                    if (a.dot(m.eval(u)) >= t) face_hit = true;
                }
                if (face_hit) {
                    width[d] *= 1.6;
                    apply(d);
                    grew = true;
                }
            }
        }
        if (!grew) break;
    }

    out.cells.resize(n);
    const int base = n == 1 ? 2048 : (n == 2 ? 48 : 16);
    for (int d = 0; d < n; ++d) out.cells[d] = base;
    return out;
}

} // namespace

XiResult xi_estimate(const ChartedImmersion& m, const Eigen::VectorXd& a,
                     std::vector<double> t_sequence, double preimage_tol) {
    require_unit(a, "xi_estimate");
    const int n = m.dim();
    if (t_sequence.empty()) {
        const int levels = n >= 3 ? 4 : 5;
        for (int j = 1; j <= levels; ++j)
            t_sequence.push_back(1.0 - std::pow(4.0, -j));
    }
    std::sort(t_sequence.begin(), t_sequence.end());

    const auto clusters = preimage_points(m, a, preimage_tol);
    XiResult out;
    if (clusters.empty()) {
        for (double t : t_sequence) out.sequence.emplace_back(t, 0.0);
        return out;  // a is off the image: every small cap is empty
    }

    const ScalarField phi = [&m, a](const Eigen::VectorXd& u) { return a.dot(m.eval(u)); };
    const ScalarField one = [](const Eigen::VectorXd&) { return 1.0; };
    const double vol_bn = specfn::ball_volume(n);
    const int depth = n == 1 ? 10 : (n == 2 ? 6 : 3);

    std::vector<double> ratios, ratio_errs;
    for (double t : t_sequence) {
        double volume = 0.0, err = 0.0;
        long nodes_inside = 0;
        for (const auto& center : clusters) {
            const CapBox cap = cap_box_around(m, a, center, t);
            const RegionIntegrals parts = region_integrate(
                m, {one}, phi, t, 2.0, cap.cells, depth, cap.box);
            volume += parts.inside[0];
            err += parts.err_per_field[0];
            nodes_inside += parts.inside_nodes;
        }
        const double denom = std::pow(1.0 - t * t, 0.5 * n) * vol_bn;
        if (nodes_inside < 1000) break;  // finer caps are under-resolved
        ratios.push_back(volume / denom);
        ratio_errs.push_back(err / denom);
        out.sequence.emplace_back(t, ratios.back());
    }

    if (ratios.size() < 3)
        throw ResolutionError("xi_estimate: fewer than 3 resolved cap levels; "
                              "refine the local grids or relax the t sequence");

    // cap ratios behave like xi + c (1-t) + O((1-t)^2) with 1-t_j = 4^{-j},
    // so one Richardson step cancels the leading term
    std::vector<double> extrapolated;
    for (std::size_t j = 0; j + 1 < ratios.size(); ++j)
        extrapolated.push_back(ratios[j + 1] + (ratios[j + 1] - ratios[j]) / 3.0);

    const std::size_t tail = std::min<std::size_t>(3, extrapolated.size());
    double lo = extrapolated.back(), hi = extrapolated.back();
    for (std::size_t j = extrapolated.size() - tail; j < extrapolated.size(); ++j) {
        lo = std::min(lo, extrapolated[j]);
        hi = std::max(hi, extrapolated[j]);
    }
    out.estimate = lo;
    out.err_est = (hi - lo) + *std::max_element(ratio_errs.begin(), ratio_errs.end());
    return out;
}

SlabCheck slab_check(const ChartedImmersion& m, const Eigen::VectorXd& a,
                     double s, double r, double xi, const GridSpec& grid) {
    require_unit(a, "slab_check");
    if (!(0.0 <= s && s <= r && r <= 1.0))
        throw std::domain_error("slab_check: require 0 <= s <= r <= 1");

    const ScalarField one = [](const Eigen::VectorXd&) { return 1.0; };
    const IntegralResult lhs = integrate_where(m, one, a, s, r, grid);

    // rhs integral via t = sin(theta): integral of cos^{n-1}(theta), which is
    // smooth even for n = 1 where the original integrand has an endpoint
    // singularity
    const int n = m.dim();
    std::vector<double> xq, wq;
    gauss_legendre_nodes(64, std::asin(s), std::asin(r), xq, wq);
    double integral = 0.0;
    for (std::size_t i = 0; i < xq.size(); ++i)
        integral += wq[i] * std::pow(std::cos(xq[i]), n - 1);
    const double rhs = n * xi * specfn::ball_volume(n) * integral;

    SlabCheck check;
    check.lhs = lhs.value;
    check.rhs = rhs;
    check.margin = lhs.value - rhs;
    check.tol = lhs.err_est + 1e-7 * std::max(1.0, std::abs(rhs));
    check.pass = check.margin >= -check.tol;
    return check;
}

double laplace_height_residual(const ChartedImmersion& m, const Eigen::VectorXd& a,
                               const Eigen::VectorXd& u, double h) {
    require_unit(a, "laplace_height_residual");
    auto field = [&m, a](const Eigen::VectorXd& at) {
        Eigen::VectorXd value(1);
        value[0] = a.dot(m.eval(at));
        return value;
    };
    const double lap = fd_laplace_beltrami(m, field, u, h)[0];
    return std::abs(lap + m.dim() * a.dot(m.eval(u)));
}

HalfspaceAudit halfspace_audit(const ChartedImmersion& m, const Eigen::VectorXd& p,
                               const GridSpec& grid) {
    require_unit(p, "halfspace_audit");
    const int mult = preimage_count(m, p);
    if (mult < 1)
        throw std::domain_error("halfspace_audit: p does not lie on the image");

    const int n = m.dim();
    const ScalarField phi = [&m, p](const Eigen::VectorXd& u) { return p.dot(m.eval(u)); };
    const ScalarField one = [](const Eigen::VectorXd&) { return 1.0; };
    const ScalarField phi_sq = [&m, p](const Eigen::VectorXd& u) {
        const double v = p.dot(m.eval(u));
        return v * v;
    };

    // one shared decomposition of M into {phi >= 0} and {phi < 0}
    const RegionIntegrals parts = region_integrate(
        m, {one, phi, phi_sq}, phi, 0.0, 2.0, grid.nodes_per_dim,
        grid.boundary_refine_depth);

    auto line_ge = [](double lhs, double rhs, double err) {
        HalfspaceAudit::Line line;
        line.lhs = lhs;
        line.rhs = rhs;
        line.margin = lhs - rhs;
        line.tol = err + 1e-7 * std::max(1.0, std::abs(rhs));
        line.pass = line.margin >= -line.tol;
        return line;
    };

    HalfspaceAudit audit;
    audit.multiplicity = mult;
    audit.halfspace_volume =
        line_ge(parts.inside[0], 0.5 * mult * specfn::sphere_volume(n), parts.err_per_field[0]);
    audit.height_mass =
        line_ge(parts.inside[1], mult * specfn::ball_volume(n), parts.err_per_field[1]);
    {
        HalfspaceAudit::Line line;
        line.lhs = (n + 1.0) * parts.outside[2];
        line.rhs = parts.outside[0];
        line.margin = line.rhs - line.lhs;
        line.tol = parts.err_per_field[0] + (n + 1.0) * parts.err_per_field[2] +
                   1e-7 * std::max(1.0, std::abs(line.rhs));
        line.pass = line.margin >= -line.tol;
        audit.square_bound = line;
    }
    {
        HalfspaceAudit::Line line;
        line.lhs = parts.inside[1];
        line.rhs = -parts.outside[1];
        line.margin = -std::abs(line.lhs - line.rhs);
        line.tol = 2.0 * parts.err_per_field[1] + 1e-8 * std::max(1.0, std::abs(line.lhs));
        line.pass = std::abs(line.lhs - line.rhs) <= line.tol;
        audit.balance = line;
    }
    const IntegralResult total = integrate(m, one, grid);
    audit.total_volume = line_ge(total.value, specfn::main_bound(n, mult), total.err_est);
    return audit;
}

MeanSquareHeight mean_square_height(const ChartedImmersion& m,
                                    const std::vector<Eigen::VectorXd>& a_samples,
                                    const GridSpec& grid) {
    if (!m.is_hypersurface())
        throw std::domain_error("mean_square_height: hypersurfaces only");
    if (a_samples.empty())
        throw std::domain_error("mean_square_height: need at least one direction");

    MeanSquareHeight out;
    for (const auto& a : a_samples) {
        require_unit(a, "mean_square_height");
        const ScalarField phi_sq = [&m, &a](const Eigen::VectorXd& u) {
            const double v = a.dot(m.eval(u));
            return v * v;
        };
        out.values.push_back(integrate(m, phi_sq, grid).value);
    }
    out.min = *std::min_element(out.values.begin(), out.values.end());
    out.max = *std::max_element(out.values.begin(), out.values.end());
    out.lower_bound = specfn::sphere_volume(m.dim()) / (m.dim() + 1.0);
    if (m.antipodal_invariant())
        out.bound_holds = out.min >= out.lower_bound - 1e-6 * std::max(1.0, out.lower_bound);
    return out;
}

} // namespace sphgap
