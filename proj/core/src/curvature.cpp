#include "sphgap/curvature.hpp"

#include "sphgap/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sphgap {

namespace {

void require_hypersurface(const ChartedImmersion& m, const char* who) {
    if (!m.is_hypersurface())
        throw std::domain_error(std::string(who) + ": " + m.name() +
                                " is not a hypersurface (N != n+1)");
}

void check_stencil(const ChartedImmersion& m, const Eigen::VectorXd& u, double h,
                   const char* who) {
    for (int d = 0; d < m.dim(); ++d) {
        const Interval& iv = m.domain()[d];
        if (!iv.periodic && (u[d] - h < iv.lo || u[d] + h > iv.hi))
            throw std::domain_error(std::string(who) + ": stencil leaves chart at coordinate " +
                                    std::to_string(d));
    }
}

// Orthonormal frame by Gram-Schmidt over the Jacobian columns in their
// natural order; returned as thin Q with positive R diagonal.
void tangent_frame(const Eigen::MatrixXd& jac, Eigen::MatrixXd& q, Eigen::MatrixXd& r) {
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(jac);
    const int n = static_cast<int>(jac.cols());
    q = qr.householderQ() * Eigen::MatrixXd::Identity(jac.rows(), n);
    r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        if (r(j, j) < 0.0) {
            r.row(j) *= -1.0;
            q.col(j) *= -1.0;
        }
    }
    for (int j = 0; j < n; ++j)
        if (std::abs(r(j, j)) < 1e-10)
            throw DegeneracyError("tangent frame degenerate (chart pole?)");
}

} // namespace

CurvatureSample shape_operator(const ChartedImmersion& m, const Eigen::VectorXd& u,
                               double h, const Eigen::VectorXd* a) {
    require_hypersurface(m, "shape_operator");
    if (!(h > 0.0)) throw std::domain_error("shape_operator: step must be positive");
    const Eigen::VectorXd u0 = m.wrap(u);
    check_stencil(m, u0, h, "shape_operator");

    const int n = m.dim();
    Eigen::MatrixXd dnu(m.ambient_coords(), n);
    for (int d = 0; d < n; ++d) {
        Eigen::VectorXd up = u0, um = u0;
        up[d] += h;
        um[d] -= h;
        dnu.col(d) = -(m.unit_normal(up) - m.unit_normal(um)) / (2.0 * h);
    }

    Eigen::MatrixXd q, r;
    tangent_frame(m.jacobian(u0), q, r);

    // A maps the frame vector Q_l to the tangential part of -d_nu along the
    // coordinate direction; change of basis via R
    const Eigen::MatrixXd projected = q.transpose() * dnu;  // n x n
    const Eigen::MatrixXd a_frame =
        r.transpose().triangularView<Eigen::Lower>().solve(projected.transpose()).transpose();

    CurvatureSample sample;
    sample.u = u0;
    sample.asymmetry = (a_frame - a_frame.transpose()).cwiseAbs().maxCoeff();
    sample.shape = 0.5 * (a_frame + a_frame.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sample.shape);
    sample.eigenvalues = eig.eigenvalues();
    sample.trace = sample.eigenvalues.sum();
    sample.S = sample.eigenvalues.squaredNorm();
    sample.f3 = sample.eigenvalues.array().cube().sum();
    sample.r_scalar = n * (n - 1.0) - sample.S;
    if (a) sample.psi_a = a->dot(m.unit_normal(u0));
    return sample;
}

SStatistics s_statistics(const ChartedImmersion& m, const GridSpec& grid, double h) {
    require_hypersurface(m, "s_statistics");
    if (grid.rule == QuadRule::monte_carlo)
        throw ConfigError("s_statistics: deterministic rule required");

    SStatistics out;
    double s_min = std::numeric_limits<double>::infinity();
    double s_max = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd argmin, argmax;
    double int_s = 0.0, int_s2 = 0.0, vol = 0.0;

    for_each_quadrature_node(m, grid, [&](const Eigen::VectorXd& u, double w) {
        const double area = m.metric_and_area(u).sqrt_det;
        const double s = shape_operator(m, u, h).S;
        int_s += w * area * s;
        int_s2 += w * area * s * s;
        vol += w * area;
        if (s < s_min) { s_min = s; argmin = u; }
        if (s > s_max) { s_max = s; argmax = u; }
    });

    // one local refinement pass around each extremal node
    auto refine = [&](const Eigen::VectorXd& center, bool maximize) {
        double best = maximize ? s_max : s_min;
        Eigen::VectorXd best_u = center;
        const int probes = 7;
        std::vector<int> idx(m.dim(), 0);
        long total = 1;
        for (int d = 0; d < m.dim(); ++d) total *= probes;
        for (long flat = 0; flat < total; ++flat) {
            long rem = flat;
            Eigen::VectorXd u = center;
            bool ok = true;
            for (int d = 0; d < m.dim(); ++d) {
                const int i = static_cast<int>(rem % probes);
                rem /= probes;
                const Interval& iv = m.domain()[d];
                const double spacing = iv.length() / grid.nodes_per_dim[d];
                u[d] = center[d] + (i - probes / 2) * spacing / probes;
                if (!iv.periodic && (u[d] - h < iv.lo || u[d] + h > iv.hi)) ok = false;
            }
            if (!ok) continue;
            const double s = shape_operator(m, u, h).S;
            if (maximize ? s > best : s < best) {
                best = s;
                best_u = u;
            }
        }
        if (maximize) { s_max = best; argmax = best_u; }
        else { s_min = best; argmin = best_u; }
    };
    refine(argmax, true);
    refine(argmin, false);

    out.stats = {s_min, s_max, int_s, int_s2, vol};
    out.argmax_u = argmax;
    out.argmin_u = argmin;
    return out;
}

IeChecks ie_checks(const ChartedImmersion& m,
                   const std::vector<Eigen::VectorXd>& a_samples,
                   const GridSpec& grid, double h) {
    require_hypersurface(m, "ie_checks");
    if (grid.rule == QuadRule::monte_carlo)
        throw ConfigError("ie_checks: deterministic rule required");
    if (a_samples.empty()) throw std::domain_error("ie_checks: need sample directions");

    IeChecks out;
    const std::size_t dirs = a_samples.size();
    std::vector<double> int_phi2(dirs, 0.0), int_psi2(dirs, 0.0), int_cross(dirs, 0.0);

    for_each_quadrature_node(m, grid, [&](const Eigen::VectorXd& u, double w) {
        const double area = m.metric_and_area(u).sqrt_det;
        const Eigen::VectorXd f = m.eval(u);
        const Eigen::VectorXd nu = m.unit_normal(u);
        const double f3 = shape_operator(m, u, h).f3;
        out.volume += w * area;
        for (std::size_t k = 0; k < dirs; ++k) {
            const double phi = a_samples[k].dot(f);
            const double psi = a_samples[k].dot(nu);
            int_phi2[k] += w * area * phi * phi;
            int_psi2[k] += w * area * psi * psi;
            int_cross[k] += w * area * phi * psi * f3;
        }
    });

    const double target = out.volume / (m.dim() + 2.0);
    for (std::size_t k = 0; k < dirs; ++k) {
        out.per_direction.push_back({a_samples[k], int_phi2[k], int_psi2[k], int_cross[k]});
        out.max_phi2_residual = std::max(out.max_phi2_residual, std::abs(int_phi2[k] - target));
        out.max_psi2_residual = std::max(out.max_psi2_residual, std::abs(int_psi2[k] - target));
        out.max_equality_residual =
            std::max(out.max_equality_residual, std::abs(int_phi2[k] - int_psi2[k]));
        out.max_f3_residual = std::max(out.max_f3_residual, std::abs(int_cross[k]));
    }
    return out;
}

SimonsResidual simons_residual(const ChartedImmersion& m, const Eigen::VectorXd& u,
                               double h) {
    require_hypersurface(m, "simons_residual");
    if (!(h > 0.0)) throw std::domain_error("simons_residual: step must be positive");
    const Eigen::VectorXd u0 = m.wrap(u);
    const double h_inner = h / 10.0;
    check_stencil(m, u0, 2.0 * h + 2.0 * h_inner, "simons_residual");

    const int n = m.dim();

    auto scalar_s = [&](const Eigen::VectorXd& at) {
        Eigen::VectorXd v(1);
        v[0] = shape_operator(m, at, h_inner).S;
        return v;
    };

    // coordinate second fundamental form via first differences of the
    // analytic Jacobian
    auto coord_h = [&](const Eigen::VectorXd& at) {
        const Eigen::VectorXd nu = m.unit_normal(at);
        Eigen::MatrixXd hmat(n, n);
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd up = at, um = at;
            up[i] += h_inner;
            um[i] -= h_inner;
            const Eigen::MatrixXd dj = (m.jacobian(up) - m.jacobian(um)) / (2.0 * h_inner);
            for (int j = 0; j < n; ++j) hmat(i, j) = nu.dot(dj.col(j));
        }
        return Eigen::MatrixXd(0.5 * (hmat + hmat.transpose()));
    };

    const double s0 = scalar_s(u0)[0];
    const double lap_s = fd_laplace_beltrami(m, scalar_s, u0, h)[0];

    const Eigen::MatrixXd g0 = m.metric_and_area(u0).g;
    const Eigen::MatrixXd g_inv =
        Eigen::LLT<Eigen::MatrixXd>(g0).solve(Eigen::MatrixXd::Identity(n, n));

    Eigen::VectorXd grad_s(n);
    std::vector<Eigen::MatrixXd> dh(n), dg(n);
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXd up = u0, um = u0;
        up[k] += h;
        um[k] -= h;
        grad_s[k] = (scalar_s(up)[0] - scalar_s(um)[0]) / (2.0 * h);
        dh[k] = (coord_h(up) - coord_h(um)) / (2.0 * h);
        dg[k] = (m.metric_and_area(up).g - m.metric_and_area(um).g) / (2.0 * h);
    }
    const double grad_s_sq = grad_s.dot(g_inv * grad_s);

    // Christoffel symbols from the metric differences
    std::vector<Eigen::MatrixXd> gamma(n);  // gamma[l](k, i)
    for (int l = 0; l < n; ++l) gamma[l] = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                double acc = 0.0;
                for (int mm = 0; mm < n; ++mm)
                    acc += g_inv(l, mm) * (dg[k](mm, i) + dg[i](mm, k) - dg[mm](k, i));
                gamma[l](k, i) = 0.5 * acc;
            }

    const Eigen::MatrixXd h0 = coord_h(u0);
    // covariant derivative h_ijk = d_k h_ij - Gamma^l_{ki} h_lj - Gamma^l_{kj} h_il
    std::vector<Eigen::MatrixXd> hcov(n);
    for (int k = 0; k < n; ++k) {
        hcov[k] = dh[k];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l)
                    hcov[k](i, j) -= gamma[l](k, i) * h0(l, j) + gamma[l](k, j) * h0(i, l);
    }

    double grad_h_sq = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int ai = 0; ai < n; ++ai)
                    for (int bj = 0; bj < n; ++bj)
                        for (int ck = 0; ck < n; ++ck)
                            grad_h_sq += g_inv(i, ai) * g_inv(j, bj) * g_inv(k, ck) *
                                         hcov[k](i, j) * hcov[ck](ai, bj);

    SimonsResidual out;
    out.s_value = s0;
    out.laplace_s = lap_s;
    out.grad_h_sq = grad_h_sq;
    out.grad_s_sq = grad_s_sq;
    out.identity_residual = std::abs(0.5 * lap_s - grad_h_sq - s0 * (n - s0));
    out.grad_bound_slack = 4.0 * s0 * grad_h_sq - grad_s_sq;
    return out;
}

SimonsResidual simons_residual_checked(const ChartedImmersion& m,
                                       const Eigen::VectorXd& u, double h) {
    const SimonsResidual requested = simons_residual(m, u, h);
    const SimonsResidual coarse = simons_residual(m, u, 2.0 * h);
    const double floor = 1e-4;  // residuals below this are inconsequential
    if (requested.identity_residual > floor &&
        requested.identity_residual > 1.5 * coarse.identity_residual)
        throw StepSizeError("simons_residual: residual grows under h-refinement; "
                            "the step has reached the cancellation noise floor");
    return requested;
}

std::string curvature_csv_header(int dim) {
    std::ostringstream os;
    for (int d = 0; d < dim; ++d) os << "u" << d << ",";
    for (int d = 0; d < dim; ++d) os << "lambda" << d << ",";
    os << "S,f3,r_scalar,psi_a";
    return os.str();
}

std::string curvature_csv_row(const CurvatureSample& sample) {
    char buf[64];
    std::ostringstream os;
    auto emit = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        os << buf;
    };
    for (int d = 0; d < sample.u.size(); ++d) { emit(sample.u[d]); os << ","; }
    for (int d = 0; d < sample.eigenvalues.size(); ++d) { emit(sample.eigenvalues[d]); os << ","; }
    emit(sample.S); os << ",";
    emit(sample.f3); os << ",";
    emit(sample.r_scalar); os << ",";
    if (sample.psi_a) emit(*sample.psi_a);
    return os.str();
}

} // namespace sphgap
