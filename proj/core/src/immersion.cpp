#include "sphgap/immersion.hpp"

#include "sphgap/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sphgap {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

std::string point_to_string(const Eigen::VectorXd& u) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < u.size(); ++i) os << (i ? ", " : "") << u[i];
    os << ")";
    return os.str();
}

// Hyperspherical chart of the round unit S^d:
//   x_i = prod_{j<i} sin(t_j) * cos(t_i)   (i < d)
//   x_d = prod_{j<d} sin(t_j)
// t_0..t_{d-2} in [0, pi], t_{d-1} in [0, 2pi) periodic.
Eigen::VectorXd sphere_chart_eval(const Eigen::VectorXd& t) {
    const int d = static_cast<int>(t.size());
    Eigen::VectorXd x(d + 1);
    double prefix = 1.0;
    for (int i = 0; i < d; ++i) {
        x[i] = prefix * std::cos(t[i]);
        prefix *= std::sin(t[i]);
    }
    x[d] = prefix;
    return x;
}

Eigen::MatrixXd sphere_chart_jacobian(const Eigen::VectorXd& t) {
    const int d = static_cast<int>(t.size());
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(d + 1, d);
    std::vector<double> prefix(d + 1, 1.0);
    for (int j = 0; j < d; ++j) prefix[j + 1] = prefix[j] * std::sin(t[j]);
    for (int k = 0; k < d; ++k) {
        jac(k, k) = -prefix[k] * std::sin(t[k]);
        double run = prefix[k] * std::cos(t[k]);
        for (int i = k + 1; i < d; ++i) {
            jac(i, k) = run * std::cos(t[i]);
            run *= std::sin(t[i]);
        }
        jac(d, k) = run;
    }
    return jac;
}

std::vector<Interval> sphere_chart_domain(int d) {
    std::vector<Interval> dom(d);
    for (int i = 0; i + 1 < d; ++i) dom[i] = {0.0, M_PI, false};
    dom[d - 1] = {0.0, kTwoPi, true};
    return dom;
}

double periodic_delta(double a, double b, const Interval& iv) {
    double delta = a - b;
    if (iv.periodic) {
        const double len = iv.length();
        delta = std::remainder(delta, len);
    }
    return delta;
}

double param_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                      const std::vector<Interval>& dom) {
    double acc = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        const double d = periodic_delta(a[i], b[i], dom[i]);
        acc += d * d;
    }
    return std::sqrt(acc);
}

} // namespace

ChartedImmersion::ChartedImmersion(std::string name, int n, int ambient_n,
                                   std::vector<Interval> domain, EvalFn eval,
                                   JacobianFn analytic_jacobian,
                                   bool antipodal_invariant,
                                   std::optional<int> known_multiplicity)
    : name_(std::move(name)),
      n_(n),
      big_n_(ambient_n),
      domain_(std::move(domain)),
      eval_(std::move(eval)),
      analytic_jacobian_(std::move(analytic_jacobian)),
      antipodal_invariant_(antipodal_invariant),
      known_multiplicity_(known_multiplicity) {
    if (n_ < 1 || big_n_ <= n_)
        throw std::domain_error("ChartedImmersion: require 1 <= n < N");
    if (static_cast<int>(domain_.size()) != n_)
        throw std::domain_error("ChartedImmersion: domain rank != n");
}

Eigen::VectorXd ChartedImmersion::wrap(Eigen::VectorXd u) const {
    if (u.size() != n_)
        throw std::domain_error("ChartedImmersion: parameter point has wrong rank");
    for (int i = 0; i < n_; ++i) {
        const Interval& iv = domain_[i];
        if (iv.periodic) {
            double v = std::fmod(u[i] - iv.lo, iv.length());
            if (v < 0.0) v += iv.length();
            u[i] = iv.lo + v;
        } else if (u[i] < iv.lo - 1e-12 || u[i] > iv.hi + 1e-12) {
            throw std::domain_error("ChartedImmersion: coordinate " +
                                    std::to_string(i) + " outside non-periodic interval at " +
                                    point_to_string(u));
        } else {
            u[i] = std::clamp(u[i], iv.lo, iv.hi);
        }
    }
    return u;
}

Eigen::VectorXd ChartedImmersion::eval(const Eigen::VectorXd& u) const {
    return eval_(wrap(u));
}

Eigen::MatrixXd ChartedImmersion::jacobian(const Eigen::VectorXd& u) const {
    const Eigen::VectorXd w = wrap(u);
    if (analytic_jacobian_) return analytic_jacobian_(w);
    const double h = fd_step_ > 0.0 ? fd_step_ : 1e-6;
    Eigen::MatrixXd jac(big_n_ + 1, n_);
    for (int d = 0; d < n_; ++d) {
        Eigen::VectorXd up = w, um = w;
        up[d] += h;
        um[d] -= h;
        jac.col(d) = (eval(up) - eval(um)) / (2.0 * h);
    }
    return jac;
}

ChartedImmersion::Metric ChartedImmersion::metric_and_area(const Eigen::VectorXd& u) const {
    const Eigen::MatrixXd jac = jacobian(u);
    Metric m;
    m.g = jac.transpose() * jac;
    Eigen::LLT<Eigen::MatrixXd> llt(m.g);
    if (llt.info() != Eigen::Success)
        throw DegeneracyError("metric degenerate (rank-deficient Jacobian) at " +
                              point_to_string(wrap(u)));
    m.sqrt_det = llt.matrixL().toDenseMatrix().diagonal().prod();
    if (!(m.sqrt_det > 0.0))
        throw DegeneracyError("vanishing area element at " + point_to_string(wrap(u)));
    return m;
}

Eigen::VectorXd ChartedImmersion::unit_normal(const Eigen::VectorXd& u) const {
    if (!is_hypersurface())
        throw std::domain_error("unit_normal: " + name_ + " is not a hypersurface (N != n+1)");
    const Eigen::VectorXd w = wrap(u);
    const Eigen::VectorXd f = eval(w);
    const Eigen::MatrixXd jac = jacobian(w);
    const int coords = big_n_ + 1;  // n + 2 ambient coordinates

    // generalized cross product of (f, J_1, ..., J_n): the cofactor identity
    // <nu_raw, x> = det[f, J_1, ..., J_n, x] makes det[f, J, nu] = |nu_raw|^2,
    // so the orientation convention det > 0 holds by construction
    Eigen::MatrixXd stack(coords, n_ + 1);
    stack.col(0) = f;
    for (int i = 0; i < n_; ++i) stack.col(i + 1) = jac.col(i);

    Eigen::VectorXd nu(coords);
    Eigen::MatrixXd minor(n_ + 1, n_ + 1);
    for (int i = 0; i < coords; ++i) {
        int r = 0;
        for (int row = 0; row < coords; ++row) {
            if (row == i) continue;
            minor.row(r++) = stack.row(row);
        }
        const double sign = (coords - 1 - i) % 2 == 0 ? 1.0 : -1.0;
        nu[i] = sign * minor.determinant();
    }
    const double norm = nu.norm();
    if (!(norm > 1e-10))
        throw DegeneracyError("unit_normal: tangent span degenerate at " + point_to_string(w));
    return nu / norm;
}

ChartedImmersion ChartedImmersion::with_fd_jacobian(double step) const {
    ChartedImmersion copy = *this;
    copy.analytic_jacobian_ = nullptr;
    copy.fd_step_ = step;
    return copy;
}

ChartedImmersion make_equator(int n, int ambient_n) {
    if (n < 1 || n >= ambient_n)
        throw std::domain_error("make_equator: require 1 <= n < N");
    const int coords = ambient_n + 1;
    auto eval = [n, coords](const Eigen::VectorXd& u) {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(coords);
        out.head(n + 1) = sphere_chart_eval(u);
        return out;
    };
    auto jac = [n, coords](const Eigen::VectorXd& u) {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(coords, n);
        out.topRows(n + 1) = sphere_chart_jacobian(u);
        return out;
    };
    std::string name = "equator:" + std::to_string(n) + "," + std::to_string(ambient_n);
    return ChartedImmersion(std::move(name), n, ambient_n, sphere_chart_domain(n),
                            std::move(eval), std::move(jac),
                            /*antipodal=*/true, /*multiplicity=*/1);
}

ChartedImmersion make_clifford(int k, int n) {
    if (n < 2 || k < 1 || k > n - 1)
        throw std::domain_error("make_clifford: require 1 <= k <= n-1");
    const double r1 = std::sqrt(static_cast<double>(k) / n);
    const double r2 = std::sqrt(static_cast<double>(n - k) / n);
    const int d1 = k, d2 = n - k;
    auto eval = [=](const Eigen::VectorXd& u) {
        Eigen::VectorXd out(n + 2);
        out.head(d1 + 1) = r1 * sphere_chart_eval(u.head(d1));
        out.tail(d2 + 1) = r2 * sphere_chart_eval(u.tail(d2));
        return out;
    };
    auto jac = [=](const Eigen::VectorXd& u) {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n + 2, n);
        out.topLeftCorner(d1 + 1, d1) = r1 * sphere_chart_jacobian(u.head(d1));
        out.bottomRightCorner(d2 + 1, d2) = r2 * sphere_chart_jacobian(u.tail(d2));
        return out;
    };
    std::vector<Interval> dom = sphere_chart_domain(d1);
    const std::vector<Interval> dom2 = sphere_chart_domain(d2);
    dom.insert(dom.end(), dom2.begin(), dom2.end());
    std::string name = "clifford:" + std::to_string(k) + "," + std::to_string(n);
    return ChartedImmersion(std::move(name), n, n + 1, std::move(dom),
                            std::move(eval), std::move(jac),
                            /*antipodal=*/true, /*multiplicity=*/1);
}

ChartedImmersion make_covered_circle(int m, int ambient_n) {
    if (m < 2) throw std::domain_error("make_covered_circle: require m >= 2");
    if (ambient_n < 2) throw std::domain_error("make_covered_circle: require N >= 2");
    const int coords = ambient_n + 1;
    auto eval = [coords](const Eigen::VectorXd& u) {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(coords);
        out[0] = std::cos(u[0]);
        out[1] = std::sin(u[0]);
        return out;
    };
    auto jac = [coords](const Eigen::VectorXd& u) {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(coords, 1);
        out(0, 0) = -std::sin(u[0]);
        out(1, 0) = std::cos(u[0]);
        return out;
    };
    std::vector<Interval> dom{{0.0, kTwoPi * m, true}};
    std::string name = "covered-circle:" + std::to_string(m) + "," + std::to_string(ambient_n);
    return ChartedImmersion(std::move(name), 1, ambient_n, std::move(dom),
                            std::move(eval), std::move(jac),
                            /*antipodal=*/true, /*multiplicity=*/m);
}

ChartedImmersion make_by_name(std::string_view name) {
    const auto colon = name.find(':');
    const std::string family(name.substr(0, colon));
    std::vector<int> args;
    if (colon != std::string_view::npos) {
        std::string rest(name.substr(colon + 1));
        std::replace(rest.begin(), rest.end(), ',', ' ');
        std::istringstream is(rest);
        int v = 0;
        while (is >> v) args.push_back(v);
        if (!is.eof())
            throw std::invalid_argument("catalog: malformed arguments in '" + std::string(name) + "'");
    }
    const std::string listing =
        "known members: equator:n,N  clifford:k,n  covered-circle:m,N";
    if (family == "equator" && args.size() == 2) return make_equator(args[0], args[1]);
    if (family == "clifford" && args.size() == 2) return make_clifford(args[0], args[1]);
    if (family == "covered-circle" && args.size() == 2)
        return make_covered_circle(args[0], args[1]);
    throw std::invalid_argument("catalog: unknown member '" + std::string(name) + "'; " + listing);
}

namespace {

struct ScanCandidate {
    Eigen::VectorXd u;
    double dist = 0.0;
};

// Wrap periodic coordinates and clamp non-periodic ones into the chart.
Eigen::VectorXd clamp_into_chart(const ChartedImmersion& m, Eigen::VectorXd u) {
    const auto& dom = m.domain();
    for (int d = 0; d < m.dim(); ++d) {
        if (!dom[d].periodic) u[d] = std::clamp(u[d], dom[d].lo, dom[d].hi);
    }
    return m.wrap(std::move(u));
}

// Gauss-Newton polish of |f(u) - p|; returns false when the iteration runs
// into a chart degeneracy.
bool refine_preimage(const ChartedImmersion& m, const Eigen::VectorXd& p,
                     Eigen::VectorXd& u, double& dist) {
    for (int iter = 0; iter < 50; ++iter) {
        const Eigen::VectorXd r = p - m.eval(u);
        const Eigen::MatrixXd jac = m.jacobian(u);
        const Eigen::MatrixXd g = jac.transpose() * jac;
        Eigen::LLT<Eigen::MatrixXd> llt(g);
        if (llt.info() != Eigen::Success) return false;
        Eigen::VectorXd step = llt.solve(jac.transpose() * r);
        const double cap = 0.5;
        if (step.norm() > cap) step *= cap / step.norm();
        u = clamp_into_chart(m, u + step);
        if (step.norm() < 1e-13) break;
    }
    dist = (m.eval(u) - p).norm();
    return true;
}

} // namespace

std::vector<Eigen::VectorXd> preimage_points(const ChartedImmersion& m,
                                             const Eigen::VectorXd& p, double tol) {
    if (p.size() != m.ambient_coords())
        throw std::domain_error("preimage_points: ambient point has wrong dimension");
    if (!(tol > 0.0)) throw std::domain_error("preimage_points: tol must be positive");

    const auto& dom = m.domain();
    const int n = m.dim();

    std::vector<int> scan(n);
    const int base = n == 1 ? 256 : (n == 2 ? 96 : 32);
    for (int d = 0; d < n; ++d) {
        scan[d] = std::max(24, static_cast<int>(std::ceil(dom[d].length() / kTwoPi * base)));
    }

    double cell_sq = 0.0;
    for (int d = 0; d < n; ++d) {
        const double half = 0.5 * dom[d].length() / scan[d];
        cell_sq += half * half;
    }
    // Chart derivatives are bounded by 1 for every catalog family, so the
    // image moves at most by the parameter distance.
    const double thresh = 1.5 * std::sqrt(static_cast<double>(n)) * std::sqrt(cell_sq) + 10.0 * tol;

    std::vector<ScanCandidate> candidates;
    std::vector<int> idx(n, 0);
    Eigen::VectorXd u(n);
    const long total = std::accumulate(scan.begin(), scan.end(), 1L,
                                       [](long a, int b) { return a * b; });
    for (long flat = 0; flat < total; ++flat) {
        long rem = flat;
        for (int d = 0; d < n; ++d) {
            idx[d] = static_cast<int>(rem % scan[d]);
            rem /= scan[d];
            u[d] = dom[d].lo + (idx[d] + 0.5) * dom[d].length() / scan[d];
        }
        const double dist = (m.eval(u) - p).norm();
        if (dist < thresh) candidates.push_back({u, dist});
    }

    std::vector<ScanCandidate> accepted;
    for (auto& cand : candidates) {
        Eigen::VectorXd u_ref = cand.u;
        double dist = cand.dist;
        if (!refine_preimage(m, p, u_ref, dist)) continue;
        if (dist <= std::max(tol, 1e-11)) accepted.push_back({u_ref, dist});
    }
    if (accepted.empty()) return {};

    // single-linkage clustering in (periodic) parameter space
    const double radius = 10.0 * std::sqrt(tol);
    const int count = static_cast<int>(accepted.size());
    std::vector<int> parent(count);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int i = 0; i < count; ++i)
        for (int j = i + 1; j < count; ++j)
            if (param_distance(accepted[i].u, accepted[j].u, dom) < radius)
                parent[find(i)] = find(j);

    std::vector<ScanCandidate> reps;
    for (int root = 0; root < count; ++root) {
        if (find(root) != root) continue;
        int best = root;
        for (int i = 0; i < count; ++i)
            if (find(i) == root && accepted[i].dist < accepted[best].dist) best = i;
        reps.push_back(accepted[best]);
    }

    // Merge representatives connected through a chart-degenerate direction
    // (the path between them stays on the fiber of p), e.g. the azimuth
    // circle over a hyperspherical pole.
    const double seg_tol = std::max(1e-6, tol);
    std::vector<int> rep_parent(reps.size());
    std::iota(rep_parent.begin(), rep_parent.end(), 0);
    std::function<int(int)> rep_find = [&](int a) {
        while (rep_parent[a] != a) a = rep_parent[a] = rep_parent[rep_parent[a]];
        return a;
    };
    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            bool on_fiber = true;
            for (int s = 1; s <= 8 && on_fiber; ++s) {
                Eigen::VectorXd mid(n);
                for (int d = 0; d < n; ++d) {
                    const double delta = periodic_delta(reps[j].u[d], reps[i].u[d], dom[d]);
                    mid[d] = reps[i].u[d] + delta * s / 9.0;
                }
                if ((m.eval(mid) - p).norm() > seg_tol) on_fiber = false;
            }
            if (on_fiber) rep_parent[rep_find(i)] = rep_find(j);
        }
    }
    std::vector<Eigen::VectorXd> result;
    for (std::size_t root = 0; root < reps.size(); ++root) {
        if (static_cast<std::size_t>(rep_find(static_cast<int>(root))) != root) continue;
        int best = static_cast<int>(root);
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (static_cast<std::size_t>(rep_find(static_cast<int>(i))) == root &&
                reps[i].dist < reps[best].dist)
                best = static_cast<int>(i);
        result.push_back(reps[best].u);
    }

    for (std::size_t i = 0; i < result.size(); ++i)
        for (std::size_t j = i + 1; j < result.size(); ++j)
            if (param_distance(result[i], result[j], dom) < 2.0 * radius)
                throw ResolutionError(
                    "preimage clusters closer than twice the cluster radius; "
                    "refine the scan grid or tighten tol");

    return result;
}

int preimage_count(const ChartedImmersion& m, const Eigen::VectorXd& p, double tol) {
    return static_cast<int>(preimage_points(m, p, tol).size());
}

Eigen::VectorXd fd_laplace_beltrami(
    const ChartedImmersion& m,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& field,
    const Eigen::VectorXd& u, double h) {
    if (!(h > 0.0)) throw std::domain_error("fd_laplace_beltrami: step must be positive");
    const int n = m.dim();
    const Eigen::VectorXd u0 = m.wrap(u);
    for (int d = 0; d < n; ++d) {
        const Interval& iv = m.domain()[d];
        if (!iv.periodic && (u0[d] - h < iv.lo || u0[d] + h > iv.hi))
            throw std::domain_error("fd_laplace_beltrami: stencil leaves chart at coordinate " +
                                    std::to_string(d));
    }

    auto metric_terms = [&m](const Eigen::VectorXd& at, Eigen::MatrixXd& w, double& sdet) {
        const ChartedImmersion::Metric met = m.metric_and_area(at);
        Eigen::LLT<Eigen::MatrixXd> llt(met.g);
        w = llt.solve(Eigen::MatrixXd::Identity(met.g.rows(), met.g.cols())) * met.sqrt_det;
        sdet = met.sqrt_det;
    };

    Eigen::MatrixXd w0;
    double sdet0 = 0.0;
    metric_terms(u0, w0, sdet0);
    const Eigen::MatrixXd g_inv = w0 / sdet0;

    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd up = u0, um = u0;
        up[i] += h;
        um[i] -= h;
        Eigen::MatrixXd wp, wm;
        double sp = 0.0, sm = 0.0;
        metric_terms(up, wp, sp);
        metric_terms(um, wm, sm);
        for (int j = 0; j < n; ++j) b[j] += (wp(i, j) - wm(i, j)) / (2.0 * h);
    }
    b /= sdet0;

    const Eigen::VectorXd f0 = field(u0);
    const int q = static_cast<int>(f0.size());
    Eigen::VectorXd laplacian = Eigen::VectorXd::Zero(q);

    std::vector<Eigen::VectorXd> fp(n), fm(n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd up = u0, um = u0;
        up[i] += h;
        um[i] -= h;
        fp[i] = field(up);
        fm[i] = field(um);
    }
    for (int i = 0; i < n; ++i) {
        laplacian += g_inv(i, i) * (fp[i] - 2.0 * f0 + fm[i]) / (h * h);
        laplacian += b[i] * (fp[i] - fm[i]) / (2.0 * h);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (g_inv(i, j) == 0.0) continue;
            Eigen::VectorXd upp = u0, upm = u0, ump = u0, umm = u0;
            upp[i] += h; upp[j] += h;
            upm[i] += h; upm[j] -= h;
            ump[i] -= h; ump[j] += h;
            umm[i] -= h; umm[j] -= h;
            const Eigen::VectorXd mixed =
                (field(upp) - field(upm) - field(ump) + field(umm)) / (4.0 * h * h);
            laplacian += 2.0 * g_inv(i, j) * mixed;
        }
    }
    return laplacian;
}

double minimality_residual(const ChartedImmersion& m, const Eigen::VectorXd& u, double h) {
    const Eigen::VectorXd u0 = m.wrap(u);
    auto field = [&m](const Eigen::VectorXd& at) { return m.eval(at); };
    const Eigen::VectorXd lap = fd_laplace_beltrami(m, field, u0, h);
    return (lap + m.dim() * m.eval(u0)).norm();
}

} // namespace sphgap
