#pragma once

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sphgap {

/// One chart coordinate interval.  Periodic coordinates wrap modulo the
/// interval length; non-periodic ones reject evaluation outside [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool periodic = false;

    double length() const { return hi - lo; }
};

/// A parametrized closed minimal submanifold of the round unit sphere S^N,
/// given by a single product chart.  Values are immutable after construction
/// and every evaluator is pure, so instances are safe to share across threads.
class ChartedImmersion {
public:
    using EvalFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
    using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

    ChartedImmersion(std::string name, int n, int ambient_n,
                     std::vector<Interval> domain, EvalFn eval,
                     JacobianFn analytic_jacobian, bool antipodal_invariant,
                     std::optional<int> known_multiplicity);

    const std::string& name() const { return name_; }
    int dim() const { return n_; }           ///< intrinsic dimension n
    int ambient_dim() const { return big_n_; } ///< M^n is immersed in S^N
    int ambient_coords() const { return big_n_ + 1; }
    const std::vector<Interval>& domain() const { return domain_; }
    bool is_hypersurface() const { return big_n_ == n_ + 1; }
    bool antipodal_invariant() const { return antipodal_invariant_; }
    std::optional<int> known_multiplicity() const { return known_multiplicity_; }
    bool has_analytic_jacobian() const { return analytic_jacobian_ != nullptr; }

    /// Wraps periodic coordinates into their base interval; throws
    /// std::domain_error if a non-periodic coordinate is out of range.
    Eigen::VectorXd wrap(Eigen::VectorXd u) const;

    /// f(u), a unit vector in R^{N+1}.
    Eigen::VectorXd eval(const Eigen::VectorXd& u) const;

    /// (N+1) x n Jacobian; analytic when available, else central differences.
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const;

    struct Metric {
        Eigen::MatrixXd g;   ///< induced metric J^T J
        double sqrt_det = 0; ///< area element
    };
    /// Induced metric and area element; throws DegeneracyError where the
    /// Jacobian loses rank.
    Metric metric_and_area(const Eigen::VectorXd& u) const;

    /// Unit normal of a hypersurface, orthogonal to f(u) and to the tangent
    /// space, with sign fixed by det[f, J_1, ..., J_n, nu] > 0.
    Eigen::VectorXd unit_normal(const Eigen::VectorXd& u) const;

    /// Copy whose Jacobian is computed by central differences of eval with
    /// the given step; used as a cross-check oracle for the analytic one.
    ChartedImmersion with_fd_jacobian(double step) const;

private:
    std::string name_;
    int n_ = 0;
    int big_n_ = 0;
    std::vector<Interval> domain_;
    EvalFn eval_;
    JacobianFn analytic_jacobian_;
    double fd_step_ = 0.0;
    bool antipodal_invariant_ = false;
    std::optional<int> known_multiplicity_;
};

/// Totally geodesic S^n inside S^N, hyperspherical angles, zero-padded.
ChartedImmersion make_equator(int n, int ambient_n);

/// Minimal Clifford torus M_{k,n-k} in S^{n+1}.
ChartedImmersion make_clifford(int k, int n);

/// m-fold cover of a great circle in S^N: domain [0, 2*pi*m), every image
/// point has exactly m distinct preimages.
ChartedImmersion make_covered_circle(int m, int ambient_n);

/// Parses "equator:n,N", "clifford:k,n", "covered-circle:m,N".
ChartedImmersion make_by_name(std::string_view name);

/// Preimage clusters of an ambient point p: dense scan, Gauss-Newton
/// refinement, then single-linkage clustering in parameter space.  Returns
/// the refined cluster representatives (empty if p is off the image by more
/// than tol).  Throws ResolutionError when two clusters are too close to
/// distinguish at this tolerance.
std::vector<Eigen::VectorXd> preimage_points(const ChartedImmersion& m,
                                             const Eigen::VectorXd& p,
                                             double tol = 1e-8);

/// Number of distinct preimages of p, per preimage_points.
int preimage_count(const ChartedImmersion& m, const Eigen::VectorXd& p,
                   double tol = 1e-8);

/// Finite-difference Laplace-Beltrami of a (vector-valued) field on the
/// chart: Delta F = g^{ij} d2_ij F + b^j d_j F with the metric terms taken
/// from the immersion's Jacobian.  Second-order accurate in h.
Eigen::VectorXd fd_laplace_beltrami(
    const ChartedImmersion& m,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& field,
    const Eigen::VectorXd& u, double h);

/// Takahashi residual |Delta_M f + n f| at u; O(h^2) for catalog members.
double minimality_residual(const ChartedImmersion& m, const Eigen::VectorXd& u,
                           double h);

} // namespace sphgap
