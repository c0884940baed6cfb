#pragma once

#include "sphgap/immersion.hpp"
#include "sphgap/quadrature.hpp"

#include <Eigen/Core>

#include <optional>
#include <utility>
#include <vector>

namespace sphgap {

/// Height function phi_a(u) = <f(u), a>.
double height(const ChartedImmersion& m, const Eigen::VectorXd& a,
              const Eigen::VectorXd& u);

/// Normal height psi_a(u) = <nu(u), a>; hypersurfaces only.
double normal_height(const ChartedImmersion& m, const Eigen::VectorXd& a,
                     const Eigen::VectorXd& u);

/// Squared length of the tangential component of a along M at u, computed by
/// projecting a onto the Jacobian's column space.
double tangent_sq(const ChartedImmersion& m, const Eigen::VectorXd& a,
                  const Eigen::VectorXd& u);

/// Sampled monotonicity data for one direction a:
///   F(r)   = (integral of phi_a over {phi_a >= r}) / (1-r^2)^{n/2}
///   cap(r) = Vol{phi_a >= r}
/// plus the cap-ratio sequence behind the density estimate xi(a).
struct HeightProfile {
    Eigen::VectorXd a;
    std::vector<double> r_values;
    std::vector<double> F_values, F_err;
    std::vector<double> cap_volumes, cap_err;
    std::vector<std::pair<double, double>> xi_sequence;  // (t_j, cap ratio)
    double xi_estimate = 0.0;
    double xi_err = 0.0;
};

/// F(r) and cap volumes over r_grid in one sample pass per resolution;
/// per-entry err from comparison against the halved grid.  Throws
/// DegeneracyError when M lies in {phi_a = 0} numerically.
HeightProfile monotone_profile(const ChartedImmersion& m, const Eigen::VectorXd& a,
                               const std::vector<double>& r_grid, const GridSpec& grid);

/// Largest violation of the two monotone branches (increasing on (-1,0],
/// decreasing on (0,1)) in excess of the per-entry error estimates.
/// Non-positive values mean the sampled profile is consistent.
double max_branch_violation(const HeightProfile& profile);

struct XiResult {
    double estimate = 0.0;
    double err_est = 0.0;
    std::vector<std::pair<double, double>> sequence;  // (t_j, cap ratio)
};

/// Density estimate xi(a): cap volumes Vol{phi_a >= t_j} on locally refined
/// boxes around each preimage cluster of a, normalized by
/// (1-t^2)^{n/2} Vol(B^n), then Richardson-extrapolated in t -> 1.  The
/// reported estimate is the minimum over the extrapolated tail.
XiResult xi_estimate(const ChartedImmersion& m, const Eigen::VectorXd& a,
                     std::vector<double> t_sequence = {},
                     double preimage_tol = 1e-8);

struct SlabCheck {
    double lhs = 0.0;      ///< Vol{s <= phi_a <= r}
    double rhs = 0.0;      ///< n xi Vol(B^n) integral of (1-t^2)^{(n-2)/2}
    double margin = 0.0;   ///< lhs - rhs
    double tol = 0.0;      ///< combined tolerance used for pass
    bool pass = false;
};

/// Slab volume lower bound test for given xi (from xi_estimate or a known
/// multiplicity); requires 0 <= s <= r <= 1.
SlabCheck slab_check(const ChartedImmersion& m, const Eigen::VectorXd& a,
                     double s, double r, double xi, const GridSpec& grid);

/// |Delta phi_a + n phi_a| at u via the metric finite-difference Laplacian.
double laplace_height_residual(const ChartedImmersion& m, const Eigen::VectorXd& a,
                               const Eigen::VectorXd& u, double h);

/// Every intermediate inequality in the volume lower-bound chain at an image
/// point p, with measured multiplicity m(p).
struct HalfspaceAudit {
    struct Line {
        double lhs = 0.0;
        double rhs = 0.0;
        double margin = 0.0;  ///< signed slack in the inequality's direction
        double tol = 0.0;
        bool pass = false;
    };
    int multiplicity = 0;
    Line halfspace_volume;  ///< Vol{phi_p >= 0}          >= (m/2) Vol(S^n)
    Line height_mass;       ///< int_{phi_p>=0} phi_p     >= m Vol(B^n)
    Line square_bound;      ///< (n+1) int_{phi<=0} phi^2 <= Vol{phi <= 0}
    Line balance;           ///< int_{phi>=0} phi = -int_{phi<=0} phi
    Line total_volume;      ///< Vol(M) >= (m/2)Vol(S^n) + m sqrt(n+1)/n Vol(S^{n-1})
};

HalfspaceAudit halfspace_audit(const ChartedImmersion& m, const Eigen::VectorXd& p,
                               const GridSpec& grid);

struct MeanSquareHeight {
    std::vector<double> values;  ///< int phi_a^2 per sampled direction
    double min = 0.0;
    double max = 0.0;
    double lower_bound = 0.0;    ///< Vol(S^n)/(n+1)
    std::optional<bool> bound_holds;  ///< set when M is antipodally invariant
};

/// Mean-square heights for directions sampled from the image f(M);
/// hypersurfaces only.
MeanSquareHeight mean_square_height(const ChartedImmersion& m,
                                    const std::vector<Eigen::VectorXd>& a_samples,
                                    const GridSpec& grid);

} // namespace sphgap
