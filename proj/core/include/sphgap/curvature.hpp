#pragma once

#include "sphgap/immersion.hpp"
#include "sphgap/quadrature.hpp"
#include "sphgap/specfn.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace sphgap {

/// Second-fundamental-form data of a hypersurface at one parameter point,
/// expressed in an orthonormal tangent frame.
struct CurvatureSample {
    Eigen::VectorXd u;
    Eigen::MatrixXd shape;        ///< n x n symmetric shape operator
    Eigen::VectorXd eigenvalues;  ///< principal curvatures, ascending
    double S = 0.0;               ///< |A|^2
    double f3 = 0.0;              ///< Tr(A^3)
    double trace = 0.0;           ///< Tr(A); ~0 for minimal members
    double asymmetry = 0.0;       ///< max |A - A^T| before symmetrization
    double r_scalar = 0.0;        ///< scalar curvature n(n-1) - S
    std::optional<double> psi_a;  ///< <nu, a> when a direction was supplied
};

/// Shape operator from central differences of the unit normal along the
/// chart directions, projected to the tangent space and expressed in the
/// Gram-Schmidt frame of the Jacobian columns.
CurvatureSample shape_operator(const ChartedImmersion& m, const Eigen::VectorXd& u,
                               double h, const Eigen::VectorXd* a = nullptr);

struct SStatistics {
    specfn::SStats stats;
    Eigen::VectorXd argmax_u, argmin_u;
};

/// Grid extrema (with one local refinement pass around each extremal node)
/// and quadrature integrals of S and S^2.
SStatistics s_statistics(const ChartedImmersion& m, const GridSpec& grid,
                         double h = 1e-4);

/// The four integral conditions equivalent to the Integral-Einstein property
/// for minimal constant-scalar-curvature hypersurfaces, sampled over the
/// given directions.
struct IeChecks {
    double volume = 0.0;
    struct PerDirection {
        Eigen::VectorXd a;
        double int_phi2 = 0.0;
        double int_psi2 = 0.0;
        double int_phi_psi_f3 = 0.0;
    };
    std::vector<PerDirection> per_direction;
    double max_phi2_residual = 0.0;      ///< |int phi^2 - Vol/(n+2)|
    double max_psi2_residual = 0.0;      ///< |int psi^2 - Vol/(n+2)|
    double max_equality_residual = 0.0;  ///< |int phi^2 - int psi^2|
    double max_f3_residual = 0.0;        ///< |int phi psi f3|
};

IeChecks ie_checks(const ChartedImmersion& m,
                   const std::vector<Eigen::VectorXd>& a_samples,
                   const GridSpec& grid, double h = 1e-4);

/// Pointwise residual of (1/2) Delta S = |grad h|^2 + S(n - S) together with
/// the Cauchy-Schwarz slack 4 S |grad h|^2 - |grad S|^2 (>= 0 up to noise).
/// h is the outer step of the nested differences; first derivatives of the
/// normal use h/10.
struct SimonsResidual {
    double identity_residual = 0.0;
    double grad_bound_slack = 0.0;
    double laplace_s = 0.0;
    double grad_h_sq = 0.0;
    double grad_s_sq = 0.0;
    double s_value = 0.0;
};

SimonsResidual simons_residual(const ChartedImmersion& m, const Eigen::VectorXd& u,
                               double h = 1e-3);

/// Runs simons_residual at h and h/2 and throws StepSizeError when the
/// residual grows under refinement above the rounding floor.
SimonsResidual simons_residual_checked(const ChartedImmersion& m,
                                       const Eigen::VectorXd& u, double h = 1e-3);

std::string curvature_csv_header(int dim);
std::string curvature_csv_row(const CurvatureSample& sample);

} // namespace sphgap
