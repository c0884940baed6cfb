#pragma once

#include "sphgap/immersion.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sphgap {

enum class QuadRule { periodic_trapezoid, gauss_legendre, monte_carlo };
enum class ErrorModel { none, richardson };

/// Quadrature plan for one manifold.  Deterministic rules build a tensor
/// grid whose 1-D factor is the trapezoid rule on periodic coordinates and
/// Gauss-Legendre on non-periodic ones; monte-carlo samples the parameter
/// box uniformly with a reproducible generator.
struct GridSpec {
    std::vector<int> nodes_per_dim;
    QuadRule rule = QuadRule::periodic_trapezoid;
    std::uint64_t seed = 0;
    int boundary_refine_depth = 6;
    ErrorModel error_model = ErrorModel::none;

    static GridSpec defaults_for(const ChartedImmersion& m);

    GridSpec halved() const;
    std::string summary() const;
};

struct IntegralResult {
    double value = 0.0;
    double err_est = 0.0;
};

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

/// Integral of field over M:  sum of w_i * field(u_i) * sqrt(det g(u_i)).
IntegralResult integrate(const ChartedImmersion& m, const ScalarField& field,
                         const GridSpec& grid);

/// Integral of field over the slab {s <= phi_a <= t}.  Cells are classified
/// by the sign pattern of phi_a - s and t - phi_a at their vertices;
/// straddling cells are bisected boundary_refine_depth times and the
/// remaining unresolved mass is reported in err_est.
IntegralResult integrate_where(const ChartedImmersion& m, const ScalarField& field,
                               const Eigen::VectorXd& a, double s, double t,
                               const GridSpec& grid);

/// Suffix sums of field mass over super-level sets of phi_a in one sample
/// pass: returns (r, integral over {phi_a >= r}) for every r in r_grid.
std::vector<std::pair<double, double>> cumulative_profile(
    const ChartedImmersion& m, const Eigen::VectorXd& a, const ScalarField& field,
    const std::vector<double>& r_grid, const GridSpec& grid);

/// Same single pass for several fields at once; result[k][i] pairs with
/// r_grid[i] for field k.
std::vector<std::vector<double>> cumulative_profiles(
    const ChartedImmersion& m, const Eigen::VectorXd& a,
    const std::vector<ScalarField>& fields, const std::vector<double>& r_grid,
    const GridSpec& grid);

struct CumulativeProfiles {
    std::vector<std::vector<double>> values;    ///< [field][r]
    /// Per-sample mass scale of the levels bracketing each cut: the
    /// quantization granularity of the suffix sum at that r.
    std::vector<std::vector<double>> cut_mass;  ///< [field][r]
};

CumulativeProfiles cumulative_profiles_detailed(
    const ChartedImmersion& m, const Eigen::VectorXd& a,
    const std::vector<ScalarField>& fields, const std::vector<double>& r_grid,
    const GridSpec& grid);

/// Gauss-Legendre nodes and weights on [lo, hi].
void gauss_legendre_nodes(int count, double lo, double hi,
                          std::vector<double>& x, std::vector<double>& w);

/// Iterates the deterministic tensor plan in its fixed order, calling
/// visit(u, w) for every node (w excludes the area element).
void for_each_quadrature_node(
    const ChartedImmersion& m, const GridSpec& grid,
    const std::function<void(const Eigen::VectorXd&, double)>& visit);

// Detailed region integration used by the height module (shared level-set
// machinery behind integrate_where).
struct RegionBox {
    std::vector<double> lo, hi;
};

struct RegionIntegrals {
    std::vector<double> inside;         ///< per-field integral over {s <= level <= t}
    std::vector<double> outside;        ///< per-field integral over the complement
    std::vector<double> err_per_field;  ///< unresolved straddling mass bound
    long inside_nodes = 0;              ///< quadrature nodes classified inside
};

RegionIntegrals region_integrate(const ChartedImmersion& m,
                                 const std::vector<ScalarField>& fields,
                                 const ScalarField& level, double s, double t,
                                 const std::vector<int>& cells_per_dim,
                                 int refine_depth,
                                 const std::optional<RegionBox>& box = std::nullopt);

/// Worker-thread cap for node evaluation (1 = sequential).  Reductions use
/// fixed chunk boundaries, so results are identical for any thread count.
void set_max_threads(int count);
int max_threads();

} // namespace sphgap
