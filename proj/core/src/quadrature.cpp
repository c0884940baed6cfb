#include "sphgap/quadrature.hpp"

#include "sphgap/errors.hpp"
#include "sphgap/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

namespace sphgap {

namespace {

std::atomic<int> g_max_threads{1};

struct Plan {
    std::vector<std::vector<double>> nodes;    // per dim
    std::vector<std::vector<double>> weights;  // per dim
    long total = 0;
};

void trapezoid_nodes(int count, double lo, double hi, std::vector<double>& x,
                     std::vector<double>& w) {
    x.resize(count);
    w.assign(count, (hi - lo) / count);
    for (int i = 0; i < count; ++i) x[i] = lo + i * (hi - lo) / count;
}

void validate(const ChartedImmersion& m, const GridSpec& grid) {
    if (static_cast<int>(grid.nodes_per_dim.size()) != m.dim())
        throw ConfigError("grid/manifold mismatch: " + std::to_string(grid.nodes_per_dim.size()) +
                          " node counts for an " + std::to_string(m.dim()) + "-dimensional chart");
    for (int c : grid.nodes_per_dim)
        if (c < 2) throw ConfigError("grid: need at least 2 nodes per dimension");
    const auto& dom = m.domain();
    const bool any_periodic =
        std::any_of(dom.begin(), dom.end(), [](const Interval& iv) { return iv.periodic; });
    const bool all_periodic =
        std::all_of(dom.begin(), dom.end(), [](const Interval& iv) { return iv.periodic; });
    if (grid.rule == QuadRule::periodic_trapezoid && !any_periodic)
        throw ConfigError("periodic-trapezoid rule on a chart with no periodic coordinate");
    if (grid.rule == QuadRule::gauss_legendre && all_periodic)
        throw ConfigError("gauss-legendre rule on a chart with no non-periodic coordinate");
}

Plan build_plan(const ChartedImmersion& m, const GridSpec& grid) {
    validate(m, grid);
    Plan plan;
    const int n = m.dim();
    plan.nodes.resize(n);
    plan.weights.resize(n);
    plan.total = 1;
    for (int d = 0; d < n; ++d) {
        const Interval& iv = m.domain()[d];
        if (iv.periodic)
            trapezoid_nodes(grid.nodes_per_dim[d], iv.lo, iv.hi, plan.nodes[d], plan.weights[d]);
        else
            gauss_legendre_nodes(grid.nodes_per_dim[d], iv.lo, iv.hi, plan.nodes[d], plan.weights[d]);
        plan.total *= grid.nodes_per_dim[d];
    }
    return plan;
}

template <typename Visitor>
void for_each_node(const Plan& plan, Visitor&& visit) {
    const int n = static_cast<int>(plan.nodes.size());
    Eigen::VectorXd u(n);
    std::vector<int> idx(n, 0);
    for (long flat = 0; flat < plan.total; ++flat) {
        long rem = flat;
        double w = 1.0;
        for (int d = 0; d < n; ++d) {
            idx[d] = static_cast<int>(rem % plan.nodes[d].size());
            rem /= static_cast<long>(plan.nodes[d].size());
            u[d] = plan.nodes[d][idx[d]];
            w *= plan.weights[d][idx[d]];
        }
        visit(u, w, flat);
    }
}

// Fixed chunk boundaries and a fixed combination order keep the reduction
// bitwise identical for every thread count.
double deterministic_value(const ChartedImmersion& m, const ScalarField& field,
                           const Plan& plan) {
    constexpr long kChunks = 64;
    const long chunks = std::min(kChunks, plan.total);
    std::vector<double> partial(chunks, 0.0);

    auto sum_chunk = [&](long c) {
        const long begin = c * plan.total / chunks;
        const long end = (c + 1) * plan.total / chunks;
        double acc = 0.0;
        const int n = static_cast<int>(plan.nodes.size());
        Eigen::VectorXd u(n);
        for (long flat = begin; flat < end; ++flat) {
            long rem = flat;
            double w = 1.0;
            for (int d = 0; d < n; ++d) {
                const int i = static_cast<int>(rem % plan.nodes[d].size());
                rem /= static_cast<long>(plan.nodes[d].size());
                u[d] = plan.nodes[d][i];
                w *= plan.weights[d][i];
            }
            acc += w * field(u) * m.metric_and_area(u).sqrt_det;
        }
        partial[c] = acc;
    };

    const int threads =
        static_cast<int>(std::min<long>(g_max_threads.load(), chunks));
    if (threads <= 1) {
        for (long c = 0; c < chunks; ++c) sum_chunk(c);
    } else {
        std::atomic<long> next{0};
        auto worker = [&]() {
            for (;;) {
                const long c = next.fetch_add(1);
                if (c >= chunks) return;
                sum_chunk(c);
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    double acc = 0.0;
    for (double p : partial) acc += p;
    return acc;
}

struct McSample {
    double value = 0.0;
    double err = 0.0;
};

McSample monte_carlo_value(const ChartedImmersion& m, const ScalarField& field,
                           const GridSpec& grid,
                           const ScalarField* level = nullptr, double s = 0.0,
                           double t = 0.0) {
    long total = 1;
    for (int c : grid.nodes_per_dim) total *= c;
    double box_vol = 1.0;
    for (const Interval& iv : m.domain()) box_vol *= iv.length();

    Xoshiro256 rng(grid.seed);
    const int n = m.dim();
    Eigen::VectorXd u(n);
    double sum = 0.0, sum_sq = 0.0;
    for (long i = 0; i < total; ++i) {
        for (int d = 0; d < n; ++d)
            u[d] = rng.uniform(m.domain()[d].lo, m.domain()[d].hi);
        double v = 0.0;
        bool in_region = true;
        if (level) {
            const double phi = (*level)(u);
            in_region = phi >= s && phi <= t;
        }
        if (in_region) v = field(u) * m.metric_and_area(u).sqrt_det;
        sum += v;
        sum_sq += v * v;
    }
    McSample out;
    const double mean = sum / total;
    out.value = mean * box_vol;
    const double var = std::max(0.0, sum_sq / total - mean * mean);
    out.err = box_vol * std::sqrt(var / total);
    return out;
}

} // namespace

void set_max_threads(int count) { g_max_threads.store(std::max(1, count)); }
int max_threads() { return g_max_threads.load(); }

void gauss_legendre_nodes(int count, double lo, double hi, std::vector<double>& x,
                          std::vector<double>& w) {
    if (count < 1) throw ConfigError("gauss_legendre_nodes: need at least one node");
    x.resize(count);
    w.resize(count);
    const int half = (count + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton from the Chebyshev estimate of the i-th root of P_count
        double z = std::cos(M_PI * (i + 0.75) / (count + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < count; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = count * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        const double xm = 0.5 * (hi + lo);
        const double xl = 0.5 * (hi - lo);
        x[i] = xm - xl * z;
        x[count - 1 - i] = xm + xl * z;
        w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        w[count - 1 - i] = w[i];
    }
}

GridSpec GridSpec::defaults_for(const ChartedImmersion& m) {
    GridSpec grid;
    const int n = m.dim();
    grid.nodes_per_dim.resize(n);
    for (int d = 0; d < n; ++d) {
        const bool periodic = m.domain()[d].periodic;
        if (n == 1)
            grid.nodes_per_dim[d] = 4096;
        else if (n == 2)
            grid.nodes_per_dim[d] = periodic ? 256 : 128;
        else
            grid.nodes_per_dim[d] = 48;
    }
    const bool any_periodic = std::any_of(m.domain().begin(), m.domain().end(),
                                          [](const Interval& iv) { return iv.periodic; });
    grid.rule = any_periodic ? QuadRule::periodic_trapezoid : QuadRule::gauss_legendre;
    grid.boundary_refine_depth = n >= 3 ? 3 : 6;
    return grid;
}

GridSpec GridSpec::halved() const {
    GridSpec half = *this;
    for (int& c : half.nodes_per_dim) c = std::max(4, c / 2);
    return half;
}

std::string GridSpec::summary() const {
    std::ostringstream os;
    switch (rule) {
        case QuadRule::periodic_trapezoid: os << "periodic-trapezoid"; break;
        case QuadRule::gauss_legendre: os << "gauss-legendre"; break;
        case QuadRule::monte_carlo: os << "monte-carlo"; break;
    }
    os << " nodes=";
    for (std::size_t i = 0; i < nodes_per_dim.size(); ++i)
        os << (i ? "x" : "") << nodes_per_dim[i];
    os << " depth=" << boundary_refine_depth;
    if (rule == QuadRule::monte_carlo) os << " seed=" << seed;
    return os.str();
}

void for_each_quadrature_node(
    const ChartedImmersion& m, const GridSpec& grid,
    const std::function<void(const Eigen::VectorXd&, double)>& visit) {
    if (grid.rule == QuadRule::monte_carlo)
        throw ConfigError("for_each_quadrature_node: deterministic rule required");
    const Plan plan = build_plan(m, grid);
    for_each_node(plan, [&](const Eigen::VectorXd& u, double w, long) { visit(u, w); });
}

IntegralResult integrate(const ChartedImmersion& m, const ScalarField& field,
                         const GridSpec& grid) {
    if (grid.rule == QuadRule::monte_carlo) {
        validate(m, grid);
        const McSample mc = monte_carlo_value(m, field, grid);
        return {mc.value, grid.error_model == ErrorModel::richardson ? mc.err : 0.0};
    }
    const Plan plan = build_plan(m, grid);
    const double value = deterministic_value(m, field, plan);
    double err = 0.0;
    if (grid.error_model == ErrorModel::richardson) {
        const Plan coarse = build_plan(m, grid.halved());
        err = std::abs(value - deterministic_value(m, field, coarse));
    }
    return {value, err};
}

namespace {

// Volume fraction of the unit box [0,1]^n where sum_i a_i x_i <= z, for
// non-negative slopes a_i (the piecewise-polynomial CDF of a weighted sum of
// uniforms).
double box_halfspace_fraction(const std::vector<double>& a, double z) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return z >= 0.0 ? 1.0 : 0.0;
    double denom = 1.0;
    for (int i = 0; i < n; ++i) denom *= a[i] * (i + 1);
    double acc = 0.0;
    for (int mask = 0; mask < (1 << n); ++mask) {
        double shifted = z;
        int bits = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) {
                shifted -= a[i];
                ++bits;
            }
        if (shifted <= 0.0) continue;
        acc += (bits % 2 ? -1.0 : 1.0) * std::pow(shifted, n);
    }
    return std::clamp(acc / denom, 0.0, 1.0);
}

// Fraction of an axis box where the affine fit of the level lies in [s, t].
double affine_cut_fraction(const std::vector<double>& vertex_values, int n, double s,
                           double t) {
    const int corners = 1 << n;
    double mean = 0.0;
    for (double v : vertex_values) mean += v;
    mean /= corners;

    double base = mean;
    std::vector<double> slope;
    slope.reserve(n);
    const double scale = std::max(1.0, std::abs(mean));
    for (int i = 0; i < n; ++i) {
        double diff = 0.0;
        for (int corner = 0; corner < corners; ++corner)
            diff += (corner & (1 << i)) ? vertex_values[corner] : -vertex_values[corner];
        diff /= corners / 2;
        base -= 0.5 * diff;
        if (diff < 0.0) {
            base += diff;
            diff = -diff;
        }
        if (diff > 1e-14 * scale) slope.push_back(diff);
    }
    if (slope.empty()) return (base >= s && base <= t) ? 1.0 : 0.0;
    return box_halfspace_fraction(slope, t - base) -
           box_halfspace_fraction(slope, s - base);
}

// Recursive cell bisection against the slab {s <= level <= t}.
//
// state codes from vertex values: 0 = entirely below s, 1 = inside, 2 =
// entirely above t, 3 = straddling.
class RegionWorker {
public:
    RegionWorker(const ChartedImmersion& m, const std::vector<ScalarField>& fields,
                 const ScalarField& level, double s, double t, int depth)
        : inside_(fields.size(), 0.0), outside_(fields.size(), 0.0),
          err_(fields.size(), 0.0), m_(m), fields_(fields), level_(level),
          s_(s), t_(t), depth_(depth), n_(m.dim()) {}

    void run(const std::vector<int>& cells, const RegionBox& box) {
        std::vector<int> idx(n_, 0);
        std::vector<double> lo(n_), hi(n_);
        long total = 1;
        for (int c : cells) total *= c;
        for (long flat = 0; flat < total; ++flat) {
            long rem = flat;
            for (int d = 0; d < n_; ++d) {
                idx[d] = static_cast<int>(rem % cells[d]);
                rem /= cells[d];
                const double width = (box.hi[d] - box.lo[d]) / cells[d];
                lo[d] = box.lo[d] + idx[d] * width;
                hi[d] = lo[d] + width;
            }
            cell(lo, hi, depth_);
        }
    }

    std::vector<double> inside_, outside_, err_;
    long inside_nodes_ = 0;

private:
    int classify_vertices(const std::vector<double>& lo, const std::vector<double>& hi,
                          std::vector<double>& vertex_values) {
        bool any_below = false, any_above = false, any_inside = false;
        Eigen::VectorXd u(n_);
        vertex_values.resize(1 << n_);
        for (int corner = 0; corner < (1 << n_); ++corner) {
            for (int d = 0; d < n_; ++d) u[d] = (corner >> d) & 1 ? hi[d] : lo[d];
            const double v = level_(u);
            vertex_values[corner] = v;
            if (v < s_) any_below = true;
            else if (v > t_) any_above = true;
            else any_inside = true;
        }
        if (any_inside && !any_below && !any_above) return 1;
        if (any_below && !any_inside && !any_above) return 0;
        if (any_above && !any_inside && !any_below) return 2;
        return 3;
    }

    // tensor 2-point Gauss rule over the cell
    template <typename PerNode>
    void local_nodes(const std::vector<double>& lo, const std::vector<double>& hi,
                     PerNode&& per_node) {
        constexpr double kOffset = 0.28867513459481288225;  // 1/(2 sqrt 3)
        Eigen::VectorXd u(n_);
        double w_cell = 1.0;
        for (int d = 0; d < n_; ++d) w_cell *= 0.5 * (hi[d] - lo[d]);
        for (int corner = 0; corner < (1 << n_); ++corner) {
            for (int d = 0; d < n_; ++d) {
                const double mid = 0.5 * (lo[d] + hi[d]);
                const double off = kOffset * (hi[d] - lo[d]);
                u[d] = (corner >> d) & 1 ? mid + off : mid - off;
            }
            per_node(u, w_cell);
        }
    }

    void accumulate(const std::vector<double>& lo, const std::vector<double>& hi,
                    bool to_inside) {
        local_nodes(lo, hi, [&](const Eigen::VectorXd& u, double w) {
            const double area = m_.metric_and_area(u).sqrt_det;
            auto& target = to_inside ? inside_ : outside_;
            for (std::size_t k = 0; k < fields_.size(); ++k)
                target[k] += w * fields_[k](u) * area;
            if (to_inside) ++inside_nodes_;
        });
    }

    // Unresolved cell at the deepest level: weight the cell mass by the
    // fraction cut out by the affine fit of the level over the cell.  With
    // no refinement at all the error bound stays the full straddling mass.
    void leaf(const std::vector<double>& lo, const std::vector<double>& hi,
              const std::vector<double>& vertex_values) {
        const double fraction = affine_cut_fraction(vertex_values, n_, s_, t_);
        const double err_share = depth_ == 0 ? 1.0 : 0.05;
        local_nodes(lo, hi, [&](const Eigen::VectorXd& u, double w) {
            const double area = m_.metric_and_area(u).sqrt_det;
            for (std::size_t k = 0; k < fields_.size(); ++k) {
                const double mass = w * fields_[k](u) * area;
                inside_[k] += mass * fraction;
                outside_[k] += mass * (1.0 - fraction);
                err_[k] += std::abs(mass) * err_share;
            }
        });
        inside_nodes_ += static_cast<long>(std::lround(fraction * (1 << n_)));
    }

    void cell(const std::vector<double>& lo, const std::vector<double>& hi, int depth) {
        std::vector<double> vertex_values;
        switch (classify_vertices(lo, hi, vertex_values)) {
            case 1: accumulate(lo, hi, true); return;
            case 0:
            case 2: accumulate(lo, hi, false); return;
            default: break;
        }
        if (depth <= 0) {
            leaf(lo, hi, vertex_values);
            return;
        }
        std::vector<double> clo(n_), chi(n_);
        for (int corner = 0; corner < (1 << n_); ++corner) {
            for (int d = 0; d < n_; ++d) {
                const double mid = 0.5 * (lo[d] + hi[d]);
                if ((corner >> d) & 1) { clo[d] = mid; chi[d] = hi[d]; }
                else { clo[d] = lo[d]; chi[d] = mid; }
            }
            cell(clo, chi, depth - 1);
        }
    }

    const ChartedImmersion& m_;
    const std::vector<ScalarField>& fields_;
    const ScalarField& level_;
    double s_, t_;
    int depth_;
    int n_;
};

} // namespace

RegionIntegrals region_integrate(const ChartedImmersion& m,
                                 const std::vector<ScalarField>& fields,
                                 const ScalarField& level, double s, double t,
                                 const std::vector<int>& cells_per_dim,
                                 int refine_depth,
                                 const std::optional<RegionBox>& box) {
    if (static_cast<int>(cells_per_dim.size()) != m.dim())
        throw ConfigError("region_integrate: cell counts do not match chart rank");
    RegionBox full;
    if (box) {
        full = *box;
    } else {
        for (const Interval& iv : m.domain()) {
            full.lo.push_back(iv.lo);
            full.hi.push_back(iv.hi);
        }
    }
    RegionWorker worker(m, fields, level, s, t, refine_depth);
    worker.run(cells_per_dim, full);
    RegionIntegrals out;
    out.inside = std::move(worker.inside_);
    out.outside = std::move(worker.outside_);
    out.err_per_field = std::move(worker.err_);
    out.inside_nodes = worker.inside_nodes_;
    return out;
}

IntegralResult integrate_where(const ChartedImmersion& m, const ScalarField& field,
                               const Eigen::VectorXd& a, double s, double t,
                               const GridSpec& grid) {
    if (std::abs(a.norm() - 1.0) > 1e-9)
        throw std::domain_error("integrate_where: direction a must be a unit vector");
    if (!(s <= t) || s < -1.0 || t > 1.0)
        throw std::domain_error("integrate_where: require -1 <= s <= t <= 1");
    if (s <= -1.0 && t >= 1.0) return integrate(m, field, grid);

    const ScalarField level = [&m, a](const Eigen::VectorXd& u) {
        return a.dot(m.eval(u));
    };
    if (grid.rule == QuadRule::monte_carlo) {
        validate(m, grid);
        const McSample mc = monte_carlo_value(m, field, grid, &level, s, t);
        return {mc.value, mc.err};
    }
    validate(m, grid);
    const RegionIntegrals parts = region_integrate(
        m, {field}, level, s, t, grid.nodes_per_dim, grid.boundary_refine_depth);
    return {parts.inside[0], parts.err_per_field[0]};
}

CumulativeProfiles cumulative_profiles_detailed(
    const ChartedImmersion& m, const Eigen::VectorXd& a,
    const std::vector<ScalarField>& fields, const std::vector<double>& r_grid,
    const GridSpec& grid) {
    if (std::abs(a.norm() - 1.0) > 1e-9)
        throw std::domain_error("cumulative_profile: direction a must be a unit vector");
    if (!std::is_sorted(r_grid.begin(), r_grid.end()))
        throw std::domain_error("cumulative_profile: r_grid must be sorted ascending");

    struct Sample {
        double phi;
        long index;
    };
    std::vector<Sample> samples;
    std::vector<std::vector<double>> masses(fields.size());

    auto record = [&](const Eigen::VectorXd& u, double w) {
        const double area = m.metric_and_area(u).sqrt_det;
        const double phi = a.dot(m.eval(u));
        samples.push_back({phi, static_cast<long>(samples.size())});
        for (std::size_t k = 0; k < fields.size(); ++k)
            masses[k].push_back(w * fields[k](u) * area);
    };

    if (grid.rule == QuadRule::monte_carlo) {
        validate(m, grid);
        long total = 1;
        for (int c : grid.nodes_per_dim) total *= c;
        double box_vol = 1.0;
        for (const Interval& iv : m.domain()) box_vol *= iv.length();
        Xoshiro256 rng(grid.seed);
        Eigen::VectorXd u(m.dim());
        for (long i = 0; i < total; ++i) {
            for (int d = 0; d < m.dim(); ++d)
                u[d] = rng.uniform(m.domain()[d].lo, m.domain()[d].hi);
            record(u, box_vol / total);
        }
    } else {
        const Plan plan = build_plan(m, grid);
        for_each_node(plan, [&](const Eigen::VectorXd& u, double w, long) { record(u, w); });
    }

    std::stable_sort(samples.begin(), samples.end(),
                     [](const Sample& x, const Sample& y) { return x.phi > y.phi; });

    // Collapse ties into distinct phi levels with inclusive suffix sums.
    // The suffix mass at a cut r is then read off by linear interpolation
    // between level knots, with the level at the cut half-weighted (the
    // trapezoid end correction); a node-sharp cut would carry an O(h)
    // boundary bias and quantize by whole grid rows.
    double phi_scale = 1.0;
    for (const Sample& s : samples) phi_scale = std::max(phi_scale, std::abs(s.phi));
    const double tie_eps = 1e-14 * phi_scale;

    std::vector<double> levels;
    std::vector<long> level_count;
    std::vector<std::vector<double>> suffix(fields.size()), delta(fields.size());
    std::vector<double> running(fields.size(), 0.0);
    for (const Sample& s : samples) {
        const bool new_level = levels.empty() || levels.back() - s.phi > tie_eps;
        if (new_level) {
            levels.push_back(s.phi);
            level_count.push_back(0);
            for (std::size_t k = 0; k < fields.size(); ++k) delta[k].push_back(0.0);
        }
        ++level_count.back();
        for (std::size_t k = 0; k < fields.size(); ++k) {
            running[k] += masses[k][s.index];
            delta[k].back() += masses[k][s.index];
            if (new_level) suffix[k].push_back(running[k]);
            else suffix[k].back() = running[k];
        }
    }

    auto knot = [&](std::size_t k, std::size_t j) {
        return suffix[k][j] - 0.5 * delta[k][j];
    };

    CumulativeProfiles out;
    out.values.assign(fields.size(), std::vector<double>(r_grid.size(), 0.0));
    out.cut_mass.assign(fields.size(), std::vector<double>(r_grid.size(), 0.0));
    for (std::size_t ri = 0; ri < r_grid.size(); ++ri) {
        const double r = r_grid[ri];
        if (levels.empty() || r > levels.front()) continue;  // empty super-level set
        if (r <= levels.back()) {
            // the whole sample set is above the cut: no boundary correction
            for (std::size_t k = 0; k < fields.size(); ++k)
                out.values[k][ri] = running[k];
            continue;
        }
        // last level with phi >= r (levels are descending)
        const auto it = std::lower_bound(levels.begin(), levels.end(), r,
                                         [](double level, double value) {
                                             return level >= value;
                                         });
        const std::size_t j = static_cast<std::size_t>(it - levels.begin()) - 1;
        const double gap = levels[j] - levels[j + 1];
        const double f = gap > 0.0 ? (levels[j] - r) / gap : 0.0;
        for (std::size_t k = 0; k < fields.size(); ++k) {
            out.values[k][ri] = knot(k, j) + f * (knot(k, j + 1) - knot(k, j));
            out.cut_mass[k][ri] = std::abs(delta[k][j]) / level_count[j] +
                                  std::abs(delta[k][j + 1]) / level_count[j + 1];
        }
    }
    return out;
}

std::vector<std::vector<double>> cumulative_profiles(
    const ChartedImmersion& m, const Eigen::VectorXd& a,
    const std::vector<ScalarField>& fields, const std::vector<double>& r_grid,
    const GridSpec& grid) {
    return cumulative_profiles_detailed(m, a, fields, r_grid, grid).values;
}

std::vector<std::pair<double, double>> cumulative_profile(
    const ChartedImmersion& m, const Eigen::VectorXd& a, const ScalarField& field,
    const std::vector<double>& r_grid, const GridSpec& grid) {
    const auto values = cumulative_profiles(m, a, {field}, r_grid, grid);
    std::vector<std::pair<double, double>> out(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i) out[i] = {r_grid[i], values[0][i]};
    return out;
}

} // namespace sphgap
