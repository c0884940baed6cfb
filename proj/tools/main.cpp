// sphgap command-line tool: closed-form gap constants, catalog inspection,
// the verification suite, and height-profile / density exports.
//
// Exit codes: 0 success, 1 check failures, 2 usage or configuration error,
// 3 skipped checks under --strict.

#include "sphgap/curvature.hpp"
#include "sphgap/errors.hpp"
#include "sphgap/height.hpp"
#include "sphgap/immersion.hpp"
#include "sphgap/report_io.hpp"
#include "sphgap/specfn.hpp"
#include "sphgap/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

namespace sf = sphgap::specfn;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitStrictSkip = 3;

[[noreturn]] void fail_usage(const std::string& message) {
    std::cerr << "error: usage: " << message << "\n";
    std::exit(kExitUsage);
}

[[noreturn]] void fail_config(const std::string& message) {
    std::cerr << "error: config: " << message << "\n";
    std::exit(kExitUsage);
}

struct Range {
    int lo = 0;
    int hi = 0;
};

Range parse_range(const std::string& text) {
    Range range;
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            range.lo = range.hi = std::stoi(text);
        } else {
            range.lo = std::stoi(text.substr(0, dots));
            range.hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        fail_usage("malformed range '" + text + "' (expected N or A..B)");
    }
    if (range.lo > range.hi) fail_usage("empty range '" + text + "'");
    return range;
}

std::string resolve_member_name(const std::string& manifold, std::optional<int> n,
                                std::optional<int> k, std::optional<int> m) {
    if (manifold.find(':') != std::string::npos) return manifold;
    // bare family names take their parameters from --n/--k/--m
    if (manifold == "equator") {
        if (!n) fail_usage("equator needs --n");
        return "equator:" + std::to_string(*n) + "," + std::to_string(*n + 1);
    }
    if (manifold == "clifford") {
        if (!n || !k) fail_usage("clifford needs --k and --n");
        return "clifford:" + std::to_string(*k) + "," + std::to_string(*n);
    }
    if (manifold == "covered-circle") {
        if (!m) fail_usage("covered-circle needs --m");
        return "covered-circle:" + std::to_string(*m) + ",2";
    }
    return manifold;
}

sphgap::ChartedImmersion make_member(const std::string& name) {
    try {
        return sphgap::make_by_name(name);
    } catch (const std::invalid_argument& e) {
        fail_config(e.what());
    }
}

Eigen::VectorXd parse_direction(const sphgap::ChartedImmersion& m, const std::string& spec) {
    auto parse_doubles = [](const std::string& text) {
        std::vector<double> values;
        std::string piece;
        std::istringstream is(text);
        while (std::getline(is, piece, ',')) {
            try {
                values.push_back(std::stod(piece));
            } catch (const std::exception&) {
                fail_usage("malformed coordinate '" + piece + "'");
            }
        }
        return values;
    };
    if (spec.rfind("image:", 0) == 0) {
        const auto coords = parse_doubles(spec.substr(6));
        if (static_cast<int>(coords.size()) != m.dim())
            fail_usage("image:u takes " + std::to_string(m.dim()) + " chart coordinates");
        Eigen::VectorXd u(m.dim());
        for (int d = 0; d < m.dim(); ++d) u[d] = coords[d];
        return m.eval(u);
    }
    const auto coords = parse_doubles(spec);
    if (static_cast<int>(coords.size()) != m.ambient_coords())
        fail_usage("direction takes " + std::to_string(m.ambient_coords()) +
                   " ambient coordinates");
    Eigen::VectorXd a(m.ambient_coords());
    for (int i = 0; i < a.size(); ++i) a[i] = coords[i];
    const double norm = a.norm();
    if (!(norm > 1e-12)) fail_usage("direction does not normalize to a unit vector");
    return a / norm;
}

void apply_grid_override(sphgap::SuiteConfig& config, const std::string& spec) {
    // [manifold=]N[xN...][:depth=D]   (a single N applies to every dimension)
    std::string body = spec;
    std::string target;
    const auto eq = spec.find('=');
    if (eq != std::string::npos) {
        const std::string head = spec.substr(0, eq);
        // an '=' introducing an option key is not a manifold prefix
        if (head.size() < 5 || head.substr(head.size() - 5) != "depth") {
            target = head;
            body = spec.substr(eq + 1);
        }
    }
    int depth = -1;
    const auto colon = body.find(':');
    if (colon != std::string::npos) {
        const std::string opts = body.substr(colon + 1);
        body = body.substr(0, colon);
        if (opts.rfind("depth=", 0) == 0) {
            depth = std::atoi(opts.c_str() + 6);
        } else {
            fail_usage("unknown grid option '" + opts + "'");
        }
    }
    std::vector<int> nodes;
    std::string piece;
    std::istringstream is(body);
    while (std::getline(is, piece, 'x')) {
        const int v = std::atoi(piece.c_str());
        if (v < 2) fail_usage("grid nodes must be >= 2 in '" + spec + "'");
        nodes.push_back(v);
    }
    if (nodes.empty()) fail_usage("empty grid spec '" + spec + "'");

    const std::vector<std::string> names =
        target.empty()
            ? (config.manifolds.empty() ? sphgap::default_manifolds() : config.manifolds)
            : std::vector<std::string>{target};
    for (const auto& name : names) {
        const sphgap::ChartedImmersion member = make_member(name);
        sphgap::GridSpec grid = sphgap::GridSpec::defaults_for(member);
        if (nodes.size() == 1) {
            for (int& c : grid.nodes_per_dim) c = nodes[0];
        } else if (static_cast<int>(nodes.size()) == member.dim()) {
            grid.nodes_per_dim = nodes;
        } else {
            fail_config("grid '" + spec + "' has rank " + std::to_string(nodes.size()) +
                        " but " + name + " has dimension " + std::to_string(member.dim()));
        }
        if (depth >= 0) grid.boundary_refine_depth = depth;
        config.grid_overrides[name] = grid;
    }
}

void write_or_die(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_usage("cannot open output path '" + path + "'");
    out << contents;
    if (!out.good()) fail_usage("failed writing '" + path + "'");
}

int resolve_threads(const std::string& flag_value, bool flag_given) {
    std::string value = flag_value;
    if (!flag_given) {
        if (const char* env = std::getenv("SPHGAP_THREADS")) value = env;
    }
    if (value == "auto") {
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }
    const int threads = std::atoi(value.c_str());
    if (threads < 1) fail_usage("--threads takes a positive integer or 'auto'");
    return threads;
}

// ---------------------------------------------------------------------------

int cmd_constants(const std::string& range_text, const std::vector<double>& deltas,
                  const std::string& out_path) {
    const Range range = parse_range(range_text);
    if (range.lo < 2) fail_usage("constants table starts at n = 2");

    std::ostringstream os;
    os << "n,vol_sn,vol_bn,p_n,corollary_bound,clifford_max,gap_ie,gap_antipodal,"
          "gap_s_ratio_const_s";
    for (double d : deltas) os << ",gap_pinched_" << d << ",gap_rigidity_" << d;
    os << "\n";

    for (int n = range.lo; n <= range.hi; ++n) {
        const sf::GapConstants c = sf::GapConstants::for_dimension(n);
        double clifford_max = 0.0;
        for (int k = 1; k <= n - 1; ++k)
            clifford_max = std::max(clifford_max, sf::clifford_volume(k, n));
        os << n << ',' << sphgap::format_sig(c.vol_sn, 12) << ','
           << sphgap::format_sig(c.vol_bn, 12) << ',' << sphgap::format_sig(c.p_n, 12) << ','
           << sphgap::format_sig((1.0 + c.p_n) * c.vol_sn, 12) << ','
           << sphgap::format_sig(clifford_max, 12) << ','
           << sphgap::format_sig(c.hyp_gaps.at("ie"), 12) << ','
           << sphgap::format_sig(c.hyp_gaps.at("antipodal"), 12) << ','
           << sphgap::format_sig(sf::hyp_gap_s_ratio(n, n, n), 12);
        for (double d : deltas) {
            os << ',' << sphgap::format_sig(sf::hyp_gap_pinched(n, d), 12) << ',';
            try {
                os << sphgap::format_sig(sf::hyp_gap_rigidity(n, d), 12);
            } catch (const std::domain_error&) {
                os << "out-of-hypothesis";
            }
        }
        os << "\n";
    }
    if (out_path.empty()) std::cout << os.str();
    else write_or_die(out_path, os.str());
    return kExitOk;
}

int cmd_catalog(const std::vector<std::string>& extra) {
    std::vector<std::string> names = sphgap::default_manifolds();
    names.insert(names.end(), extra.begin(), extra.end());
    std::cout << "name,dim,ambient_sphere,chart,antipodal_invariant,known_multiplicity\n";
    for (const auto& name : names) {
        const sphgap::ChartedImmersion m = make_member(name);
        std::ostringstream chart;
        for (std::size_t d = 0; d < m.domain().size(); ++d) {
            const sphgap::Interval& iv = m.domain()[d];
            chart << (d ? " x " : "") << '[' << sphgap::format_sig(iv.lo, 6) << ';'
                  << sphgap::format_sig(iv.hi, 6) << (iv.periodic ? ")" : "]");
        }
        std::cout << name << ',' << m.dim() << ",S^" << m.ambient_dim() << ",\""
                  << chart.str() << "\"," << (m.antipodal_invariant() ? "true" : "false")
                  << ',' << (m.known_multiplicity() ? std::to_string(*m.known_multiplicity())
                                                    : std::string("-"))
                  << "\n";
    }
    return kExitOk;
}

int cmd_verify(sphgap::SuiteConfig config, const std::vector<std::string>& grid_specs,
               const std::vector<std::string>& tol_specs, const std::string& out_path,
               const std::string& format, bool strict, bool timings) {
    for (const auto& spec : grid_specs) apply_grid_override(config, spec);
    for (const auto& spec : tol_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) fail_usage("--tol takes check-id=value");
        try {
            config.tol_overrides[spec.substr(0, eq)] = std::stod(spec.substr(eq + 1));
        } catch (const std::exception&) {
            fail_usage("malformed tolerance value in '" + spec + "'");
        }
    }
    if (format != "json" && format != "csv" && format != "both")
        fail_usage("--format takes json, csv or both");
    if (format == "both" && out_path.empty())
        fail_usage("--format both needs --out");

    sphgap::VerificationReport report;
    try {
        report = sphgap::run_suite(config);
    } catch (const sphgap::ConfigError& e) {
        fail_config(e.what());
    }

    sphgap::ReportWriteOptions options;
    options.include_timings = timings;
    if (out_path.empty()) {
        std::cout << (format == "csv" ? sphgap::report_to_csv(report)
                                      : sphgap::report_to_json(report, config, options));
    } else {
        if (format == "json" || format == "both")
            write_or_die(format == "both" ? out_path + ".json" : out_path,
                         sphgap::report_to_json(report, config, options));
        if (format == "csv" || format == "both")
            write_or_die(format == "both" ? out_path + ".csv" : out_path,
                         sphgap::report_to_csv(report));
    }

    const sphgap::SuiteSummary summary = report.summary();
    std::cerr << "checks: " << summary.total << " passed: " << summary.passed
              << " failed: " << summary.failed << " skipped: " << summary.skipped << "\n";
    for (const auto& check : report.checks)
        if (!check.pass && !check.skipped())
            std::cerr << "FAIL " << check.id << " (margin " << check.margin << ")\n";

    if (summary.failed > 0) return kExitCheckFailure;
    if (strict && summary.skipped > 0) return kExitStrictSkip;
    return kExitOk;
}

int cmd_profile(const std::string& member_name, const std::string& a_spec,
                const std::string& r_spec, const std::string& out_prefix,
                std::uint64_t seed) {
    const sphgap::ChartedImmersion m = make_member(member_name);
    const Eigen::VectorXd a = parse_direction(m, a_spec);

    double lo = -0.984375, hi = 0.984375;
    int count = 64;
    if (!r_spec.empty()) {
        double parsed_lo = 0.0, parsed_hi = 0.0;
        int parsed_count = 0;
        if (std::sscanf(r_spec.c_str(), "%lf:%lf:%d", &parsed_lo, &parsed_hi,
                        &parsed_count) != 3)
            fail_usage("--r-grid takes lo:hi:count");
        lo = parsed_lo;
        hi = parsed_hi;
        count = parsed_count;
    }
    if (!(lo > -1.0 && hi < 1.0 && lo < hi && count >= 2))
        fail_usage("--r-grid endpoints must satisfy -1 < lo < hi < 1 and count >= 2");
    std::vector<double> r_grid(count);
    for (int i = 0; i < count; ++i) r_grid[i] = lo + (hi - lo) * i / (count - 1);

    sphgap::GridSpec grid = sphgap::GridSpec::defaults_for(m);
    grid.seed = seed;

    sphgap::HeightProfile profile;
    sphgap::XiResult xi;
    try {
        profile = sphgap::monotone_profile(m, a, r_grid, grid);
        xi = sphgap::xi_estimate(m, a);
    } catch (const std::exception& e) {
        std::cerr << "error: profile: " << e.what() << "\n";
        return kExitUsage;
    }

    std::ostringstream prof;
    prof << "r,F,cap_volume,err\n";
    for (std::size_t i = 0; i < profile.r_values.size(); ++i)
        prof << sphgap::format_sig(profile.r_values[i], 15) << ','
             << sphgap::format_sig(profile.F_values[i], 15) << ','
             << sphgap::format_sig(profile.cap_volumes[i], 15) << ','
             << sphgap::format_sig(profile.F_err[i], 15) << "\n";

    std::ostringstream xi_csv;
    xi_csv << "t,ratio,xi_estimate,xi_err\n";
    for (const auto& [t, ratio] : xi.sequence)
        xi_csv << sphgap::format_sig(t, 15) << ',' << sphgap::format_sig(ratio, 15) << ','
               << sphgap::format_sig(xi.estimate, 15) << ','
               << sphgap::format_sig(xi.err_est, 15) << "\n";

    write_or_die(out_prefix + ".profile.csv", prof.str());
    write_or_die(out_prefix + ".xi.csv", xi_csv.str());
    std::cerr << "wrote " << out_prefix << ".profile.csv and " << out_prefix
              << ".xi.csv\n";
    return kExitOk;
}

int cmd_xi(const std::string& member_name, const std::string& a_spec, int levels) {
    const sphgap::ChartedImmersion m = make_member(member_name);
    const Eigen::VectorXd a = parse_direction(m, a_spec);
    std::vector<double> ts;
    for (int j = 1; j <= levels; ++j) ts.push_back(1.0 - std::pow(4.0, -j));
    sphgap::XiResult xi;
    try {
        xi = sphgap::xi_estimate(m, a, ts);
    } catch (const std::exception& e) {
        std::cerr << "error: xi: " << e.what() << "\n";
        return kExitUsage;
    }
    std::cout << "t,ratio\n";
    for (const auto& [t, ratio] : xi.sequence)
        std::cout << sphgap::format_sig(t, 15) << ',' << sphgap::format_sig(ratio, 15)
                  << "\n";
    std::cout << "estimate," << sphgap::format_sig(xi.estimate, 15) << "\n";
    std::cout << "err_est," << sphgap::format_sig(xi.err_est, 15) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical volume-gap toolkit for closed minimal submanifolds of round "
                 "spheres"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key/value configuration file (flags win)");

    // constants
    auto* constants = app.add_subcommand("constants", "closed-form gap-constant table (CSV)");
    constants->fallthrough();
    std::string range_text = "2..10";
    std::vector<double> deltas;
    std::string constants_out;
    constants->add_option("--n", range_text, "dimension range N or A..B");
    constants->add_option("--delta", deltas, "delta values for pinched/rigidity columns")
        ->delimiter(',');
    constants->add_option("--out", constants_out, "output path (default stdout)");

    // catalog
    auto* catalog = app.add_subcommand("catalog", "list catalog members and metadata");
    catalog->fallthrough();
    std::vector<std::string> catalog_extra;
    catalog->add_option("--manifold", catalog_extra, "additional members to describe")
        ->delimiter(';');

    // verify
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    verify->fallthrough();
    sphgap::SuiteConfig config;
    std::vector<std::string> grid_specs, tol_specs;
    std::string out_path, format = "json", threads_text = "1";
    bool strict = false, timings = false;
    verify->add_option("--suite", config.suite, "check-id globs (default: all)")
        ->delimiter(';');
    verify->add_option("--manifold", config.manifolds, "catalog members (default set)")
        ->delimiter(';');
    verify->add_option("--seed", config.seed, "random seed for sampled checks");
    auto* threads_opt =
        verify->add_option("--threads", threads_text, "worker threads or 'auto'");
    verify->add_option("--grid", grid_specs, "grid override: [manifold=]N[xN..][:depth=D]")
        ->delimiter(';');
    verify->add_option("--tol", tol_specs, "tolerance override: check-id=value")
        ->delimiter(';');
    verify->add_option("--out", out_path, "report path (default stdout)");
    verify->add_option("--format", format, "json | csv | both");
    verify->add_flag("--strict", strict, "exit 3 when any check is skipped");
    verify->add_flag("--timings", timings, "include per-check runtimes (breaks byte determinism)");

    // profile
    auto* profile = app.add_subcommand("profile", "export F(r), cap volumes and the xi sequence");
    profile->fallthrough();
    std::string profile_manifold, profile_a, profile_r, profile_out;
    std::optional<int> opt_n, opt_k, opt_m;
    std::uint64_t profile_seed = 0;
    profile->add_option("--manifold", profile_manifold, "catalog member")->required();
    profile->add_option("--a", profile_a, "direction: ambient coords or image:u1,u2,...")
        ->required();
    profile->add_option("--r-grid", profile_r, "lo:hi:count inside (-1,1)");
    profile->add_option("--out", profile_out, "output prefix")->required();
    profile->add_option("--seed", profile_seed, "seed (monte-carlo grids only)");
    profile->add_option("--n", opt_n, "dimension for bare family names");
    profile->add_option("--k", opt_k, "Clifford factor dimension");
    profile->add_option("--m", opt_m, "covered-circle multiplicity");

    // xi
    auto* xi = app.add_subcommand("xi", "cap-density sequence and estimate");
    xi->fallthrough();
    std::string xi_manifold, xi_a;
    int xi_levels = 5;
    std::optional<int> xi_n, xi_k, xi_m;
    xi->add_option("--manifold", xi_manifold, "catalog member")->required();
    xi->add_option("--a", xi_a, "direction: ambient coords or image:u1,u2,...")->required();
    xi->add_option("--levels", xi_levels, "number of t levels (t_j = 1 - 4^-j)");
    xi->add_option("--n", xi_n, "dimension for bare family names");
    xi->add_option("--k", xi_k, "Clifford factor dimension");
    xi->add_option("--m", xi_m, "covered-circle multiplicity");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (constants->parsed()) return cmd_constants(range_text, deltas, constants_out);
        if (catalog->parsed()) return cmd_catalog(catalog_extra);
        if (verify->parsed()) {
            config.threads = resolve_threads(threads_text, threads_opt->count() > 0);
            return cmd_verify(config, grid_specs, tol_specs, out_path, format, strict,
                              timings);
        }
        if (profile->parsed())
            return cmd_profile(resolve_member_name(profile_manifold, opt_n, opt_k, opt_m),
                               profile_a, profile_r, profile_out, profile_seed);
        if (xi->parsed())
            return cmd_xi(resolve_member_name(xi_manifold, xi_n, xi_k, xi_m), xi_a,
                          xi_levels);
    } catch (const sphgap::ConfigError& e) {
        fail_config(e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
