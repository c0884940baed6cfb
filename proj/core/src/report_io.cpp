#include "sphgap/report_io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <sstream>

namespace sphgap {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string format_sig(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

std::string report_to_json(const VerificationReport& report, const SuiteConfig& config,
                           const ReportWriteOptions& options) {
    ordered_json root;
    root["version"] = "1";

    ordered_json cfg;
    cfg["seed"] = config.seed;
    cfg["threads"] = config.threads;
    cfg["manifolds"] =
        config.manifolds.empty() ? default_manifolds() : config.manifolds;
    cfg["suite"] = config.suite;
    ordered_json tols = ordered_json::object();
    for (const auto& [id, tol] : config.tol_overrides) tols[id] = format_sig(tol, 15);
    cfg["tolerance_overrides"] = tols;
    ordered_json grids = ordered_json::object();
    for (const auto& [name, grid] : config.grid_overrides) grids[name] = grid.summary();
    cfg["grid_overrides"] = grids;
    root["config"] = cfg;

    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json row;
        row["id"] = c.id;
        row["anchor"] = c.anchor;
        row["manifold"] = c.manifold;
        row["lhs"] = format_sig(c.lhs, 15);
        row["rhs"] = format_sig(c.rhs, 15);
        row["relation"] = relation_symbol(c.relation);
        row["margin"] = format_sig(c.margin, 15);
        row["tol"] = format_sig(c.tol, 15);
        row["pass"] = c.pass;
        row["confidence"] = c.confidence;
        row["grid"] = c.grid;
        if (c.skipped()) row["skip_reason"] = c.skip_reason;
        if (options.include_timings) row["runtime_ms"] = c.runtime_ms;
        checks.push_back(std::move(row));
    }
    root["checks"] = checks;

    const SuiteSummary summary = report.summary();
    ordered_json sum;
    sum["total"] = summary.total;
    sum["passed"] = summary.passed;
    sum["failed"] = summary.failed;
    sum["skipped"] = summary.skipped;
    root["summary"] = sum;

    return root.dump(options.indent) + "\n";
}

std::string report_to_csv(const VerificationReport& report) {
    std::ostringstream os;
    os << "id,anchor,manifold,lhs,rhs,relation,margin,tol,pass,confidence,grid,skip_reason\n";
    for (const auto& c : report.checks) {
        os << csv_escape(c.id) << ',' << csv_escape(c.anchor) << ','
           << csv_escape(c.manifold) << ',' << format_sig(c.lhs, 15) << ','
           << format_sig(c.rhs, 15) << ',' << relation_symbol(c.relation) << ','
           << format_sig(c.margin, 15) << ',' << format_sig(c.tol, 15) << ','
           << (c.pass ? "true" : "false") << ',' << csv_escape(c.confidence) << ','
           << csv_escape(c.grid) << ',' << csv_escape(c.skip_reason) << '\n';
    }
    return os.str();
}

SuiteSummary summary_from_json(const std::string& json_text) {
    const ordered_json root = ordered_json::parse(json_text);
    SuiteSummary summary;
    for (const auto& row : root.at("checks")) {
        ++summary.total;
        if (row.contains("skip_reason")) ++summary.skipped;
        else if (row.at("pass").get<bool>()) ++summary.passed;
        else ++summary.failed;
    }
    return summary;
}

} // namespace sphgap
