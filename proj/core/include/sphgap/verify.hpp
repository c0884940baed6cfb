#pragma once

#include "sphgap/quadrature.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sphgap {

enum class Relation { ge, le, eq, lt, gt };

const char* relation_symbol(Relation r);

/// One named, anchored check: measured lhs/rhs, the relation between them,
/// the signed slack (margin), and the tolerance that decided pass/fail.
/// A non-empty skip_reason marks a check that errored or whose hypotheses
/// the manifold does not satisfy; skipped checks count as neither passed
/// nor failed.
struct CheckRecord {
    std::string id;
    std::string anchor;       ///< statement location in the source material
    std::string manifold;     ///< catalog name or "closed-form"
    double lhs = 0.0;
    double rhs = 0.0;
    Relation relation = Relation::ge;
    double margin = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string confidence;   ///< "closed-form" or "sampled"
    std::string grid;         ///< quadrature summary
    std::string skip_reason;
    std::int64_t runtime_ms = 0;

    bool skipped() const { return !skip_reason.empty(); }
};

struct SuiteConfig {
    std::vector<std::string> suite;      ///< check-id globs; empty selects all
    std::vector<std::string> manifolds;  ///< catalog names; empty = defaults
    std::uint64_t seed = 0x5eedc0de;
    int threads = 1;
    std::map<std::string, double> tol_overrides;    ///< check id -> tolerance
    std::map<std::string, GridSpec> grid_overrides; ///< manifold -> grid
};

struct SuiteSummary {
    int total = 0;
    int passed = 0;
    int failed = 0;
    int skipped = 0;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;
    SuiteSummary summary() const;
};

/// Manifolds exercised when SuiteConfig::manifolds is empty.
std::vector<std::string> default_manifolds();

/// Every check id the given config would run before glob filtering.
std::vector<std::string> planned_check_ids(const SuiteConfig& config);

/// Executes the full suite in declared order.  Checks that error are
/// recorded as skipped-with-reason; the suite never aborts early.
VerificationReport run_suite(const SuiteConfig& config);

struct EmbeddednessGate {
    double threshold = 0.0;       ///< max_k Vol(M_{k,n-k})
    bool must_be_embedded = false;
};

/// Volume gate: a closed minimal submanifold of S^N with volume at or below
/// the largest Clifford-torus volume must be embedded.  A volume above the
/// threshold makes the gate inconclusive, not a non-embeddedness claim.
EmbeddednessGate embeddedness_gate(int n, double vol);

/// Minimal '*' glob matcher used for --suite selection.
bool glob_match(std::string_view pattern, std::string_view text);

} // namespace sphgap
