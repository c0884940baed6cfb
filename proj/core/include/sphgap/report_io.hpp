#pragma once

#include "sphgap/verify.hpp"

#include <string>

namespace sphgap {

struct ReportWriteOptions {
    /// Wall-clock timings vary between runs; they are omitted by default so
    /// that identical configs serialize to byte-identical reports.
    bool include_timings = false;
    int indent = 2;
};

/// Report JSON: {version, config, checks:[...], summary} with every numeric
/// field rendered as a decimal string with 15 significant digits.
std::string report_to_json(const VerificationReport& report, const SuiteConfig& config,
                           const ReportWriteOptions& options = {});

/// RFC-4180-style CSV with one row per check.
std::string report_to_csv(const VerificationReport& report);

/// Re-reads a serialized report and recounts its summary from the check rows.
SuiteSummary summary_from_json(const std::string& json_text);

/// snprintf("%.*g") with a fixed significant-digit count.
std::string format_sig(double value, int digits);

} // namespace sphgap
