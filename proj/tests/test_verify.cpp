#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sphgap/errors.hpp"
#include "sphgap/report_io.hpp"
#include "sphgap/specfn.hpp"
#include "sphgap/verify.hpp"

#include <cmath>
#include <set>

using namespace sphgap;

TEST_CASE("glob matching") {
    CHECK(glob_match("remark-1.3/*", "remark-1.3/p-below-one"));
    CHECK(glob_match("*", "anything"));
    CHECK(glob_match("*/clifford:1,2/*", "quad/clifford:1,2/volume-closed-form"));
    CHECK(!glob_match("remark-1.3/*", "specfn/sphere-ball-identity"));
    CHECK(glob_match("abc", "abc"));
    CHECK(!glob_match("abc", "abcd"));
}

TEST_CASE("embeddedness gate") {
    const EmbeddednessGate below = embeddedness_gate(2, 19.0);
    CHECK(below.threshold == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-12));
    CHECK(below.must_be_embedded);

    const EmbeddednessGate above = embeddedness_gate(3, 31.0);
    CHECK(above.threshold == doctest::Approx(specfn::clifford_volume(1, 3)).epsilon(1e-12));
    CHECK(!above.must_be_embedded);

    for (int n = 2; n <= 100; ++n) {
        const EmbeddednessGate gate = embeddedness_gate(n, 1.0);
        CHECK(gate.threshold == doctest::Approx(specfn::clifford_volume(1, n)).epsilon(1e-12));
        CHECK(gate.threshold <
              (1.0 + specfn::gap_p(n)) * specfn::sphere_volume(n));
    }
    CHECK_THROWS_AS(embeddedness_gate(1, 1.0), std::domain_error);
}

TEST_CASE("planned ids are unique and anchored") {
    SuiteConfig config;
    const auto ids = planned_check_ids(config);
    CHECK(ids.size() > 100);
    std::set<std::string> unique(ids.begin(), ids.end());
    CHECK(unique.size() == ids.size());
}

TEST_CASE("default suite covers every anchored statement family") {
    SuiteConfig config;
    const auto ids = planned_check_ids(config);
    auto any_with_prefix = [&](const std::string& prefix) {
        for (const auto& id : ids)
            if (id.rfind(prefix, 0) == 0) return true;
        return false;
    };
    for (const char* prefix :
         {"specfn/", "remark-1.3/", "main-theorem/", "embeddedness/", "hyp-gap/",
          "quad/", "geometry/", "takahashi/", "prop-2.1/", "prop-2.2/", "def-3.1/",
          "lemma-3.2/", "lemma-3.3/", "heights/", "lemma-4.2/", "curvature/", "ie/",
          "gap/", "thm-4.5/", "lemma-4.4/", "cor-4.6/", "cor-4.7/", "simons/"}) {
        INFO(prefix);
        CHECK(any_with_prefix(prefix));
    }
}

TEST_CASE("closed-form block passes") {
    SuiteConfig config;
    config.manifolds = {"covered-circle:2,2"};  // keep the member block cheap
    config.suite = {"specfn/*", "remark-1.3/*", "main-theorem/corollary-consistency",
                    "main-theorem/gap-below-geodesic", "embeddedness/*", "hyp-gap/*"};
    const VerificationReport report = run_suite(config);
    const SuiteSummary summary = report.summary();
    CHECK(summary.failed == 0);
    CHECK(summary.skipped == 0);
    CHECK(summary.passed == summary.total);
    for (const auto& check : report.checks) {
        CHECK(!check.anchor.empty());
        CHECK(check.confidence == "closed-form");
    }
}

TEST_CASE("single-member suite runs green and deterministically") {
    SuiteConfig config;
    config.manifolds = {"covered-circle:2,2"};
    const VerificationReport first = run_suite(config);
    const SuiteSummary summary = first.summary();
    CHECK(summary.failed == 0);
    CHECK(summary.total > 20);
    // geodesic member: the non-totally-geodesic hypersurface theorems skip
    CHECK(summary.skipped > 0);
    for (const auto& check : first.checks) {
        CHECK(!check.anchor.empty());
        if (check.skipped()) CHECK(!check.skip_reason.empty());
    }

    const VerificationReport second = run_suite(config);
    const std::string a = report_to_json(first, config);
    const std::string b = report_to_json(second, config);
    CHECK(a == b);
}

TEST_CASE("config validation") {
    SUBCASE("unknown manifold") {
        SuiteConfig config;
        config.manifolds = {"veronese:2,4"};
        CHECK_THROWS_AS(run_suite(config), ConfigError);
    }
    SUBCASE("unmatched suite glob") {
        SuiteConfig config;
        config.manifolds = {"covered-circle:2,2"};
        config.suite = {"no-such-family/*"};
        CHECK_THROWS_AS(run_suite(config), ConfigError);
    }
    SUBCASE("unknown tolerance override id") {
        SuiteConfig config;
        config.manifolds = {"covered-circle:2,2"};
        config.tol_overrides["not-a-check"] = 1.0;
        CHECK_THROWS_AS(run_suite(config), ConfigError);
    }
}

TEST_CASE("report serialization round trip") {
    SuiteConfig config;
    config.manifolds = {"covered-circle:2,2"};
    config.suite = {"specfn/*", "quad/*", "geometry/*"};
    const VerificationReport report = run_suite(config);

    const std::string json = report_to_json(report, config);
    const SuiteSummary reread = summary_from_json(json);
    const SuiteSummary direct = report.summary();
    CHECK(reread.total == direct.total);
    CHECK(reread.passed == direct.passed);
    CHECK(reread.failed == direct.failed);
    CHECK(reread.skipped == direct.skipped);

    const std::string csv = report_to_csv(report);
    CHECK(csv.rfind("id,anchor,manifold,", 0) == 0);
    // one header plus one row per check, LF endings only
    CHECK(std::count(csv.begin(), csv.end(), '\n') ==
          static_cast<long>(report.checks.size()) + 1);
    CHECK(csv.find('\r') == std::string::npos);

    // timings are opt-in
    CHECK(json.find("runtime_ms") == std::string::npos);
    ReportWriteOptions with_timings;
    with_timings.include_timings = true;
    CHECK(report_to_json(report, config, with_timings).find("runtime_ms") !=
          std::string::npos);
}

TEST_CASE("seed changes monte-carlo draws but not verdicts") {
    SuiteConfig config;
    config.manifolds = {"clifford:1,2"};
    config.suite = {"quad/clifford:1,2/mc-rule-consistency"};
    config.seed = 1;
    const VerificationReport first = run_suite(config);
    config.seed = 2;
    const VerificationReport second = run_suite(config);
    REQUIRE(first.checks.size() == 1);
    REQUIRE(second.checks.size() == 1);
    CHECK(first.checks[0].pass);
    CHECK(second.checks[0].pass);
    // the constant integrand makes this particular value seed-independent;
    // that different seeds give different sample streams is covered by the
    // quadrature tests
    CHECK(first.checks[0].rhs > 0.0);
}

TEST_CASE("tolerance overrides change pass verdicts") {
    SuiteConfig config;
    config.manifolds = {"covered-circle:2,2"};
    config.suite = {"quad/covered-circle:2,2/volume-closed-form"};
    VerificationReport report = run_suite(config);
    REQUIRE(report.checks.size() == 1);
    CHECK(report.checks[0].pass);

    config.tol_overrides["quad/covered-circle:2,2/volume-closed-form"] = -1.0;
    report = run_suite(config);
    REQUIRE(report.checks.size() == 1);
    CHECK(!report.checks[0].pass);
}

TEST_CASE("format_sig") {
    CHECK(format_sig(M_PI, 12) == "3.14159265359");
    CHECK(format_sig(0.25, 15) == "0.25");
    CHECK(format_sig(-1.5e-9, 15) == "-1.5e-09");
}
