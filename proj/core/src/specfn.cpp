#include "sphgap/specfn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sphgap::specfn {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLogPi = 1.14472988584940017414342735135305871;
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640561764;

// Lanczos g = 7, 9 coefficients (Godfrey's set), ~15 significant digits.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::domain_error(msg);
}

} // namespace

double log_gamma(double x) {
    require(std::isfinite(x) && x > 0.0, "log_gamma: argument must be finite and positive");
    if (x < 0.5) {
        // reflection; only reached below the accuracy window [0.5, 1e7]
        return kLogPi - std::log(std::sin(kPi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double series = kLanczos[0];
    for (int i = 1; i < 9; ++i) series += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

double log_sphere_volume(int k) {
    require(k >= 0, "sphere_volume: dimension must be >= 0");
    return std::log(static_cast<double>(k + 1)) + 0.5 * (k + 1) * kLogPi
         - log_gamma(0.5 * (k + 3));
}

double sphere_volume(int k) { return std::exp(log_sphere_volume(k)); }

double log_ball_volume(int n) {
    require(n >= 1, "ball_volume: dimension must be >= 1");
    return 0.5 * n * kLogPi - log_gamma(0.5 * n + 1.0);
}

double ball_volume(int n) { return std::exp(log_ball_volume(n)); }

double gap_p(int n) {
    require(n >= 1, "gap_p: dimension must be >= 1");
    const double log_ratio = log_gamma(0.5 * (n + 3)) - log_gamma(0.5 * (n + 2));
    return 2.0 / std::sqrt(kPi * (n + 1)) * std::exp(log_ratio);
}

double gap_p_volume_form(int n) {
    require(n >= 1, "gap_p: dimension must be >= 1");
    return 2.0 * std::sqrt(static_cast<double>(n) + 1.0) / n
         * std::exp(log_sphere_volume(n - 1) - log_sphere_volume(n));
}

double log_clifford_volume(int k, int n) {
    require(n >= 2 && k >= 1 && k <= n - 1, "clifford_volume: require 1 <= k <= n-1");
    const double kk = k;
    const double nk = n - k;
    return 0.5 * kk * std::log(kk / n) + 0.5 * nk * std::log(nk / n)
         + log_sphere_volume(k) + log_sphere_volume(n - k);
}

double clifford_volume(int k, int n) { return std::exp(log_clifford_volume(k, n)); }

double main_bound(int n, int m) {
    require(n >= 1, "main_bound: dimension must be >= 1");
    require(m >= 1, "main_bound: multiplicity must be >= 1");
    return 0.5 * m * sphere_volume(n)
         + m * std::sqrt(static_cast<double>(n) + 1.0) / n * sphere_volume(n - 1);
}

double antipodal_bound(int n, int m) {
    require(n >= 1, "antipodal_bound: dimension must be >= 1");
    require(m >= 1, "antipodal_bound: multiplicity must be >= 1");
    return m * sphere_volume(n);
}

double hyp_gap_ie(int n) {
    require(n >= 2, "hyp_gap(ie): dimension must be >= 2");
    return (n + 2.0) / (n + 1.0);
}

double hyp_gap_antipodal(int n) {
    require(n >= 2, "hyp_gap(antipodal): dimension must be >= 2");
    return 2.0 * n / (2.0 * n - 1.0);
}

double hyp_gap_pinched(int n, double delta) {
    require(n >= 2, "hyp_gap(pinched): dimension must be >= 2");
    require(delta >= 0.0, "hyp_gap(pinched): hypothesis requires delta >= 0");
    return 2.0 * (n + delta) / (2.0 * (n + delta) - 1.0);
}

double hyp_gap_rigidity(int n, double delta) {
    require(n >= 2, "hyp_gap(rigidity): dimension must be >= 2");
    require(delta <= 3.0 * n / 8.0,
            "hyp_gap(rigidity): hypothesis requires delta <= 3n/8");
    const double num = 3.0 * (4.0 * n * n - 3.0 * n + 1.0);
    const double den = 3.0 * (4.0 * n * n - 4.0 * n + 1.0) + 8.0 * delta;
    require(den > 0.0, "hyp_gap(rigidity): denominator must be positive");
    return num / den;
}

double hyp_gap_s_ratio(int n, double s_min, double s_max) {
    require(n >= 2, "hyp_gap(s_ratio): dimension must be >= 2");
    require(s_min > 0.0 && s_min <= s_max,
            "hyp_gap(s_ratio): hypothesis requires 0 < S_min <= S_max");
    return 2.0 * n * s_max / (2.0 * n * s_max - s_min);
}

double hyp_gap(HypGapKind kind, int n, const HypGapParams& params) {
    switch (kind) {
        case HypGapKind::ie: return hyp_gap_ie(n);
        case HypGapKind::antipodal: return hyp_gap_antipodal(n);
        case HypGapKind::pinched: return hyp_gap_pinched(n, params.delta);
        case HypGapKind::rigidity: return hyp_gap_rigidity(n, params.delta);
        case HypGapKind::s_ratio: return hyp_gap_s_ratio(n, params.s_min, params.s_max);
    }
    throw std::domain_error("hyp_gap: unknown kind");
}

const char* hyp_gap_kind_name(HypGapKind kind) {
    switch (kind) {
        case HypGapKind::ie: return "ie";
        case HypGapKind::antipodal: return "antipodal";
        case HypGapKind::pinched: return "pinched";
        case HypGapKind::rigidity: return "rigidity";
        case HypGapKind::s_ratio: return "s_ratio";
    }
    return "?";
}

double theta1(int n, const SStats& s) {
    require(n >= 2, "theta1: dimension must be >= 2");
    require(s.vol > 0.0, "theta1: volume must be positive");
    if (s.s_max == 0.0 && s.int_s == 0.0)
        throw std::domain_error("C(n,S): totally geodesic statistics (S == 0); "
                                "theorem hypotheses require non-totally-geodesic M");
    require(s.s_max > 0.0, "theta1: S_max must be positive");
    return s.int_s / (2.0 * n * s.s_max * s.vol);
}

double theta2(int n, const SStats& s) {
    require(n >= 2, "theta2: dimension must be >= 2");
    require(s.vol > 0.0, "theta2: volume must be positive");
    if (s.s_max == 0.0 && s.int_s == 0.0)
        throw std::domain_error("C(n,S): totally geodesic statistics (S == 0); "
                                "theorem hypotheses require non-totally-geodesic M");
    require(s.int_s2 > 0.0, "theta2: integral of S^2 must be positive");
    return n / (4.0 * n * n - 3.0 * n + 1.0) * (s.int_s * s.int_s) / (s.vol * s.int_s2);
}

double c_n_s(int n, const SStats& s) { return std::max(theta1(n, s), theta2(n, s)); }

double GapConstants::main_bound(int m) const { return specfn::main_bound(n, m); }
double GapConstants::antipodal_bound(int m) const { return specfn::antipodal_bound(n, m); }

GapConstants GapConstants::for_dimension(int n) {
    require(n >= 1, "GapConstants: dimension must be >= 1");
    GapConstants c;
    c.n = n;
    c.vol_sn = sphere_volume(n);
    c.vol_bn = ball_volume(n);
    c.p_n = gap_p(n);
    if (n >= 2) {
        c.hyp_gaps["ie"] = hyp_gap_ie(n);
        c.hyp_gaps["antipodal"] = hyp_gap_antipodal(n);
    }
    return c;
}

} // namespace sphgap::specfn
