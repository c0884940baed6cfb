#pragma once

#include <map>
#include <string>

namespace sphgap::specfn {

/// ln Gamma(x) for x > 0 via a Lanczos approximation (g = 7, 9 terms).
/// Relative error below 1e-13 on [0.5, 1e7]; ratios Gamma(a)/Gamma(b) for
/// large arguments should always be formed as exp(log_gamma(a) - log_gamma(b)).
double log_gamma(double x);

/// Riemannian volume of the round unit k-sphere, Vol(S^k) = (k+1) pi^{(k+1)/2} / Gamma((k+3)/2).
double sphere_volume(int k);
double log_sphere_volume(int k);

/// Volume of the unit ball in R^n, Vol(B^n) = pi^{n/2} / Gamma(n/2 + 1).
double ball_volume(int n);
double log_ball_volume(int n);

/// Gap constant p(n) = (2 sqrt(n+1)/n) Vol(S^{n-1})/Vol(S^n), evaluated in the
/// Gamma-ratio form 2/sqrt(pi(n+1)) * Gamma((n+3)/2)/Gamma((n+2)/2) so it
/// survives n up to 1e7 without under/overflow.
double gap_p(int n);

/// Same constant from the volume-ratio form; retained as a cross-check.
double gap_p_volume_form(int n);

/// Volume of the minimal Clifford torus M_{k,n-k} = S^k(sqrt(k/n)) x S^{n-k}(sqrt((n-k)/n)).
double clifford_volume(int k, int n);
double log_clifford_volume(int k, int n);

/// Lower volume bound for a closed minimal submanifold of S^N with an
/// m-fold self-intersection point: (m/2) Vol(S^n) + m sqrt(n+1)/n Vol(S^{n-1}).
double main_bound(int n, int m);

/// Variant for antipodally invariant submanifolds: m Vol(S^n).
double antipodal_bound(int n, int m);

// Dimensionless hypersurface gap factors (multiply by Vol(S^n) externally).
// Each rejects parameters outside the hypotheses of the theorem it encodes.
enum class HypGapKind { ie, antipodal, pinched, rigidity, s_ratio };

double hyp_gap_ie(int n);                                   // (n+2)/(n+1)
double hyp_gap_antipodal(int n);                            // 2n/(2n-1)
double hyp_gap_pinched(int n, double delta);                // 2(n+d)/(2(n+d)-1), d >= 0
double hyp_gap_rigidity(int n, double delta);               // 3(4n^2-3n+1)/(3(4n^2-4n+1)+8d), d <= 3n/8
double hyp_gap_s_ratio(int n, double s_min, double s_max);  // 2n S_max/(2n S_max - S_min)

/// Parameters for the parametrized gap kinds; unused fields are ignored.
struct HypGapParams {
    double delta = 0.0;
    double s_min = 0.0;
    double s_max = 0.0;
};
double hyp_gap(HypGapKind kind, int n, const HypGapParams& params = {});

const char* hyp_gap_kind_name(HypGapKind kind);

/// Scalar-curvature statistics of a minimal hypersurface, as measured by the
/// curvature module or supplied directly.
struct SStats {
    double s_min = 0.0;
    double s_max = 0.0;
    double int_s = 0.0;   // integral of S over M
    double int_s2 = 0.0;  // integral of S^2 over M
    double vol = 0.0;     // Vol(M)
};

double theta1(int n, const SStats& s);
double theta2(int n, const SStats& s);

/// C(n,S) = max(theta1, theta2).  Requires non-totally-geodesic statistics.
double c_n_s(int n, const SStats& s);

/// Lower bound for the first Laplace eigenvalue of a closed embedded minimal
/// hypersurface of S^{n+1}; imported constant (Choi-Wang, strictness per
/// Brendle's survey), not re-derived here.
inline double choi_wang_lambda1_lower(int n) { return 0.5 * n; }

/// Closed-form constants attached to one intrinsic dimension.
struct GapConstants {
    int n = 0;
    double vol_sn = 0.0;
    double vol_bn = 0.0;
    double p_n = 0.0;
    std::map<std::string, double> hyp_gaps;  // parameterless kinds: ie, antipodal

    double main_bound(int m) const;
    double antipodal_bound(int m) const;

    static GapConstants for_dimension(int n);
};

} // namespace sphgap::specfn
