#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "brinkstab/baseflow.hpp"
#include "brinkstab/spectral.hpp"
#include "brinkstab/types.hpp"

namespace brinkstab {

/// Modal (temporal) stability of the porous channel. The wall-normal
/// structure phi(z) of a streamfunction mode ~ phi(z) e^{ia(x-ct)} solves
///
///   i a R [ (U - c)(D^2 - a^2) - U'' ] phi
///        = (D^2 - a^2)^2 phi - M^2 (D^2 - a^2) phi,
///
/// with phi = phi' = 0 at the walls (no slip plus continuity). Modes with
/// Im(c) > 0 grow in time; the temporal growth rate is a*Im(c).
struct OSProblem {
  double M = 0.0;
  double R = 0.0;
  double a = 0.0;
  int N = 64;
};

struct SpectrumPolicy {
  bool want_vectors = false;
  bool persistence_check = false;  ///< re-solve at N+8 and drop wandering modes
  double residual_tol = 1e-8;
  double persistence_tol = 1e-4;   ///< max |c(N) - c(N+8)| for a retained mode
  double c_magnitude_cap = 50.0;   ///< heavily damped junk beyond this
};

/// Eigenvalues c sorted by descending imaginary part. Every retained mode
/// is polished to relative residual below policy.residual_tol; the rest are
/// counted in `discarded`. Throws NumericalError on pencil failure and
/// DiagnosticError if the filters rejected everything.
EigenSolution os_spectrum(const OSProblem& p, const SpectrumPolicy& policy = {});

/// Same pencil with caller-supplied profile samples at the interior nodes
/// (testing hook; U need not be the channel profile).
EigenSolution os_spectrum_with_profile(const Eigen::VectorXd& U,
                                       const Eigen::VectorXd& d2U,
                                       double M, double R, double a, int N,
                                       const SpectrumPolicy& policy = {});

/// Largest temporal growth rate a*Im(c) at the given parameters.
double max_growth_rate(double M, double R, double a, int N);

struct NeutralSearch {
  double R_min = 50.0;
  double R_cap = 5e7;       ///< "stable for all R <= cap" beyond this
  int scan_points = 44;     ///< log-spaced first-crossing scan
  double rel_tol = 1e-8;    ///< root tolerance in R
  int N = 64;
};

/// Sentinel returned when no instability exists below the cap.
inline constexpr double kStableUpToCap = std::numeric_limits<double>::infinity();

/// Neutral Reynolds number at fixed (M, a): the smallest R <= cap at which
/// the leading growth rate crosses zero (first upward crossing of the
/// log-spaced scan, refined by bisection/secant). Returns kStableUpToCap
/// when the scan never sees instability; wavenumbers outside the unstable
/// band behave that way.
double neutral_Re(double M, double a, const NeutralSearch& s = {});

struct CriticalSearch {
  double a_min = 0.05;
  double a_max = 6.0;         ///< widened automatically for large M
  int coarse_points = 40;
  double a_tol = 1e-6;        ///< absolute tolerance of the golden section
  int N = 0;                  ///< 0: pick default from M
  NeutralSearch neutral;
};

/// Critical point of the modal problem: minimize neutral_Re over the
/// wavenumber (coarse log-spaced scan + golden section). Only 2D modes are
/// searched; oblique modes reduce to 2D ones at a higher Reynolds number
/// (see oblique_neutral_Re). M above 10 is accepted but conditioning
/// degrades; a warning is attached to stderr.
CriticalPoint critical_point_linear(double M, CriticalSearch s = {});

/// Neutral Reynolds of an oblique mode with wavenumbers (a, b): the mode
/// satisfies the 2D equations at k = sqrt(a^2+b^2) and Reynolds a R / k, so
/// its neutral value is (k/a) * neutral_Re(M, k). Always >= the 2D optimum.
double oblique_neutral_Re(double M, double a, double b, const NeutralSearch& s = {});

/// One neutral-curve sample row.
struct NeutralPoint {
  double M, a, Re;
};

/// Sweep neutral_Re over a wavenumber list (cache-friendly, deterministic
/// order). Infinite entries mark stable wavenumbers.
std::vector<NeutralPoint> neutral_curve(double M, const std::vector<double>& a_values,
                                        const NeutralSearch& s = {});

/// CSV with header `M,a,Re_neutral` (17 significant digits; inf for stable).
std::string neutral_curve_csv(const std::vector<NeutralPoint>& points);

/// Default collocation order for a porous parameter (boundary layers
/// sharpen with M).
int default_linear_order(double M);

}  // namespace brinkstab
