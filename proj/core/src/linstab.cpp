#include "brinkstab/linstab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "brinkstab/csvio.hpp"
#include "brinkstab/errors.hpp"
#include "brinkstab/pencil.hpp"
#include "workspace.hpp"

namespace brinkstab {

namespace {

struct OsPencil {
  MatrixXcd A, B;
};

OsPencil os_pencil(const Eigen::VectorXd& U, const Eigen::VectorXd& d2U,
                   double M, double R, double a, int N) {
  const auto& ws = detail::workspace(N);
  const int ni = N - 2;
  const Eigen::MatrixXd& D2d = ws.dirichlet.reduced_d2;
  const Eigen::MatrixXd& D4c = ws.clamped.reduced_d4;
  Eigen::MatrixXd lap = D2d - a * a * Eigen::MatrixXd::Identity(ni, ni);
  Eigen::MatrixXd visc = D4c - 2.0 * a * a * D2d +
                         std::pow(a, 4) * Eigen::MatrixXd::Identity(ni, ni) - M * M * lap;
  OsPencil p;
  p.A = (U.asDiagonal() * lap - Eigen::MatrixXd(d2U.asDiagonal())).cast<Complex>() +
        Complex(0.0, 1.0 / (a * R)) * visc.cast<Complex>();
  p.B = lap.cast<Complex>();
  return p;
}

void interior_profile(double M, int N, Eigen::VectorXd& U, Eigen::VectorXd& d2U) {
  const auto& ws = detail::workspace(N);
  const Eigen::VectorXd zi = ws.grid.interior_nodes();
  BaseFlow flow(M);
  U.resize(zi.size());
  d2U.resize(zi.size());
  for (Eigen::Index i = 0; i < zi.size(); ++i) {
    const ProfileSample s = flow.eval(zi[i]);
    U[i] = s.U;
    d2U[i] = s.d2U;
  }
}

void validate(const OSProblem& p) {
  if (!(p.a > 0.0)) throw UsageError("os_spectrum: wavenumber a must be > 0");
  if (!(p.R > 0.0)) throw UsageError("os_spectrum: Reynolds number must be > 0");
  if (!(p.M >= 0.0)) throw DomainError("os_spectrum: porous parameter M must be >= 0");
}

std::vector<std::pair<Complex, int>> raw_candidates(const QzResult& qz, double cap) {
  std::vector<std::pair<Complex, int>> out;
  for (Eigen::Index k = 0; k < qz.alpha.size(); ++k) {
    if (std::abs(qz.beta[k]) < 1e-12 * std::max(1.0, std::abs(qz.alpha[k]))) continue;
    const Complex c = qz.alpha[k] / qz.beta[k];
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) continue;
    if (std::abs(c) > cap) continue;
    out.emplace_back(c, static_cast<int>(k));
  }
  return out;
}

EigenSolution solve_filtered(const Eigen::VectorXd& U, const Eigen::VectorXd& d2U,
                             double M, double R, double a, int N,
                             const SpectrumPolicy& policy) {
  const OsPencil p = os_pencil(U, d2U, M, R, a, N);
  QzResult qz;
  try {
    qz = solve_pencil(p.A, p.B, true);
  } catch (const NumericalError& e) {
    std::ostringstream os;
    os << e.what() << " [os pencil: N=" << N << " a=" << a << " R=" << R << " M=" << M << "]";
    throw NumericalError(os.str());
  }
  auto cands = raw_candidates(qz, policy.c_magnitude_cap);

  EigenSolution sol;
  std::vector<std::pair<Complex, RefinedPair>> kept;
  int discarded = 0;
  for (auto& [c, k] : cands) {
    RefinedPair r = refine_eigenpair(p.A, p.B, c, qz.right_vectors.col(k));
    if (r.rel_residual < policy.residual_tol && std::abs(r.value) <= policy.c_magnitude_cap) {
      const Complex value = r.value;
      kept.emplace_back(value, std::move(r));
    } else {
      ++discarded;
    }
  }
  std::sort(kept.begin(), kept.end(),
            [](const auto& x, const auto& y) { return x.first.imag() > y.first.imag(); });
  sol.discarded = discarded;
  sol.values.reserve(kept.size());
  sol.residuals.reserve(kept.size());
  if (policy.want_vectors && !kept.empty()) {
    sol.vectors.resize(N - 2, static_cast<Eigen::Index>(kept.size()));
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    sol.values.push_back(kept[i].first);
    sol.residuals.push_back(kept[i].second.rel_residual);
    if (policy.want_vectors) sol.vectors.col(static_cast<Eigen::Index>(i)) = kept[i].second.vector;
  }
  return sol;
}

}  // namespace

EigenSolution os_spectrum_with_profile(const Eigen::VectorXd& U,
                                       const Eigen::VectorXd& d2U,
                                       double M, double R, double a, int N,
                                       const SpectrumPolicy& policy) {
  // Persistence needs re-sampling the profile at N+8, which a caller-supplied
  // table cannot provide; this entry point filters by residual only.
  EigenSolution sol = solve_filtered(U, d2U, M, R, a, N, policy);
  if (sol.values.empty()) {
    throw DiagnosticError("os_spectrum: every mode was filtered (N=" + std::to_string(N) +
                          "); raise residual_tol or inspect the pencil");
  }
  return sol;
}

EigenSolution os_spectrum(const OSProblem& p, const SpectrumPolicy& policy) {
  validate(p);
  Eigen::VectorXd U, d2U;
  interior_profile(p.M, p.N, U, d2U);
  EigenSolution sol = solve_filtered(U, d2U, p.M, p.R, p.a, p.N, policy);
  if (policy.persistence_check) {
    const int N8 = p.N + 8;
    Eigen::VectorXd U8, d2U8;
    interior_profile(p.M, N8, U8, d2U8);
    EigenSolution ref = solve_filtered(U8, d2U8, p.M, p.R, p.a, N8, policy);
    EigenSolution pruned;
    pruned.discarded = sol.discarded;
    for (std::size_t i = 0; i < sol.values.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c8 : ref.values) best = std::min(best, std::abs(sol.values[i] - c8));
      if (best <= policy.persistence_tol) {
        pruned.values.push_back(sol.values[i]);
        pruned.residuals.push_back(sol.residuals[i]);
      } else {
        ++pruned.discarded;
      }
    }
    if (policy.want_vectors && !pruned.values.empty()) {
      pruned.vectors.resize(p.N - 2, static_cast<Eigen::Index>(pruned.values.size()));
      Eigen::Index col = 0;
      for (std::size_t i = 0; i < sol.values.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c8 : ref.values) best = std::min(best, std::abs(sol.values[i] - c8));
        if (best <= policy.persistence_tol) pruned.vectors.col(col++) = sol.vectors.col(i);
      }
    }
    sol = std::move(pruned);
  }
  if (sol.values.empty()) {
    throw DiagnosticError("os_spectrum: every mode was filtered (N=" + std::to_string(p.N) +
                          ", a=" + std::to_string(p.a) + ", R=" + std::to_string(p.R) + ")");
  }
  return sol;
}

double max_growth_rate(double M, double R, double a, int N) {
  // Root-finding workhorse: raw QZ leading mode, no vectors, no polishing.
  Eigen::VectorXd U, d2U;
  interior_profile(M, N, U, d2U);
  const OsPencil p = os_pencil(U, d2U, M, R, a, N);
  const QzResult qz = solve_pencil(p.A, p.B, false);
  double gmax = -std::numeric_limits<double>::infinity();
  for (auto& [c, k] : raw_candidates(qz, SpectrumPolicy{}.c_magnitude_cap)) {
    (void)k;
    gmax = std::max(gmax, a * c.imag());
  }
  if (!std::isfinite(gmax)) {
    throw NumericalError("max_growth_rate: no finite modes (N=" + std::to_string(N) + ")");
  }
  return gmax;
}

namespace {

// Bracketed secant (Illinois variant) for g(R) = 0 with g(lo) < 0 < g(hi).
double illinois(const std::function<double(double)>& g, double lo, double hi,
                double glo, double ghi, double rel_tol) {
  double flo = glo, fhi = ghi;
  int last_side = 0;
  for (int it = 0; it < 100 && hi - lo > rel_tol * hi; ++it) {
    double mid = (lo * fhi - hi * flo) / (fhi - flo);
    if (!std::isfinite(mid) || mid <= lo || mid >= hi) mid = 0.5 * (lo + hi);
    const double fm = g(mid);
    if (fm == 0.0) return mid;
    if (fm < 0.0) {
      lo = mid;
      flo = fm;
      if (last_side == -1) fhi *= 0.5;  // damp the stale endpoint
      last_side = -1;
    } else {
      hi = mid;
      fhi = fm;
      if (last_side == +1) flo *= 0.5;
      last_side = +1;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double neutral_Re(double M, double a, const NeutralSearch& s) {
  if (!(a > 0.0)) throw UsageError("neutral_Re: wavenumber a must be > 0");
  auto g = [&](double R) { return max_growth_rate(M, R, a, s.N); };
  const double ratio = std::pow(s.R_cap / s.R_min, 1.0 / (s.scan_points - 1));
  double Rprev = s.R_min;
  double gprev = g(Rprev);
  if (gprev > 0.0) return Rprev;
  for (int i = 1; i < s.scan_points; ++i) {
    const double R = s.R_min * std::pow(ratio, i);
    const double gi = g(R);
    if (gi > 0.0) {
      return illinois(g, Rprev, R, gprev, gi, s.rel_tol);
    }
    Rprev = R;
    gprev = gi;
  }
  return kStableUpToCap;
}

double oblique_neutral_Re(double M, double a, double b, const NeutralSearch& s) {
  if (!(a > 0.0)) throw UsageError("oblique_neutral_Re: streamwise wavenumber a must be > 0");
  const double k = std::hypot(a, b);
  const double r2d = neutral_Re(M, k, s);
  return (k / a) * r2d;
}

int default_linear_order(double M) {
  if (M <= 2.0) return 64;
  if (M <= 10.0) return 96;
  return 128;
}

namespace {

struct GoldenResult {
  double x, f;
};

GoldenResult golden_min(const std::function<double(double)>& f, double lo, double hi,
                        double x_tol) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > x_tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = f(d);
    }
  }
  return fc < fd ? GoldenResult{c, fc} : GoldenResult{d, fd};
}

}  // namespace

CriticalPoint critical_point_linear(double M, CriticalSearch s) {
  if (!(M >= 0.0)) throw DomainError("critical_point_linear: M must be >= 0");
  if (M > 10.0) {
    std::fprintf(stderr,
                 "critical_point_linear: M=%g above the validated range; "
                 "conditioning of the modal pencil degrades\n", M);
  }
  if (s.N == 0) s.N = default_linear_order(M);
  s.neutral.N = s.N;

  const double ratio = std::pow(s.a_max / s.a_min, 1.0 / (s.coarse_points - 1));
  std::vector<double> avals(s.coarse_points);
  std::vector<double> rvals(s.coarse_points);
  int best = -1;
  for (int i = 0; i < s.coarse_points; ++i) {
    avals[i] = s.a_min * std::pow(ratio, i);
    rvals[i] = neutral_Re(M, avals[i], s.neutral);
    if (best < 0 || rvals[i] < rvals[best]) best = i;
  }
  if (!std::isfinite(rvals[best])) {
    throw DiagnosticError("critical_point_linear: no instability below the Reynolds cap "
                          "anywhere in the wavenumber window (M=" + std::to_string(M) + ")");
  }
  const double lo = avals[std::max(0, best - 1)];
  const double hi = avals[std::min(s.coarse_points - 1, best + 1)];
  auto f = [&](double a) { return neutral_Re(M, a, s.neutral); };
  const GoldenResult g = golden_min(f, lo, hi, s.a_tol);

  CriticalPoint cp;
  cp.kind = ProblemKind::linear;
  cp.M = M;
  cp.a_c = g.x;
  cp.R_c = g.f;
  cp.grid_order = s.N;
  NeutralSearch s8 = s.neutral;
  s8.N = s.N + 8;
  const double r8 = neutral_Re(M, g.x, s8);
  cp.convergence = std::abs(g.f - r8) / g.f;
  cp.converged = cp.convergence < 1e-6;
  return cp;
}

std::vector<NeutralPoint> neutral_curve(double M, const std::vector<double>& a_values,
                                        const NeutralSearch& s) {
  if (a_values.empty()) throw UsageError("neutral_curve: empty wavenumber list");
  std::vector<NeutralPoint> out(a_values.size());
  for (std::size_t i = 0; i < a_values.size(); ++i) {
    out[i] = {M, a_values[i], neutral_Re(M, a_values[i], s)};
  }
  return out;
}

std::string neutral_curve_csv(const std::vector<NeutralPoint>& points) {
  std::ostringstream os;
  os << "M,a,Re_neutral\n";
  for (const auto& p : points) {
    os << csv::format(p.M) << ',' << csv::format(p.a) << ',' << csv::format(p.Re) << '\n';
  }
  return os.str();
}

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::linear: return "linear";
    case ProblemKind::energy_spanwise: return "energy-spanwise";
    case ProblemKind::energy_3d: return "energy-3d";
    case ProblemKind::energy_streamwise_restricted: return "energy-streamwise-restricted";
  }
  return "unknown";
}

ProblemKind parse_problem_kind(const std::string& name) {
  if (name == "linear") return ProblemKind::linear;
  if (name == "energy-spanwise" || name == "energy") return ProblemKind::energy_spanwise;
  if (name == "energy-3d") return ProblemKind::energy_3d;
  if (name == "energy-streamwise-restricted") return ProblemKind::energy_streamwise_restricted;
  throw UsageError("unknown problem kind '" + name + "'");
}

}  // namespace brinkstab
