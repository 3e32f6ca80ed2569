#include "brinkstab/energystab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "brinkstab/csvio.hpp"
#include "brinkstab/errors.hpp"
#include "brinkstab/parallel.hpp"
#include "brinkstab/pencil.hpp"
#include "workspace.hpp"

namespace brinkstab {

namespace {

constexpr double kRealnessTol = 1e-8;
constexpr double kResidualTol = 1e-8;
constexpr double kMagnitudeCap = 1e12;

void interior_profile(double M, int N, Eigen::VectorXd& U1, Eigen::VectorXd& U2) {
  const auto& ws = detail::workspace(N);
  const Eigen::VectorXd zi = ws.grid.interior_nodes();
  BaseFlow flow(M);
  U1.resize(zi.size());
  U2.resize(zi.size());
  for (Eigen::Index i = 0; i < zi.size(); ++i) {
    const ProfileSample s = flow.eval(zi[i]);
    U1[i] = s.dU;
    U2[i] = s.d2U;
  }
}

struct OrrPencil {
  MatrixXcd A, B;
};

OrrPencil orr_pencil(double M, double a, int N) {
  const auto& ws = detail::workspace(N);
  const int ni = N - 2;
  Eigen::VectorXd U1, U2;
  interior_profile(M, N, U1, U2);
  const Eigen::MatrixXd& D2d = ws.dirichlet.reduced_d2;
  const Eigen::MatrixXd& D1d = ws.dirichlet.reduced_d1;
  const Eigen::MatrixXd& D4c = ws.clamped.reduced_d4;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(ni, ni);
  Eigen::MatrixXd lap = D2d - a * a * I;
  OrrPencil p;
  p.A = (2.0 * (D4c - 2.0 * a * a * D2d + std::pow(a, 4) * I - M * M * lap)).cast<Complex>();
  Eigen::MatrixXd prod = Eigen::MatrixXd(U2.asDiagonal()) + 2.0 * (U1.asDiagonal() * D1d);
  p.B = Complex(0.0, -a) * prod.cast<Complex>();
  return p;
}

}  // namespace

EigenSolution orr_energy_eigen(const OrrEnergyProblem& p, bool want_vectors) {
  if (!(p.a > 0.0)) throw UsageError("orr_energy_eigen: wavenumber a must be > 0");
  if (!(p.M >= 0.0)) throw DomainError("orr_energy_eigen: M must be >= 0");
  const OrrPencil pen = orr_pencil(p.M, p.a, p.N);
  QzResult qz;
  try {
    qz = solve_pencil(pen.A, pen.B, true);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " [orr pencil: N=" + std::to_string(p.N) +
                         " a=" + std::to_string(p.a) + " M=" + std::to_string(p.M) + "]");
  }

  struct Cand {
    double value;
    RefinedPair pair;
  };
  std::vector<Cand> kept;
  int discarded = 0;
  for (Eigen::Index k = 0; k < qz.alpha.size(); ++k) {
    if (std::abs(qz.beta[k]) < 1e-14 * std::max(1.0, std::abs(qz.alpha[k]))) {
      ++discarded;
      continue;
    }
    const Complex re = qz.alpha[k] / qz.beta[k];
    if (!std::isfinite(re.real()) || !std::isfinite(re.imag()) || std::abs(re) > kMagnitudeCap) {
      ++discarded;
      continue;
    }
    if (std::abs(re.imag()) > 1e-4 * std::abs(re)) {  // clearly complex: not variational
      ++discarded;
      continue;
    }
    RefinedPair r = refine_eigenpair(pen.A, pen.B, re, qz.right_vectors.col(k));
    const bool real_enough = std::abs(r.value.imag()) <= kRealnessTol * std::abs(r.value.real());
    if (r.rel_residual < kResidualTol && real_enough) {
      kept.push_back({r.value.real(), std::move(r)});
    } else {
      ++discarded;
    }
  }
  std::sort(kept.begin(), kept.end(),
            [](const Cand& x, const Cand& y) { return std::abs(x.value) < std::abs(y.value); });

  EigenSolution sol;
  sol.discarded = discarded;
  if (want_vectors && !kept.empty()) {
    sol.vectors.resize(p.N - 2, static_cast<Eigen::Index>(kept.size()));
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    sol.values.push_back(Complex(kept[i].value, 0.0));
    sol.residuals.push_back(kept[i].pair.rel_residual);
    if (want_vectors) sol.vectors.col(static_cast<Eigen::Index>(i)) = kept[i].pair.vector;
  }
  if (sol.values.empty()) {
    throw DiagnosticError("orr_energy_eigen: no real eigenvalue survived filtering (N=" +
                          std::to_string(p.N) + ", a=" + std::to_string(p.a) + ", M=" +
                          std::to_string(p.M) + ", discarded=" + std::to_string(discarded) + ")");
  }
  return sol;
}

double orr_min_positive_RE(double M, double a, int N) {
  const EigenSolution sol = orr_energy_eigen({M, a, N});
  for (const auto& v : sol.values) {
    if (v.real() > 0.0) return v.real();
  }
  throw DiagnosticError("orr_min_positive_RE: no positive eigenvalue at a=" + std::to_string(a));
}

SpanwiseEnergyForms spanwise_energy_forms(double M, double a, int N) {
  const auto& ws = detail::workspace(N);
  const Eigen::MatrixXd& E0 = ws.clamped.eval0;
  const Eigen::MatrixXd& E1 = ws.clamped.eval1;
  const Eigen::MatrixXd& E2 = ws.clamped.eval2;
  const Eigen::VectorXd& w = ws.grid.weights;
  BaseFlow flow(M);
  Eigen::VectorXd wU1(N);
  for (int i = 0; i < N; ++i) wU1[i] = w[i] * flow.eval(ws.grid.nodes[i]).dU;

  Eigen::MatrixXd T = E1.transpose() * wU1.asDiagonal() * E0;
  Eigen::MatrixXd E1WE1 = E1.transpose() * w.asDiagonal() * E1;
  Eigen::MatrixXd E0WE0 = E0.transpose() * w.asDiagonal() * E0;
  Eigen::MatrixXd E2WE2 = E2.transpose() * w.asDiagonal() * E2;

  SpanwiseEnergyForms f;
  f.P = Complex(0.0, a / 2.0) * (T - T.transpose()).cast<Complex>();
  f.Qd = (E2WE2 + 2.0 * a * a * E1WE1 + std::pow(a, 4) * E0WE0 +
          M * M * (E1WE1 + a * a * E0WE0)).cast<Complex>();
  f.Ee = (0.5 * (E1WE1 + a * a * E0WE0)).cast<Complex>();
  return f;
}

double orr_energy_m_symmetric(double M, double a, int N) {
  const SpanwiseEnergyForms f = spanwise_energy_forms(M, a, N);
  return hermitian_pencil_max(f.P, f.Qd).value;
}

int default_energy_order(double M) { return M <= 2.0 ? 64 : 96; }

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
      hi = d; d = c; fd = fc;
      c = hi - gr * (hi - lo); fc = f(c);
    } else {
      lo = c; c = d; fc = fd;
      d = lo + gr * (hi - lo); fd = f(d);
    }
  }
  return fc < fd ? GoldenResult{c, fc} : GoldenResult{d, fd};
}

}  // namespace

CriticalPoint critical_point_energy_spanwise(double M, EnergyCriticalSearch s) {
  if (!(M >= 0.0)) throw DomainError("critical_point_energy_spanwise: M must be >= 0");
  if (s.N == 0) s.N = default_energy_order(M);
  // The minimizing wavenumber scales roughly linearly with M once the wall
  // layers set the structure; widen the window so the optimum stays interior.
  s.a_max = std::max(s.a_max, 2.0 + 1.1 * M);
  if (!(s.a_min > 0.0) || !(s.a_max > s.a_min)) {
    throw UsageError("critical_point_energy_spanwise: empty wavenumber range");
  }

  auto f = [&](double a) { return orr_min_positive_RE(M, a, s.N); };
  const double ratio = std::pow(s.a_max / s.a_min, 1.0 / (s.coarse_points - 1));
  int best = -1;
  std::vector<double> avals(s.coarse_points), rvals(s.coarse_points);
  for (int i = 0; i < s.coarse_points; ++i) {
    avals[i] = s.a_min * std::pow(ratio, i);
    rvals[i] = f(avals[i]);
    if (best < 0 || rvals[i] < rvals[best]) best = i;
  }
  const double lo = avals[std::max(0, best - 1)];
  const double hi = avals[std::min(s.coarse_points - 1, best + 1)];
  const GoldenResult g = golden_min(f, lo, hi, s.a_tol);

  CriticalPoint cp;
  cp.kind = ProblemKind::energy_spanwise;
  cp.M = M;
  cp.a_c = g.x;
  cp.R_c = g.f;
  cp.grid_order = s.N;
  const double r8 = orr_min_positive_RE(M, g.x, s.N + 8);
  cp.convergence = std::abs(g.f - r8) / g.f;
  cp.converged = cp.convergence < 1e-6;
  return cp;
}

namespace {

struct Pencil3D {
  MatrixXcd A, B;
  int ni;
};

Pencil3D energy3d_pencil(double M, double a, double b, int N) {
  const auto& ws = detail::workspace(N);
  const int ni = N - 2;
  const double k2 = a * a + b * b;
  Eigen::VectorXd U1(ni);
  {
    BaseFlow flow(M);
    const Eigen::VectorXd zi = ws.grid.interior_nodes();
    for (int i = 0; i < ni; ++i) U1[i] = flow.eval(zi[i]).dU;
  }
  const Eigen::MatrixXd& D1 = ws.grid.D1;
  const Eigen::MatrixXd& D2d = ws.dirichlet.reduced_d2;
  Eigen::MatrixXd lap = D2d - k2 * Eigen::MatrixXd::Identity(ni, ni);
  Eigen::MatrixXd diss = 2.0 * (lap - M * M * Eigen::MatrixXd::Identity(ni, ni));

  const int n = 3 * ni + N;
  Pencil3D p;
  p.ni = ni;
  p.A = MatrixXcd::Zero(n, n);
  p.B = MatrixXcd::Zero(n, n);
  const int iu = 0, iv = ni, iw = 2 * ni, ip = 3 * ni;
  const Complex ia(0.0, a), ib(0.0, b);

  for (int i = 0; i < ni; ++i) {
    // u-momentum at interior node i: U' w + i a p = m * diss u
    p.A(iu + i, iw + i) = U1[i];
    p.A(iu + i, ip + i + 1) += ia;
    // v-momentum: i b p = m * diss v
    p.A(iv + i, ip + i + 1) += ib;
    // w-momentum: U' u + (D p) = m * diss w
    p.A(iw + i, iu + i) = U1[i];
    for (int j = 0; j < N; ++j) p.A(iw + i, ip + j) += D1(i + 1, j);
  }
  p.B.block(iu, iu, ni, ni) = diss.cast<Complex>();
  p.B.block(iv, iv, ni, ni) = diss.cast<Complex>();
  p.B.block(iw, iw, ni, ni) = diss.cast<Complex>();
  // continuity at every node (wall rows read w' = 0 there)
  for (int r = 0; r < N; ++r) {
    if (r >= 1 && r <= ni) {
      p.A(ip + r, iu + r - 1) = ia;
      p.A(ip + r, iv + r - 1) = ib;
    }
    for (int j = 0; j < ni; ++j) p.A(ip + r, iw + j) += D1(r, j + 1);
  }
  return p;
}

}  // namespace

Energy3DSolve energy3d_solve(const Energy3DProblem& prob) {
  if (prob.a == 0.0 && prob.b == 0.0) {
    throw UsageError("energy3d_solve: (a, b) must not both vanish");
  }
  if (!(prob.M >= 0.0)) throw DomainError("energy3d_solve: M must be >= 0");
  const int N = prob.N;
  const Pencil3D pen = energy3d_pencil(prob.M, prob.a, prob.b, N);
  const QzResult qz = solve_pencil(pen.A, pen.B, true);
  const int ni = pen.ni;

  Energy3DSolve out;
  double best_admissible = 0.0;
  bool found_admissible = false;
  for (Eigen::Index k = 0; k < qz.alpha.size(); ++k) {
    if (std::abs(qz.beta[k]) < 1e-14 * std::max(1.0, std::abs(qz.alpha[k]))) {
      ++out.discarded;  // constraint block
      continue;
    }
    const Complex m0 = qz.alpha[k] / qz.beta[k];
    if (!std::isfinite(m0.real()) || !std::isfinite(m0.imag()) || std::abs(m0) > kMagnitudeCap) {
      ++out.discarded;
      continue;
    }
    if (std::abs(m0.imag()) > 1e-4 * std::max(std::abs(m0.real()), 1e-12)) {
      ++out.discarded;
      continue;
    }
    RefinedPair r = refine_eigenpair(pen.A, pen.B, m0, qz.right_vectors.col(k));
    if (r.rel_residual >= kResidualTol ||
        std::abs(r.value.imag()) > kRealnessTol * std::max(std::abs(r.value.real()), 1e-12)) {
      ++out.discarded;
      continue;
    }
    const double m = r.value.real();
    const auto u = r.vector.segment(0, ni);
    const auto v = r.vector.segment(ni, ni);
    const auto w = r.vector.segment(2 * ni, ni);
    const double vel2 = u.squaredNorm() + v.squaredNorm() + w.squaredNorm();
    if (vel2 < 1e-12 * r.vector.squaredNorm()) {
      ++out.discarded;  // multiplier-only direction
      continue;
    }
    const double uw_frac = (u.squaredNorm() + w.squaredNorm()) / vel2;
    if (uw_frac < 1e-10) {
      ++out.discarded;  // (0, v, 0): production-free by construction
      continue;
    }
    ++out.stationary_count;
    out.largest_stationary = std::max(out.largest_stationary, m);
    // Admissibility: with b != 0, a producing mode with u != 0 concedes the
    // sign exchange (-u, v + (2a/b) u, w) and is excluded from the space.
    const bool sign_exchangeable =
        prob.b != 0.0 && u.norm() > 1e-10 * std::sqrt(vel2);
    if (sign_exchangeable) {
      ++out.inadmissible_count;
      continue;
    }
    if (m > best_admissible) {
      best_admissible = m;
      found_admissible = true;
      out.maximizer.a = prob.a;
      out.maximizer.b = prob.b;
      out.maximizer.u = Eigen::VectorXcd::Zero(N);
      out.maximizer.v = Eigen::VectorXcd::Zero(N);
      out.maximizer.w = Eigen::VectorXcd::Zero(N);
      out.maximizer.u.segment(1, ni) = u;
      out.maximizer.v.segment(1, ni) = v;
      out.maximizer.w.segment(1, ni) = w;
    }
  }
  if (out.stationary_count == 0 && prob.b == 0.0) {
    throw DiagnosticError("energy3d_solve: every eigenvalue was filtered (N=" +
                          std::to_string(N) + ", a=" + std::to_string(prob.a) +
                          ", b=" + std::to_string(prob.b) + ", discarded=" +
                          std::to_string(out.discarded) + ")");
  }
  out.m = best_admissible;
  out.stabilizing_only = !found_admissible;
  return out;
}

double energy3d_max(const Energy3DProblem& p) { return energy3d_solve(p).m; }

SquireReport verify_squire_energy(double M, const std::vector<double>& a_grid,
                                  const std::vector<double>& b_grid, int N) {
  if (a_grid.empty() || b_grid.empty()) {
    throw UsageError("verify_squire_energy: wavenumber grids must be non-empty");
  }
  if (std::none_of(b_grid.begin(), b_grid.end(), [](double b) { return b == 0.0; })) {
    throw UsageError("verify_squire_energy: b grid must contain 0");
  }
  SquireReport rep;
  rep.table.resize(a_grid.size() * b_grid.size());
  parallel_for(rep.table.size(), [&](std::size_t idx) {
    const double a = a_grid[idx / b_grid.size()];
    const double b = b_grid[idx % b_grid.size()];
    rep.table[idx] = {M, a, b, energy3d_max({M, a, b, N})};
  });

  double best0 = -std::numeric_limits<double>::infinity();
  for (const auto& c : rep.table) {
    if (c.b == 0.0 && c.m > best0) {
      best0 = c.m;
      rep.max_a = c.a;
    }
  }
  rep.max_m = best0;
  rep.max_b = 0.0;
  rep.passed = true;
  for (const auto& c : rep.table) {
    if (c.b != 0.0 && c.m > best0 * (1.0 + 1e-6)) {
      rep.passed = false;
      rep.offending_a = c.a;
      rep.offending_b = c.b;
      rep.max_m = c.m;
      rep.max_a = c.a;
      rep.max_b = c.b;
      break;
    }
  }
  return rep;
}

std::string squire_table_csv(const SquireReport& report) {
  std::ostringstream os;
  os << "M,a,b,m\n";
  for (const auto& c : report.table) {
    os << csv::format(c.M) << ',' << csv::format(c.a) << ',' << csv::format(c.b) << ','
       << csv::format(c.m) << '\n';
  }
  return os.str();
}

RayleighQuotient rayleigh_quotient(const SpectralGrid& grid, const ModalField& field,
                                   double M) {
  const int N = grid.N;
  if (field.u.size() != N || field.v.size() != N || field.w.size() != N) {
    throw UsageError("rayleigh_quotient: field vectors must live on the full grid");
  }
  const double norm2 = field.u.squaredNorm() + field.v.squaredNorm() + field.w.squaredNorm();
  if (!(norm2 > 0.0)) {
    throw DomainError("rayleigh_quotient: field must not vanish identically");
  }
  const double bc = std::sqrt(std::norm(field.u[0]) + std::norm(field.u[N - 1]) +
                              std::norm(field.v[0]) + std::norm(field.v[N - 1]) +
                              std::norm(field.w[0]) + std::norm(field.w[N - 1]));
  if (bc > 1e-8 * std::sqrt(norm2)) {
    throw DomainError("rayleigh_quotient: field does not satisfy the wall conditions");
  }
  const double k2 = field.a * field.a + field.b * field.b;
  BaseFlow flow(M);
  double production = 0.0;
  double dissipation = 0.0;
  const Eigen::VectorXcd du = grid.D1 * field.u;
  const Eigen::VectorXcd dv = grid.D1 * field.v;
  const Eigen::VectorXcd dw = grid.D1 * field.w;
  for (int i = 0; i < N; ++i) {
    const double wq = grid.weights[i];
    const double U1 = flow.eval(grid.nodes[i]).dU;
    production -= wq * U1 * std::real(field.w[i] * std::conj(field.u[i]));
    const double g2 = std::norm(du[i]) + std::norm(dv[i]) + std::norm(dw[i]);
    const double f2 = std::norm(field.u[i]) + std::norm(field.v[i]) + std::norm(field.w[i]);
    dissipation += wq * (g2 + (k2 + M * M) * f2);
  }
  RayleighQuotient q;
  q.production = production;
  q.dissipation = dissipation;
  q.value = production / dissipation;
  return q;
}

}  // namespace brinkstab
