#include "brinkstab/evolve.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "brinkstab/csvio.hpp"
#include "brinkstab/errors.hpp"
#include "brinkstab/pencil.hpp"
#include "workspace.hpp"

namespace brinkstab {

InitialCondition parse_initial_condition(const std::string& name) {
  if (name == "optimal-energy-eigenfunction" || name == "optimal") {
    return InitialCondition::optimal_energy;
  }
  if (name == "random-smooth" || name == "random") return InitialCondition::random_smooth;
  if (name == "user-supplied" || name == "user") return InitialCondition::user_supplied;
  throw UsageError("unknown initial condition '" + name + "'");
}

double growth_rate_bound(double M, double R, double a, int N) {
  if (!(R > 0.0)) throw UsageError("growth_rate_bound: R must be > 0");
  const SpanwiseEnergyForms f = spanwise_energy_forms(M, a, N);
  return hermitian_pencil_max(f.P - f.Qd / R, f.Ee).value;
}

Eigen::VectorXcd most_dangerous_state(double M, double R, double a, int N) {
  const SpanwiseEnergyForms f = spanwise_energy_forms(M, a, N);
  return hermitian_pencil_max(f.P - f.Qd / R, f.Ee).vector;
}

DecayBound decay_bound(double M, double R, double R_E) {
  DecayBound b;
  b.rate = (1.0 / R - 1.0 / R_E) * (M_PI * M_PI / 2.0 + 2.0 * M * M);
  b.valid = R < R_E;
  return b;
}

namespace {

void validate(const EvolveConfig& c) {
  if (!(c.dt > 0.0)) throw UsageError("evolve: dt must be > 0");
  if (!(c.T > c.dt)) throw UsageError("evolve: horizon T must exceed dt");
  if (!(c.a > 0.0)) throw UsageError("evolve: wavenumber a must be > 0");
  if (!(c.R > 0.0)) throw UsageError("evolve: R must be > 0");
  if (!(c.M >= 0.0)) throw DomainError("evolve: M must be >= 0");
}

}  // namespace

SpanwiseIntegrator::SpanwiseIntegrator(const EvolveConfig& cfg) : cfg_(cfg) {
  validate(cfg);
  const int N = cfg.N;
  const auto& ws = detail::workspace(N);
  const int ni = N - 2;
  Eigen::VectorXd U(ni), U2(ni);
  {
    BaseFlow flow(cfg.M);
    const Eigen::VectorXd zi = ws.grid.interior_nodes();
    for (int i = 0; i < ni; ++i) {
      const ProfileSample s = flow.eval(zi[i]);
      U[i] = s.U;
      U2[i] = s.d2U;
    }
  }
  const Eigen::MatrixXd& D2d = ws.dirichlet.reduced_d2;
  const Eigen::MatrixXd& D4c = ws.clamped.reduced_d4;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(ni, ni);
  const double a = cfg.a;
  Eigen::MatrixXd lap = D2d - a * a * I;
  Eigen::MatrixXd bih = D4c - 2.0 * a * a * D2d + std::pow(a, 4) * I;
  lap_ = lap.cast<Complex>();
  adv_ = Complex(0.0, -a) * ((U.asDiagonal() * lap - Eigen::MatrixXd(U2.asDiagonal())).cast<Complex>());
  visc_ = ((bih - cfg.M * cfg.M * lap) / cfg.R).cast<Complex>();
  lhs_.compute(lap_ - (cfg.dt / 2.0) * visc_);
  rhs_ = lap_ + (cfg.dt / 2.0) * visc_;
  energy_form_ = spanwise_energy_forms(cfg.M, a, N).Ee;
  f_ = Eigen::VectorXcd::Zero(ni);
}

void SpanwiseIntegrator::set_state(const Eigen::VectorXcd& interior) {
  if (interior.size() != f_.size()) {
    throw UsageError("evolve: state size mismatch with grid order");
  }
  f_ = interior;
  have_prev_ = false;
  t_ = 0.0;
}

double SpanwiseIntegrator::energy() const {
  return std::real(f_.dot(energy_form_ * f_));
}

double SpanwiseIntegrator::dt_max() const {
  // Explicit advection limit: phase speeds are bounded by max U = 1, and the
  // Adams-Bashforth stability interval along the imaginary axis is ~0.72.
  return 0.7 / std::max(1.0, cfg_.a);
}

const Eigen::VectorXcd& SpanwiseIntegrator::step() {
  const double e0 = energy();
  Eigen::VectorXcd adv_now = adv_ * f_;
  Eigen::VectorXcd rhs;
  if (have_prev_) {
    rhs = rhs_ * f_ + cfg_.dt * (1.5 * adv_now - 0.5 * adv_prev_);
  } else {
    rhs = rhs_ * f_ + cfg_.dt * adv_now;  // explicit Euler start
  }
  f_ = lhs_.solve(rhs);
  adv_prev_ = std::move(adv_now);
  have_prev_ = true;
  t_ += cfg_.dt;
  const double e1 = energy();
  if (!std::isfinite(e1) || (e0 > 0.0 && e1 > 10.0 * e0)) {
    std::ostringstream os;
    os << "evolve: energy jumped by more than 10x in one step (t=" << t_
       << ", dt=" << cfg_.dt << "); reduce dt below ~" << dt_max();
    throw IntegratorError(os.str());
  }
  return f_;
}

Eigen::VectorXcd initial_state(const EvolveConfig& cfg) {
  const int ni = cfg.N - 2;
  switch (cfg.ic) {
    case InitialCondition::optimal_energy:
      return most_dangerous_state(cfg.M, cfg.R, cfg.a, cfg.N);
    case InitialCondition::random_smooth: {
      std::mt19937_64 rng(cfg.seed);
      std::normal_distribution<double> dist(0.0, 1.0);
      // low-order smooth combination in the clamped basis
      Eigen::VectorXcd f = Eigen::VectorXcd::Zero(ni);
      const auto& ws = detail::workspace(cfg.N);
      const Eigen::VectorXd zi = ws.grid.interior_nodes();
      for (int mode = 1; mode <= 6; ++mode) {
        const Complex amp(dist(rng), dist(rng));
        for (int i = 0; i < ni; ++i) {
          const double q = std::sin(mode * M_PI * 0.5 * (zi[i] + 1.0));
          f[i] += amp * q * (1.0 - zi[i] * zi[i]);
        }
      }
      return f;
    }
    case InitialCondition::user_supplied:
      if (cfg.user_state.size() != ni) {
        throw UsageError("evolve: user state must hold the interior unknowns");
      }
      return cfg.user_state;
  }
  throw UsageError("evolve: bad initial condition selector");
}

EnergyTrace energy_trace(const EvolveConfig& cfg) {
  validate(cfg);
  SpanwiseIntegrator integ(cfg);
  integ.set_state(initial_state(cfg));

  EnergyTrace tr;
  // Envelope threshold: wavenumber-optimal spanwise R_E for this M.
  double re = cfg.known_R_E;
  if (!(re > 0.0)) {
    EnergyCriticalSearch es;
    es.N = cfg.N;
    re = critical_point_energy_spanwise(cfg.M, es).R_c;
  }
  tr.R_E = re;
  tr.envelope_valid = cfg.R < re;
  const DecayBound bound = decay_bound(cfg.M, cfg.R, re);

  const int nsteps = static_cast<int>(std::llround(cfg.T / cfg.dt));
  const int stride = std::max(1, cfg.sample_stride);
  const double E0 = integ.energy();
  if (!(E0 > 0.0)) {
    throw UsageError("evolve: initial state has zero energy");
  }
  tr.t.push_back(0.0);
  tr.energy.push_back(E0);
  bool monotone = true;
  double eprev = E0;
  for (int k = 1; k <= nsteps; ++k) {
    integ.step();
    const double e = integ.energy();
    if (e > eprev * (1.0 + 1e-10)) monotone = false;
    eprev = e;
    if (k % stride == 0 || k == nsteps) {
      tr.t.push_back(integ.time());
      tr.energy.push_back(e);
    }
  }
  tr.monotone = monotone;
  if (tr.envelope_valid) {
    tr.envelope.resize(tr.t.size());
    bool under = true;
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
      tr.envelope[i] = E0 * std::exp(-bound.rate * tr.t[i]);
      if (tr.energy[i] > tr.envelope[i] * (1.0 + 1e-8)) under = false;
    }
    tr.under_envelope = under;
  }
  return tr;
}

std::string energy_trace_csv(const EnergyTrace& trace) {
  std::ostringstream os;
  os << "t,E,envelope\n";
  for (std::size_t i = 0; i < trace.t.size(); ++i) {
    os << csv::format(trace.t[i]) << ',' << csv::format(trace.energy[i]) << ',';
    if (trace.envelope_valid) {
      os << csv::format(trace.envelope[i]);
    } else {
      os << "nan";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace brinkstab
