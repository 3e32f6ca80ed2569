#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "brinkstab/energystab.hpp"
#include "brinkstab/types.hpp"

namespace brinkstab {

/// Time integration of the linearized spanwise dynamics in streamfunction
/// form (psi = f(z) e^{iax}, u = f', w = -iaf):
///
///   d/dt (D^2 - a^2) f = -i a [ U (D^2 - a^2) - U'' ] f
///                        + (1/R) [ (D^2 - a^2)^2 - M^2 (D^2 - a^2) ] f,
///
/// clamped at the walls. The perturbation energy obeys the same balance as
/// the full nonlinear dynamics (the quadratic terms are energy-neutral), so
/// the decay bound below applies verbatim to this linearized trace.

enum class InitialCondition : std::uint8_t {
  optimal_energy,  ///< leading eigenvector of the symmetrized operator
  random_smooth,   ///< seeded low-order random combination
  user_supplied,
};

InitialCondition parse_initial_condition(const std::string& name);

struct EvolveConfig {
  double M = 0.0;
  double R = 100.0;
  double a = 2.0;
  int N = 48;
  double dt = 1e-3;
  double T = 5.0;
  InitialCondition ic = InitialCondition::optimal_energy;
  std::uint64_t seed = 1;
  Eigen::VectorXcd user_state;  ///< interior unknowns, used for user_supplied
  int sample_stride = 10;       ///< record energy every this many steps
  double known_R_E = 0.0;       ///< skip the threshold search when > 0
};

/// Largest instantaneous energy growth rate max_f (dE/dt)/E at fixed
/// parameters: the top eigenvalue of the Hermitian pencil
/// (P - Qd/R, Ee). Negative iff no field can grow at this instant; the sign
/// changes at the energy threshold 1/m(a) as R varies.
double growth_rate_bound(double M, double R, double a, int N);

/// Eigenvector attaining growth_rate_bound (interior unknowns).
Eigen::VectorXcd most_dangerous_state(double M, double R, double a, int N);

/// Exponential decay rate guaranteed below the energy threshold:
/// E(t) <= E(0) exp(-alpha t) with alpha = (1/R - 1/R_E)(pi^2/2 + 2 M^2).
struct DecayBound {
  double rate = 0.0;   ///< alpha per unit time
  bool valid = false;  ///< true iff R < R_E
};
DecayBound decay_bound(double M, double R, double R_E);

/// One semi-implicit step (Crank-Nicolson on the dissipation, explicit
/// Adams-Bashforth on the advection). Throws IntegratorError when the
/// energy jumps by more than a factor of 10 in a single step.
class SpanwiseIntegrator {
 public:
  SpanwiseIntegrator(const EvolveConfig& cfg);

  /// Advance one step and return the new interior state.
  const Eigen::VectorXcd& step();

  const Eigen::VectorXcd& state() const { return f_; }
  void set_state(const Eigen::VectorXcd& interior);
  double energy() const;
  double time() const { return t_; }

  /// Conservative explicit-advection step bound for this configuration.
  double dt_max() const;

 private:
  EvolveConfig cfg_;
  Eigen::MatrixXcd lap_, adv_, visc_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lhs_;
  Eigen::MatrixXcd rhs_;
  Eigen::MatrixXcd energy_form_;
  Eigen::VectorXcd f_, adv_prev_;
  double t_ = 0.0;
  bool have_prev_ = false;
};

Eigen::VectorXcd initial_state(const EvolveConfig& cfg);

struct EnergyTrace {
  std::vector<double> t;
  std::vector<double> energy;
  std::vector<double> envelope;  ///< empty when the bound does not apply
  bool envelope_valid = false;   ///< R < R_E held, envelope attached
  double R_E = 0.0;              ///< spanwise threshold used for the envelope
  bool monotone = false;         ///< non-increasing within 1e-10 relative per step
  bool under_envelope = false;   ///< E <= envelope * (1 + 1e-8) at all samples
};

/// Integrate the configuration and sample E(t). When R < R_E(M) at the
/// configured wavenumber-optimal threshold, the theoretical envelope
/// E(0) exp{(1/R_E - 1/R)(pi^2/2 + 2M^2) t} is attached.
EnergyTrace energy_trace(const EvolveConfig& cfg);

/// CSV with header `t,E,envelope` (envelope column empty-marked as nan when
/// not applicable).
std::string energy_trace_csv(const EnergyTrace& trace);

}  // namespace brinkstab
