#pragma once

#include <string>
#include <vector>

namespace brinkstab {

/// Dimensional description of the channel and the saturating fluid.
struct DimensionalParams {
  double density;        ///< rho [mass/volume]
  double viscosity;      ///< mu, effective dynamic viscosity [pressure*time]
  double center_velocity;///< V, velocity at the channel midplane [length/time]
  double half_width;     ///< L [length]
  double porosity;       ///< phi, in (0, 1]
  double permeability;   ///< K [length^2]
};

/// Dimensionless groups of the problem.
///
/// R = rho*V*L/mu and M^2 = phi*L^2/K (Darcy analogue of the Hartmann
/// number). M = 0 recovers the classical viscous channel.
struct FlowParams {
  double reynolds;  ///< R > 0
  double porous;    ///< M >= 0
};

/// Validate p and form the dimensionless groups.
/// Throws DomainError naming the offending field.
FlowParams derive_flow_params(const DimensionalParams& p);

struct ProfileSample {
  double U;    ///< velocity
  double dU;   ///< dU/dz
  double d2U;  ///< d2U/dz2
};

/// Laminar profile of pressure-driven flow through the porous channel,
///
///   U(z) = (cosh M - cosh(M z)) / (cosh M - 1),   z in [-1, 1],
///
/// normalized so U(0) = 1 and U(+-1) = 0. The limit M -> 0 is the parabola
/// 1 - z^2. Evaluation uses an exponential-difference rewrite that stays
/// finite for arbitrarily large M, and a small-M series below M = 1e-4
/// where the direct formula loses digits to cancellation.
class BaseFlow {
 public:
  explicit BaseFlow(double porous_parameter);

  double porous_parameter() const { return m_; }

  /// U, U', U'' at a single point. Throws DomainError for |z| > 1.
  ProfileSample eval(double z) const;

  double U(double z) const { return eval(z).U; }
  double dU(double z) const { return eval(z).dU; }
  double d2U(double z) const { return eval(z).d2U; }

 private:
  double m_;
};

/// Convenience free function mirroring BaseFlow::eval.
ProfileSample eval_profile(double M, double z);

struct ProfileRow {
  double z, U, dU, d2U;
};

/// Tabulate the profile on the given nodes (one row per node, node order
/// preserved). Throws UsageError on an empty node list and DomainError if
/// any node leaves [-1, 1].
std::vector<ProfileRow> profile_table(double M, const std::vector<double>& nodes);

/// CSV with header `z,U,dU,d2U`, 17 significant digits per value.
std::string profile_table_csv(const std::vector<ProfileRow>& rows);

}  // namespace brinkstab
