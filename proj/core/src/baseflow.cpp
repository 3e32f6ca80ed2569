#include "brinkstab/baseflow.hpp"

#include <cmath>
#include <sstream>

#include "brinkstab/errors.hpp"
#include "brinkstab/csvio.hpp"

namespace brinkstab {

namespace {
constexpr double kSmallM = 1e-4;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string("baseflow: ") + name + " must be positive and finite");
  }
}
}  // namespace

FlowParams derive_flow_params(const DimensionalParams& p) {
  require_positive(p.density, "density");
  require_positive(p.viscosity, "viscosity");
  require_positive(p.center_velocity, "center_velocity");
  require_positive(p.half_width, "half_width");
  require_positive(p.porosity, "porosity");
  require_positive(p.permeability, "permeability");
  if (p.porosity > 1.0) {
    throw DomainError("baseflow: porosity must not exceed 1");
  }
  FlowParams out;
  out.reynolds = p.density * p.center_velocity * p.half_width / p.viscosity;
  out.porous = std::sqrt(p.porosity) * p.half_width / std::sqrt(p.permeability);
  return out;
}

BaseFlow::BaseFlow(double porous_parameter) : m_(porous_parameter) {
  if (!(m_ >= 0.0) || !std::isfinite(m_)) {
    throw DomainError("baseflow: porous parameter M must be >= 0 and finite");
  }
}

ProfileSample BaseFlow::eval(double z) const {
  if (!(std::abs(z) <= 1.0)) {
    throw DomainError("baseflow: z must lie in [-1, 1]");
  }
  ProfileSample s;
  const double M = m_;
  if (M < kSmallM) {
    // Series in M^2; the dropped terms are O(M^4) <= 1e-16 here.
    const double z2 = z * z;
    s.U = (1.0 - z2) + (M * M / 12.0) * z2 * (1.0 - z2);
    s.dU = -2.0 * z + (M * M / 6.0) * (z - 2.0 * z * z2);
    s.d2U = -2.0 + (M * M / 6.0) * (1.0 - 6.0 * z2);
    return s;
  }
  // cosh M - cosh(Mz) = 2 sinh(M(1+z)/2) sinh(M(1-z)/2); dividing by
  // cosh M - 1 = 2 sinh^2(M/2) and pulling the growing exponentials out
  // leaves only decaying ones:
  //   U  = expm1(-M(1+z)) expm1(-M(1-z)) / expm1(-M)^2
  //   U' = -sgn(z) M e^{M(|z|-1)} (1 - e^{-2M|z|}) / expm1(-M)^2
  //   U''= -M^2 e^{M(|z|-1)} (1 + e^{-2M|z|}) / expm1(-M)^2
  const double az = std::abs(z);
  const double sz = (z > 0.0) - (z < 0.0);
  const double em = -std::expm1(-M);
  const double den = em * em;
  s.U = std::expm1(-M * (1.0 + z)) * std::expm1(-M * (1.0 - z)) / den;
  s.dU = -sz * M * std::exp(M * (az - 1.0)) * (-std::expm1(-2.0 * M * az)) / den;
  s.d2U = -M * M * std::exp(M * (az - 1.0)) * (1.0 + std::exp(-2.0 * M * az)) / den;
  return s;
}

ProfileSample eval_profile(double M, double z) { return BaseFlow(M).eval(z); }

std::vector<ProfileRow> profile_table(double M, const std::vector<double>& nodes) {
  if (nodes.empty()) {
    throw UsageError("profile_table: node list is empty");
  }
  BaseFlow flow(M);
  std::vector<ProfileRow> rows;
  rows.reserve(nodes.size());
  for (double z : nodes) {
    const ProfileSample s = flow.eval(z);
    rows.push_back({z, s.U, s.dU, s.d2U});
  }
  return rows;
}

std::string profile_table_csv(const std::vector<ProfileRow>& rows) {
  std::ostringstream os;
  os << "z,U,dU,d2U\n";
  for (const auto& r : rows) {
    os << csv::format(r.z) << ',' << csv::format(r.U) << ','
       << csv::format(r.dU) << ',' << csv::format(r.d2U) << '\n';
  }
  return os.str();
}

}  // namespace brinkstab
