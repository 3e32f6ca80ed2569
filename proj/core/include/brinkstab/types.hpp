#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace brinkstab {

/// Retained eigenpairs of a generalized pencil solve.
struct EigenSolution {
  std::vector<std::complex<double>> values;   ///< sorted per solver contract
  Eigen::MatrixXcd vectors;                   ///< column k goes with values[k]; may be empty
  std::vector<double> residuals;              ///< relative residuals, same order
  int discarded = 0;                          ///< modes dropped by the filters
};

enum class ProblemKind { linear, energy_spanwise, energy_3d, energy_streamwise_restricted };

std::string to_string(ProblemKind k);
ProblemKind parse_problem_kind(const std::string& name);

/// A critical point of a stability boundary.
struct CriticalPoint {
  ProblemKind kind = ProblemKind::linear;
  double M = 0.0;
  double a_c = 0.0;          ///< minimizing wavenumber
  double R_c = 0.0;          ///< critical Reynolds number
  int grid_order = 0;        ///< N used for the reported value
  double convergence = 0.0;  ///< |R_c(N) - R_c(N+8)| / R_c
  bool converged = false;    ///< convergence <= the advertised tolerance
};

/// Normal-mode velocity profiles sampled on the full grid,
/// fields ~ (u(z), v(z), w(z)) e^{i(ax+by)}.
struct ModalField {
  double a = 0.0;
  double b = 0.0;
  Eigen::VectorXcd u, v, w;
};

/// Production / dissipation ratio of a modal field.
struct RayleighQuotient {
  double production = 0.0;   ///< -(U' w, u)
  double dissipation = 0.0;  ///< ||grad u||^2 + M^2 ||u||^2, always > 0
  double value = 0.0;        ///< production / dissipation
};

}  // namespace brinkstab
