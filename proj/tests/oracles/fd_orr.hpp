#pragma once

// Independent second discretization of the spanwise energy eigenproblem:
// uniform grid, 3/5-point finite-difference stencils, clamped walls via
// reflected ghost points. Deliberately shares nothing with the spectral
// path except the LAPACK eigensolver primitive.

namespace oracles {

/// Smallest positive R_E at (M, a) on n interior points (O(h^2) accurate;
/// the FD truncation leaves an O(h^2) imaginary residue which is ignored).
double fd_orr_min_RE(double M, double a, int n);

/// Richardson extrapolation of fd_orr_min_RE from n and 2n points.
double fd_orr_min_RE_rich(double M, double a, int n);

/// Minimize fd_orr_min_RE_rich over the wavenumber window by golden section.
struct FdCritical {
  double a_c;
  double R_E;
};
FdCritical fd_orr_critical(double M, double a_lo, double a_hi, int n);

}  // namespace oracles
