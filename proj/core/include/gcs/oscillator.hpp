#pragma once

#include <functional>
#include <vector>

#include "gcs/fields.hpp"
#include "gcs/types.hpp"

namespace gcs {

// Displaced oscillator argument z(x) = sqrt(omega/2) (x + 2k/omega).
double oscillator_argument(double x, const UnitSystem& units);

// Normalized oscillator eigenfunction psi_n(x), evaluated through the
// three-term recurrence on the normalized functions themselves,
//   phi_{n+1} = z sqrt(2/(n+1)) phi_n - sqrt(n/(n+1)) phi_{n-1},
// seeded by the Gaussian phi_0 = (omega/2pi)^{1/4} e^{-z^2/2}.  No raw
// Hermite polynomial ever appears, so n in the hundreds stays in range.
double eval_psi(int n, double x, const UnitSystem& units);

// All of psi_0..psi_{n_max} at one point, in one recurrence pass.
std::vector<double> eval_psi_up_to(int n_max, double x,
                                   const UnitSystem& units);

// One-dimensional ladder actions: theta^- psi_n = sqrt(n) psi_{n-1}
// (annihilating psi_0), theta^+ psi_n = sqrt(n+1) psi_{n+1}.
LadderTerm theta_action(Direction direction, int n);

// Matrix elements of the dimensionless position and momentum
//   z = (theta^+ + theta^-)/sqrt(2),  p_z = i (theta^+ - theta^-)/sqrt(2)
// in the oscillator basis.  <m|p_z|n> is purely imaginary; p_imag is its
// imaginary part.
struct ZPElements {
  double z = 0.0;
  double p_imag = 0.0;
};
ZPElements zp_matrix_elements(int m, int n);

// Composite-trapezoid quadrature over a symmetric window around the
// oscillator center x_c = -2k/omega.  The Gaussian decay of every
// integrand makes the trapezoid rule spectrally accurate here.
struct QuadratureRule {
  double x_min = 0.0;
  double x_max = 0.0;
  int points = 4001;

  // Window [x_c - L, x_c + L] with L = max(30/sqrt(omega),
  // 4 r + 20/sqrt(omega)) and step L/steps_per_half.
  static QuadratureRule standard(const UnitSystem& units, double r = 0.0,
                                 int steps_per_half = 2000);
};

double integrate(const std::function<double(double)>& f,
                 const QuadratureRule& rule);

}  // namespace gcs
