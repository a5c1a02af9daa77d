#pragma once

#include <functional>

#include "gcs/types.hpp"

namespace gcs {

// Magnetic profile through the vector-potential amplitude A(x) and its
// first two derivatives; the magnetic field is B(x) = A'(x).  Derivatives
// are supplied analytically -- no internal numerical differentiation.
struct MagneticProfile {
  enum class Kind { Constant, Custom };

  std::function<double(double)> a;   // A(x)
  std::function<double(double)> a1;  // A'(x)
  std::function<double(double)> a2;  // A''(x)
  Kind kind = Kind::Custom;

  // Constant field B0: A(x) = B0 * x exactly.
  static MagneticProfile constant(double b0);

  static MagneticProfile custom(std::function<double(double)> a,
                                std::function<double(double)> a1,
                                std::function<double(double)> a2);
};

// Natural units hbar = v_F = c = e = m* = 1; omega = 2 B0 in these units,
// so the constant profile for a given omega carries B0 = omega / 2.
struct UnitSystem {
  double omega = 1.0;  // cyclotron parameter, > 0
  double k = 1.0;      // plane-wave number along y
  int branch = +1;     // +1 electron branch, -1 hole branch

  MagneticProfile constant_profile() const {
    return MagneticProfile::constant(omega / 2.0);
  }
};

struct MonolayerFields {
  double w;        // superpotential W = A(x) + k
  double v_minus;  // W^2 - W'
  double v_plus;   // W^2 + W'
};

struct BilayerFields {
  double eta;      // 2 (k + A(x))
  double beta;
  double gamma;
  double v_minus;
  double v_plus;   // v_minus + 2 eta'
};

// Guard below which |eta| counts as a singular point of the construction.
inline constexpr double kEtaEpsilon = 1e-12;

MonolayerFields monolayer_fields(const MagneticProfile& profile, double x,
                                 double k);

// Throws DegenerateEta when |eta(x)| < kEtaEpsilon.
BilayerFields bilayer_fields(const MagneticProfile& profile, double x,
                             double k, double eps1, double eps2);

}  // namespace gcs
