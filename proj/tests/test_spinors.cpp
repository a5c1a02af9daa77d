// Spinor eigenstates and their reduced pairwise kernels.
//
// Every check here goes through an independent route:
//   • the partner-well Schrödinger equation −ψ″ + V∓ψ = E²ψ via finite
//     differences (the SUSY structure behind the spinors),
//   • the first-order intertwiner 𝓛₁⁻ = ∂_x + W lowering ψ_n → √(nω)ψ_{n−1},
//   • its square for the bilayer: (∂_x + W)²ψ_n = 2E_n ψ_{n−2},
//   • and the continuity equation ∂_τρ + ∂_x J_x = 0, which ties the
//     current kernels, the density kernels, and the evolution phases
//     together with no free signs left.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "gcs/coherent.hpp"
#include "gcs/dynamics.hpp"
#include "gcs/fields.hpp"
#include "gcs/observables.hpp"
#include "gcs/oscillator.hpp"
#include "gcs/spinors.hpp"

using namespace gcs;

namespace {

double sqr(double v) { return v * v; }

// one-sided sample set around the magnetic center
std::vector<double> probe_points(const UnitSystem& units) {
  double center = -2.0 * units.k / units.omega;
  double spread = 3.0 / std::sqrt(units.omega);
  std::vector<double> xs;
  for (int i = -4; i <= 4; ++i) {
    xs.push_back(center + spread * i / 2.0);
  }
  return xs;
}

double second_difference(int n, double x, double h, const UnitSystem& units) {
  return (eval_psi(n, x + h, units) - 2.0 * eval_psi(n, x, units) +
          eval_psi(n, x - h, units)) /
         (h * h);
}

// 𝓛₁⁻ψ = ψ′ + Wψ with a central-difference derivative
double lower_once(int n, double x, double h, const UnitSystem& units) {
  MagneticProfile profile = units.constant_profile();
  double derivative =
      (eval_psi(n, x + h, units) - eval_psi(n, x - h, units)) / (2.0 * h);
  return derivative + monolayer_fields(profile, x, units.k).w *
                          eval_psi(n, x, units);
}

}  // namespace

TEST_SUITE("spinors") {

TEST_CASE("level gates, normalization constants, energies") {
  UnitSystem units;
  CHECK(top_gate(LayerKind::Monolayer, 0) == 0.0);
  CHECK(top_gate(LayerKind::Monolayer, 1) == 1.0);
  CHECK(top_gate(LayerKind::Bilayer, 1) == 0.0);
  CHECK(top_gate(LayerKind::Bilayer, 2) == 1.0);
  CHECK(norm_constant(LayerKind::Monolayer, 0) == 1.0);
  CHECK(norm_constant(LayerKind::Monolayer, 3) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(norm_constant(LayerKind::Bilayer, 1) == 1.0);
  // zero modes sit exactly at zero energy
  CHECK(energy(LayerKind::Monolayer, 0, units) == 0.0);
  CHECK(energy(LayerKind::Bilayer, 0, units) == 0.0);
  CHECK(energy(LayerKind::Bilayer, 1, units) == 0.0);
  // E_n = √(nω) and (ω/2)√(n(n−1))
  CHECK(energy(LayerKind::Monolayer, 1, units) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(energy(LayerKind::Bilayer, 2, units) ==
        doctest::Approx(0.70710678118654757).epsilon(1e-15));
  CHECK(energy(LayerKind::Bilayer, 3, units) ==
        doctest::Approx(1.2247448713915889).epsilon(1e-15));
  // hole branch mirrors the electron branch
  UnitSystem holes = units;
  holes.branch = -1;
  CHECK(energy(LayerKind::Monolayer, 4, holes) ==
        doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("spinor components and unit norm under quadrature") {
  UnitSystem units;
  units.omega = 2.0;
  QuadratureRule rule = QuadratureRule::standard(units);
  for (LayerKind kind : {LayerKind::Monolayer, LayerKind::Bilayer}) {
    for (int n : {0, 1, 2, 5}) {
      double norm = integrate(
          [&](double x) {
            SpinorSample sample = eigenstate(kind, n, x, units);
            return sqr(sample.top) + sqr(sample.bottom);
          },
          rule);
      CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  // gated levels are single-component
  SpinorSample ground = eigenstate(LayerKind::Monolayer, 0, 0.3, units);
  CHECK(ground.top == 0.0);
  CHECK(ground.bottom == doctest::Approx(eval_psi(0, 0.3, units)).epsilon(1e-15));
  SpinorSample bi1 = eigenstate(LayerKind::Bilayer, 1, -0.4, units);
  CHECK(bi1.top == 0.0);
  CHECK(bi1.bottom == doctest::Approx(eval_psi(1, -0.4, units)).epsilon(1e-15));
}

TEST_CASE("partner wells reproduce the squared spectrum (finite differences)") {
  // −ψ_n″ + V⁻ψ_n = nω ψ_n, and the top component sees V⁺ with the same
  // eigenvalue — the intertwining at the heart of the construction.
  UnitSystem units;
  units.omega = 1.3;
  units.k = 0.5;
  MagneticProfile profile = units.constant_profile();
  std::vector<double> xs = probe_points(units);
  double h = 0.02;
  for (int n = 0; n <= 10; ++n) {
    for (double x : xs) {
      double v_minus = monolayer_fields(profile, x, units.k).v_minus;
      double lhs = -second_difference(n, x, h, units) +
                   v_minus * eval_psi(n, x, units);
      double rhs = n * units.omega * eval_psi(n, x, units);
      CHECK(std::fabs(lhs - rhs) < 1e-2);
      if (n >= 1) {
        double v_plus = monolayer_fields(profile, x, units.k).v_plus;
        double top_lhs = -second_difference(n - 1, x, h, units) +
                         v_plus * eval_psi(n - 1, x, units);
        double top_rhs = n * units.omega * eval_psi(n - 1, x, units);
        CHECK(std::fabs(top_lhs - top_rhs) < 1e-2);
      }
    }
  }
}

TEST_CASE("second-order residual shrinks at order two") {
  UnitSystem units;
  MagneticProfile profile = units.constant_profile();
  std::vector<double> xs = probe_points(units);
  auto residual = [&](int n, double h) {
    double worst = 0.0;
    for (double x : xs) {
      double v_minus = monolayer_fields(profile, x, units.k).v_minus;
      double value = -second_difference(n, x, h, units) +
                     (v_minus - n * units.omega) * eval_psi(n, x, units);
      worst = std::max(worst, std::fabs(value));
    }
    return worst;
  };
  for (int n : {1, 4, 10}) {
    double r1 = residual(n, 0.08);
    double r2 = residual(n, 0.04);
    double r4 = residual(n, 0.02);
    CHECK(std::log2(r1 / r2) > 1.8);
    CHECK(std::log2(r2 / r4) > 1.8);
  }
}

TEST_CASE("first-order intertwiner lowers with coefficient sqrt(n omega)") {
  UnitSystem units;
  units.omega = 1.6;
  std::vector<double> xs = probe_points(units);
  double h = 1e-4;
  for (int n : {0, 1, 2, 6, 10}) {
    for (double x : xs) {
      double lowered = lower_once(n, x, h, units);
      double expected =
          n == 0 ? 0.0
                 : std::sqrt(n * units.omega) * eval_psi(n - 1, x, units);
      CHECK(std::fabs(lowered - expected) < 1e-6);
    }
  }
}

TEST_CASE("doubled intertwiner reproduces the bilayer spectrum map") {
  // (∂_x + W)² ψ_n = ω √(n(n−1)) ψ_{n−2} = 2 E_n ψ_{n−2}: the bilayer
  // top component is exactly the twice-lowered bottom one.
  UnitSystem units;
  units.omega = 1.0;
  std::vector<double> xs = probe_points(units);
  double h = 2e-3;
  MagneticProfile profile = units.constant_profile();
  auto lower_value = [&](int n, double x) {
    return lower_once(n, x, h, units);
  };
  for (int n : {2, 3, 5, 8}) {
    for (double x : xs) {
      // outer application by central difference of the inner one
      double derivative =
          (lower_value(n, x + h) - lower_value(n, x - h)) / (2.0 * h);
      double twice = derivative + monolayer_fields(profile, x, units.k).w *
                                      lower_value(n, x);
      double expected = 2.0 * energy(LayerKind::Bilayer, n, units) *
                        eval_psi(n - 2, x, units);
      CHECK(std::fabs(twice - expected) < 5e-4);
    }
  }
}

TEST_CASE("density kernel equals the explicit component product") {
  UnitSystem units;
  for (LayerKind kind : {LayerKind::Monolayer, LayerKind::Bilayer}) {
    for (int n = 0; n <= 6; ++n) {
      for (int m = 0; m <= 6; ++m) {
        for (double x : {-2.5, 0.0, 1.4}) {
          SpinorSample a = eigenstate(kind, n, x, units);
          SpinorSample b = eigenstate(kind, m, x, units);
          double expected = a.top * b.top + a.bottom * b.bottom;
          CHECK(rho_kernel(kind, n, m, x, units) ==
                doctest::Approx(expected).epsilon(1e-13));
        }
      }
    }
  }
}

TEST_CASE("current kernel symmetry under index exchange") {
  UnitSystem units;
  for (int n = 0; n <= 6; ++n) {
    for (int m = 0; m <= 6; ++m) {
      for (double x : {-1.0, 0.8}) {
        // monolayer: j⁺ symmetric, j⁻ antisymmetric
        CHECK(current_kernel(LayerKind::Monolayer, KernelSign::Plus, n, m, x,
                             units) ==
              doctest::Approx(current_kernel(LayerKind::Monolayer,
                                             KernelSign::Plus, m, n, x, units))
                  .epsilon(1e-13));
        CHECK(current_kernel(LayerKind::Monolayer, KernelSign::Minus, n, m, x,
                             units) ==
              doctest::Approx(-current_kernel(LayerKind::Monolayer,
                                              KernelSign::Minus, m, n, x,
                                              units))
                  .epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("continuity equation closes density, current, and phases") {
  // (dE/dh) ∂_t ρ + ∂_x J_x = 0 for every solution of the layer's wave
  // equation; dimensionless time makes the factor √ω (monolayer) and ω/2
  // (bilayer).  A sign or prefactor slip anywhere in the kernels, the
  // assembly weights, or the evolution phases breaks this.
  LadderSpec spec = LadderSpec::oscillator();
  for (LayerKind kind : {LayerKind::Monolayer, LayerKind::Bilayer}) {
    UnitSystem units;
    units.omega = 3.0;
    units.k = 0.2;
    double factor = kind == LayerKind::Monolayer ? std::sqrt(units.omega)
                                                 : units.omega / 2.0;
    CoherentSeries series =
        bgcs(spec, kind, std::polar(2.0, 0.6), 1e-12);
    double dt = 1e-5;
    double dx = 1e-4;
    for (double x : {-1.2, -0.3, 0.4, 1.1}) {
      auto rho_at = [&](double t) {
        CoherentSeries evolved = evolve(series, t);
        return probability_density(evolved, {x}, units).values[0];
      };
      auto jx_at = [&](double x_probe) {
        return current_density(series, {x_probe}, units).jx.values[0];
      };
      double drho_dt = (rho_at(dt) - rho_at(-dt)) / (2.0 * dt);
      double djx_dx = (jx_at(x + dx) - jx_at(x - dx)) / (2.0 * dx);
      CHECK(std::fabs(factor * drho_dt + djx_dx) < 5e-6);
    }
  }
}

}  // TEST_SUITE("spinors")
