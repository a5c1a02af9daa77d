// Oscillator functions behind both spinor components.
//
// φ_n(x) = (ω/2π)^{1/4} (2ⁿ n!)^{−1/2} H_n(z) e^{−z²/2},
// z(x) = √(ω/2) (x + 2k/ω); the library evaluates them by the normalized
// three-term recurrence.  The oracle here builds H_n explicitly from the
// polynomial recurrence H_{n+1} = 2z H_n − 2n H_{n−1} — an entirely
// different code path with different rounding — and the two must agree to
// near machine precision at moderate n.

#include <doctest.h>

#include <cmath>
#include <vector>

#include "gcs/fields.hpp"
#include "gcs/oscillator.hpp"

using namespace gcs;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Hermite-polynomial oracle, explicit and unnormalized until the end.
double psi_oracle(int n, double x, const UnitSystem& units) {
  double z = std::sqrt(units.omega / 2.0) * (x + 2.0 * units.k / units.omega);
  double h_prev = 1.0;  // H_0
  double h = 2.0 * z;   // H_1
  if (n == 0) h = h_prev;
  for (int j = 1; j < n; ++j) {
    double h_next = 2.0 * z * h - 2.0 * j * h_prev;
    h_prev = h;
    h = h_next;
  }
  double log_norm = 0.0;  // log(2^n n!)
  for (int j = 1; j <= n; ++j) log_norm += std::log(2.0 * j);
  double amplitude = std::pow(units.omega / (2.0 * kPi), 0.25) *
                     std::exp(-0.5 * z * z - 0.5 * log_norm);
  return amplitude * h;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  std::vector<double> xs(points);
  for (int i = 0; i < points; ++i) {
    xs[i] = lo + (hi - lo) * i / (points - 1);
  }
  return xs;
}

}  // namespace

TEST_SUITE("oscillator") {

TEST_CASE("ground state peak value (2π)^{-1/4} at the magnetic center") {
  UnitSystem units;  // ω = 1, k = 1 -> center x = -2
  CHECK(eval_psi(0, -2.0, units) ==
        doctest::Approx(0.63161877774606467).epsilon(1e-15));
  // k shifts the center but not the peak value
  units.k = 0.0;
  CHECK(eval_psi(0, 0.0, units) ==
        doctest::Approx(0.63161877774606467).epsilon(1e-15));
}

TEST_CASE("recurrence matches the explicit Hermite oracle") {
  UnitSystem units;
  units.omega = 1.7;
  units.k = -0.3;
  for (int n : {0, 1, 2, 3, 5, 8, 12}) {
    for (double x : {-4.0, -1.1, 0.0, 0.7, 2.9}) {
      double expected = psi_oracle(n, x, units);
      CHECK(eval_psi(n, x, units) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("bulk evaluation equals one-at-a-time evaluation") {
  UnitSystem units;
  std::vector<double> all = eval_psi_up_to(20, 1.3, units);
  REQUIRE(all.size() == 21);
  for (int n = 0; n <= 20; ++n) {
    CHECK(all[n] == eval_psi(n, 1.3, units));  // identical recurrence, bitwise
  }
}

TEST_CASE("orthonormality under the standard quadrature rule") {
  UnitSystem units;
  units.omega = 2.0;
  QuadratureRule rule = QuadratureRule::standard(units);
  for (int n : {0, 1, 2, 5, 8}) {
    for (int m : {0, 1, 2, 5, 8}) {
      double overlap = integrate(
          [&](double x) { return eval_psi(n, x, units) * eval_psi(m, x, units); },
          rule);
      double expected = n == m ? 1.0 : 0.0;
      CHECK(overlap == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("ladder index actions") {
  LadderTerm down0 = theta_action(Direction::Down, 0);
  CHECK(down0.coefficient == 0.0);   // θ⁻ annihilates the bottom level
  CHECK(down0.target == -1);
  LadderTerm down3 = theta_action(Direction::Down, 3);
  CHECK(down3.coefficient == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(down3.target == 2);
  LadderTerm up3 = theta_action(Direction::Up, 3);
  CHECK(up3.coefficient == doctest::Approx(2.0).epsilon(1e-15));  // √(n+1)
  CHECK(up3.target == 4);
}

TEST_CASE("tridiagonal z and p elements against the quadrature oracle") {
  UnitSystem units;  // z = (x + 2)/√2 for ω = 1, k = 1
  QuadratureRule rule = QuadratureRule::standard(units);
  auto z_of = [&](double x) {
    return std::sqrt(units.omega / 2.0) * (x + 2.0 * units.k / units.omega);
  };
  for (int n : {0, 1, 2, 4, 7}) {
    for (int m : {0, 1, 2, 4, 7}) {
      ZPElements elements = zp_matrix_elements(m, n);
      // ⟨m|z|n⟩ = ∫ φ_m z φ_n dx: √(n/2) on the first subdiagonal
      double z_expected = integrate(
          [&](double x) {
            return eval_psi(m, x, units) * z_of(x) * eval_psi(n, x, units);
          },
          rule);
      CHECK(elements.z == doctest::Approx(z_expected).epsilon(1e-10));
      // ⟨m|p|n⟩ = −i ∫ φ_m ∂_z φ_n dx·(dz scale): purely imaginary, the
      // stored coefficient is its imaginary part.  ∂_z via central
      // difference in x with dx = dz √(2/ω).
      double h = 1e-5;
      double p_expected = -integrate(
          [&](double x) {
            double dpsi = (eval_psi(n, x + h, units) -
                           eval_psi(n, x - h, units)) /
                          (2.0 * h) * std::sqrt(2.0 / units.omega);
            return eval_psi(m, x, units) * dpsi;
          },
          rule);
      CHECK(elements.p_imag == doctest::Approx(p_expected).epsilon(5e-8));
    }
  }
}

TEST_CASE("standard rule covers the packet and integrates a Gaussian") {
  UnitSystem units;
  QuadratureRule rule = QuadratureRule::standard(units, 0.0);
  // centered on -2k/ω with half-width 30/√ω
  CHECK(rule.x_min == doctest::Approx(-32.0).epsilon(1e-15));
  CHECK(rule.x_max == doctest::Approx(28.0).epsilon(1e-15));
  CHECK(rule.points == 4001);
  // grows with the displacement radius: half-width 4r + 20/√ω at r = 5
  QuadratureRule wide = QuadratureRule::standard(units, 5.0);
  CHECK(wide.x_max - wide.x_min == doctest::Approx(80.0).epsilon(1e-15));
  double gauss = integrate(
      [](double x) { return std::exp(-(x + 2.0) * (x + 2.0)); }, rule);
  CHECK(gauss == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
}

}  // TEST_SUITE("oscillator")
