// Generalized ladder framework: A⁻Ψ_n = √(p_n) f(n) Ψ_{n−1},
// A⁺Ψ_n = √(q_n) f(n+1) Ψ_{n+1}, with the weight f free up to the
// closure condition [A⁻, A⁺] = const that singles out the
// Heisenberg-Weyl family via
//   f(1) = (q₀ p₁)^{−1/4},
//   f(n+1) = √( (1 + √(q_{n−1} p_n) f(n)²) / √(q_n p_{n+1}) ).
// Oracle values below were frozen from an independent implementation of
// that recursion before the library existed.

#include <doctest.h>

#include <cmath>
#include <vector>

#include "gcs/errors.hpp"
#include "gcs/ladder.hpp"

using namespace gcs;

namespace {

double osc_p(int n) { return static_cast<double>(n); }
double osc_q(int n) { return static_cast<double>(n) + 1.0; }

}  // namespace

TEST_SUITE("ladder") {

TEST_CASE("oscillator sequences and canonical detection") {
  LadderSpec spec = LadderSpec::oscillator();
  CHECK(spec.p(0) == 0.0);
  CHECK(spec.p(7) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(spec.q(7) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(spec.f(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(spec.is_canonical_oscillator());
  CHECK(!spec.has_roots());
}

TEST_CASE("closure weight is identically 1 on the oscillator") {
  // the Heisenberg-Weyl fixed point: deviation 0.0 up to n = 500
  std::vector<double> f = hw_f_sequence(osc_p, osc_q, 500);
  double worst = 0.0;
  for (int n = 1; n <= 500; ++n) {
    worst = std::max(worst, std::fabs(f[n] - 1.0));
  }
  CHECK(worst < 1e-10);
  CHECK(worst == 0.0);  // the recursion is exact here, not just close
}

TEST_CASE("commutator spacing is unit for the closure weight") {
  LadderSpec spec = LadderSpec::oscillator();
  // γ_n = √(q_{n−1} p_n) f(n)² = n, so γ_{n+1} − γ_n = 1
  for (int n = 1; n <= 50; ++n) {
    CHECK(gamma_n(spec, n + 1) - gamma_n(spec, n) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("closure weight for quadratic sequences, frozen values") {
  // p_n = n², q_n = (n+1)²  ->  f(n) = 1/√n
  auto p = [](int n) { return static_cast<double>(n) * n; };
  auto q = [](int n) { return (n + 1.0) * (n + 1.0); };
  std::vector<double> f = hw_f_sequence(p, q, 7);
  CHECK(f[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f[2] == doctest::Approx(0.70710678118654757).epsilon(1e-14));
  CHECK(f[3] == doctest::Approx(0.57735026918962584).epsilon(1e-14));
  CHECK(f[4] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(f[5] == doctest::Approx(0.44721359549995793).epsilon(1e-14));
  CHECK(f[6] == doctest::Approx(0.40824829046386302).epsilon(1e-14));
  CHECK(f[7] == doctest::Approx(0.3779644730092272).epsilon(1e-14));
  // the commutator ladder still has unit spacing: γ_n = n²·(1/n) = n
  LadderSpec spec(p, q, [](int n) { return 1.0 / std::sqrt(n); });
  for (int n = 1; n <= 6; ++n) {
    CHECK(gamma_n(spec, n) == doctest::Approx(n).epsilon(1e-12));
  }
}

TEST_CASE("ladder actions carry the weight") {
  LadderSpec spec(osc_p, osc_q, [](int n) { return 1.0 / std::sqrt(n); });
  LadderTerm down = action_coefficient(spec, Direction::Down, 4);
  CHECK(down.coefficient ==
        doctest::Approx(std::sqrt(4.0) / 2.0).epsilon(1e-14));  // √p₄ f(4)
  CHECK(down.target == 3);
  LadderTerm up = action_coefficient(spec, Direction::Up, 4);
  CHECK(up.coefficient ==
        doctest::Approx(std::sqrt(5.0) / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(up.target == 5);
  LadderTerm bottom = action_coefficient(spec, Direction::Down, 0);
  CHECK(bottom.coefficient == 0.0);
  CHECK(bottom.target == -1);
}

TEST_CASE("case-map prefactors by layer") {
  auto unit_f = [](int) { return 1.0; };
  // monolayer: 1/√2 at n = 1, 1/2 from n = 2 on
  CHECK(case_map_f(LayerKind::Monolayer, unit_f, 1) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(case_map_f(LayerKind::Monolayer, unit_f, 2) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(case_map_f(LayerKind::Monolayer, unit_f, 5) ==
        doctest::Approx(0.5).epsilon(1e-15));
  // bilayer: 1 at n = 1, 1/√2 at n = 2, 1/2 from n = 3 on
  CHECK(case_map_f(LayerKind::Bilayer, unit_f, 1) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(case_map_f(LayerKind::Bilayer, unit_f, 2) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(case_map_f(LayerKind::Bilayer, unit_f, 3) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(case_map_f(LayerKind::Bilayer, unit_f, 7) ==
        doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("root bookkeeping") {
  auto f = [](int n) { return (n == 2 || n == 5) ? 0.0 : 1.0; };
  LadderSpec spec = LadderSpec::oscillator_with_f(f, {2, 5});
  CHECK(spec.has_roots());
  CHECK(spec.max_root() == 5);
  CHECK(spec.next_root_after(1).value() == 2);
  CHECK(spec.next_root_after(2).value() == 5);
  CHECK(!spec.next_root_after(5).has_value());
  CHECK(!spec.is_canonical_oscillator());
}

TEST_CASE("invalid ladder data is rejected at construction") {
  auto unit_f = [](int) { return 1.0; };
  // p₀ must vanish: the state chain has a bottom
  CHECK_THROWS_AS(LadderSpec([](int n) { return n + 1.0; }, osc_q, unit_f),
                  InvalidLadder);
  // an undeclared zero of f is an inconsistency, caught eagerly
  CHECK_THROWS_AS(
      LadderSpec(osc_p, osc_q, [](int n) { return n == 5 ? 0.0 : 1.0; }),
      InvalidLadder);
  // declared roots must actually be roots
  CHECK_THROWS_AS(LadderSpec::oscillator_with_f(unit_f, {3}), InvalidLadder);
  // roots must be sorted and distinct
  auto rooted = [](int n) { return (n == 2 || n == 5) ? 0.0 : 1.0; };
  CHECK_THROWS_AS(LadderSpec::oscillator_with_f(rooted, {5, 2}),
                  InvalidLadder);
  CHECK_THROWS_AS(LadderSpec::oscillator_with_f(rooted, {2, 2, 5}),
                  InvalidLadder);
}

TEST_CASE("guarded accessors reject out-of-domain sequence values") {
  auto unit_f = [](int) { return 1.0; };
  LadderSpec negative_p([](int n) { return n == 0 ? 0.0 : -1.0; }, osc_q,
                        unit_f);
  CHECK_THROWS_AS(negative_p.p(3), InvalidLadder);
}

}  // TEST_SUITE("ladder")
