#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gcs/types.hpp"

namespace gcs {

// Roots of the weight are declared when |f(n)| drops below this.
inline constexpr double kRootEpsilon = 1e-14;

// A generalized ladder family: sequences p_n (p_0 = 0), q_n > 0 and a
// weight f on the positive integers.  The down/up actions on the energy
// eigenbasis carry coefficients sqrt(p_n) f(n) and sqrt(q_n) f(n+1); the
// weight is never needed off the integers.  Roots of f must be declared
// up front -- downstream constructions branch on them, so an undeclared
// zero (or a declared non-zero) is a construction error.
class LadderSpec {
 public:
  using Sequence = std::function<double(int)>;

  LadderSpec(Sequence p, Sequence q, Sequence f, std::vector<int> roots = {});

  double p(int n) const;
  double q(int n) const;
  double f(int n) const;

  const std::vector<int>& roots() const { return m_roots; }
  bool has_roots() const { return !m_roots.empty(); }
  int max_root() const;
  std::optional<int> next_root_after(int m) const;

  // True for p_n = n, q_n = n+1, f == 1 -- the harmonic-oscillator ladder
  // whose coherent family all closed-form observables assume.
  bool is_canonical_oscillator() const { return m_canonical; }

  // p_n = n, q_n = n+1, f == 1.
  static LadderSpec oscillator();

  // Same (p, q), custom weight.
  static LadderSpec oscillator_with_f(Sequence f, std::vector<int> roots = {});

 private:
  Sequence m_p, m_q, m_f;
  std::vector<int> m_roots;
  bool m_canonical = false;
};

// Energy-dependent weight maps absorbing the case prefactors of the
// spinor-level ladder actions: monolayer f(n) * {1/sqrt(2), 1/2},
// bilayer f(n) * {1, 1/sqrt(2), 1/2} by level.  Defined for n >= 1.
double case_map_f(LayerKind kind, const LadderSpec::Sequence& f, int n);

// Unified action A^- Psi_n = sqrt(p_n) f(n) Psi_{n-1} (zero at n = 0),
// A^+ Psi_n = sqrt(q_n) f(n+1) Psi_{n+1}.
LadderTerm action_coefficient(const LadderSpec& spec, Direction direction,
                              int n);

// Diagonal of the ladder commutator ladder: gamma_n =
// sqrt(q_{n-1} p_n) f(n)^2, for n >= 1.  Unit spacing
// gamma_{n+1} - gamma_n = 1 is the Heisenberg-Weyl condition.
double gamma_n(const LadderSpec& spec, int n);

// The unique weight making the (p, q) ladder fulfill the Heisenberg-Weyl
// algebra:
//   f(1) = (q_0 p_1)^{-1/4},
//   f(n+1) = sqrt((1 + sqrt(q_{n-1} p_n) f(n)^2) / sqrt(q_n p_{n+1})).
// Returns values indexed 1..N (slot 0 unused).  Throws InvalidLadder when
// some q_n p_{n+1} <= 0.
std::vector<double> hw_f_sequence(const LadderSpec::Sequence& p,
                                  const LadderSpec::Sequence& q, int N);

}  // namespace gcs
