#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "gcs/ladder.hpp"
#include "gcs/types.hpp"

namespace gcs {

// Reported tail bounds are clamped below at this value: a normalized
// double-precision series cannot resolve finer contributions, and an
// honest bound stays a bound when enlarged.
inline constexpr double kTailFloor = 1e-14;

struct Truncation {
  int order = 0;          // highest retained index N
  double tail_bound = 0;  // certified bound on the dropped sum of |a_n|^2
};

// Truncated coefficient list of a coherent state over the spinor
// eigenbasis: coefficients[i] multiplies Psi_{base_index + i}.  base_index
// is positive only for root-case constructions.  `canonical` marks the
// f == 1 oscillator-ladder family, the only one for which the closed-form
// observable series apply.
struct CoherentSeries {
  LayerKind kind = LayerKind::Monolayer;
  Definition definition = Definition::BG;
  std::complex<double> alpha;
  int base_index = 0;
  std::vector<std::complex<double>> coefficients;
  Truncation truncation;
  bool canonical = false;

  double r() const { return std::abs(alpha); }
  double theta() const { return std::arg(alpha); }
  int max_index() const {
    return base_index + static_cast<int>(coefficients.size()) - 1;
  }
  std::complex<double> at(int n) const;
  double norm_squared() const;
};

// [f(k)]! = f(1) f(2) ... f(k), empty product 1 at k = 0.
double generalized_factorial(const LadderSpec::Sequence& f, int k);

// Smallest N >= 32 whose Poisson tail sum_{n>N} r^{2n} e^{-r^2} / n!
// falls below tol, certified by a geometric majorant.
int truncation_order(double r, double tol);

// Barut-Girardello series: eigenvector of the down action with eigenvalue
// alpha, built by the stable ratio recursion
//   a_{n+1} = a_n alpha / (sqrt(p_{n+1}) f(n+1))
// and normalized.  With roots present the series starts at the maximum
// root.  Throws Divergence when the normalization sum fails the ratio
// test (ratios >= 1 for 50 consecutive terms).
CoherentSeries bgcs(const LadderSpec& spec, LayerKind kind,
                    std::complex<double> alpha, double tol);

// Gilmore-Perelomov series.  Without roots this is the displaced ground
// state; the closed form presupposes the Heisenberg-Weyl algebra, so f
// must match hw_f_sequence(p, q) within 1e-10 (NotHWAlgebra otherwise).
// With roots, `extremal` selects the annihilated state to displace (0 or
// one of the roots); the series then lives between consecutive roots and
// is normalized explicitly.
CoherentSeries gpcs(const LadderSpec& spec, LayerKind kind,
                    std::complex<double> alpha, double tol,
                    std::optional<int> extremal = std::nullopt);

// Minimum-uncertainty series for the lambda = 1 quadratures: identical
// coefficients to bgcs, tagged MU.
CoherentSeries mucs(const LadderSpec& spec, LayerKind kind,
                    std::complex<double> alpha, double tol);

// Spreads of the generalized quadratures Q = (A^+ + A^-)/sqrt(2),
// P = i (A^+ - A^-)/sqrt(2) computed purely from action coefficients,
// plus half the commutator expectation |<[A^-, A^+]>|/2 they are to be
// compared against.
struct QuadratureSpread {
  double dq = 0.0;
  double dp = 0.0;
  double commutator_half = 0.0;
};
QuadratureSpread quadrature_spread(const CoherentSeries& series,
                                   const LadderSpec& spec);

// JSON export/import of a series; numbers are printed with 17 significant
// digits so the round trip is decimal-exact.
std::string series_to_json(const CoherentSeries& series);
CoherentSeries series_from_json(const std::string& text);

}  // namespace gcs
