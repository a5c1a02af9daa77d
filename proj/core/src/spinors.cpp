#include "gcs/spinors.hpp"

#include <cmath>
#include <stdexcept>

#include "gcs/oscillator.hpp"

namespace gcs {

namespace {

int level_shift(LayerKind kind) {
  return kind == LayerKind::Monolayer ? 1 : 2;
}

}  // namespace

double top_gate(LayerKind kind, int n) {
  if (kind == LayerKind::Monolayer) return n == 0 ? 0.0 : 1.0;
  return (n == 0 || n == 1) ? 0.0 : 1.0;
}

double norm_constant(LayerKind kind, int n) {
  // c_n = 2^{-gate/2}: 1 for the single-component low levels, 1/√2 above.
  return std::pow(2.0, -0.5 * top_gate(kind, n));
}

SpinorSample eigenstate(LayerKind kind, int n, double x,
                        const UnitSystem& units) {
  if (n < 0) throw std::invalid_argument("eigenstate: negative level index");
  double c = norm_constant(kind, n);
  double gate = top_gate(kind, n);
  int shift = level_shift(kind);
  SpinorSample sample;
  sample.top = gate > 0.0 ? c * eval_psi(n - shift, x, units) : 0.0;
  sample.bottom = c * eval_psi(n, x, units);
  return sample;
}

double energy(LayerKind kind, int n, const UnitSystem& units) {
  if (n < 0) throw std::invalid_argument("energy: negative level index");
  int shift = kind == LayerKind::Monolayer ? 1 : 2;
  if (n < shift) return 0.0;  // zero modes, exactly
  double magnitude;
  if (kind == LayerKind::Monolayer) {
    magnitude = std::sqrt(n * units.omega);
  } else {
    magnitude = units.omega / 2.0 *
                std::sqrt(static_cast<double>(n) * (n - 1.0));
  }
  return units.branch * magnitude;
}

double rho_kernel(LayerKind kind, int n, int m, double x,
                  const UnitSystem& units) {
  if (n < 0 || m < 0) {
    throw std::invalid_argument("rho_kernel: negative level index");
  }
  SpinorSample sn = eigenstate(kind, n, x, units);
  SpinorSample sm = eigenstate(kind, m, x, units);
  return sn.top * sm.top + sn.bottom * sm.bottom;
}

double current_kernel(LayerKind kind, KernelSign sign, int n, int m, double x,
                      const UnitSystem& units) {
  if (n < 0 || m < 0) {
    throw std::invalid_argument("current_kernel: negative level index");
  }
  double plus_minus = sign == KernelSign::Plus ? 1.0 : -1.0;

  if (kind == LayerKind::Monolayer) {
    //        (1-δ_{n0}) ψ_{n-1} ψ_m ± (1-δ_{m0}) ψ_n ψ_{m-1}
    // j± = ---------------------------------------------------
    //                  √(2^{2-δ_{n0}-δ_{m0}})
    double first =
        n >= 1 ? eval_psi(n - 1, x, units) * eval_psi(m, x, units) : 0.0;
    double second =
        m >= 1 ? eval_psi(n, x, units) * eval_psi(m - 1, x, units) : 0.0;
    double gates = (n == 0 ? 1.0 : 0.0) + (m == 0 ? 1.0 : 0.0);
    return (first + plus_minus * second) / std::sqrt(std::pow(2.0, 2.0 - gates));
  }

  // Bilayer: both terms carry ψ_{n-1}; the first needs the m-side top
  // gate, the second the n-side one.
  if (n < 1) return 0.0;
  double psi_n1 = eval_psi(n - 1, x, units);
  double first = m >= 2 ? std::sqrt(static_cast<double>(n)) *
                              eval_psi(m - 2, x, units) * psi_n1
                        : 0.0;
  double second = n >= 2 ? std::sqrt(static_cast<double>(n) - 1.0) *
                               eval_psi(m, x, units) * psi_n1
                         : 0.0;
  double gates = (n <= 1 ? 1.0 : 0.0) + (m <= 1 ? 1.0 : 0.0);
  return (first + plus_minus * second) / std::sqrt(std::pow(2.0, 2.0 - gates));
}

}  // namespace gcs
