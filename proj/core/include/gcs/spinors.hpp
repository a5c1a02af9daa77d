#pragma once

#include "gcs/fields.hpp"
#include "gcs/types.hpp"

namespace gcs {

// Two-component spinor value at a point.  Both entries are stored real:
// the global plane-wave factor e^{iky} cancels in every observable, and
// the monolayer bottom-component i is already absorbed into the reduced
// density/current kernels below.
struct SpinorSample {
  double top = 0.0;
  double bottom = 0.0;
};

// 1 when level n has a top component, 0 for the gated low levels
// (monolayer n = 0; bilayer n = 0, 1).
double top_gate(LayerKind kind, int n);

// Spinor normalization constant c_n = 2^{-gate/2}.
double norm_constant(LayerKind kind, int n);

// Constant-field eigenstate: monolayer (c_n gate_n psi_{n-1}, c_n psi_n),
// bilayer (c_n gate_n psi_{n-2}, c_n psi_n).
SpinorSample eigenstate(LayerKind kind, int n, double x,
                        const UnitSystem& units);

// Landau-level energy: monolayer branch * sqrt(n omega), bilayer
// branch * (omega/2) sqrt(n(n-1)).
double energy(LayerKind kind, int n, const UnitSystem& units);

// Pairwise density kernel rho_{n,m}(x) = Psi_m^dagger Psi_n, real and
// symmetric in (n, m).
double rho_kernel(LayerKind kind, int n, int m, double x,
                  const UnitSystem& units);

enum class KernelSign { Plus, Minus };

// Pairwise current kernels: the j^{+-}_{n,m} (monolayer) and
// j-fraktur^{+-}_{n,m} (bilayer) combinations of oscillator functions,
// including all Kronecker gates and the 2^{...} normalization.  The x
// current component assembles from Minus kernels, the y component from
// Plus kernels.
double current_kernel(LayerKind kind, KernelSign sign, int n, int m, double x,
                      const UnitSystem& units);

}  // namespace gcs
