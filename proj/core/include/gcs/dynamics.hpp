#pragma once

#include <string>
#include <vector>

#include "gcs/coherent.hpp"
#include "gcs/types.hpp"

namespace gcs {

// Dimensionless level frequency h(n): sqrt(n) for monolayer (time t_1),
// sqrt(n(n-1)) for bilayer (time t_2).
double level_frequency(LayerKind kind, int n);

// a_n -> a_n e^{-i h(n) t}.  The result is no longer the canonical
// coherent family (its closed-form observables do not apply).
CoherentSeries evolve(const CoherentSeries& series, double t);

// F(t) = |<Psi_alpha | Psi_alpha(t)>|^2 = |sum |a_n|^2 e^{-i h(n) t}|^2,
// normalized so F(0) is exactly 1.  O(N), equal to the double cosine sum.
double fidelity(const CoherentSeries& series, double t);

// Large-r bilayer revival envelope e^{-4 r^2 sin^2(t2/2)}.
double fidelity_envelope(double r, double t2);

// Norm of the linear-spectrum residual gamma(t; N): components
// a_n (e^{-i sqrt(n(n-1)) t2} - e^{-i (n - 1/2) t2}) for n < n_cut.
// Bilayer series only.
double linear_residual(const CoherentSeries& series, double t, int n_cut);

// Cross-term diagnostic 2 Re <Psi'(t)| P_alpha |gamma(t; N)> of the
// linear-approximation fidelity split (P_alpha projects onto the initial
// state, Psi' carries the linearized phases e^{i t2/2} alpha(t)^n).
double linear_cross_term(const CoherentSeries& series, double t, int n_cut);

struct FidelityTrace {
  std::vector<double> ts;
  std::vector<double> values;
  std::vector<double> quasiperiods;
};

// Uniform sampling of F on [0, t_max]; quasiperiods are the interior
// local maxima with F >= threshold, refined by golden-section search to
// 1e-6 in t.  Sampling may run concurrently; results are bit-identical
// to the sequential evaluation.
FidelityTrace quasiperiod_scan(const CoherentSeries& series, double t_max,
                               int samples, double threshold);

// CSV with header "t,fidelity"; quasiperiods as a JSON list.  Both use
// 17-significant-digit decimals.
std::string trace_to_csv(const FidelityTrace& trace);
std::string quasiperiods_to_json(const FidelityTrace& trace);

}  // namespace gcs
