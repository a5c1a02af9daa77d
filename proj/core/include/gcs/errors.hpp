#pragma once

#include <stdexcept>
#include <string>

namespace gcs {

// |eta(x)| fell below the singularity guard: the bilayer construction
// divides by eta, and nothing physical lives at its zeros.
class DegenerateEta : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent ladder data: p_0 != 0, non-positive q_n, undeclared or
// falsely declared roots of f, or q_n * p_{n+1} <= 0 in the HW recursion.
class InvalidLadder : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The coherent-series normalization sum failed the ratio test numerically
// (coefficient ratios stayed >= 1 for 50 consecutive terms).
class Divergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Gilmore-Perelomov series was requested for a weight f that is not the
// Heisenberg-Weyl sequence of the given (p, q); the displacement-operator
// factorization behind the closed form does not hold there.
class NotHWAlgebra : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closed-form observable disagrees with its independent matrix-element
// oracle beyond tolerance; signals a transcription error, not bad input.
class OracleMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gcs
