#pragma once

#include <string>

namespace gcs {

// Which graphene system an object belongs to.
enum class LayerKind { Monolayer, Bilayer };

// Direction of a ladder action: Down lowers the level index, Up raises it.
enum class Direction { Down, Up };

// Coherent-state construction: Barut-Girardello (annihilation-operator
// eigenstate), Gilmore-Perelomov (displaced extremal state), or
// minimum-uncertainty (identical to BG for the lambda = 1 quadratures).
enum class Definition { BG, GP, MU };

// One ladder step: Psi_n -> coefficient * Psi_target.  A vanishing
// coefficient with target -1 marks annihilation (down action on n = 0).
struct LadderTerm {
  double coefficient = 0.0;
  int target = -1;
};

inline const char* to_string(LayerKind kind) {
  return kind == LayerKind::Monolayer ? "monolayer" : "bilayer";
}

inline const char* to_string(Definition definition) {
  switch (definition) {
    case Definition::BG: return "BG";
    case Definition::GP: return "GP";
    default: return "MU";
  }
}

}  // namespace gcs
