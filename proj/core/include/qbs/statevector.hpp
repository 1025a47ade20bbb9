#pragma once

#include <cstddef>
#include <vector>

#include "qbs/circuit.hpp"

namespace qbs {

/// Complex amplitude vector over 2^width basis states. Qubit 0 is the
/// highest-order bit of the index.
struct StateVector {
  int width = 0;
  std::vector<cdouble> amplitudes;
};

StateVector make_basis_state(int width, std::size_t index);

/// Exact gate-by-gate application in double precision; deterministic.
/// Throws on width mismatch.
StateVector simulate(const Circuit& circuit, const StateVector& input);

double norm_squared(const StateVector& state);

}  // namespace qbs
