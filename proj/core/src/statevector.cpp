#include "qbs/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qbs {

namespace {

// Qubit q occupies bit (width - 1 - q) of the amplitude index.
std::size_t bit_of(int width, int q) {
  return std::size_t{1} << (width - 1 - q);
}

void apply_single(std::vector<cdouble>& a, std::size_t bit, const cdouble m00,
                  const cdouble m01, const cdouble m10, const cdouble m11) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i & bit) continue;
    const cdouble lo = a[i];
    const cdouble hi = a[i | bit];
    a[i] = m00 * lo + m01 * hi;
    a[i | bit] = m10 * lo + m11 * hi;
  }
}

void apply_phase_on_set(std::vector<cdouble>& a, std::size_t bit, cdouble ph) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i & bit) a[i] *= ph;
  }
}

}  // namespace

StateVector make_basis_state(int width, std::size_t index) {
  if (width < 1 || width > 30) {
    throw std::invalid_argument("make_basis_state: bad width");
  }
  StateVector s;
  s.width = width;
  s.amplitudes.assign(std::size_t{1} << width, cdouble{0.0, 0.0});
  if (index >= s.amplitudes.size()) {
    throw std::invalid_argument("make_basis_state: index out of range");
  }
  s.amplitudes[index] = 1.0;
  return s;
}

double norm_squared(const StateVector& state) {
  double n = 0.0;
  for (const auto& a : state.amplitudes) n += std::norm(a);
  return n;
}

StateVector simulate(const Circuit& circuit, const StateVector& input) {
  if (input.width != circuit.width ||
      input.amplitudes.size() != (std::size_t{1} << circuit.width)) {
    throw std::invalid_argument("simulate: state width != circuit width");
  }
  StateVector out = input;
  auto& a = out.amplitudes;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  for (const auto& g : circuit.gates) {
    const std::size_t b0 = bit_of(circuit.width, g.q0);
    switch (g.kind) {
      case GateKind::H:
        apply_single(a, b0, inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
        break;
      case GateKind::S:
        apply_phase_on_set(a, b0, cdouble{0.0, 1.0});
        break;
      case GateKind::Sdg:
        apply_phase_on_set(a, b0, cdouble{0.0, -1.0});
        break;
      case GateKind::Z:
        apply_phase_on_set(a, b0, cdouble{-1.0, 0.0});
        break;
      case GateKind::X:
        apply_single(a, b0, 0.0, 1.0, 1.0, 0.0);
        break;
      case GateKind::Rz: {
        const cdouble lo = std::polar(1.0, -g.angle / 2.0);
        const cdouble hi = std::polar(1.0, +g.angle / 2.0);
        for (std::size_t i = 0; i < a.size(); ++i) {
          a[i] *= (i & b0) ? hi : lo;
        }
        break;
      }
      case GateKind::CNOT: {
        const std::size_t bt = bit_of(circuit.width, g.q1);
        for (std::size_t i = 0; i < a.size(); ++i) {
          if ((i & b0) && !(i & bt)) std::swap(a[i], a[i | bt]);
        }
        break;
      }
      case GateKind::CPhase: {
        const std::size_t b1 = bit_of(circuit.width, g.q1);
        const cdouble ph = std::polar(1.0, g.angle);
        for (std::size_t i = 0; i < a.size(); ++i) {
          if ((i & b0) && (i & b1)) a[i] *= ph;
        }
        break;
      }
      case GateKind::Swap: {
        const std::size_t b1 = bit_of(circuit.width, g.q1);
        for (std::size_t i = 0; i < a.size(); ++i) {
          if ((i & b0) && !(i & b1)) std::swap(a[i], a[(i ^ b0) | b1]);
        }
        break;
      }
    }
  }
  if (circuit.global_phase != cdouble{1.0, 0.0}) {
    for (auto& x : a) x *= circuit.global_phase;
  }
  return out;
}

}  // namespace qbs
