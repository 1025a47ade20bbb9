#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qbs/contract.hpp"
#include "qbs/grid.hpp"
#include "qbs/hamiltonian.hpp"

namespace qbs {

enum class GateKind { H, S, Sdg, Z, X, CNOT, Rz, CPhase, Swap };

/// One gate. q0 is the only qubit for single-qubit kinds; CNOT uses
/// (q0 = control, q1 = target); CPhase and Swap are symmetric in (q0, q1).
/// Rz(theta) = diag(e^{-i theta/2}, e^{+i theta/2});
/// CPhase(theta) = diag(1, 1, 1, e^{i theta}).
struct Gate {
  GateKind kind = GateKind::H;
  int q0 = 0;
  int q1 = -1;
  double angle = 0.0;
};

/// Gate list over n_register + 2 qubits: the position register on qubits
/// 0..n_register-1 (qubit 0 = most significant statevector bit), the
/// embedding ancilla q_E = n_register, and the parity ancilla
/// q_G = n_register + 1. Fragments acting on fewer qubits simply use a
/// smaller width. A tracked global phase multiplies the final state.
struct Circuit {
  int width = 0;
  int n_register = 0;
  std::vector<Gate> gates;
  std::complex<double> global_phase{1.0, 0.0};

  int embedding_qubit() const { return n_register; }
  int gate_ancilla() const { return n_register + 1; }

  /// Validates qubit indices and angle finiteness; throws on violation.
  void append(const Gate& g);
  void append_all(const Circuit& fragment);
};

/// Standard H / controlled-phase ladder with final qubit-reversal swaps.
/// Its dense matrix is F_{kj} = w^{jk}/sqrt(N), w = exp(2 pi i / N), the
/// same convention as fourier_forward.
Circuit qft_circuit(int n_q);

/// Reversed gate list with every gate conjugated.
Circuit adjoint(const Circuit& circuit);

/// exp(i beta Z_word) via a CNOT parity ladder onto q_G and Rz(-2 beta),
/// exact including phase. With onto_embedding, q_E joins the parity ladder
/// and the fragment is conjugated on q_E so it implements
/// exp(i beta sigma^y_E (x) Z_word); an empty word then reduces to the bare
/// q_E rotation exp(i beta sigma^y_E) with no entangling gate.
Circuit pauli_z_exponential_block(std::uint32_t word, double beta,
                                  bool onto_embedding, int n_register);

/// The sigma^z_E prefactor of the unitary dilation: a single Z on q_E.
Circuit dilation_prefix(int n_register);

/// Hamiltonian-dynamics blocks only (no QFTs): embedded parity blocks under
/// one shared q_E basis change, the dilation Z, then hermitian blocks.
/// Hermitian angles are -T h'_I; embedded angles are the coefficients of
/// arccos(exp(-T(...))), which already carry the maturity. Within each kind
/// the retained words are chained greedily by Hamming adjacency so that
/// consecutive parity ladders share prefixes and their CNOTs cancel.
Circuit compile_dynamics_blocks(const TruncationPlan& plan,
                                const GridSpec& grid,
                                const ContractParams& contract);

/// Full propagator circuit: QFT, embedded blocks, dilation Z, hermitian
/// blocks, inverse QFT. Plan and grid must agree on the qubit count.
Circuit compile(const TruncationPlan& plan, const GridSpec& grid,
                const ContractParams& contract);

/// Removes adjacent identical CNOT pairs (same control and target, nothing
/// touching either qubit in between), iterated to a fixed point. The circuit
/// unitary is preserved exactly.
Circuit optimize_cnot_cancellation(const Circuit& circuit);

/// CNOT + CPhase + 3 * Swap.
std::size_t entangling_gate_count(const Circuit& circuit);
/// Same tally with Swap gates ignored.
std::size_t entangling_gate_count_excluding_swaps(const Circuit& circuit);

/// The published gate budget refers to the dynamics blocks alone, so the
/// report carries that tally next to whole-circuit counts with and without
/// the QFT swaps.
struct GateCountReport {
  int width = 0;
  std::size_t dynamics_raw = 0;        ///< dynamics blocks, no optimization
  std::size_t dynamics_optimized = 0;  ///< dynamics blocks after cancellation
  std::size_t full_excluding_swaps = 0;
  std::size_t full_including_swaps = 0;
};
GateCountReport gate_count_report(const TruncationPlan& plan,
                                  const GridSpec& grid,
                                  const ContractParams& contract);

/// Line-oriented text form, one gate per line `KIND q [q2] [angle]`, angles
/// printed with 17 significant digits; round-trips exactly.
std::string circuit_to_text(const Circuit& circuit);
Circuit circuit_from_text(const std::string& text);

}  // namespace qbs
