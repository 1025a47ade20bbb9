#include "qbs/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qbs {

namespace {

constexpr double kPi = std::numbers::pi;

bool two_qubit(GateKind k) {
  return k == GateKind::CNOT || k == GateKind::CPhase || k == GateKind::Swap;
}

std::vector<int> word_qubits(std::uint32_t word, int n_register) {
  std::vector<int> qs;
  for (int j = 0; j < n_register; ++j) {
    if (word >> j & 1u) qs.push_back(j);
  }
  return qs;
}

// Parity ladder onto q_G, rotation, inverse ladder. `qs` lists the qubits
// whose joint Z-parity drives the rotation, in the order the forward ladder
// runs; the inverse runs backwards so that consecutive blocks sharing a
// ladder prefix expose cancellable CNOT pairs.
void emit_parity_rotation(Circuit& c, const std::vector<int>& qs, double beta) {
  const int g = c.gate_ancilla();
  if (qs.empty()) {
    // exp(i beta) on everything: pure tracked phase
    c.global_phase *= std::polar(1.0, beta);
    return;
  }
  if (qs.size() == 1) {
    // Rz(-2 beta) on the qubit itself is already exp(i beta Z), no ladder.
    c.append({GateKind::Rz, qs.front(), -1, -2.0 * beta});
    return;
  }
  for (int q : qs) c.append({GateKind::CNOT, q, g, 0.0});
  c.append({GateKind::Rz, g, -1, -2.0 * beta});
  for (auto it = qs.rbegin(); it != qs.rend(); ++it) {
    c.append({GateKind::CNOT, *it, g, 0.0});
  }
}

// Greedy Hamming-adjacent chain through the retained words: start from the
// smallest mask and repeatedly take the nearest unused neighbour.
std::vector<PlanTerm> adjacency_order(std::vector<PlanTerm> terms) {
  if (terms.size() < 3) return terms;
  std::sort(terms.begin(), terms.end(),
            [](const PlanTerm& a, const PlanTerm& b) { return a.word < b.word; });
  std::vector<PlanTerm> out;
  std::vector<bool> used(terms.size(), false);
  std::size_t current = 0;
  used[0] = true;
  out.push_back(terms[0]);
  for (std::size_t picked = 1; picked < terms.size(); ++picked) {
    int best_dist = 1 << 30;
    std::size_t best = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (used[i]) continue;
      const int d =
          std::popcount(terms[current].word ^ terms[i].word);
      if (d < best_dist ||
          (d == best_dist && terms[i].word < terms[best].word)) {
        best_dist = d;
        best = i;
      }
    }
    used[best] = true;
    out.push_back(terms[best]);
    current = best;
  }
  return out;
}

int parse_int(std::istringstream& in, const std::string& line) {
  int v;
  if (!(in >> v)) throw std::invalid_argument("circuit text: bad line: " + line);
  return v;
}

}  // namespace

void Circuit::append(const Gate& g) {
  const bool needs_pair = two_qubit(g.kind);
  if (g.q0 < 0 || g.q0 >= width ||
      (needs_pair && (g.q1 < 0 || g.q1 >= width))) {
    throw std::invalid_argument("circuit: qubit index outside register");
  }
  if (needs_pair && g.q0 == g.q1) {
    throw std::invalid_argument("circuit: two-qubit gate needs distinct qubits");
  }
  if (!std::isfinite(g.angle)) {
    throw std::invalid_argument("circuit: non-finite angle");
  }
  gates.push_back(g);
}

void Circuit::append_all(const Circuit& fragment) {
  if (fragment.width > width) {
    throw std::invalid_argument("circuit: fragment wider than target");
  }
  for (const auto& g : fragment.gates) append(g);
  global_phase *= fragment.global_phase;
}

Circuit qft_circuit(int n_q) {
  if (n_q < 1) throw std::invalid_argument("qft_circuit: need n_q >= 1");
  Circuit c;
  c.width = n_q;
  c.n_register = n_q;
  for (int i = 0; i < n_q; ++i) {
    c.append({GateKind::H, i, -1, 0.0});
    for (int j = i + 1; j < n_q; ++j) {
      c.append({GateKind::CPhase, j, i, kPi / std::exp2(j - i)});
    }
  }
  for (int i = 0; i < n_q / 2; ++i) {
    c.append({GateKind::Swap, i, n_q - 1 - i, 0.0});
  }
  return c;
}

Circuit adjoint(const Circuit& circuit) {
  Circuit out;
  out.width = circuit.width;
  out.n_register = circuit.n_register;
  out.global_phase = std::conj(circuit.global_phase);
  for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
    Gate g = *it;
    switch (g.kind) {
      case GateKind::S: g.kind = GateKind::Sdg; break;
      case GateKind::Sdg: g.kind = GateKind::S; break;
      case GateKind::Rz:
      case GateKind::CPhase: g.angle = -g.angle; break;
      default: break;  // H, Z, X, CNOT, Swap are self-inverse
    }
    out.append(g);
  }
  return out;
}

Circuit pauli_z_exponential_block(std::uint32_t word, double beta,
                                  bool onto_embedding, int n_register) {
  if (word >> n_register) {
    throw std::invalid_argument("pauli block: word exceeds the register");
  }
  if (word == 0 && !onto_embedding) {
    Circuit c;
    c.width = n_register + 2;
    c.n_register = n_register;
    c.global_phase = std::polar(1.0, beta);
    return c;
  }
  Circuit c;
  c.width = n_register + 2;
  c.n_register = n_register;
  const int e = c.embedding_qubit();
  auto qs = word_qubits(word, n_register);
  if (onto_embedding) {
    // sigma^y = S H sigma^z H S^dg on q_E turns the Z-parity rotation into
    // exp(i beta sigma^y_E (x) Z_word).
    c.append({GateKind::Sdg, e, -1, 0.0});
    c.append({GateKind::H, e, -1, 0.0});
    qs.insert(qs.begin(), e);
    emit_parity_rotation(c, qs, beta);
    c.append({GateKind::H, e, -1, 0.0});
    c.append({GateKind::S, e, -1, 0.0});
  } else {
    emit_parity_rotation(c, qs, beta);
  }
  return c;
}

Circuit dilation_prefix(int n_register) {
  Circuit c;
  c.width = n_register + 2;
  c.n_register = n_register;
  c.append({GateKind::Z, c.embedding_qubit(), -1, 0.0});
  return c;
}

Circuit compile_dynamics_blocks(const TruncationPlan& plan,
                                const GridSpec& grid,
                                const ContractParams& contract) {
  if (plan.n_q != grid.n_q) {
    throw std::invalid_argument("compile: plan and grid disagree on n_q");
  }
  const int n = grid.n_q;
  Circuit c;
  c.width = n + 2;
  c.n_register = n;
  const int e = c.embedding_qubit();

  const auto embedded = adjacency_order(plan.embedded_terms());
  if (!embedded.empty()) {
    // One shared q_E basis change brackets every embedded parity block;
    // the per-term conjugations telescope away.
    c.append({GateKind::Sdg, e, -1, 0.0});
    c.append({GateKind::H, e, -1, 0.0});
    for (const auto& term : embedded) {
      auto qs = word_qubits(term.word, n);
      qs.insert(qs.begin(), e);
      emit_parity_rotation(c, qs, term.coefficient);
    }
    c.append({GateKind::H, e, -1, 0.0});
    c.append({GateKind::S, e, -1, 0.0});
  }
  c.append_all(dilation_prefix(n));
  for (const auto& term : adjacency_order(plan.hermitian_terms())) {
    emit_parity_rotation(c, word_qubits(term.word, n),
                         -contract.maturity * term.coefficient);
  }
  return c;
}

Circuit compile(const TruncationPlan& plan, const GridSpec& grid,
                const ContractParams& contract) {
  Circuit c;
  c.width = grid.n_q + 2;
  c.n_register = grid.n_q;
  c.append_all(qft_circuit(grid.n_q));
  c.append_all(compile_dynamics_blocks(plan, grid, contract));
  c.append_all(adjoint(qft_circuit(grid.n_q)));
  return c;
}

Circuit optimize_cnot_cancellation(const Circuit& circuit) {
  std::vector<Gate> gates = circuit.gates;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<bool> removed(gates.size(), false);
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (removed[i] || gates[i].kind != GateKind::CNOT) continue;
      for (std::size_t j = i + 1; j < gates.size(); ++j) {
        if (removed[j]) continue;
        const Gate& a = gates[i];
        const Gate& b = gates[j];
        const bool touches =
            b.q0 == a.q0 || b.q0 == a.q1 ||
            (two_qubit(b.kind) && (b.q1 == a.q0 || b.q1 == a.q1));
        if (!touches) continue;
        if (b.kind == GateKind::CNOT && b.q0 == a.q0 && b.q1 == a.q1) {
          removed[i] = removed[j] = true;
          changed = true;
        }
        break;  // first touching gate decides
      }
    }
    if (changed) {
      std::vector<Gate> kept;
      kept.reserve(gates.size());
      for (std::size_t i = 0; i < gates.size(); ++i) {
        if (!removed[i]) kept.push_back(gates[i]);
      }
      gates = std::move(kept);
    }
  }
  Circuit out;
  out.width = circuit.width;
  out.n_register = circuit.n_register;
  out.global_phase = circuit.global_phase;
  for (const auto& g : gates) out.append(g);
  return out;
}

std::size_t entangling_gate_count(const Circuit& circuit) {
  std::size_t n = 0;
  for (const auto& g : circuit.gates) {
    if (g.kind == GateKind::CNOT || g.kind == GateKind::CPhase) ++n;
    if (g.kind == GateKind::Swap) n += 3;
  }
  return n;
}

std::size_t entangling_gate_count_excluding_swaps(const Circuit& circuit) {
  std::size_t n = 0;
  for (const auto& g : circuit.gates) {
    if (g.kind == GateKind::CNOT || g.kind == GateKind::CPhase) ++n;
  }
  return n;
}

GateCountReport gate_count_report(const TruncationPlan& plan,
                                  const GridSpec& grid,
                                  const ContractParams& contract) {
  GateCountReport report;
  report.width = grid.n_q + 2;
  const auto dynamics = compile_dynamics_blocks(plan, grid, contract);
  report.dynamics_raw = entangling_gate_count(dynamics);
  report.dynamics_optimized =
      entangling_gate_count(optimize_cnot_cancellation(dynamics));
  const auto full = optimize_cnot_cancellation(compile(plan, grid, contract));
  report.full_excluding_swaps = entangling_gate_count_excluding_swaps(full);
  report.full_including_swaps = entangling_gate_count(full);
  return report;
}

std::string circuit_to_text(const Circuit& circuit) {
  std::ostringstream out;
  out << "qbscirc width " << circuit.width << " register "
      << circuit.n_register << "\n";
  if (circuit.global_phase != cdouble{1.0, 0.0}) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "GPHASE %.17g %.17g\n",
                  circuit.global_phase.real(), circuit.global_phase.imag());
    out << buf;
  }
  char buf[96];
  for (const auto& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::H: std::snprintf(buf, sizeof buf, "H %d", g.q0); break;
      case GateKind::S: std::snprintf(buf, sizeof buf, "S %d", g.q0); break;
      case GateKind::Sdg: std::snprintf(buf, sizeof buf, "SDG %d", g.q0); break;
      case GateKind::Z: std::snprintf(buf, sizeof buf, "Z %d", g.q0); break;
      case GateKind::X: std::snprintf(buf, sizeof buf, "X %d", g.q0); break;
      case GateKind::CNOT:
        std::snprintf(buf, sizeof buf, "CNOT %d %d", g.q0, g.q1);
        break;
      case GateKind::Swap:
        std::snprintf(buf, sizeof buf, "SWAP %d %d", g.q0, g.q1);
        break;
      case GateKind::Rz:
        std::snprintf(buf, sizeof buf, "RZ %d %.17g", g.q0, g.angle);
        break;
      case GateKind::CPhase:
        std::snprintf(buf, sizeof buf, "CPHASE %d %d %.17g", g.q0, g.q1,
                      g.angle);
        break;
    }
    out << buf << "\n";
  }
  return out.str();
}

Circuit circuit_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Circuit c;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (!header) {
      std::string kw1, kw2;
      int w = 0, r = 0;
      if (kind != "qbscirc" || !(ls >> kw1 >> w >> kw2 >> r) ||
          kw1 != "width" || kw2 != "register") {
        throw std::invalid_argument("circuit text: bad header: " + line);
      }
      c.width = w;
      c.n_register = r;
      header = true;
      continue;
    }
    if (kind == "GPHASE") {
      double re, im;
      if (!(ls >> re >> im)) {
        throw std::invalid_argument("circuit text: bad phase: " + line);
      }
      c.global_phase = {re, im};
      continue;
    }
    Gate g;
    if (kind == "H") g.kind = GateKind::H;
    else if (kind == "S") g.kind = GateKind::S;
    else if (kind == "SDG") g.kind = GateKind::Sdg;
    else if (kind == "Z") g.kind = GateKind::Z;
    else if (kind == "X") g.kind = GateKind::X;
    else if (kind == "CNOT") g.kind = GateKind::CNOT;
    else if (kind == "SWAP") g.kind = GateKind::Swap;
    else if (kind == "RZ") g.kind = GateKind::Rz;
    else if (kind == "CPHASE") g.kind = GateKind::CPhase;
    else throw std::invalid_argument("circuit text: unknown gate: " + line);

    g.q0 = parse_int(ls, line);
    if (two_qubit(g.kind)) g.q1 = parse_int(ls, line);
    if (g.kind == GateKind::Rz || g.kind == GateKind::CPhase) {
      if (!(ls >> g.angle)) {
        throw std::invalid_argument("circuit text: missing angle: " + line);
      }
    }
    c.append(g);
  }
  if (!header) throw std::invalid_argument("circuit text: missing header");
  return c;
}

}  // namespace qbs
