// Independent reference implementations used only by the test suites.
// Everything here recomputes results through a different route than the
// library under test: dense matrices instead of fast transforms, direct
// O(N^2) sums instead of butterflies, bitmask enumeration instead of DP.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qbs/circuit.hpp"

namespace oracle {

using cdouble = std::complex<double>;

// F_{kj} = w^{jk}/sqrt(N), w = exp(2*pi*i/N).
inline Eigen::MatrixXcd dense_dft(std::size_t n) {
  Eigen::MatrixXcd f(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = 2.0 * std::numbers::pi *
                         static_cast<double>((k * j) % n) /
                         static_cast<double>(n);
      f(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
          std::polar(1.0 / std::sqrt(static_cast<double>(n)), ang);
    }
  }
  return f;
}

// Full 2^w x 2^w matrix of one gate, built entrywise from the gate's action
// on basis states (qubit 0 = most significant index bit).
inline Eigen::MatrixXcd dense_gate(const qbs::Gate& g, int width) {
  const std::size_t dim = std::size_t{1} << width;
  const auto bit = [&](int q) { return std::size_t{1} << (width - 1 - q); };
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const double is2 = 1.0 / std::sqrt(2.0);
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t b0 = bit(g.q0);
    switch (g.kind) {
      case qbs::GateKind::H: {
        const bool one = col & b0;
        m(col & ~b0, col) += is2;
        m(col | b0, col) += one ? -is2 : is2;
        break;
      }
      case qbs::GateKind::S:
        m(col, col) = (col & b0) ? cdouble{0.0, 1.0} : cdouble{1.0, 0.0};
        break;
      case qbs::GateKind::Sdg:
        m(col, col) = (col & b0) ? cdouble{0.0, -1.0} : cdouble{1.0, 0.0};
        break;
      case qbs::GateKind::Z:
        m(col, col) = (col & b0) ? -1.0 : 1.0;
        break;
      case qbs::GateKind::X:
        m(col ^ b0, col) = 1.0;
        break;
      case qbs::GateKind::Rz:
        m(col, col) = std::polar(1.0, (col & b0) ? g.angle / 2.0 : -g.angle / 2.0);
        break;
      case qbs::GateKind::CNOT: {
        const std::size_t bt = bit(g.q1);
        m((col & b0) ? col ^ bt : col, col) = 1.0;
        break;
      }
      case qbs::GateKind::CPhase: {
        const std::size_t b1 = bit(g.q1);
        m(col, col) = ((col & b0) && (col & b1)) ? std::polar(1.0, g.angle)
                                                 : cdouble{1.0, 0.0};
        break;
      }
      case qbs::GateKind::Swap: {
        const std::size_t b1 = bit(g.q1);
        std::size_t row = col & ~(b0 | b1);
        if (col & b0) row |= b1;
        if (col & b1) row |= b0;
        m(row, col) = 1.0;
        break;
      }
    }
  }
  return m;
}

inline Eigen::MatrixXcd circuit_unitary(const qbs::Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.width;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : c.gates) u = dense_gate(g, c.width) * u;
  return c.global_phase * u;
}

// ---- extended-precision Walsh machinery --------------------------------

inline std::vector<long double> momentum_ld(int n_q, long double x_max) {
  const std::size_t n = std::size_t{1} << n_q;
  const long double dx = 2.0L * x_max / static_cast<long double>(n - 1);
  std::vector<long double> p(n);
  for (std::size_t k = 0; k < n; ++k) {
    p[k] = std::sin(2.0L * std::numbers::pi_v<long double> *
                    static_cast<long double>(k) / static_cast<long double>(n)) /
           dx;
  }
  return p;
}

inline std::vector<long double> hermitian_ld(int n_q, long double x_max,
                                             long double sigma,
                                             long double rate) {
  auto p = momentum_ld(n_q, x_max);
  const long double c = rate - sigma * sigma / 2.0L;
  for (auto& v : p) v *= c;
  return p;
}

inline std::vector<long double> embedded_ld(int n_q, long double x_max,
                                            long double sigma,
                                            long double rate,
                                            long double maturity) {
  auto p = momentum_ld(n_q, x_max);
  std::vector<long double> h(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    h[k] = std::acos(
        std::exp(-maturity * (sigma * sigma / 2.0L * p[k] * p[k] + rate)));
  }
  return h;
}

// Direct O(N) sum for one Cartan word: (1/N) sum_k h_k (-1)^{x.i pairing}.
inline long double walsh_sum(const std::vector<long double>& h,
                             std::uint32_t word, int n_q) {
  const std::size_t n = h.size();
  long double acc = 0.0L;
  for (std::size_t k = 0; k < n; ++k) {
    int parity = 0;
    for (int j = 0; j < n_q; ++j) {
      const int x_bit = static_cast<int>(k >> (n_q - 1 - j)) & 1;
      const int i_bit = static_cast<int>(word >> j) & 1;
      parity ^= x_bit & i_bit;
    }
    acc += parity ? -h[k] : h[k];
  }
  return acc / static_cast<long double>(n);
}

inline long double closed_form_ld(std::uint32_t word, int n_q,
                                  long double x_max, long double sigma,
                                  long double rate) {
  if ((word & 1u) == 0u) return 0.0L;
  const long double n_x = static_cast<long double>(std::size_t{1} << n_q);
  constexpr long double pi = std::numbers::pi_v<long double>;
  const long double base =
      (n_x - 1.0L) / (2.0L * n_x) * (2.0L * rate - sigma * sigma) / x_max;
  long double tans = 1.0L;
  int partners = 0;
  for (int j = 1; j < n_q; ++j) {
    if (word >> j & 1u) {
      tans *= std::tan(pi / static_cast<long double>(1u << (j + 1)));
      ++partners;
    }
  }
  const int bodies = partners + 1;
  const int k = bodies % 2 == 1 ? partners / 2 : (partners + 1) / 2;
  long double v = base * tans;
  if (bodies % 2 == 1) v /= std::tan(pi / n_x);
  return (k % 2 == 1) ? -v : v;
}

// Distinct-part subset enumeration over {0..n_q-2} by bitmask; counts the
// words mapped to decay index i_prime (both body-count families).
inline std::uint64_t enumerate_degeneracy(int i_prime, int n_q) {
  const int parts = n_q - 1;  // elements 0..n_q-2
  std::uint64_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << parts); ++mask) {
    int sum = 0;
    for (int e = 0; e < parts; ++e) {
      if (mask >> e & 1u) sum += e;
    }
    const int size = std::popcount(mask);
    if (size % 2 == 0 && sum == i_prime) ++count;                  // odd-body
    if (size % 2 == 1 && sum == i_prime - (n_q - 2)) ++count;      // even-body
  }
  return count;
}

inline double max_abs(const Eigen::MatrixXcd& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace oracle
