#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qbs/contract.hpp"
#include "qbs/grid.hpp"

namespace qbs {

enum class HamiltonianKind { hermitian, embedded };

/// Momentum-basis eigenvalues of one of the two diagonal generators:
///   hermitian:  h_k = -(sigma^2/2 - r) * p_k            (drift part)
///   embedded:   h_k = arccos(exp(-T (sigma^2/2 p_k^2 + r)))
/// The hermitian spectrum is antisymmetric under k -> N-k, the embedded one
/// symmetric with values in [0, pi/2].
struct SpectralHamiltonian {
  HamiltonianKind kind = HamiltonianKind::hermitian;
  int n_q = 0;
  std::vector<double> eigenvalues;
};

/// Coefficients h'_I of the expansion over tensor products of I and sigma^z
/// ("Cartan words"). Bit j of the index I means sigma^z acts on qubit j;
/// qubit j reads bit (n_q-1-j) of the momentum index k, i.e. qubit 0 pairs
/// with the most significant position bit. With that pairing,
///     h_k = sum_I h'_I * (-1)^{popcount(k & bitrev(I))}.
struct CartanExpansion {
  HamiltonianKind kind = HamiltonianKind::hermitian;
  int n_q = 0;
  std::vector<double> coefficients;  ///< length 2^{n_q}, indexed by I
};

struct PlanTerm {
  std::uint32_t word = 0;  ///< Cartan word bitmask (bit j = qubit j)
  double coefficient = 0.0;
  HamiltonianKind kind = HamiltonianKind::hermitian;
  int ranking_index = -1;  ///< decay index I' for hermitian terms, -1 otherwise
};

/// Ordered subset of Cartan terms retained for circuit synthesis.
/// Terms are sorted by descending |coefficient| within each kind
/// (ties broken by ascending word).
struct TruncationPlan {
  int n_q = 0;
  double maturity = 0.0;
  std::vector<PlanTerm> terms;  ///< hermitian terms first, then embedded
  double error_bound = 0.0;     ///< max-norm bound on the dropped propagator
  std::size_t m_hermitian = 0;
  std::size_t m_embedded = 0;

  std::vector<PlanTerm> hermitian_terms() const;
  std::vector<PlanTerm> embedded_terms() const;
};

SpectralHamiltonian hermitian_eigenvalues(const GridSpec& grid,
                                          const ContractParams& contract);

/// Requires rate >= 0 and maturity >= 0 so the embedded operator is a
/// contraction; throws otherwise.
SpectralHamiltonian embedded_eigenvalues(const GridSpec& grid,
                                         const ContractParams& contract);

/// Fast Walsh-Hadamard transform of the eigenvalue list, scaled by 1/N.
/// Accumulates in extended precision; the transform is an involution up to
/// the 1/N factor, so walsh_reconstruct(walsh_coefficients(h)) == h.
CartanExpansion walsh_coefficients(const SpectralHamiltonian& h);

std::vector<double> walsh_reconstruct(const CartanExpansion& expansion);

/// Closed-form value of the hermitian-kind coefficient for one Cartan word.
/// Words not containing qubit 0 have coefficient 0 (antisymmetric spectrum).
/// With base = ((2^n - 1)/2^{n+1}) * (2r - sigma^2)/x_max and qubit indices
/// 0 = j_0 < j_1 < ... of the word:
///   single body      base * cot(pi/2^n)
///   odd body count   (-1)^k base * cot(pi/2^n) * prod tan(pi/2^{j_l+1})
///   even body count  (-1)^k base * prod tan(pi/2^{j_l+1})
/// where k = floor(#(j_l, l>=1) / 2 + 1/2) per the grouping above.
double closed_form_hermitian_coefficient(std::uint32_t word,
                                         const GridSpec& grid,
                                         const ContractParams& contract);

struct EmbeddedAsymptotics {
  double identity_term = 0.0;
  double z1z2_term = 0.0;
};

/// Large-n_q approximations of the two dominant embedded coefficients.
/// The identity term needs n_q >= 7, the Z1Z2 integral form n_q >= 8;
/// out-of-range n_q throws with an explanation.
double embedded_identity_asymptotic(const GridSpec& grid,
                                    const ContractParams& contract);
double embedded_z1z2_asymptotic(const GridSpec& grid,
                                const ContractParams& contract);
EmbeddedAsymptotics embedded_asymptotic_coefficients(
    const GridSpec& grid, const ContractParams& contract);

/// Decay index I' of a hermitian Cartan word (must contain qubit 0):
/// odd body count  I' = sum_{l>=1} (j_l - 1),
/// even body count I' = sum_{l>=1} (j_l - 1) + n_q - 2.
/// The even-body value comes from the reassignment to the equal-valued odd
/// word ending at the last qubit; embedding the word in an (n_q+1)-qubit
/// system and shifting down by one gives the same closed form, so the two
/// prescriptions coincide. |coefficient| <= C * 2^{-I'} for all words.
int truncation_index(std::uint32_t word, int n_q);

/// Upper bound on the number of Cartan words sharing a decay index I'
/// (odd- and even-body families combined), valid for
/// 1 <= I' <= n_q(n_q-1)/2 - 1; out-of-range arguments throw.
double degeneracy_bound(int i_prime, int n_q);

/// Exact degeneracy by exhaustive enumeration of distinct-part subsets;
/// intended for validation at small n_q.
std::uint64_t exact_degeneracy(int i_prime, int n_q);

/// Max-norm error bound sqrt(2 (1 - cos(2 T C' 2^{-M}))) for dropping every
/// hermitian term with decay index >= m_index. Valid once C' 2^{-M} <= pi/4;
/// below that the precondition error names the smallest admissible M.
double truncation_error_bound(int m_index, double maturity,
                              const GridSpec& grid,
                              const ContractParams& contract);

/// Smallest index threshold M with truncation_error_bound(M) <= epsilon,
/// clamped to the bound's validity minimum. epsilon must lie in (0, 1].
int min_terms_for_epsilon(double epsilon, double maturity,
                          const GridSpec& grid,
                          const ContractParams& contract);

/// Keep the m_herm / m_emb largest-|coefficient| terms of each expansion.
/// error_bound is T * sum|dropped hermitian| + sum|dropped embedded|
/// (a true bound since all terms commute), tightened by the closed-form
/// index bound when every dropped hermitian index is in its validity range.
TruncationPlan build_truncation_plan(const GridSpec& grid,
                                     const ContractParams& contract,
                                     std::size_t m_herm, std::size_t m_emb);

/// Time-averaged variance (1/T) * integral of sigma^2(t) dt over [0, T] by
/// trapezoidal rule on the given (time, sigma) samples. Sample times must be
/// non-decreasing and cover [0, T].
double average_variance(
    const std::vector<std::pair<double, double>>& vol_samples,
    double maturity);

std::string plan_to_json(const TruncationPlan& plan);
TruncationPlan plan_from_json(const std::string& text);

}  // namespace qbs
