#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qbs/contract.hpp"
#include "qbs/grid.hpp"
#include "qbs/hamiltonian.hpp"

namespace qbs {

struct CurveMetadata {
  ContractParams contract;
  int n_q = 0;
  double x_max = 0.0;
  std::string method;  ///< "exact", "circuit", "circuit-sampled", "crank-nicolson"
  std::size_t m_hermitian = 0;
  std::size_t m_embedded = 0;
  std::optional<std::uint64_t> shots;  ///< empty = exact amplitudes
  std::uint64_t seed = 0;
};

/// Option values C(S_i) on the physical half-window S_i = e^{-x_max/2+i dx},
/// i = 0 .. N_x/2 - 1 (the duplicated upper half is dropped at readout).
struct PriceCurve {
  std::vector<double> stock_prices;
  std::vector<double> values;
  CurveMetadata meta;
};

struct PostSelectionResult {
  double success_probability = 0.0;
  /// p(x_i | 0_E) over the N_x register outcomes; sums to 1.
  std::vector<double> conditional_probabilities;
  std::optional<std::uint64_t> shots_used;  ///< empty = exact amplitudes
};

/// Applies the non-unitary diagonal propagator
///   exp(-T (sigma^2/2 p_k^2 + r)) * exp(+i T (sigma^2/2 - r) p_k)
/// in the momentum basis and reads C(S_i) = |amplitude_i| * sqrt(lambda).
PriceCurve price_exact(const GridSpec& grid, const ContractParams& contract);

/// Compiles and simulates the circuit for the given plan on
/// |0_G>|0_E> (x) phi_0, post-selects q_E = 0 and recovers the price from
/// the post-selected outcome weights. With shots engaged, measurement
/// outcomes are sampled with a seeded PRNG, q_E = 1 shots discarded and
/// counts normalized; zero surviving shots is an error suggesting more.
std::pair<PriceCurve, PostSelectionResult> price_circuit(
    const GridSpec& grid, const ContractParams& contract,
    const TruncationPlan& plan,
    std::optional<std::uint64_t> shots = std::nullopt,
    std::uint64_t seed = 0);

/// <phi_0| F^dag exp(-2T (sigma^2/2 p_k^2 + r)) F |phi_0>, the probability
/// that post-selection on q_E succeeds.
double success_probability(const GridSpec& grid,
                           const ContractParams& contract);

/// Relative weight of the zero-momentum mode of the prepared put state on
/// the grid constrained by e^{x_max/2} = 3K: (sum_j phi_j)^2 / N_x.
/// Keeping only the p_k = 0 modes of the post-selection weight proves
/// Ps >= e^{-2 T r} * gamma_area_ratio(N_x, K).
double gamma_area_ratio(std::size_t n_x, double strike);

/// e^{-2 T r} * gamma_area_ratio(n_x, strike).
double gamma_lower_bound(std::size_t n_x, double strike, double rate,
                         double maturity);

/// Reported closed-form large-grid limit of gamma,
/// (-1 + K^2 - 6 K^2 ln K)^2 /
///   ((-1 + 12 K^2 - 11 K^4 + 36 K^4 ln K) * ln(3K)).
double gamma_large_grid_limit(double strike);

/// Black-Scholes closed forms via the error function; maturity 0 degrades
/// to the payoff.
double analytic_put(double spot, const ContractParams& contract);
double analytic_call(double spot, const ContractParams& contract);

/// sum |C_i - analytic(S_i)| / sum |analytic(S_i)| over the curve points,
/// skipping points where the analytic value is below 1e-10.
double l1_relative_error(const PriceCurve& curve,
                         const ContractParams& contract);

/// L1 distance between two curves on the same grid, relative to the second.
double l1_relative_difference(const PriceCurve& curve,
                              const PriceCurve& reference);

/// Sampled estimate of a single conditional spot probability p(x_i | 0_E),
/// the fixed-stock-price readout mode.
struct SpotEstimate {
  double joint_probability = 0.0;
  double conditional_probability = 0.0;
  std::uint64_t successes = 0;
};
SpotEstimate estimate_spot_probability(const GridSpec& grid,
                                       const ContractParams& contract,
                                       const TruncationPlan& plan,
                                       std::size_t spot_index,
                                       std::uint64_t shots,
                                       std::uint64_t seed);

/// CSV columns: S, C_quantum, C_analytic, abs_err ('.' decimals, LF rows).
std::string curve_to_csv(const PriceCurve& curve);
std::string curve_to_json(const PriceCurve& curve);

}  // namespace qbs
