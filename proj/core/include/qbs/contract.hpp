#pragma once

namespace qbs {

enum class OptionSide { put, call };

/// European vanilla option contract under constant rate and volatility.
/// rate >= 0 is required so the non-unitary propagator stays a contraction
/// (the dilation embedding needs operator norm <= 1); maturity = 0 is
/// accepted as the degenerate identity-evolution limit.
struct ContractParams {
  OptionSide side = OptionSide::put;
  double strike = 0.0;    ///< K, currency units
  double rate = 0.0;      ///< r, per year
  double sigma = 0.0;     ///< volatility, per sqrt(year)
  double maturity = 0.0;  ///< T, years

  /// Throws std::invalid_argument on violated invariants.
  void validate() const;
};

}  // namespace qbs
