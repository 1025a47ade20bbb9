#pragma once

#include <functional>
#include <vector>

#include "qbs/contract.hpp"
#include "qbs/pricer.hpp"

namespace qbs {

/// Crank-Nicolson configuration for the log-space Black-Scholes PDE on a
/// uniform grid over [x_lo, x_hi] with Dirichlet boundaries
/// (put: C(x_lo) = K e^{-r tau} - e^{x_lo}, C(x_hi) = 0).
struct CnConfig {
  int space_points = 0;  ///< >= 3
  int time_steps = 256;  ///< >= 1
  double x_lo = 0.0;
  double x_hi = 0.0;
  ContractParams contract;
};

/// theta = 1/2 stepping with a tridiagonal (Thomas) solve per step; returns
/// the full-maturity curve. Throws if the tridiagonal system degenerates.
PriceCurve cn_solve(const CnConfig& config);

struct SweepRow {
  int points = 0;
  double cn_error = 0.0;       ///< L1 relative error vs the analytic put
  double quantum_error = 0.0;  ///< price_exact at n_q = log2(points)
};

/// Matched-size accuracy comparison: Crank-Nicolson on the physical window
/// (-x_max/2, x_max/2) with `points` nodes vs price_exact with the same
/// total lattice size. steps_rule maps a point count to the CN step count.
std::vector<SweepRow> convergence_sweep(
    const ContractParams& contract, double s_max,
    const std::vector<int>& point_counts,
    const std::function<int(int)>& steps_rule);

}  // namespace qbs
