#include "qbs/payoff_state.hpp"

#include <cmath>
#include <stdexcept>

namespace qbs {

void ContractParams::validate() const {
  if (!(strike > 0.0) || !std::isfinite(strike)) {
    throw std::invalid_argument("contract: strike must be positive and finite");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("contract: sigma must be positive and finite");
  }
  if (!(maturity >= 0.0) || !std::isfinite(maturity)) {
    throw std::invalid_argument("contract: maturity must be >= 0");
  }
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    // The embedded propagator is a contraction only for non-negative rates.
    throw std::invalid_argument("contract: rate must be >= 0");
  }
}

std::size_t compute_n_max(const GridSpec& grid, double strike) {
  if (!(strike > 0.0) || !std::isfinite(strike)) {
    throw std::invalid_argument("compute_n_max: strike must be positive");
  }
  const double log_k = std::log(strike);
  if (log_k < -grid.x_max / 2.0 || log_k >= grid.x_max / 2.0) {
    throw std::invalid_argument(
        "compute_n_max: strike outside the duplicated window "
        "(payoff support would be clipped)");
  }
  const double frac = log_k / (2.0 * grid.x_max) + 0.25;
  return static_cast<std::size_t>(
      std::floor(static_cast<double>(grid.n_x - 1) * frac));
}

namespace {

// Unnormalized payoff samples on the lower (physical) half of the lattice.
std::vector<double> half_payoff(const GridSpec& grid,
                                const ContractParams& contract) {
  const std::size_t half = grid.n_x / 2;
  std::vector<double> u(half, 0.0);
  if (contract.side == OptionSide::put) {
    const std::size_t n_max = compute_n_max(grid, contract.strike);
    for (std::size_t j = 0; j <= n_max; ++j) {
      u[j] = contract.strike -
             std::exp(-grid.x_max / 2.0 + static_cast<double>(j) * grid.delta_x);
    }
  } else {
    for (std::size_t j = 0; j < half; ++j) {
      const double s =
          std::exp(-grid.x_max / 2.0 + static_cast<double>(j) * grid.delta_x);
      u[j] = std::max(s - contract.strike, 0.0);
    }
  }
  return u;
}

}  // namespace

PreparedState prepare_initial_state(const GridSpec& grid,
                                    const ContractParams& contract) {
  contract.validate();
  const auto u = half_payoff(grid, contract);

  double lambda = 0.0;
  for (double v : u) lambda += v * v;
  lambda *= 2.0;
  if (!(lambda > 0.0)) {
    throw std::invalid_argument(
        "prepare_initial_state: payoff vanishes on the whole grid window");
  }

  PreparedState state;
  state.lambda = lambda;
  state.n_max = contract.side == OptionSide::put
                    ? compute_n_max(grid, contract.strike)
                    : grid.n_x / 2 - 1;
  state.amplitudes.assign(grid.n_x, cdouble{0.0, 0.0});
  const double inv = 1.0 / std::sqrt(lambda);
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double a = u[j] * inv;
    state.amplitudes[j] = a;
    state.amplitudes[grid.n_x - 1 - j] = a;
  }
  return state;
}

bool log_concavity_check(const PreparedState& state, const GridSpec& grid,
                         double strike, double tolerance) {
  (void)strike;
  // Contiguous strictly-positive run of the lower copy; the mirror seam and
  // the zero region are excluded.
  const std::size_t half = grid.n_x / 2;
  std::size_t first = 0;
  while (first < half && !(state.amplitudes[first].real() > 0.0)) ++first;
  std::size_t last = first;
  while (last + 1 < half && state.amplitudes[last + 1].real() > 0.0) ++last;
  if (last < first + 2) return true;  // no interior second difference

  for (std::size_t j = first + 1; j < last; ++j) {
    const double lm = std::log(state.amplitudes[j - 1].real());
    const double l0 = std::log(state.amplitudes[j].real());
    const double lp = std::log(state.amplitudes[j + 1].real());
    if (lm - 2.0 * l0 + lp > tolerance) return false;
  }
  return true;
}

}  // namespace qbs
