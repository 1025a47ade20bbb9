#pragma once

#include <cstddef>
#include <vector>

#include "qbs/contract.hpp"
#include "qbs/grid.hpp"

namespace qbs {

/// Normalized, symmetrically duplicated payoff amplitudes.
///
/// For a put, index j in [0, n_max] carries (K - e^{-x_max/2 + j*dx})/sqrt(L)
/// and index n_x-1-j carries the mirror copy; every other entry is zero.
/// lambda is the squared norm of the unnormalized duplicated vector, needed
/// later to undo the normalization at price readout.
struct PreparedState {
  std::vector<cdouble> amplitudes;  ///< real-valued by construction
  double lambda = 0.0;
  std::size_t n_max = 0;
};

/// Largest in-the-money lattice index of the shifted put payoff,
/// floor((n_x-1) * (ln K / (2 x_max) + 1/4)).
/// Requires ln K in [-x_max/2, x_max/2); throws otherwise (payoff support
/// would be clipped by the duplicated window).
std::size_t compute_n_max(const GridSpec& grid, double strike);

PreparedState prepare_initial_state(const GridSpec& grid,
                                    const ContractParams& contract);

/// Discrete log-concavity of the payoff amplitudes: second differences of
/// ln(amplitude) on the interior of the strictly positive support of the
/// lower (physical) copy must stay <= tolerance. Vacuously true when the
/// support has no interior point.
bool log_concavity_check(const PreparedState& state, const GridSpec& grid,
                         double strike, double tolerance = 1e-9);

}  // namespace qbs
