#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

#include "qbs/fourier.hpp"

namespace qbs {

/// Equispaced log-price lattice on [-x_max, x_max] with 2^{n_q} points.
///
/// One register qubit is spent on duplicating the initial condition, so the
/// physically meaningful window after state preparation is
/// (-x_max/2, x_max/2), i.e. stock prices in (1/S_max, S_max) when the grid
/// is built from a price ceiling S_max via x_max = 2 ln(S_max).
struct GridSpec {
  int n_q = 0;            ///< qubit count, >= 2
  std::size_t n_x = 0;    ///< 2^{n_q}
  double x_max = 0.0;     ///< half-width of the full lattice interval
  double delta_x = 0.0;   ///< 2*x_max/(n_x-1)
  std::vector<double> positions;  ///< x_i = -x_max + i*delta_x
};

/// Eigenvalues p_k = sin(2*pi*k/N)/delta_x of the periodic second-order
/// finite-difference momentum operator, ordered by Fourier index k.
/// Constructed so that p_0 = p_{N/2} = 0 and p_k = -p_{N-k} hold exactly.
struct MomentumSpectrum {
  std::vector<double> p;
};

struct NyquistReport {
  double position_tail_mass = 0.0;
  double momentum_tail_mass = 0.0;
  bool valid = false;
};

GridSpec build_grid(int n_q, double x_max);

/// Convenience: grid whose duplicated window covers S in (1/s_max, s_max).
GridSpec build_grid_from_s_max(int n_q, double s_max);

MomentumSpectrum momentum_eigenvalues(const GridSpec& grid);

/// Dense circulant momentum operator with periodic boundary corners,
/// (-i/2dx) * (superdiagonal +1, subdiagonal -1, wraparound corners).
/// Kept as a matrix-path oracle: diagonalizes as F * diag(p_k) * F^dagger
/// with F_{jk} = w^{jk}/sqrt(N), w = exp(2*pi*i/N).
Eigen::MatrixXcd momentum_matrix_fd(const GridSpec& grid);

/// Squared-amplitude mass in the outermost edge band, in both the position
/// and the Fourier representation (Fourier edges = indices near N/2, the
/// aliasing boundary). band_points_per_side = 0 selects the default band of
/// n_x/32 points per side (1/16 of all points combined).
NyquistReport nyquist_report(const std::vector<cdouble>& amplitudes,
                             const GridSpec& grid, double epsilon,
                             std::size_t band_points_per_side = 0);

}  // namespace qbs
