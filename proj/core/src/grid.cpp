#include "qbs/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbs {

GridSpec build_grid(int n_q, double x_max) {
  if (n_q < 2) {
    throw std::invalid_argument(
        "build_grid: need n_q >= 2 (one qubit duplicates the initial "
        "condition, at least one more carries the position)");
  }
  if (n_q > 30) {
    throw std::invalid_argument("build_grid: n_q too large for a dense lattice");
  }
  if (!std::isfinite(x_max) || x_max <= 0.0) {
    throw std::invalid_argument("build_grid: x_max must be finite and positive");
  }
  GridSpec g;
  g.n_q = n_q;
  g.n_x = std::size_t{1} << n_q;
  g.x_max = x_max;
  g.delta_x = 2.0 * x_max / static_cast<double>(g.n_x - 1);
  g.positions.resize(g.n_x);
  for (std::size_t i = 0; i < g.n_x; ++i) {
    g.positions[i] = -x_max + static_cast<double>(i) * g.delta_x;
  }
  return g;
}

GridSpec build_grid_from_s_max(int n_q, double s_max) {
  if (!std::isfinite(s_max) || s_max <= 1.0) {
    throw std::invalid_argument("build_grid_from_s_max: s_max must exceed 1");
  }
  return build_grid(n_q, 2.0 * std::log(s_max));
}

MomentumSpectrum momentum_eigenvalues(const GridSpec& grid) {
  const std::size_t n = grid.n_x;
  MomentumSpectrum spec;
  spec.p.assign(n, 0.0);
  // Fill one quadrant from sin and mirror so the antisymmetry p_k = -p_{N-k}
  // and the zeros at k = 0, N/2 are exact.
  for (std::size_t k = 1; k <= n / 4; ++k) {
    const double s =
        std::sin(2.0 * std::numbers::pi * static_cast<double>(k) /
                 static_cast<double>(n)) /
        grid.delta_x;
    spec.p[k] = s;
    spec.p[n / 2 - k] = s;
    spec.p[n / 2 + k] = -s;
    spec.p[n - k] = -s;
  }
  return spec;
}

Eigen::MatrixXcd momentum_matrix_fd(const GridSpec& grid) {
  const auto n = static_cast<Eigen::Index>(grid.n_x);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const cdouble c(0.0, -1.0 / (2.0 * grid.delta_x));
  for (Eigen::Index j = 0; j < n; ++j) {
    m(j, (j + 1) % n) += c;
    m(j, (j + n - 1) % n) -= c;
  }
  return m;
}

NyquistReport nyquist_report(const std::vector<cdouble>& amplitudes,
                             const GridSpec& grid, double epsilon,
                             std::size_t band_points_per_side) {
  if (amplitudes.size() != grid.n_x) {
    throw std::invalid_argument("nyquist_report: amplitude length != n_x");
  }
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("nyquist_report: epsilon must be positive");
  }
  const std::size_t n = grid.n_x;
  std::size_t b = band_points_per_side;
  if (b == 0) b = std::max<std::size_t>(1, n / 32);
  if (2 * b > n) {
    throw std::invalid_argument("nyquist_report: band exceeds the lattice");
  }

  NyquistReport report;
  for (std::size_t i = 0; i < b; ++i) {
    report.position_tail_mass += std::norm(amplitudes[i]);
    report.position_tail_mass += std::norm(amplitudes[n - 1 - i]);
  }
  // Fourier edge = indices around N/2, the aliasing boundary of the signed
  // frequency; the sine dispersion of the dynamics is a separate matter.
  const auto spectrum = fourier_forward_copy(amplitudes);
  for (std::size_t i = n / 2 - b; i < n / 2 + b; ++i) {
    report.momentum_tail_mass += std::norm(spectrum[i]);
  }
  report.valid = report.position_tail_mass < epsilon &&
                 report.momentum_tail_mass < epsilon;
  return report;
}

}  // namespace qbs
