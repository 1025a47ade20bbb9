#include "qbs/cn_reference.hpp"

#include <cmath>
#include <stdexcept>

namespace qbs {

namespace {

// Thomas solve of a constant-coefficient tridiagonal system; diag entries
// are overwritten. Throws if a pivot degenerates.
void solve_tridiagonal(double lower, double diag, double upper,
                       std::vector<double>& rhs) {
  const std::size_t n = rhs.size();
  std::vector<double> c(n, 0.0);
  double piv = diag;
  if (std::abs(piv) < 1e-300) {
    throw std::runtime_error("cn_solve: singular tridiagonal system");
  }
  c[0] = upper / piv;
  rhs[0] /= piv;
  for (std::size_t i = 1; i < n; ++i) {
    piv = diag - lower * c[i - 1];
    if (std::abs(piv) < 1e-300) {
      throw std::runtime_error("cn_solve: singular tridiagonal system");
    }
    c[i] = upper / piv;
    rhs[i] = (rhs[i] - lower * rhs[i - 1]) / piv;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] -= c[i] * rhs[i + 1];
  }
}

}  // namespace

PriceCurve cn_solve(const CnConfig& config) {
  config.contract.validate();
  if (config.space_points < 3) {
    throw std::invalid_argument("cn_solve: need at least 3 space points");
  }
  if (config.time_steps < 1) {
    throw std::invalid_argument("cn_solve: need at least 1 time step");
  }
  if (!(config.x_lo < config.x_hi)) {
    throw std::invalid_argument("cn_solve: need x_lo < x_hi");
  }
  const auto& c = config.contract;
  const int p = config.space_points;
  const double dx = (config.x_hi - config.x_lo) / static_cast<double>(p - 1);
  const double dt = c.maturity / static_cast<double>(config.time_steps);
  const double diff = c.sigma * c.sigma / 2.0;
  const double adv = c.rate - diff;

  // Evolution variable tau = time to maturity; u(0) is the payoff.
  std::vector<double> x(p), u(p);
  for (int i = 0; i < p; ++i) {
    x[i] = config.x_lo + i * dx;
    const double s = std::exp(x[i]);
    u[i] = c.side == OptionSide::put ? std::max(c.strike - s, 0.0)
                                     : std::max(s - c.strike, 0.0);
  }

  const double alpha = diff * dt / (2.0 * dx * dx);
  const double beta = adv * dt / (4.0 * dx);
  const double lower = alpha - beta;
  const double center = -2.0 * alpha - c.rate * dt / 2.0;
  const double upper = alpha + beta;

  const std::size_t m = static_cast<std::size_t>(p) - 2;
  std::vector<double> rhs(m);
  for (int step = 0; step < config.time_steps; ++step) {
    const double tau1 = (step + 1) * dt;
    const double g_lo =
        c.side == OptionSide::put
            ? c.strike * std::exp(-c.rate * tau1) - std::exp(config.x_lo)
            : 0.0;
    const double g_hi =
        c.side == OptionSide::put
            ? 0.0
            : std::exp(config.x_hi) - c.strike * std::exp(-c.rate * tau1);
    for (std::size_t i = 0; i < m; ++i) {
      rhs[i] = (1.0 + center) * u[i + 1] + lower * u[i] + upper * u[i + 2];
    }
    rhs[0] += lower * g_lo;
    rhs[m - 1] += upper * g_hi;
    solve_tridiagonal(-lower, 1.0 - center, -upper, rhs);
    for (std::size_t i = 0; i < m; ++i) u[i + 1] = rhs[i];
    u[0] = g_lo;
    u[p - 1] = g_hi;
  }

  PriceCurve curve;
  curve.stock_prices.resize(p);
  curve.values = u;
  for (int i = 0; i < p; ++i) curve.stock_prices[i] = std::exp(x[i]);
  curve.meta.contract = c;
  curve.meta.n_q = 0;
  curve.meta.x_max = config.x_hi;
  curve.meta.method = "crank-nicolson";
  return curve;
}

std::vector<SweepRow> convergence_sweep(
    const ContractParams& contract, double s_max,
    const std::vector<int>& point_counts,
    const std::function<int(int)>& steps_rule) {
  std::vector<SweepRow> rows;
  const double x_max = 2.0 * std::log(s_max);
  for (int points : point_counts) {
    if (points < 4 || (points & (points - 1)) != 0) {
      throw std::invalid_argument(
          "convergence_sweep: point counts must be powers of two >= 4");
    }
    CnConfig cfg;
    cfg.space_points = points;
    cfg.time_steps = steps_rule(points);
    cfg.x_lo = -x_max / 2.0;
    cfg.x_hi = x_max / 2.0;
    cfg.contract = contract;
    const auto cn = cn_solve(cfg);

    int n_q = 0;
    while ((1 << n_q) < points) ++n_q;
    const auto grid = build_grid_from_s_max(n_q, s_max);
    const auto quantum = price_exact(grid, contract);

    SweepRow row;
    row.points = points;
    row.cn_error = l1_relative_error(cn, contract);
    row.quantum_error = l1_relative_error(quantum, contract);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qbs
