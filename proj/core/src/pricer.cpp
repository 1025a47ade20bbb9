#include "qbs/pricer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qbs/circuit.hpp"
#include "qbs/fourier.hpp"
#include "qbs/payoff_state.hpp"
#include "qbs/statevector.hpp"

namespace qbs {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

std::vector<double> physical_prices(const GridSpec& grid) {
  std::vector<double> s(grid.n_x / 2);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = std::exp(-grid.x_max / 2.0 + static_cast<double>(i) * grid.delta_x);
  }
  return s;
}

// 53-bit uniform in [0, 1) from a seeded 64-bit engine; avoids any
// distribution-object implementation variance across standard libraries.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t sample_index(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(std::distance(cdf.begin(), it), cdf.size() - 1);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Measurement weights over (register, q_E) outcomes with q_G traced out:
// full[2i] = p(x_i, 0_E), full[2i+1] = p(x_i, 1_E).
std::vector<double> outcome_weights(const GridSpec& grid,
                                    const ContractParams& contract,
                                    const TruncationPlan& plan,
                                    const PreparedState& state) {
  const auto circuit = compile(plan, grid, contract);
  StateVector in;
  in.width = circuit.width;
  in.amplitudes.assign(std::size_t{1} << circuit.width, cdouble{0.0, 0.0});
  for (std::size_t i = 0; i < grid.n_x; ++i) {
    in.amplitudes[i << 2] = state.amplitudes[i];  // |x_i> |0_E> |0_G>
  }
  const auto out = simulate(circuit, in);
  std::vector<double> full(2 * grid.n_x, 0.0);
  for (std::size_t i = 0; i < grid.n_x; ++i) {
    full[2 * i] = std::norm(out.amplitudes[i << 2]) +
                  std::norm(out.amplitudes[(i << 2) | 1]);
    full[2 * i + 1] = std::norm(out.amplitudes[(i << 2) | 2]) +
                      std::norm(out.amplitudes[(i << 2) | 3]);
  }
  return full;
}

PriceCurve curve_from_joint(const GridSpec& grid,
                            const ContractParams& contract,
                            const std::vector<double>& joint, double lambda,
                            CurveMetadata meta) {
  PriceCurve curve;
  curve.stock_prices = physical_prices(grid);
  curve.values.resize(curve.stock_prices.size());
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    curve.values[i] = std::sqrt(joint[i] * lambda);
  }
  meta.contract = contract;
  meta.n_q = grid.n_q;
  meta.x_max = grid.x_max;
  curve.meta = std::move(meta);
  return curve;
}

}  // namespace

PriceCurve price_exact(const GridSpec& grid, const ContractParams& contract) {
  const auto state = prepare_initial_state(grid, contract);
  const auto spec = momentum_eigenvalues(grid);

  auto amp = state.amplitudes;
  fourier_forward(amp);
  const double half_var = contract.sigma * contract.sigma / 2.0;
  const double t = contract.maturity;
  for (std::size_t k = 0; k < grid.n_x; ++k) {
    const double p = spec.p[k];
    const double decay = std::exp(-t * (half_var * p * p + contract.rate));
    amp[k] *= std::polar(decay, t * (half_var - contract.rate) * p);
  }
  fourier_inverse(amp);

  std::vector<double> joint(grid.n_x);
  for (std::size_t i = 0; i < grid.n_x; ++i) joint[i] = std::norm(amp[i]);
  CurveMetadata meta;
  meta.method = "exact";
  return curve_from_joint(grid, contract, joint, state.lambda, std::move(meta));
}

std::pair<PriceCurve, PostSelectionResult> price_circuit(
    const GridSpec& grid, const ContractParams& contract,
    const TruncationPlan& plan, std::optional<std::uint64_t> shots,
    std::uint64_t seed) {
  const auto state = prepare_initial_state(grid, contract);
  const auto full = outcome_weights(grid, contract, plan, state);
  std::vector<double> joint(grid.n_x);
  for (std::size_t i = 0; i < grid.n_x; ++i) joint[i] = full[2 * i];

  PostSelectionResult post;
  post.shots_used = shots;

  if (shots && *shots > 0) {
    // Sample full measurement outcomes, keep q_E = 0, re-estimate weights.
    double total = 0.0;
    for (double w : full) total += w;
    std::vector<double> cdf_full(full.size());
    double run = 0.0;
    for (std::size_t i = 0; i < full.size(); ++i) {
      run += full[i] / total;
      cdf_full[i] = run;
    }
    cdf_full.back() = 1.0;

    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> counts(grid.n_x, 0);
    std::uint64_t successes = 0;
    for (std::uint64_t s = 0; s < *shots; ++s) {
      const std::size_t outcome = sample_index(cdf_full, next_uniform(rng));
      if (outcome % 2 == 0) {
        ++counts[outcome / 2];
        ++successes;
      }
    }
    if (successes == 0) {
      throw std::runtime_error(
          "price_circuit: no shot survived post-selection; increase shots");
    }
    post.success_probability =
        static_cast<double>(successes) / static_cast<double>(*shots);
    post.conditional_probabilities.resize(grid.n_x);
    for (std::size_t i = 0; i < grid.n_x; ++i) {
      post.conditional_probabilities[i] =
          static_cast<double>(counts[i]) / static_cast<double>(successes);
      joint[i] = static_cast<double>(counts[i]) / static_cast<double>(*shots);
    }
  } else {
    double success = 0.0;
    for (double w : joint) success += w;
    post.success_probability = success;
    post.conditional_probabilities.resize(grid.n_x);
    for (std::size_t i = 0; i < grid.n_x; ++i) {
      post.conditional_probabilities[i] = joint[i] / success;
    }
    post.shots_used.reset();
  }

  CurveMetadata meta;
  meta.method = (shots && *shots > 0) ? "circuit-sampled" : "circuit";
  meta.m_hermitian = plan.m_hermitian;
  meta.m_embedded = plan.m_embedded;
  meta.shots = post.shots_used;
  meta.seed = seed;
  auto curve =
      curve_from_joint(grid, contract, joint, state.lambda, std::move(meta));
  return {std::move(curve), std::move(post)};
}

double success_probability(const GridSpec& grid,
                           const ContractParams& contract) {
  const auto state = prepare_initial_state(grid, contract);
  const auto spec = momentum_eigenvalues(grid);
  auto amp = state.amplitudes;
  fourier_forward(amp);
  const double half_var = contract.sigma * contract.sigma / 2.0;
  double ps = 0.0;
  for (std::size_t k = 0; k < grid.n_x; ++k) {
    const double w = std::exp(-2.0 * contract.maturity *
                              (half_var * spec.p[k] * spec.p[k] + contract.rate));
    ps += w * std::norm(amp[k]);
  }
  return ps;
}

double gamma_area_ratio(std::size_t n_x, double strike) {
  if (n_x < 4 || (n_x & (n_x - 1)) != 0) {
    throw std::invalid_argument("gamma_area_ratio: n_x must be a power of two >= 4");
  }
  if (!(strike > 0.0)) {
    throw std::invalid_argument("gamma_area_ratio: strike must be positive");
  }
  // Grid constrained by e^{x_max/2} = 3K.
  const double x_max = 2.0 * std::log(3.0 * strike);
  const double dx = 2.0 * x_max / static_cast<double>(n_x - 1);
  const double frac = std::log(strike) / (2.0 * x_max) + 0.25;
  const auto n_max = static_cast<std::size_t>(
      std::floor(static_cast<double>(n_x - 1) * frac));
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t m = 0; m <= n_max; ++m) {
    const double v =
        strike - std::exp(-x_max / 2.0 + static_cast<double>(m) * dx);
    sum += v;
    sum_sq += v * v;
  }
  // (sum_j phi_j)^2 / N with the duplicated, normalized state.
  return (2.0 * sum) * (2.0 * sum) /
         (static_cast<double>(n_x) * 2.0 * sum_sq);
}

double gamma_lower_bound(std::size_t n_x, double strike, double rate,
                         double maturity) {
  return std::exp(-2.0 * maturity * rate) * gamma_area_ratio(n_x, strike);
}

double gamma_large_grid_limit(double strike) {
  const double k2 = strike * strike;
  const double k4 = k2 * k2;
  const double lk = std::log(strike);
  const double num = -1.0 + k2 - 6.0 * k2 * lk;
  const double den =
      (-1.0 + 12.0 * k2 - 11.0 * k4 + 36.0 * k4 * lk) * std::log(3.0 * strike);
  return num * num / den;
}

double analytic_put(double spot, const ContractParams& contract) {
  contract.validate();
  if (!(spot > 0.0)) {
    throw std::invalid_argument("analytic_put: spot must be positive");
  }
  const double t = contract.maturity;
  if (t <= 0.0) return std::max(contract.strike - spot, 0.0);
  const double vol = contract.sigma * std::sqrt(t);
  const double d1 =
      (std::log(spot / contract.strike) +
       (contract.rate + contract.sigma * contract.sigma / 2.0) * t) /
      vol;
  const double d2 = d1 - vol;
  return contract.strike * std::exp(-contract.rate * t) * normal_cdf(-d2) -
         spot * normal_cdf(-d1);
}

double analytic_call(double spot, const ContractParams& contract) {
  contract.validate();
  if (!(spot > 0.0)) {
    throw std::invalid_argument("analytic_call: spot must be positive");
  }
  const double t = contract.maturity;
  if (t <= 0.0) return std::max(spot - contract.strike, 0.0);
  const double vol = contract.sigma * std::sqrt(t);
  const double d1 =
      (std::log(spot / contract.strike) +
       (contract.rate + contract.sigma * contract.sigma / 2.0) * t) /
      vol;
  const double d2 = d1 - vol;
  return spot * normal_cdf(d1) -
         contract.strike * std::exp(-contract.rate * t) * normal_cdf(d2);
}

namespace {

double analytic_value(double spot, const ContractParams& contract) {
  return contract.side == OptionSide::put ? analytic_put(spot, contract)
                                          : analytic_call(spot, contract);
}

}  // namespace

double l1_relative_error(const PriceCurve& curve,
                         const ContractParams& contract) {
  if (curve.values.empty()) {
    throw std::invalid_argument("l1_relative_error: empty curve");
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    const double a = analytic_value(curve.stock_prices[i], contract);
    if (a < 1e-10) continue;
    num += std::abs(curve.values[i] - a);
    den += std::abs(a);
  }
  if (den == 0.0) {
    throw std::invalid_argument(
        "l1_relative_error: analytic value vanishes on every grid point");
  }
  return num / den;
}

double l1_relative_difference(const PriceCurve& curve,
                              const PriceCurve& reference) {
  if (curve.values.size() != reference.values.size()) {
    throw std::invalid_argument("l1_relative_difference: size mismatch");
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    num += std::abs(curve.values[i] - reference.values[i]);
    den += std::abs(reference.values[i]);
  }
  return num / den;
}

SpotEstimate estimate_spot_probability(const GridSpec& grid,
                                       const ContractParams& contract,
                                       const TruncationPlan& plan,
                                       std::size_t spot_index,
                                       std::uint64_t shots,
                                       std::uint64_t seed) {
  if (spot_index >= grid.n_x) {
    throw std::invalid_argument("estimate_spot_probability: spot index out of range");
  }
  if (shots == 0) {
    throw std::invalid_argument("estimate_spot_probability: need shots > 0");
  }
  const auto [curve, post] =
      price_circuit(grid, contract, plan, shots, seed);
  (void)curve;
  SpotEstimate est;
  est.successes = static_cast<std::uint64_t>(
      std::llround(post.success_probability * static_cast<double>(shots)));
  est.conditional_probability = post.conditional_probabilities[spot_index];
  est.joint_probability =
      post.conditional_probabilities[spot_index] * post.success_probability;
  return est;
}

std::string curve_to_csv(const PriceCurve& curve) {
  std::ostringstream out;
  out << "S,C_quantum,C_analytic,abs_err\n";
  char buf[160];
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    const double a = analytic_value(curve.stock_prices[i], curve.meta.contract);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n",
                  curve.stock_prices[i], curve.values[i], a,
                  std::abs(curve.values[i] - a));
    out << buf;
  }
  return out.str();
}

std::string curve_to_json(const PriceCurve& curve) {
  nlohmann::json j;
  const auto& m = curve.meta;
  j["metadata"] = {
      {"method", m.method},
      {"n_q", m.n_q},
      {"x_max", format_double(m.x_max)},
      {"side", m.contract.side == OptionSide::put ? "put" : "call"},
      {"strike", format_double(m.contract.strike)},
      {"rate", format_double(m.contract.rate)},
      {"sigma", format_double(m.contract.sigma)},
      {"maturity", format_double(m.contract.maturity)},
      {"m_hermitian", m.m_hermitian},
      {"m_embedded", m.m_embedded},
      {"seed", m.seed},
  };
  if (m.shots) {
    j["metadata"]["shots"] = *m.shots;
  } else {
    j["metadata"]["shots"] = "exact";
  }
  auto& rows = j["curve"] = nlohmann::json::array();
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    const double a = analytic_value(curve.stock_prices[i], m.contract);
    rows.push_back({{"S", format_double(curve.stock_prices[i])},
                    {"C_quantum", format_double(curve.values[i])},
                    {"C_analytic", format_double(a)},
                    {"abs_err", format_double(std::abs(curve.values[i] - a))}});
  }
  return j.dump(2) + "\n";
}

}  // namespace qbs
