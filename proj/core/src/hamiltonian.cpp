#include "qbs/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace qbs {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint32_t reverse_bits(std::uint32_t v, int n_bits) {
  std::uint32_t out = 0;
  for (int b = 0; b < n_bits; ++b) {
    if (v >> b & 1u) out |= 1u << (n_bits - 1 - b);
  }
  return out;
}

// t_J = sum_k x_k (-1)^{popcount(k & J)}, in place, no scaling.
void fwht(std::vector<long double>& x) {
  const std::size_t n = x.size();
  for (std::size_t step = 1; step < n; step <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * step) {
      for (std::size_t j = i; j < i + step; ++j) {
        const long double a = x[j];
        const long double b = x[j + step];
        x[j] = a + b;
        x[j + step] = a - b;
      }
    }
  }
}

void check_kind(const SpectralHamiltonian& h) {
  const std::size_t n = std::size_t{1} << h.n_q;
  if (h.eigenvalues.size() != n) {
    throw std::invalid_argument("hamiltonian: eigenvalue length != 2^{n_q}");
  }
}

double sum_abs(const std::vector<std::pair<std::uint32_t, double>>& terms,
               std::size_t from) {
  double s = 0.0;
  for (std::size_t i = from; i < terms.size(); ++i) s += std::abs(terms[i].second);
  return s;
}

// |single-body coefficient|, the scale constant of the index decay bound.
double hermitian_scale(const GridSpec& grid, const ContractParams& contract) {
  const double n_x = static_cast<double>(std::size_t{1} << grid.n_q);
  const double base = (n_x - 1.0) / (2.0 * n_x) *
                      (2.0 * contract.rate - contract.sigma * contract.sigma) /
                      grid.x_max;
  return std::abs(base / std::tan(kPi / n_x));
}

// Degeneracy-weighted tail constant over the whole index range.
double tail_constant(const GridSpec& grid, const ContractParams& contract) {
  const double n = grid.n_q;
  const double coef = 2.0 / (n * n - 3.0 * n + 4.0) + kPi / (2.0 * std::sqrt(3.0));
  const double expo = kPi / std::sqrt(3.0) * std::sqrt(n * (n - 1.0) / 4.0);
  return 2.0 * coef * std::exp(expo) * hermitian_scale(grid, contract);
}

int bound_validity_minimum(double c_prime) {
  return static_cast<int>(std::ceil(std::log2(4.0 * c_prime / kPi)));
}

// Recursive adaptive Simpson on [a, b] with absolute tolerance.
double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson(a, b, fa, fm, fb);
  const double tol = rel_tol * std::max(std::abs(whole), 1e-30);
  return adaptive_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SpectralHamiltonian hermitian_eigenvalues(const GridSpec& grid,
                                          const ContractParams& contract) {
  contract.validate();
  const auto spec = momentum_eigenvalues(grid);
  SpectralHamiltonian h;
  h.kind = HamiltonianKind::hermitian;
  h.n_q = grid.n_q;
  h.eigenvalues.resize(grid.n_x);
  const double c = -(contract.sigma * contract.sigma / 2.0 - contract.rate);
  for (std::size_t k = 0; k < grid.n_x; ++k) h.eigenvalues[k] = c * spec.p[k];
  return h;
}

SpectralHamiltonian embedded_eigenvalues(const GridSpec& grid,
                                         const ContractParams& contract) {
  contract.validate();
  if (contract.rate < 0.0 || contract.maturity < 0.0) {
    throw std::invalid_argument(
        "embedded_eigenvalues: rate and maturity must be non-negative so the "
        "embedded operator is a contraction");
  }
  const auto spec = momentum_eigenvalues(grid);
  SpectralHamiltonian h;
  h.kind = HamiltonianKind::embedded;
  h.n_q = grid.n_q;
  h.eigenvalues.resize(grid.n_x);
  const double t = contract.maturity;
  const double half_var = contract.sigma * contract.sigma / 2.0;
  for (std::size_t k = 0; k < grid.n_x; ++k) {
    const double arg =
        std::exp(-t * (half_var * spec.p[k] * spec.p[k] + contract.rate));
    h.eigenvalues[k] = std::acos(std::min(arg, 1.0));
  }
  return h;
}

CartanExpansion walsh_coefficients(const SpectralHamiltonian& h) {
  check_kind(h);
  const std::size_t n = h.eigenvalues.size();
  std::vector<long double> t(h.eigenvalues.begin(), h.eigenvalues.end());
  fwht(t);
  CartanExpansion e;
  e.kind = h.kind;
  e.n_q = h.n_q;
  e.coefficients.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    e.coefficients[i] = static_cast<double>(
        t[reverse_bits(static_cast<std::uint32_t>(i), h.n_q)] /
        static_cast<long double>(n));
  }
  return e;
}

std::vector<double> walsh_reconstruct(const CartanExpansion& expansion) {
  const std::size_t n = std::size_t{1} << expansion.n_q;
  if (expansion.coefficients.size() != n) {
    throw std::invalid_argument("walsh_reconstruct: coefficient length != 2^{n_q}");
  }
  std::vector<long double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[reverse_bits(static_cast<std::uint32_t>(i), expansion.n_q)] =
        expansion.coefficients[i];
  }
  fwht(t);
  return {t.begin(), t.end()};
}

double closed_form_hermitian_coefficient(std::uint32_t word,
                                         const GridSpec& grid,
                                         const ContractParams& contract) {
  if (word >> grid.n_q) {
    throw std::invalid_argument("closed_form: word exceeds the register");
  }
  if ((word & 1u) == 0u) return 0.0;  // antisymmetric spectrum

  const long double n_x = static_cast<long double>(std::size_t{1} << grid.n_q);
  const long double base =
      (n_x - 1.0L) / (2.0L * n_x) *
      (2.0L * static_cast<long double>(contract.rate) -
       static_cast<long double>(contract.sigma) *
           static_cast<long double>(contract.sigma)) /
      static_cast<long double>(grid.x_max);
  constexpr long double pi_l = std::numbers::pi_v<long double>;

  long double tan_product = 1.0L;
  int partners = 0;  // qubits j >= 1 in the word
  for (int j = 1; j < grid.n_q; ++j) {
    if (word >> j & 1u) {
      tan_product *= std::tan(pi_l / static_cast<long double>(1u << (j + 1)));
      ++partners;
    }
  }
  const int bodies = partners + 1;
  // sign exponent k from the paper's grouping: odd body count 2k+1 has
  // partners = 2k; even body count 2k has partners = 2k-1.
  const int k = (bodies % 2 == 1) ? partners / 2 : (partners + 1) / 2;
  long double value = base * tan_product;
  if (bodies % 2 == 1) value /= std::tan(pi_l / n_x);
  if (k % 2 == 1) value = -value;
  return static_cast<double>(value);
}

double embedded_identity_asymptotic(const GridSpec& grid,
                                    const ContractParams& contract) {
  if (grid.n_q < 7) {
    throw std::invalid_argument(
        "embedded_identity_asymptotic: approximation valid from n_q = 7");
  }
  contract.validate();
  const double n_x = static_cast<double>(grid.n_x);
  const double half_var = contract.sigma * contract.sigma / 2.0;
  double sum = 0.0;
  for (std::size_t k = 0; k <= grid.n_x / 2; ++k) {
    const double s =
        std::sin(2.0 * kPi * static_cast<double>(k) / n_x) / grid.delta_x;
    sum += std::exp(-contract.maturity * (half_var * s * s + contract.rate));
  }
  return kPi / 2.0 - sum / n_x;
}

double embedded_z1z2_asymptotic(const GridSpec& grid,
                                const ContractParams& contract) {
  if (grid.n_q < 8) {
    throw std::invalid_argument(
        "embedded_z1z2_asymptotic: integral form valid from n_q = 8");
  }
  contract.validate();
  const double t = contract.maturity;
  const double half_var = contract.sigma * contract.sigma / 2.0;
  const double inv_dx =
      (static_cast<double>(grid.n_x) - 1.0) / (2.0 * grid.x_max);
  const auto f = [&](double x) {
    const double s = inv_dx * std::sin(2.0 * kPi * x);
    return std::acos(std::exp(-t * (half_var * s * s + contract.rate)));
  };
  const double head =
      (2.0 * std::acos(std::exp(-t * contract.rate)) - kPi) /
      static_cast<double>(grid.n_x);
  const double i1 = integrate(f, 0.0, 0.125, 1e-8);
  const double i2 = integrate(f, 0.125, 0.25, 1e-8);
  return head + 4.0 * i1 - 4.0 * i2;
}

EmbeddedAsymptotics embedded_asymptotic_coefficients(
    const GridSpec& grid, const ContractParams& contract) {
  EmbeddedAsymptotics out;
  out.identity_term = embedded_identity_asymptotic(grid, contract);
  out.z1z2_term = embedded_z1z2_asymptotic(grid, contract);
  return out;
}

int truncation_index(std::uint32_t word, int n_q) {
  if ((word & 1u) == 0u) {
    throw std::invalid_argument("truncation_index: word must contain qubit 0");
  }
  if (word >> n_q) {
    throw std::invalid_argument("truncation_index: word exceeds the register");
  }
  int sum = 0;
  int partners = 0;
  for (int j = 1; j < n_q; ++j) {
    if (word >> j & 1u) {
      sum += j - 1;
      ++partners;
    }
  }
  const int bodies = partners + 1;
  // Even-body words reassign to the equal-valued odd word ending at the last
  // qubit; both literal readings of that rule give the same shift n_q - 2.
  return (bodies % 2 == 1) ? sum : sum + n_q - 2;
}

std::uint64_t exact_degeneracy(int i_prime, int n_q) {
  // dp[parity][sum] over distinct parts drawn from {0, ..., n_q-2}.
  const int max_sum = (n_q - 1) * (n_q - 2) / 2;
  std::vector<std::vector<std::uint64_t>> dp(
      2, std::vector<std::uint64_t>(max_sum + 1, 0));
  dp[0][0] = 1;
  for (int part = 0; part <= n_q - 2; ++part) {
    std::vector<std::vector<std::uint64_t>> next = dp;
    for (int parity = 0; parity < 2; ++parity) {
      for (int s = 0; s + part <= max_sum; ++s) {
        next[parity ^ 1][s + part] += dp[parity][s];
      }
    }
    dp = std::move(next);
  }
  std::uint64_t count = 0;
  if (i_prime >= 0 && i_prime <= max_sum) count += dp[0][i_prime];  // odd body
  const int shifted = i_prime - (n_q - 2);
  if (shifted >= 0 && shifted <= max_sum) count += dp[1][shifted];  // even body
  return count;
}

double degeneracy_bound(int i_prime, int n_q) {
  if (n_q < 3) {
    throw std::invalid_argument("degeneracy_bound: need n_q >= 3");
  }
  const int max_index = n_q * (n_q - 1) / 2 - 1;
  if (i_prime < 1 || i_prime > max_index) {
    throw std::invalid_argument("degeneracy_bound: index outside [1, n_q(n_q-1)/2 - 1]");
  }
  const int subset_total = (n_q - 1) * (n_q - 2) / 2;
  const double n = n_q;
  const auto family_bound = [&](int s) -> double {
    if (s < 0 || s > subset_total) return 0.0;
    const int sp = std::min(s, subset_total - s);  // distribution is symmetric
    if (sp == 0) return 1.0;
    const double x = sp;
    const double coef =
        2.0 / (n * n - 3.0 * n + 4.0 - 4.0 * x) + kPi / (2.0 * std::sqrt(3.0 * x));
    const double expo =
        (kPi / std::sqrt(3.0) -
         std::exp(-kPi) * std::ceil((n - 2.0) / 2.0) * std::sqrt(3.0) /
             (kPi * std::sqrt(3.0 * x))) *
        std::sqrt(x);
    return coef * std::exp(expo);
  };
  // Factor 2 folds in the even-body family, whose sums sit n_q - 2 higher.
  return 2.0 * std::max(family_bound(i_prime), family_bound(i_prime - (n_q - 2)));
}

double truncation_error_bound(int m_index, double maturity,
                              const GridSpec& grid,
                              const ContractParams& contract) {
  const double c_prime = tail_constant(grid, contract);
  const int min_m = bound_validity_minimum(c_prime);
  if (m_index < min_m) {
    throw std::invalid_argument(
        "truncation_error_bound: index below validity threshold, need M >= " +
        std::to_string(min_m));
  }
  const double angle = 2.0 * maturity * c_prime * std::exp2(-m_index);
  return std::sqrt(2.0 * (1.0 - std::cos(angle)));
}

int min_terms_for_epsilon(double epsilon, double maturity,
                          const GridSpec& grid,
                          const ContractParams& contract) {
  if (!(epsilon > 0.0) || epsilon > 1.0) {
    throw std::invalid_argument("min_terms_for_epsilon: epsilon must be in (0, 1]");
  }
  const double c_prime = tail_constant(grid, contract);
  const int min_m = bound_validity_minimum(c_prime);
  if (maturity <= 0.0) return min_m;
  const double needed =
      std::log2(2.0 * maturity * c_prime /
                std::acos(1.0 - epsilon * epsilon / 2.0));
  return std::max(min_m, static_cast<int>(std::ceil(needed)));
}

std::vector<PlanTerm> TruncationPlan::hermitian_terms() const {
  std::vector<PlanTerm> out;
  for (const auto& t : terms)
    if (t.kind == HamiltonianKind::hermitian) out.push_back(t);
  return out;
}

std::vector<PlanTerm> TruncationPlan::embedded_terms() const {
  std::vector<PlanTerm> out;
  for (const auto& t : terms)
    if (t.kind == HamiltonianKind::embedded) out.push_back(t);
  return out;
}

TruncationPlan build_truncation_plan(const GridSpec& grid,
                                     const ContractParams& contract,
                                     std::size_t m_herm, std::size_t m_emb) {
  if (m_herm > grid.n_x || m_emb > grid.n_x) {
    throw std::invalid_argument("build_truncation_plan: retained count exceeds N_x");
  }
  const auto herm = walsh_coefficients(hermitian_eigenvalues(grid, contract));
  const auto emb = walsh_coefficients(embedded_eigenvalues(grid, contract));

  const auto ranked = [](const CartanExpansion& e) {
    std::vector<std::pair<std::uint32_t, double>> v;
    v.reserve(e.coefficients.size());
    for (std::size_t i = 0; i < e.coefficients.size(); ++i) {
      v.emplace_back(static_cast<std::uint32_t>(i), e.coefficients[i]);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      const double ma = std::abs(a.second), mb = std::abs(b.second);
      if (ma != mb) return ma > mb;
      return a.first < b.first;
    });
    return v;
  };
  const auto herm_ranked = ranked(herm);
  const auto emb_ranked = ranked(emb);

  TruncationPlan plan;
  plan.n_q = grid.n_q;
  plan.maturity = contract.maturity;
  plan.m_hermitian = m_herm;
  plan.m_embedded = m_emb;
  for (std::size_t i = 0; i < m_herm; ++i) {
    const auto& [word, coeff] = herm_ranked[i];
    plan.terms.push_back({word, coeff, HamiltonianKind::hermitian,
                          (word & 1u) ? truncation_index(word, grid.n_q) : -1});
  }
  for (std::size_t i = 0; i < m_emb; ++i) {
    const auto& [word, coeff] = emb_ranked[i];
    plan.terms.push_back({word, coeff, HamiltonianKind::embedded, -1});
  }

  const double t = contract.maturity;
  double bound = t * sum_abs(herm_ranked, m_herm) + sum_abs(emb_ranked, m_emb);
  // Tighten with the index-decay bound when every materially dropped
  // hermitian term sits in its validity range.
  int m_star = std::numeric_limits<int>::max();
  for (std::size_t i = m_herm; i < herm_ranked.size(); ++i) {
    if (std::abs(herm_ranked[i].second) > 1e-14 && (herm_ranked[i].first & 1u)) {
      m_star = std::min(m_star, truncation_index(herm_ranked[i].first, grid.n_q));
    }
  }
  if (m_star != std::numeric_limits<int>::max() &&
      m_star >= bound_validity_minimum(tail_constant(grid, contract))) {
    bound = std::min(bound, truncation_error_bound(m_star, t, grid, contract) +
                                sum_abs(emb_ranked, m_emb));
  }
  plan.error_bound = bound;
  return plan;
}

double average_variance(
    const std::vector<std::pair<double, double>>& vol_samples,
    double maturity) {
  if (!(maturity > 0.0)) {
    throw std::invalid_argument("average_variance: maturity must be positive");
  }
  if (vol_samples.size() < 2) {
    throw std::invalid_argument("average_variance: need at least two samples");
  }
  for (std::size_t i = 0; i < vol_samples.size(); ++i) {
    if (!(vol_samples[i].second > 0.0)) {
      throw std::invalid_argument("average_variance: sigma samples must be positive");
    }
    if (i > 0 && vol_samples[i].first < vol_samples[i - 1].first) {
      throw std::invalid_argument("average_variance: sample times must be non-decreasing");
    }
  }
  if (vol_samples.front().first > 0.0 || vol_samples.back().first < maturity) {
    throw std::invalid_argument("average_variance: samples must cover [0, T]");
  }

  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < vol_samples.size(); ++i) {
    double t0 = vol_samples[i].first;
    double t1 = vol_samples[i + 1].first;
    double y0 = vol_samples[i].second * vol_samples[i].second;
    double y1 = vol_samples[i + 1].second * vol_samples[i + 1].second;
    if (t1 <= 0.0 || t0 >= maturity || t1 == t0) continue;
    // clip the segment to [0, T], interpolating sigma^2 linearly
    if (t0 < 0.0) {
      y0 += (y1 - y0) * (0.0 - t0) / (t1 - t0);
      t0 = 0.0;
    }
    if (t1 > maturity) {
      y1 = y0 + (y1 - y0) * (maturity - t0) / (t1 - t0);
      t1 = maturity;
    }
    integral += 0.5 * (y0 + y1) * (t1 - t0);
  }
  return integral / maturity;
}

std::string plan_to_json(const TruncationPlan& plan) {
  nlohmann::json j;
  j["n_q"] = plan.n_q;
  j["maturity"] = format_double(plan.maturity);
  j["m_hermitian"] = plan.m_hermitian;
  j["m_embedded"] = plan.m_embedded;
  j["error_bound"] = format_double(plan.error_bound);
  auto& terms = j["terms"] = nlohmann::json::array();
  for (const auto& t : plan.terms) {
    terms.push_back({{"word", t.word},
                     {"coefficient", format_double(t.coefficient)},
                     {"kind", t.kind == HamiltonianKind::hermitian
                                  ? "hermitian"
                                  : "embedded"},
                     {"index", t.ranking_index}});
  }
  return j.dump(2) + "\n";
}

TruncationPlan plan_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  TruncationPlan plan;
  plan.n_q = j.at("n_q").get<int>();
  plan.maturity = std::stod(j.at("maturity").get<std::string>());
  plan.m_hermitian = j.at("m_hermitian").get<std::size_t>();
  plan.m_embedded = j.at("m_embedded").get<std::size_t>();
  plan.error_bound = std::stod(j.at("error_bound").get<std::string>());
  for (const auto& t : j.at("terms")) {
    PlanTerm term;
    term.word = t.at("word").get<std::uint32_t>();
    term.coefficient = std::stod(t.at("coefficient").get<std::string>());
    term.kind = t.at("kind").get<std::string>() == "hermitian"
                    ? HamiltonianKind::hermitian
                    : HamiltonianKind::embedded;
    term.ranking_index = t.at("index").get<int>();
    plan.terms.push_back(term);
  }
  return plan;
}

}  // namespace qbs
