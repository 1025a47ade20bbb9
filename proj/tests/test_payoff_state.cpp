#include <cmath>
#include <numeric>

#include "doctest.h"
#include "qbs/payoff_state.hpp"

using namespace qbs;

namespace {

ContractParams paper_contract() {
  return {OptionSide::put, 50.0, 0.3, 0.2, 1.0};
}

GridSpec paper_grid(int n_q = 8) { return build_grid_from_s_max(n_q, 135.0); }

}  // namespace

TEST_CASE("contract validation") {
  CHECK_NOTHROW(paper_contract().validate());
  ContractParams c = paper_contract();
  c.strike = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = paper_contract();
  c.sigma = -0.1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = paper_contract();
  c.rate = -0.01;  // embedding needs a contraction
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = paper_contract();
  c.maturity = 0.0;  // degenerate limit stays legal
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("largest in-the-money index") {
  const auto g = paper_grid();

  SUBCASE("paper parameters") {
    CHECK(compute_n_max(g, 50.0) == 114);
  }
  SUBCASE("strike at the lower window edge") {
    const double k_edge = std::exp(-g.x_max / 2.0);
    CHECK(compute_n_max(g, k_edge) == 0);
  }
  SUBCASE("unit strike") {
    CHECK(compute_n_max(g, 1.0) == (g.n_x - 1) / 4);
    const auto g5 = paper_grid(5);
    CHECK(compute_n_max(g5, 1.0) == (g5.n_x - 1) / 4);
  }
  SUBCASE("strike outside the window") {
    CHECK_THROWS_AS(compute_n_max(g, 140.0), std::invalid_argument);
    CHECK_THROWS_AS(compute_n_max(g, std::exp(g.x_max / 2.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(compute_n_max(g, 1e-4), std::invalid_argument);
  }
}

TEST_CASE("prepared put state") {
  const auto g = paper_grid();
  const auto state = prepare_initial_state(g, paper_contract());

  SUBCASE("unit norm") {
    double norm = 0.0;
    for (const auto& a : state.amplitudes) norm += std::norm(a);
    CHECK(std::abs(norm - 1.0) < 1e-12);
  }
  SUBCASE("duplication symmetry and realness") {
    for (std::size_t i = 0; i < g.n_x; ++i) {
      CHECK(state.amplitudes[i] == state.amplitudes[g.n_x - 1 - i]);
      CHECK(state.amplitudes[i].imag() == 0.0);
      CHECK(state.amplitudes[i].real() >= 0.0);
    }
  }
  SUBCASE("first amplitude carries K - 1/135") {
    const double expected = (50.0 - 1.0 / 135.0) / std::sqrt(state.lambda);
    CHECK(state.amplitudes[0].real() == doctest::Approx(expected).epsilon(1e-13));
  }
  SUBCASE("unnormalized amplitudes reproduce the clipped payoff") {
    for (std::size_t j = 0; j + 1 <= (g.n_x - 1) / 2; ++j) {
      const double payoff = std::max(
          50.0 - std::exp(-g.x_max / 2.0 + static_cast<double>(j) * g.delta_x),
          0.0);
      const double stored = state.amplitudes[j].real() * std::sqrt(state.lambda);
      CHECK(std::abs(stored - payoff) < 1e-9);
    }
  }
  SUBCASE("lambda equals the squared norm of the unnormalized vector") {
    double lambda = 0.0;
    for (std::size_t j = 0; j <= state.n_max; ++j) {
      const double v =
          50.0 - std::exp(-g.x_max / 2.0 + static_cast<double>(j) * g.delta_x);
      lambda += 2.0 * v * v;
    }
    CHECK(std::abs(lambda - state.lambda) < 1e-12 * lambda);
  }
}

TEST_CASE("prepared state invariants across sizes and strikes") {
  for (int n_q = 2; n_q <= 10; ++n_q) {
    const auto g = paper_grid(n_q);
    for (double strike : {2.0, 10.0, 50.0, 120.0}) {
      ContractParams c = paper_contract();
      c.strike = strike;
      const auto s = prepare_initial_state(g, c);
      double norm = 0.0;
      for (const auto& a : s.amplitudes) norm += std::norm(a);
      CHECK(std::abs(norm - 1.0) < 1e-12);
      for (std::size_t i = 0; i < g.n_x; ++i) {
        CHECK(s.amplitudes[i] == s.amplitudes[g.n_x - 1 - i]);
      }
    }
  }
}

TEST_CASE("degenerate payoff is rejected") {
  const auto g = paper_grid();
  ContractParams c = paper_contract();
  c.strike = std::exp(-g.x_max / 2.0);  // payoff identically zero on grid
  CHECK_THROWS_AS(prepare_initial_state(g, c), std::invalid_argument);
}

TEST_CASE("call side uses the reflected payoff") {
  const auto g = paper_grid(6);
  ContractParams c = paper_contract();
  c.side = OptionSide::call;
  const auto s = prepare_initial_state(g, c);
  double norm = 0.0;
  for (const auto& a : s.amplitudes) norm += std::norm(a);
  CHECK(std::abs(norm - 1.0) < 1e-12);
  for (std::size_t j = 0; j < g.n_x / 2; ++j) {
    const double spot =
        std::exp(-g.x_max / 2.0 + static_cast<double>(j) * g.delta_x);
    const double payoff = std::max(spot - c.strike, 0.0);
    CHECK(std::abs(s.amplitudes[j].real() * std::sqrt(s.lambda) - payoff) <
          1e-9);
    CHECK(s.amplitudes[j] == s.amplitudes[g.n_x - 1 - j]);
  }
}

TEST_CASE("log-concavity of the put payoff") {
  const auto g = paper_grid();
  const auto c = paper_contract();
  const auto s = prepare_initial_state(g, c);
  CHECK(log_concavity_check(s, g, c.strike));

  SUBCASE("two-point support is vacuously log-concave") {
    ContractParams tiny = c;
    tiny.strike = std::exp(-g.x_max / 2.0 + 1.5 * g.delta_x);
    const auto s2 = prepare_initial_state(g, tiny);
    CHECK(s2.n_max <= 1);
    CHECK(log_concavity_check(s2, g, tiny.strike));
  }

  SUBCASE("an injected convex bump is caught") {
    PreparedState broken = s;
    broken.amplitudes[40] *= 4.0;  // spoil concavity mid-support
    CHECK_FALSE(log_concavity_check(broken, g, c.strike));
  }
}
