#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "qbs/fourier.hpp"
#include "qbs/grid.hpp"

using namespace qbs;

TEST_CASE("build_grid basic layout") {
  const auto g = build_grid(2, 3.0);
  CHECK(g.n_x == 4);
  CHECK(g.delta_x == doctest::Approx(2.0).epsilon(1e-15));
  REQUIRE(g.positions.size() == 4);
  CHECK(g.positions[0] == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(g.positions[1] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(g.positions[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.positions[3] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("build_grid at the paper scale") {
  const double x_max = 2.0 * std::log(135.0);
  const auto g = build_grid(8, x_max);
  CHECK(g.n_x == 256);
  CHECK(g.delta_x == doctest::Approx(4.0 * std::log(135.0) / 255.0).epsilon(1e-15));
  CHECK(build_grid_from_s_max(8, 135.0).x_max == doctest::Approx(x_max));
}

TEST_CASE("build_grid rejects bad input") {
  CHECK_THROWS_AS(build_grid(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(4, std::nan("")), std::invalid_argument);
}

TEST_CASE("grid endpoints and spacing invariants") {
  for (int n_q : {2, 5, 9, 12}) {
    const auto g = build_grid(n_q, 7.3);
    CHECK(std::abs(g.positions.front() + g.x_max) <= 1e-12 * g.x_max);
    CHECK(std::abs(g.positions.back() - g.x_max) <= 1e-12 * g.x_max);
    for (std::size_t i = 1; i < g.n_x; ++i) {
      CHECK(g.positions[i] - g.positions[i - 1] ==
            doctest::Approx(g.delta_x).epsilon(1e-12));
    }
  }
}

TEST_CASE("momentum eigenvalues: closed form and symmetry") {
  const auto g = build_grid(2, 2.0);  // delta_x = 4/3
  const auto spec = momentum_eigenvalues(g);
  CHECK(spec.p[0] == 0.0);
  CHECK(spec.p[1] == doctest::Approx(1.0 / g.delta_x));
  CHECK(spec.p[2] == 0.0);
  CHECK(spec.p[3] == doctest::Approx(-1.0 / g.delta_x));

  const auto g8 = build_grid(8, 2.0 * std::log(135.0));
  const auto s8 = momentum_eigenvalues(g8);
  CHECK(s8.p[64] == doctest::Approx(1.0 / g8.delta_x).epsilon(1e-15));

  for (int n_q : {3, 6, 10, 12}) {
    const auto grid = build_grid(n_q, 5.0);
    const auto s = momentum_eigenvalues(grid);
    const std::size_t n = grid.n_x;
    CHECK(s.p[0] == 0.0);
    for (std::size_t k = 1; k < n; ++k) {
      CHECK(s.p[k] == -s.p[n - k]);  // exact by construction
      CHECK(std::abs(s.p[k]) <= 1.0 / grid.delta_x + 1e-15);
    }
  }
}

TEST_CASE("momentum matrix is Hermitian with the stated corner structure") {
  const auto g = build_grid(2, 3.0);
  const auto m = momentum_matrix_fd(g);
  const cdouble c(0.0, -1.0 / (2.0 * g.delta_x));
  CHECK(std::abs(m(0, 1) - c) < 1e-15);
  CHECK(std::abs(m(1, 0) + c) < 1e-15);
  CHECK(std::abs(m(0, 3) + c) < 1e-15);
  CHECK(std::abs(m(3, 0) - c) < 1e-15);
  CHECK(oracle::max_abs(m - m.adjoint()) < 1e-15);
}

TEST_CASE("momentum matrix diagonalizes under the lattice Fourier transform") {
  for (int n_q : {2, 3, 4, 5, 6}) {
    const auto g = build_grid(n_q, 4.2);
    const auto m = momentum_matrix_fd(g);
    const auto f = oracle::dense_dft(g.n_x);
    const auto spec = momentum_eigenvalues(g);
    Eigen::VectorXcd d(static_cast<Eigen::Index>(g.n_x));
    for (std::size_t k = 0; k < g.n_x; ++k) {
      d[static_cast<Eigen::Index>(k)] = spec.p[k];
    }
    // P_x = F diag(p) F^dagger, i.e. F^dagger P_x F is diagonal in p_k.
    const Eigen::MatrixXcd lhs = f * d.asDiagonal() * f.adjoint();
    CHECK(oracle::max_abs(lhs - m) < 1e-12);
  }
}

TEST_CASE("momentum eigenvalue list matches dense eigendecomposition") {
  for (int n_q : {2, 4, 6}) {
    const auto g = build_grid(n_q, 3.7);
    const auto m = momentum_matrix_fd(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    REQUIRE(solver.info() == Eigen::Success);
    auto expected = momentum_eigenvalues(g).p;
    std::vector<double> dense(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + g.n_x);
    std::sort(expected.begin(), expected.end());
    std::sort(dense.begin(), dense.end());
    for (std::size_t k = 0; k < g.n_x; ++k) {
      CHECK(std::abs(expected[k] - dense[k]) < 1e-10);
    }
  }
}

TEST_CASE("fourier transform matches the dense DFT and is unitary") {
  for (int n_q : {1, 3, 5}) {
    const std::size_t n = std::size_t{1} << n_q;
    const auto f = oracle::dense_dft(n);
    for (std::size_t col = 0; col < n; ++col) {
      std::vector<cdouble> e(n, cdouble{0.0, 0.0});
      e[col] = 1.0;
      const auto tf = fourier_forward_copy(e);
      for (std::size_t row = 0; row < n; ++row) {
        CHECK(std::abs(tf[row] - f(static_cast<Eigen::Index>(row),
                                   static_cast<Eigen::Index>(col))) < 1e-13);
      }
      const auto back = fourier_inverse_copy(tf);
      for (std::size_t row = 0; row < n; ++row) {
        CHECK(std::abs(back[row] - e[row]) < 1e-13);
      }
    }
  }
}

TEST_CASE("nyquist report flags edge-heavy states") {
  const auto g = build_grid(6, 3.0);
  const std::size_t n = g.n_x;

  SUBCASE("uniform state fails the position check with band-fraction mass") {
    std::vector<cdouble> uniform(n, 1.0 / std::sqrt(static_cast<double>(n)));
    const auto rep = nyquist_report(uniform, g, 1e-6);
    CHECK(rep.position_tail_mass == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    CHECK_FALSE(rep.valid);
  }

  SUBCASE("a delta spike is flat in Fourier space and fails the momentum check") {
    std::vector<cdouble> spike(n, 0.0);
    spike[n / 2] = 1.0;
    const auto rep = nyquist_report(spike, g, 1e-6);
    CHECK(rep.momentum_tail_mass == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    CHECK_FALSE(rep.valid);
    CHECK(rep.position_tail_mass == 0.0);
  }

  SUBCASE("a centered smooth bump passes both checks") {
    std::vector<cdouble> bump(n);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = g.positions[i];
      bump[i] = std::exp(-2.0 * x * x);
      norm += std::norm(bump[i]);
    }
    for (auto& b : bump) b /= std::sqrt(norm);
    const auto rep = nyquist_report(bump, g, 1e-6);
    CHECK(rep.valid);
  }
}

TEST_CASE("nyquist report input validation") {
  const auto g = build_grid(3, 1.0);
  std::vector<cdouble> wrong(4, 0.5);
  CHECK_THROWS_AS(nyquist_report(wrong, g, 1e-6), std::invalid_argument);
  std::vector<cdouble> ok(8, std::sqrt(1.0 / 8.0));
  CHECK_THROWS_AS(nyquist_report(ok, g, 0.0), std::invalid_argument);
}
