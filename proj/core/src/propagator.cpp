#include "qbs/propagator.hpp"

#include <cmath>
#include <stdexcept>

#include "qbs/fourier.hpp"

namespace qbs {

Eigen::MatrixXcd exact_propagator(const GridSpec& grid,
                                  const ContractParams& contract,
                                  const TruncationPlan* plan) {
  contract.validate();  // rate >= 0, maturity >= 0 keep the dilation valid
  const std::size_t n = grid.n_x;

  std::vector<double> herm(n), emb(n);
  if (plan == nullptr) {
    herm = hermitian_eigenvalues(grid, contract).eigenvalues;
    emb = embedded_eigenvalues(grid, contract).eigenvalues;
  } else {
    if (plan->n_q != grid.n_q) {
      throw std::invalid_argument("exact_propagator: plan and grid disagree on n_q");
    }
    CartanExpansion he{HamiltonianKind::hermitian, grid.n_q,
                       std::vector<double>(n, 0.0)};
    CartanExpansion ee{HamiltonianKind::embedded, grid.n_q,
                       std::vector<double>(n, 0.0)};
    for (const auto& t : plan->terms) {
      auto& target = t.kind == HamiltonianKind::hermitian ? he : ee;
      target.coefficients[t.word] += t.coefficient;
    }
    herm = walsh_reconstruct(he);
    emb = walsh_reconstruct(ee);
  }

  // Momentum-basis diagonals: drift phase and the dilation pair
  // (cos H~, sin H~) of the decay factor.
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::VectorXcd drift(ni);
  Eigen::VectorXd o_diag(ni), s_diag(ni);
  for (std::size_t k = 0; k < n; ++k) {
    drift[static_cast<Eigen::Index>(k)] =
        std::polar(1.0, -contract.maturity * herm[k]);
    o_diag[static_cast<Eigen::Index>(k)] = std::cos(emb[k]);
    s_diag[static_cast<Eigen::Index>(k)] = std::sin(emb[k]);
  }

  // Column c of the position-space block F^dag diag(d) F is the inverse
  // transform of d .* (F e_c); assemble all columns with the fast transform.
  const auto conjugated = [&](const Eigen::VectorXcd& d) {
    Eigen::MatrixXcd m(ni, ni);
    for (Eigen::Index c = 0; c < ni; ++c) {
      std::vector<cdouble> col(n, cdouble{0.0, 0.0});
      col[static_cast<std::size_t>(c)] = 1.0;
      fourier_forward(col);
      for (std::size_t k = 0; k < n; ++k) col[k] *= d[static_cast<Eigen::Index>(k)];
      fourier_inverse(col);
      for (Eigen::Index rw = 0; rw < ni; ++rw) {
        m(rw, c) = col[static_cast<std::size_t>(rw)];
      }
    }
    return m;
  };

  const Eigen::MatrixXcd top_left =
      conjugated(o_diag.cast<cdouble>().cwiseProduct(drift));
  const Eigen::MatrixXcd off_diag =
      conjugated(s_diag.cast<cdouble>().cwiseProduct(drift));

  Eigen::MatrixXcd u(2 * ni, 2 * ni);
  u.topLeftCorner(ni, ni) = top_left;
  u.topRightCorner(ni, ni) = off_diag;
  u.bottomLeftCorner(ni, ni) = off_diag;
  u.bottomRightCorner(ni, ni) = -top_left;
  return u;
}

}  // namespace qbs
