#pragma once

#include <Eigen/Dense>

#include "qbs/contract.hpp"
#include "qbs/grid.hpp"
#include "qbs/hamiltonian.hpp"

namespace qbs {

/// Dense (2 N_x) x (2 N_x) dilation propagator on embedding-qubit (x)
/// register, block form [[O, sqrt(1-O^2)], [sqrt(1-O^2), -O]] times the
/// drift phase, conjugated into position space by the lattice Fourier
/// transform. With a plan, the diagonal generators are rebuilt from the
/// retained Walsh terms instead of the full spectra. Serves both as the
/// matrix-path oracle for circuit validation and as a fast exact pricer.
Eigen::MatrixXcd exact_propagator(const GridSpec& grid,
                                  const ContractParams& contract,
                                  const TruncationPlan* plan = nullptr);

}  // namespace qbs
