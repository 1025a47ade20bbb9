#pragma once

#include <complex>
#include <vector>

namespace qbs {

using cdouble = std::complex<double>;

/// Unitary radix-2 transform used everywhere in this project.
///
/// Forward kernel:  X_k = (1/sqrt(N)) sum_j x_j exp(+2*pi*i*j*k/N).
/// The positive-exponent convention matches the quantum Fourier transform
/// circuit |j> -> (1/sqrt(N)) sum_k w^{jk} |k>, so "forward" here is what the
/// QFT block of a compiled circuit applies. The inverse uses the negative
/// exponent. Both scale by 1/sqrt(N); applying forward then inverse is the
/// identity to rounding.
void fourier_forward(std::vector<cdouble>& a);
void fourier_inverse(std::vector<cdouble>& a);

std::vector<cdouble> fourier_forward_copy(std::vector<cdouble> a);
std::vector<cdouble> fourier_inverse_copy(std::vector<cdouble> a);

}  // namespace qbs
