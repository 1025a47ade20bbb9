#include "qbs/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qbs {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place Cooley-Tukey, kernel exp(sign * 2*pi*i*j*k/N), no scaling.
void transform(std::vector<cdouble>& a, int sign) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("fourier: length must be a power of two");
  }
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const cdouble wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cdouble w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cdouble u = a[i + k];
        const cdouble v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

void rescale(std::vector<cdouble>& a) {
  const double s = 1.0 / std::sqrt(static_cast<double>(a.size()));
  for (auto& x : a) x *= s;
}

}  // namespace

void fourier_forward(std::vector<cdouble>& a) {
  transform(a, +1);
  rescale(a);
}

void fourier_inverse(std::vector<cdouble>& a) {
  transform(a, -1);
  rescale(a);
}

std::vector<cdouble> fourier_forward_copy(std::vector<cdouble> a) {
  fourier_forward(a);
  return a;
}

std::vector<cdouble> fourier_inverse_copy(std::vector<cdouble> a) {
  fourier_inverse(a);
  return a;
}

}  // namespace qbs
