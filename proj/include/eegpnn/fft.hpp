#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace eegpnn::fft {

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey. `a.size()` must be a power of two.
// The inverse transform includes the 1/N factor.
inline void radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<std::complex<double>> twiddle(n / 2);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    for (std::size_t k = 0; k < half; ++k) {
      twiddle[k] = std::polar(1.0, ang * static_cast<double>(k));
    }
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + half] * twiddle[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& z : a) z *= inv_n;
  }
}

// Bluestein chirp-z for arbitrary lengths, forward only. Squared indices are
// reduced modulo 2N so the chirp angles stay exact for any practical N.
inline void bluestein_forward(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;

  std::vector<std::complex<double>> chirp(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::uint64_t sq = (static_cast<std::uint64_t>(j) * j) % (2 * n);
    chirp[j] = std::polar(1.0, -std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n));
  }

  std::vector<std::complex<double>> fa(m), fb(m);
  for (std::size_t j = 0; j < n; ++j) fa[j] = a[j] * chirp[j];
  fb[0] = std::conj(chirp[0]);
  for (std::size_t j = 1; j < n; ++j) fb[j] = fb[m - j] = std::conj(chirp[j]);

  radix2(fa, false);
  radix2(fb, false);
  for (std::size_t j = 0; j < m; ++j) fa[j] *= fb[j];
  radix2(fa, true);

  for (std::size_t j = 0; j < n; ++j) a[j] = fa[j] * chirp[j];
}

}  // namespace detail

// In-place DFT of any length; X_k = sum_n x_n e^{-j 2 pi k n / N}.
// The inverse transform applies the 1/N normalization.
inline void transform(std::vector<std::complex<double>>& a, bool inverse = false) {
  if (a.size() < 2) return;
  if (detail::is_pow2(a.size())) {
    detail::radix2(a, inverse);
    return;
  }
  if (!inverse) {
    detail::bluestein_forward(a);
    return;
  }
  for (auto& z : a) z = std::conj(z);
  detail::bluestein_forward(a);
  const double inv_n = 1.0 / static_cast<double>(a.size());
  for (auto& z : a) z = std::conj(z) * inv_n;
}

inline std::vector<std::complex<double>> forward_real(std::span<const double> x) {
  std::vector<std::complex<double>> a(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) a[i] = x[i];
  transform(a, false);
  return a;
}

}  // namespace eegpnn::fft
