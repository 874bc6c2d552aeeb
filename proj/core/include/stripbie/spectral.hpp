#pragma once

#include <complex>
#include <span>
#include <vector>

// Trigonometric operations on samples of 2pi-periodic functions taken at
// t_j = 2 pi j / n. All routines are thread-safe.
namespace stripbie::spectral {

using cplx = std::complex<double>;

/// Unnormalized forward DFT, X_k = sum_j x_j e^{-2 pi i jk/n}.
std::vector<cplx> forward(std::span<const cplx> samples);
/// Inverse DFT including the 1/n factor.
std::vector<cplx> inverse(std::span<const cplx> coefficients);

/// Signed wavenumber of DFT bin k.
inline long wavenumber(std::size_t k, std::size_t n) {
  return k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

/// d/dt of the trigonometric interpolant. The Nyquist mode is dropped.
std::vector<cplx> derivative(std::span<const cplx> samples);
std::vector<double> derivative(std::span<const double> samples);

/// Conjugation operator K, (1/2pi) p.v. int cot((s - t)/2) mu(t) dt, applied to
/// the interpolant: e^{ikt} -> -i sign(k) e^{ikt}.
std::vector<double> conjugate(std::span<const double> samples);

/// Multiplies the DFT of `samples` by `symbol` (length n) and transforms back.
std::vector<double> apply_symbol(std::span<const double> samples, std::span<const cplx> symbol);

/// Evaluates the trigonometric interpolant at an arbitrary t. The Nyquist mode
/// enters as a cosine so that real data give a real interpolant.
cplx interpolate(std::span<const cplx> samples, double t);
double interpolate(std::span<const double> samples, double t);

}  // namespace stripbie::spectral
