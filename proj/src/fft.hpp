#pragma once

#include <complex>
#include <span>

namespace isogauge::detail {

// Unnormalised real-to-complex transform: out[k] = Σ_j x_j e^{-2πi jk/n},
// k = 0..n/2. `out` must hold n/2 + 1 entries.
void forward_real(std::span<const double> x, std::span<std::complex<double>> out);

// Inverse of forward_real up to the factor n: x_j = Σ_k X_k e^{2πi jk/n}
// with Hermitian extension. `in` holds n/2 + 1 entries and is not modified.
void inverse_real(std::span<const std::complex<double>> in, std::span<double> x);

}  // namespace isogauge::detail
