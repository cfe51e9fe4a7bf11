#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qsd::detail {

// Unnormalized DFT: out[k] = sum_j in[j] exp(sign * 2πi jk/N), sign = -1 forward.
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> in, int sign);

}  // namespace qsd::detail
