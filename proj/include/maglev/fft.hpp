#pragma once

#include <complex>
#include <span>
#include <vector>

namespace maglev {

/// Real-to-complex FFT (forward, unnormalized): returns n/2 + 1 bins.
std::vector<std::complex<double>> rfft(std::span<const double> input);

}  // namespace maglev
