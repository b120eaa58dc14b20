#include "maglev/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maglev {

EllipticKE elliptic_ke(double m) {
    if (!(m >= 0.0 && m < 1.0)) throw std::domain_error("elliptic_ke: parameter m outside [0,1)");
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    double c = std::sqrt(m);
    double c_sum = 0.5 * c * c;  // accumulates 2^(n-1) c_n^2, n = 0 term
    double pow2 = 1.0;
    for (int n = 0; n < 64 && std::abs(c) > 1e-12 * a; ++n) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        c_sum += pow2 * c * c;
        pow2 *= 2.0;
    }
    const double K = std::numbers::pi / (2.0 * a);
    return {K, K * (1.0 - c_sum)};
}

}  // namespace maglev
