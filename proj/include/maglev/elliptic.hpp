#pragma once

namespace maglev {

struct EllipticKE {
    double K;  // complete elliptic integral of the first kind
    double E;  // complete elliptic integral of the second kind
};

/// K(m), E(m) for parameter m = k^2 in [0, 1), via arithmetic-geometric-mean
/// iteration, absolute tolerance 1e-12.
EllipticKE elliptic_ke(double m);

}  // namespace maglev
