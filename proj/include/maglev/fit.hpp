#pragma once

#include <functional>
#include <span>
#include <vector>

namespace maglev {

/// Result of a least-squares fit. covariance is sigma_hat^2 (J^T J)^-1 with
/// sigma_hat^2 = SSR/(n - p), stored row-major p x p.
struct FitResult {
    std::vector<double> params;
    std::vector<double> covariance;
    double residual_norm = 0.0;  // sqrt(sum of squared residuals)
    int iterations = 0;
    bool converged = false;

    [[nodiscard]] double sigma(std::size_t i) const;
};

using ModelFn = std::function<double(double x, std::span<const double> params)>;

struct LmOptions {
    int max_iterations = 200;
    double step_tol = 1e-12;   // relative parameter step
    double cost_tol = 1e-14;   // relative cost improvement
    double lambda0 = 1e-3;
};

/// Damped Gauss-Newton (Levenberg style) with forward-difference Jacobian.
/// Throws std::runtime_error on a singular normal matrix or non-convergence.
FitResult levenberg_fit(const ModelFn& model, std::span<const double> x,
                        std::span<const double> y, std::vector<double> initial,
                        const LmOptions& opts = {});

/// Weighted polynomial least squares; returns coefficients c0..c_degree.
/// Empty weights = unweighted.
std::vector<double> polyfit(std::span<const double> x, std::span<const double> y, int degree,
                            std::span<const double> weights = {});

/// Slope of log(y) vs log(x): the fitted power-law exponent. Requires x, y > 0.
double power_law_exponent(std::span<const double> x, std::span<const double> y);

}  // namespace maglev
