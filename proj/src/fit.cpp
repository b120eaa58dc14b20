#include "maglev/fit.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace maglev {

double FitResult::sigma(std::size_t i) const {
    const std::size_t p = params.size();
    return std::sqrt(covariance[i * p + i]);
}

namespace {

Eigen::VectorXd residuals(const ModelFn& model, std::span<const double> x,
                          std::span<const double> y, const Eigen::VectorXd& p) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(x.size()));
    std::vector<double> pv(p.data(), p.data() + p.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r(static_cast<Eigen::Index>(i)) = y[i] - model(x[i], pv);
    return r;
}

Eigen::MatrixXd jacobian(const ModelFn& model, std::span<const double> x,
                         const Eigen::VectorXd& p) {
    const auto n = static_cast<Eigen::Index>(x.size());
    const auto np = p.size();
    Eigen::MatrixXd J(n, np);
    std::vector<double> pv(p.data(), p.data() + np);
    std::vector<double> f0(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) f0[i] = model(x[i], pv);
    for (Eigen::Index j = 0; j < np; ++j) {
        const double h = std::max(1e-8, 1e-8 * std::abs(pv[j]));
        const double saved = pv[j];
        pv[j] = saved + h;
        for (std::size_t i = 0; i < x.size(); ++i)
            J(static_cast<Eigen::Index>(i), j) = (model(x[i], pv) - f0[i]) / h;
        pv[j] = saved;
    }
    return J;
}

}  // namespace

FitResult levenberg_fit(const ModelFn& model, std::span<const double> x, std::span<const double> y,
                        std::vector<double> initial, const LmOptions& opts) {
    if (x.size() != y.size()) throw std::invalid_argument("levenberg_fit: x/y size mismatch");
    if (x.size() < initial.size())
        throw std::invalid_argument("levenberg_fit: fewer points than parameters");

    Eigen::VectorXd p = Eigen::Map<Eigen::VectorXd>(initial.data(),
                                                    static_cast<Eigen::Index>(initial.size()));
    Eigen::VectorXd r = residuals(model, x, y, p);
    double cost = r.squaredNorm();
    double lambda = opts.lambda0;

    FitResult out;
    bool converged = false;
    int iter = 0;
    for (; iter < opts.max_iterations && !converged; ++iter) {
        const Eigen::MatrixXd J = jacobian(model, x, p);
        const Eigen::MatrixXd JtJ = J.transpose() * J;
        const Eigen::VectorXd Jtr = J.transpose() * r;

        bool accepted = false;
        for (int tries = 0; tries < 40 && !accepted; ++tries) {
            Eigen::MatrixXd A = JtJ;
            A.diagonal() += lambda * JtJ.diagonal().cwiseMax(1e-300);
            const Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
            if (ldlt.info() != Eigen::Success)
                throw std::runtime_error("levenberg_fit: singular normal matrix");
            const Eigen::VectorXd step = ldlt.solve(Jtr);
            if (!step.allFinite())
                throw std::runtime_error("levenberg_fit: non-finite step (singular Jacobian?)");
            const Eigen::VectorXd p_new = p + step;
            const Eigen::VectorXd r_new = residuals(model, x, y, p_new);
            const double cost_new = r_new.squaredNorm();
            if (std::isfinite(cost_new) && cost_new <= cost) {
                const double rel_step = step.norm() / std::max(1e-300, p.norm());
                const double rel_impr = (cost - cost_new) / std::max(1e-300, cost);
                p = p_new;
                r = r_new;
                cost = cost_new;
                lambda = std::max(lambda * 0.1, 1e-14);
                accepted = true;
                if (rel_step < opts.step_tol || rel_impr < opts.cost_tol) converged = true;
            } else {
                lambda *= 10.0;
            }
        }
        if (!accepted) converged = true;  // damping saturated; current point is the minimum
    }
    if (!converged)
        throw std::runtime_error("levenberg_fit: no convergence after max iterations");

    // Covariance from the undamped normal matrix at the solution.
    const Eigen::MatrixXd J = jacobian(model, x, p);
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(JtJ);
    if (!lu.isInvertible())
        throw std::runtime_error("levenberg_fit: singular Jacobian at solution");
    const double dof = static_cast<double>(x.size()) - static_cast<double>(p.size());
    const double sigma2 = dof > 0 ? cost / dof : 0.0;
    const Eigen::MatrixXd cov = sigma2 * lu.inverse();

    out.params.assign(p.data(), p.data() + p.size());
    out.covariance.assign(cov.data(), cov.data() + cov.size());  // symmetric, order moot
    out.residual_norm = std::sqrt(cost);
    out.iterations = iter;
    out.converged = true;
    return out;
}

std::vector<double> polyfit(std::span<const double> x, std::span<const double> y, int degree,
                            std::span<const double> weights) {
    const auto n = static_cast<Eigen::Index>(x.size());
    const Eigen::Index np = degree + 1;
    if (n < np) throw std::invalid_argument("polyfit: fewer points than coefficients");
    Eigen::MatrixXd V(n, np);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = weights.empty() ? 1.0 : std::sqrt(weights[static_cast<std::size_t>(i)]);
        double xp = 1.0;
        for (Eigen::Index j = 0; j < np; ++j) {
            V(i, j) = w * xp;
            xp *= x[static_cast<std::size_t>(i)];
        }
        b(i) = w * y[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd c = V.colPivHouseholderQr().solve(b);
    return {c.data(), c.data() + c.size()};
}

double power_law_exponent(std::span<const double> x, std::span<const double> y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::domain_error("power_law_exponent: requires positive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    const auto c = polyfit(lx, ly, 1);
    return c[1];
}

}  // namespace maglev
