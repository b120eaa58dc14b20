#include "maglev/trap_model.hpp"

#include "maglev/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace maglev::trap {

namespace {
constexpr double kTwoSqrtTwo = 2.0 * std::numbers::sqrt2;
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::secular: return "secular";
        case Regime::nonsecular_stable: return "nonsecular_stable";
        case Regime::unstable: return "unstable";
    }
    return "?";
}

double StabilityParams::max_q() const { return std::max({q_x, q_y, q_z}); }

bool ModeSet::angular_stability_ok() const {
    return omega_lib > kAngularStabilityFactor * std::max({omega_x, omega_y, omega_z});
}

StabilityError::StabilityError(const StabilityParams& sp)
    : std::runtime_error("trap unstable: max q = " + std::to_string(sp.max_q()) +
                         " >= " + std::to_string(kMathieuBoundary)),
      params(sp) {}

namespace {

Regime classify(double max_q) {
    if (max_q >= kMathieuBoundary) return Regime::unstable;
    if (max_q < kSecularBound) return Regime::secular;
    return Regime::nonsecular_stable;
}

}  // namespace

StabilityParams stability_params(const fields::CurvatureSet& curv, const BsatPerAxis& bsat,
                                 double density, double omega_trap, const Constants& c) {
    if (!(omega_trap > 0.0)) throw std::invalid_argument("stability_params: omega_trap must be > 0");
    const double denom = c.mu0 * density * omega_trap * omega_trap;
    StabilityParams sp;
    sp.q_x = 2.0 * std::abs(curv.bpp_x) * bsat.x / denom;
    sp.q_y = 2.0 * std::abs(curv.bpp_y) * bsat.y / denom;
    sp.q_z = 2.0 * std::abs(curv.bpp_z) * bsat.z / denom;
    sp.regime = classify(sp.max_q());
    return sp;
}

StabilityParams stability_params(const fields::CurvatureSet& curv, const Particle& p,
                                 double omega_trap, const Constants& c) {
    return stability_params(curv, BsatPerAxis{p.bsat0, p.bsat0, p.bsat0}, p.density, omega_trap, c);
}

std::array<double, 3> translational_modes(const StabilityParams& sp, double omega_trap) {
    if (sp.regime == Regime::unstable) throw StabilityError(sp);
    return {sp.q_x * omega_trap / kTwoSqrtTwo, sp.q_y * omega_trap / kTwoSqrtTwo,
            sp.q_z * omega_trap / kTwoSqrtTwo};
}

double libration_mode(double b0, const Particle& p, const Constants& c) {
    if (!(b0 > 0.0)) throw std::domain_error("libration_mode: b0 must be > 0");
    return std::sqrt(5.0 * b0 * p.bsat0 / (2.0 * c.mu0 * p.density * p.radius * p.radius));
}

std::vector<double> pseudo_potential(const fields::CurvatureSet& curv, const Particle& p,
                                     double omega_trap, int axis,
                                     const std::vector<double>& positions, const Constants& c) {
    if (!(omega_trap > 0.0)) throw std::invalid_argument("pseudo_potential: omega_trap must be > 0");
    const double bpp = axis == 0 ? curv.bpp_x : axis == 1 ? curv.bpp_y : curv.bpp_z;
    const double mu_bpp = p.dipole_moment(c) * bpp;
    const double m = p.mass();
    std::vector<double> u(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const double g = mu_bpp * positions[i];  // gradient of mu_z B_{1,z}
        u[i] = g * g / (4.0 * m * omega_trap * omega_trap);
    }
    return u;
}

double libration_potential(double theta, double b0, const Particle& p, const Constants& c) {
    return p.dipole_moment(c) * b0 * (1.0 - std::cos(theta));
}

std::vector<MicromotionLine> micromotion_lines(const ModeSet& modes, int n_max, int m_max) {
    if (n_max < 0 || m_max < 0)
        throw std::invalid_argument("micromotion_lines: orders must be >= 0");
    const double f_trap = modes.omega_trap / (2.0 * std::numbers::pi);
    struct Secular {
        double f;
        const char* name;
    };
    std::vector<Secular> secs;
    for (const auto& [w, name] : {std::pair{modes.omega_x, "x"}, {modes.omega_y, "y"},
                                  {modes.omega_z, "z"}, {modes.omega_lib, "lib"}}) {
        if (w > 0.0) secs.push_back({w / (2.0 * std::numbers::pi), name});
    }

    std::vector<MicromotionLine> lines;
    for (int m = 0; m <= m_max; ++m) {
        if (m > 0) lines.push_back({m * f_trap, m, 0, +1, "drive", m});
        for (int n = 1; n <= n_max; ++n) {
            for (const auto& s : secs) {
                for (int sign : {+1, -1}) {
                    const double f = std::abs(m * f_trap + sign * n * s.f);
                    lines.push_back({f, m, n, sign, s.name, m + n});
                    if (m == 0) break;  // |0 - nf| duplicates |0 + nf|
                }
            }
        }
    }
    std::sort(lines.begin(), lines.end(),
              [](const MicromotionLine& a, const MicromotionLine& b) { return a.freq_hz < b.freq_hz; });
    // de-duplicate numerically coincident lines, keeping the lower-rank label
    std::vector<MicromotionLine> out;
    for (const auto& l : lines) {
        if (!out.empty() && std::abs(l.freq_hz - out.back().freq_hz) <=
                                1e-9 * std::max(1.0, std::abs(out.back().freq_hz))) {
            if (l.rank < out.back().rank) out.back() = l;
            continue;
        }
        out.push_back(l);
    }
    return out;
}

ModeSet compute_modes(const TrapConfig& cfg, const Particle& p, const Constants& c) {
    const auto curv = cfg.curvatures.scaled_to_current(cfg.i_trap);
    const BsatPerAxis bsat =
        cfg.bsat_per_axis.value_or(BsatPerAxis{p.bsat0, p.bsat0, p.bsat0});
    const auto sp = stability_params(curv, bsat, p.density, cfg.omega_trap, c);
    const auto w = translational_modes(sp, cfg.omega_trap);
    ModeSet out;
    out.omega_x = w[0];
    out.omega_y = w[1];
    out.omega_z = w[2];
    out.omega_trap = cfg.omega_trap;
    if (cfg.i_b0 > 0.0) out.omega_lib = libration_mode(cfg.coil_anchor.b0(cfg.i_b0), p, c);
    return out;
}

SweepResult sweep_modes(const std::string& parameter, const std::vector<double>& grid,
                        const TrapConfig& base, const Particle& p, const Constants& c) {
    if (parameter != "i_trap" && parameter != "i_b0" && parameter != "omega_trap")
        throw std::invalid_argument("sweep_modes: unknown parameter " + parameter);

    SweepResult res;
    res.parameter = parameter;
    res.rows.reserve(grid.size());
    for (const double v : grid) {
        TrapConfig cfg = base;
        if (parameter == "i_trap") cfg.i_trap = v;
        else if (parameter == "i_b0") cfg.i_b0 = v;
        else cfg.omega_trap = v;

        const auto curv = cfg.curvatures.scaled_to_current(cfg.i_trap);
        const BsatPerAxis bsat =
            cfg.bsat_per_axis.value_or(BsatPerAxis{p.bsat0, p.bsat0, p.bsat0});
        const auto sp = stability_params(curv, bsat, p.density, cfg.omega_trap, c);

        SweepRow row{};
        row.value = v;
        row.max_q = sp.max_q();
        row.unstable = sp.regime == Regime::unstable;
        if (!row.unstable) {
            const auto w = translational_modes(sp, cfg.omega_trap);
            row.f_x = w[0] / (2.0 * std::numbers::pi);
            row.f_y = w[1] / (2.0 * std::numbers::pi);
            row.f_z = w[2] / (2.0 * std::numbers::pi);
        } else {
            res.any_unstable = true;
        }
        if (cfg.i_b0 > 0.0)
            row.f_lib = libration_mode(cfg.coil_anchor.b0(cfg.i_b0), p, c) /
                        (2.0 * std::numbers::pi);
        res.rows.push_back(row);
    }

    // power-law exponents over the stable rows
    auto fit_exp = [&](auto getter) -> double {
        std::vector<double> xs, ys;
        for (const auto& r : res.rows) {
            const double y = getter(r);
            if (!r.unstable && y > 0.0 && r.value > 0.0) {
                xs.push_back(r.value);
                ys.push_back(y);
            }
        }
        if (xs.size() < 2) return 0.0;
        return power_law_exponent(xs, ys);
    };
    res.exponent_f_x = fit_exp([](const SweepRow& r) { return r.f_x; });
    res.exponent_f_y = fit_exp([](const SweepRow& r) { return r.f_y; });
    res.exponent_f_z = fit_exp([](const SweepRow& r) { return r.f_z; });
    res.exponent_f_lib = fit_exp([](const SweepRow& r) { return r.f_lib; });
    return res;
}

LibrationSweepResult bsat_from_libration_sweep(double delta_omega, double i_initial,
                                               double i_final, const Particle& p,
                                               const fields::CoilAnchor& anchor,
                                               const Constants& c) {
    if (!(i_final > i_initial && i_initial > 0.0))
        throw std::invalid_argument("bsat_from_libration_sweep: need i_final > i_initial > 0");
    if (!(delta_omega > 0.0))
        throw std::invalid_argument("bsat_from_libration_sweep: delta_omega must be > 0");

    LibrationSweepResult out;
    out.c_coeff = delta_omega / (std::sqrt(i_final) - std::sqrt(i_initial));
    out.omega_lib_i = out.c_coeff * std::sqrt(i_initial);

    const double b0_i = anchor.b0(i_initial);
    const double k = std::sqrt(5.0 / (2.0 * c.mu0 * p.density * p.radius * p.radius));
    const double denom = k * (std::sqrt(i_final / i_initial * b0_i) - std::sqrt(b0_i));
    const double root = delta_omega / denom;
    out.bsat = root * root;
    return out;
}

}  // namespace maglev::trap
