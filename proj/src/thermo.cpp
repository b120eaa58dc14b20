#include "maglev/thermo.hpp"

#include "maglev/fit.hpp"
#include "maglev/units.hpp"
#include "maglev/util.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maglev::thermo {

OpticalParams::OpticalParams(double p_laser_w, double waist_m, double lambda_m)
    : p_laser(p_laser_w), waist(waist_m), lambda_laser(lambda_m) {
    if (!(p_laser >= 0.0)) throw std::invalid_argument("laser power must be >= 0");
    if (!(waist > 0.0)) throw std::invalid_argument("beam waist must be > 0");
}

double absorbed_power(const OpticalParams& opt, const Particle& p) {
    const double geom = 1.0 - std::exp(-2.0 * p.radius * p.radius / (opt.waist * opt.waist));
    return p.alpha_abs * geom * opt.p_laser;
}

double radiated_power(double t, double t_bath, const Particle& p, const Constants& c) {
    if (!(t > 0.0) || !(t_bath > 0.0))
        throw std::invalid_argument("radiated_power: temperatures must be > 0");
    const double area = 4.0 * std::numbers::pi * p.radius * p.radius;
    const double t2 = t * t, tb2 = t_bath * t_bath;
    return p.epsilon_em * c.sigma_sb * area * (t2 * t2 - tb2 * tb2);
}

double conducted_power(double t, const GasEnvironment& gas, const Particle& p,
                       const Constants& c) {
    const double area = 4.0 * std::numbers::pi * p.radius * p.radius;
    return 3.0 * gas.c_acc * area * gas.pressure *
           std::sqrt(c.kB / (2.0 * std::numbers::pi * gas.m_gas * gas.t_bath)) *
           (t - gas.t_bath);
}

ThermoState steady_state_temperature(const OpticalParams& opt, const GasEnvironment& gas,
                                     const Particle& p, const Constants& c) {
    const double p_abs = absorbed_power(opt, p);
    auto fill = [&](double t) {
        ThermoState s;
        s.temperature = t;
        s.p_abs = p_abs;
        s.p_rad = radiated_power(t, gas.t_bath, p, c);
        s.p_cond = conducted_power(t, gas, p, c);
        const auto b = bsat_at_temperature(t, p);
        s.bsat_t = b.bsat;
        s.clamped = b.clamped;
        return s;
    };
    if (p_abs == 0.0) return fill(gas.t_bath);

    auto balance = [&](double t) {
        return p_abs - radiated_power(t, gas.t_bath, p, c) - conducted_power(t, gas, p, c);
    };

    double lo = gas.t_bath;
    double hi = gas.t_bath;
    int iter = 0;
    do {
        hi *= 2.0;
        if (++iter > 200) throw std::runtime_error("steady_state_temperature: bracket growth failed");
    } while (balance(hi) > 0.0);

    // bisect to the floating-point root so the energy balance closes to
    // rounding, well past the 1e-6 K target
    for (iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval at machine resolution
        if (balance(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    if (iter >= 200) throw std::runtime_error("steady_state_temperature: no convergence");
    return fill(0.5 * (lo + hi));
}

BsatAtT bsat_at_temperature(double t, const Particle& p) {
    const double raw = p.bsat0 * (1.0 + p.zeta_th * (t - p.t0));
    BsatAtT out;
    out.clamped = raw < 0.0;
    out.bsat = std::max(raw, 0.0);
    out.out_of_linear_range = t > p.t0 + 200.0;
    return out;
}

ShiftedModes shifted_modes(const OpticalParams& opt, const GasEnvironment& gas, const Particle& p,
                           double omega_z_ref, double omega_lib_ref, const Constants& c) {
    const auto state = steady_state_temperature(opt, gas, p, c);
    ShiftedModes out;
    out.state = state;
    const double rel = state.bsat_t / p.bsat0;
    out.omega_z = omega_z_ref * rel;
    out.omega_lib = omega_lib_ref * std::sqrt(rel);
    return out;
}

BsatDropMap bsat_drop_map(const std::vector<double>& p_laser_grid,
                          const std::vector<double>& p_gas_grid_mbar, const OpticalParams& opt_ref,
                          const GasEnvironment& gas_ref, const Particle& p, const Constants& c) {
    for (const double v : p_laser_grid)
        if (!(v > 0.0)) throw std::invalid_argument("bsat_drop_map: laser grid must be positive");
    for (const double v : p_gas_grid_mbar)
        if (!(v > 0.0)) throw std::invalid_argument("bsat_drop_map: gas grid must be positive");

    BsatDropMap map;
    map.p_laser = p_laser_grid;
    map.p_gas_mbar = p_gas_grid_mbar;
    const std::size_t n = p_laser_grid.size() * p_gas_grid_mbar.size();
    map.rel_drop.assign(n, 0.0);
    map.temperature.assign(n, 0.0);
    map.failed.assign(n, false);

    parallel_for(n, [&](std::size_t idx) {
        const std::size_t i = idx / p_gas_grid_mbar.size();
        const std::size_t j = idx % p_gas_grid_mbar.size();
        OpticalParams opt = opt_ref;
        opt.p_laser = p_laser_grid[i];
        GasEnvironment gas = gas_ref;
        gas.pressure = units::mbar_to_pa(p_gas_grid_mbar[j]);
        try {
            const auto s = steady_state_temperature(opt, gas, p, c);
            map.rel_drop[idx] = (s.bsat_t - p.bsat0) / p.bsat0;
            map.temperature[idx] = s.temperature;
        } catch (const std::exception&) {
            map.failed[idx] = true;
        }
    });
    return map;
}

ThermoFitResult fit_thermo_model(const std::vector<double>& p_laser_obs,
                                 const std::vector<double>& omega_obs, ModeKind kind,
                                 const GasEnvironment& gas, const Particle& p_template,
                                 const OpticalParams& opt_template, double mode_scale_ref,
                                 bool profile_waist, const Constants& c) {
    if (p_laser_obs.size() != omega_obs.size())
        throw std::invalid_argument("fit_thermo_model: observation size mismatch");
    if (p_laser_obs.size() < 4)
        throw std::invalid_argument("fit_thermo_model: need at least 4 observations");

    auto model = [&](double p_laser, std::span<const double> params) {
        Particle part = p_template;
        part.alpha_abs = std::clamp(params[0], 0.0, 1.0);
        part.epsilon_em = part.alpha_abs;  // tied, see docs
        OpticalParams opt = opt_template;
        opt.p_laser = p_laser;
        if (params.size() > 2) opt.waist = std::abs(params[2]);
        const auto state = steady_state_temperature(opt, gas, part, c);
        const double bsat_t = params[1] * (1.0 + part.zeta_th * (state.temperature - part.t0));
        if (kind == ModeKind::translational) return mode_scale_ref * bsat_t;
        return mode_scale_ref * std::sqrt(std::max(bsat_t, 0.0));
    };

    // initial guess: no heating at the weakest observation
    std::size_t i_min = 0;
    for (std::size_t i = 1; i < p_laser_obs.size(); ++i)
        if (p_laser_obs[i] < p_laser_obs[i_min]) i_min = i;
    const double w0 = omega_obs[i_min] / mode_scale_ref;
    double bsat_guess = kind == ModeKind::translational ? w0 : w0 * w0;
    std::vector<double> init{0.15, bsat_guess};
    if (profile_waist) init.push_back(opt_template.waist);

    const auto res = levenberg_fit(model, p_laser_obs, omega_obs, init);

    ThermoFitResult out{};
    out.alpha = res.params[0];
    out.bsat0 = res.params[1];
    out.alpha_sigma = res.sigma(0);
    out.bsat0_sigma = res.sigma(1);
    if (profile_waist) {
        out.waist = res.params[2];
        out.waist_sigma = res.sigma(2);
    }
    out.residual_norm = res.residual_norm;
    out.iterations = res.iterations;
    return out;
}

}  // namespace maglev::thermo
