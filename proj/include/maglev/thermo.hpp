#pragma once

#include "maglev/constants.hpp"
#include "maglev/particle.hpp"

#include <optional>
#include <vector>

namespace maglev::thermo {

struct OpticalParams {
    double p_laser = 0.0;        // incident power [W]
    double waist = 10e-6;        // beam waist [m]; not published, config input
    double lambda_laser = 633e-9;

    OpticalParams() = default;
    OpticalParams(double p_laser_w, double waist_m, double lambda_m = 633e-9);
};

/// Steady-state internal temperature and the power balance behind it.
struct ThermoState {
    double temperature;  // [K]
    double bsat_t;       // remanent field at that temperature [T]
    double p_abs;        // [W]
    double p_rad;
    double p_cond;
    bool clamped = false;  // bsat linear model hit zero
};

/// P_abs = alpha [1 - exp(-2 a^2 / w^2)] P_laser.
double absorbed_power(const OpticalParams& opt, const Particle& p);

/// P_rad = eps sigma (4 pi a^2) (T^4 - T_bath^4).
double radiated_power(double t, double t_bath, const Particle& p,
                      const Constants& c = constants());

/// P_cond = 3 c_acc (4 pi a^2) P_gas sqrt(kB/(2 pi m_g T_bath)) (T - T_bath);
/// free-molecular form, validity not enforced here.
double conducted_power(double t, const GasEnvironment& gas, const Particle& p,
                       const Constants& c = constants());

/// Unique root of P_abs = P_rad(T) + P_cond(T) on [T_bath, inf). Bisection on
/// a geometrically grown bracket, driven to the floating-point root so the
/// energy balance closes to rounding. Throws std::runtime_error after 200
/// iterations (unreachable for the strictly decreasing balance).
ThermoState steady_state_temperature(const OpticalParams& opt, const GasEnvironment& gas,
                                     const Particle& p, const Constants& c = constants());

/// B_sat(T) = B_sat(T0) [1 + zeta_th (T - T0)], clamped at 0. Linear-model
/// warning (second return) above T0 + 200 K.
struct BsatAtT {
    double bsat;
    bool clamped;
    bool out_of_linear_range;
};
BsatAtT bsat_at_temperature(double t, const Particle& p);

/// Modes at the heated steady state: translational scale with B_sat(T),
/// libration with sqrt(B_sat(T)).
struct ShiftedModes {
    double omega_z;     // [rad/s]
    double omega_lib;   // [rad/s], 0 when b0 = 0
    ThermoState state;
};

/// omega_z_ref / omega_lib_ref are the cold (T = T0, B_sat = bsat0) values.
ShiftedModes shifted_modes(const OpticalParams& opt, const GasEnvironment& gas, const Particle& p,
                           double omega_z_ref, double omega_lib_ref,
                           const Constants& c = constants());

struct BsatDropMap {
    std::vector<double> p_laser;           // row axis [W]
    std::vector<double> p_gas_mbar;        // column axis [mbar]
    std::vector<double> rel_drop;          // (B_sat(T)-bsat0)/bsat0, row-major
    std::vector<double> temperature;       // [K], row-major
    std::vector<bool> failed;              // per-cell solve failures
};

BsatDropMap bsat_drop_map(const std::vector<double>& p_laser_grid,
                          const std::vector<double>& p_gas_grid_mbar, const OpticalParams& opt_ref,
                          const GasEnvironment& gas_ref, const Particle& p,
                          const Constants& c = constants());

enum class ModeKind { translational, librational };

struct ThermoFitResult {
    double alpha;
    double bsat0;
    double alpha_sigma;
    double bsat0_sigma;
    double waist = 0.0;        // fitted only when profile_waist
    double waist_sigma = 0.0;
    double residual_norm;
    int iterations;
};

/// Nonlinear least squares for (alpha, B_sat(T0)) from (P_laser, omega)
/// observations, with emissivity tied to alpha. omega observations in rad/s.
/// mode_scale_ref: the mode value at B_sat = 1 T cold — i.e. omega_model =
/// mode_scale_ref * bsat(T) for translational, mode_scale_ref * sqrt(bsat(T))
/// for librational.
ThermoFitResult fit_thermo_model(const std::vector<double>& p_laser_obs,
                                 const std::vector<double>& omega_obs, ModeKind kind,
                                 const GasEnvironment& gas, const Particle& p_template,
                                 const OpticalParams& opt_template, double mode_scale_ref,
                                 bool profile_waist = false, const Constants& c = constants());

}  // namespace maglev::thermo
