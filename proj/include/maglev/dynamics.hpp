#pragma once

#include "maglev/analysis.hpp"
#include "maglev/constants.hpp"
#include "maglev/fields.hpp"
#include "maglev/particle.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace maglev::dynamics {

/// Center-of-mass position/velocity plus one libration angle (rotation about
/// the y-axis; the moment tips in the x-z plane).
struct DynamicState {
    std::array<double, 3> r{0.0, 0.0, 0.0};  // [m]
    std::array<double, 3> v{0.0, 0.0, 0.0};  // [m/s]
    double theta = 0.0;                      // [rad]
    double theta_dot = 0.0;                  // [rad/s]
};

enum class Scheme { rk4, semi_implicit };
enum class DriveModel { analytic_curvature, full_field };

struct SimConfig {
    double dt;                 // [s]; must give >= 20 steps per drive period
    double duration;           // [s]
    Scheme scheme = Scheme::rk4;
    bool include_noise = false;
    bool include_damping = false;
    std::uint64_t seed = 0;
    DriveModel drive = DriveModel::analytic_curvature;
    double escape_radius = 40e-6;  // [m], half the pocket scale
    int store_every = 1;           // decimate stored samples
};

/// Everything the equations of motion need. Damping/noise rates follow the
/// gas via the dissipation module (fluctuation-dissipation pairing).
struct PhysicsSetup {
    Particle particle{};
    GasEnvironment gas{};
    fields::CurvatureSet curvatures{};  // analytic_curvature drive
    std::optional<fields::TrapFieldModel> field_model;  // full_field drive
    double omega_trap = 0.0;   // [rad/s]
    double b0 = 0.0;           // bias field at the center [T]
    double b0_gradient = 0.0;  // [T/m]
    bool gravity = true;
    bool drive_on = true;
    DriveModel drive = DriveModel::analytic_curvature;  // kept in sync by integrate()
};

struct Derivative {
    std::array<double, 3> v;
    std::array<double, 3> a;
    double theta_dot;
    double theta_ddot;
};

/// Force model: F_i = mu_z B''_i x_i cos(Omega t) + (mu_z B0' - m g) z_hat;
/// torque I theta'' = -mu B0 sin(theta), plus the drive-field torque in
/// full_field mode; -gamma v / -gamma_lib theta_dot when damping is on.
Derivative equations_of_motion(const DynamicState& s, double t, const PhysicsSetup& phys,
                               bool include_damping, double gamma_com, double gamma_lib,
                               const Constants& c = constants());

struct Trajectory {
    double dt = 0.0;          // stored sample interval [s]
    double omega_trap = 0.0;  // [rad/s], carried for spectral analysis
    std::vector<double> t;
    std::vector<DynamicState> states;
    bool escaped = false;
    std::size_t escape_step = 0;

    [[nodiscard]] double sample_rate() const { return 1.0 / dt; }
    [[nodiscard]] std::vector<double> column(int which) const;  // 0..7: x y z vx vy vz theta theta_dot
};

/// Fixed-step integration; deterministic for a fixed seed. Noise is white
/// Gaussian force/torque with one-sided spectral density 4 kB T m gamma
/// (velocity kicks superposed Euler-Maruyama style on the deterministic
/// step). Throws on NaN/overflow; escape beyond escape_radius sets the flag
/// and truncates.
Trajectory integrate(const SimConfig& cfg, const DynamicState& initial, const PhysicsSetup& phys,
                     const Constants& c = constants());

/// Kinetic + libration + bias/gravity potential energy; drive excluded.
/// Conserved by the drive-off, damping-off dynamics.
double total_energy(const DynamicState& s, const PhysicsSetup& phys,
                    const Constants& c = constants());

/// Scalar detector emulation: s = w.u + w2.u^2 + offset + noise, with
/// u = (x, y, z, theta). Quadratic terms generate the 2-omega harmonics.
struct DetectorModel {
    std::array<double, 4> linear{0.0, 0.0, 0.0, 0.0};
    std::array<double, 4> quadratic{0.0, 0.0, 0.0, 0.0};
    double offset = 0.0;
    double noise_floor = 0.0;  // std dev of additive white noise
    std::uint64_t seed = 1;
};

analysis::TimeSeries synthetic_detector_trace(const Trajectory& traj, const DetectorModel& det);

/// Dominant PSD frequency per coordinate (x, y, z, theta), restricted below
/// Omega/2; nullopt when no peak clears the noise floor
/// (median + 6 MAD). Requires >= 2^14 stored samples.
std::array<std::optional<double>, 4> secular_frequency_measure(const Trajectory& traj);

}  // namespace maglev::dynamics
