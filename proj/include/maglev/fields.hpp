#pragma once

#include "maglev/constants.hpp"
#include "maglev/particle.hpp"

#include <array>
#include <string>

namespace maglev::fields {

using Vec3 = std::array<double, 3>;

/// Filamentary circular current loop in a plane z = center_z, axis along z.
struct CurrentLoop {
    double radius;    // R [m]
    double center_z;  // axial offset [m]
    double current;   // I [A], signed; amplitude when driven AC

    CurrentLoop(double radius_m, double center_z_m, double current_a);
};

/// On-axis field B_z = mu0 I R^2 / (2 (R^2 + (z - center_z)^2)^(3/2)).
double loop_field_axial(const CurrentLoop& loop, double z, const Constants& c = constants());

/// Off-axis field via complete elliptic integrals. Throws std::domain_error
/// within 1e-12 m of the filament.
Vec3 loop_field(const CurrentLoop& loop, const Vec3& point, const Constants& c = constants());

/// Two concentric coplanar loops driven as I_inner = i_trap,
/// I_outer = -xi * i_trap, both at amplitude, plus the drive frequency.
struct TrapFieldModel {
    CurrentLoop inner{85e-6, 0.0, 0.163};
    CurrentLoop outer{170e-6, 0.0, -0.326};
    double xi = 2.0;            // outer/inner current ratio (outer runs at -xi I)
    double omega_trap;          // drive angular frequency [rad/s]
    double i_trap;              // inner-loop current amplitude [A]

    TrapFieldModel(double inner_radius_m, double outer_radius_m, double xi_,
                   double omega_trap_rad_s, double i_trap_a);

    /// Ratio xi that nulls the axial field at the trap center.
    [[nodiscard]] double cancellation_ratio() const { return outer.radius / inner.radius; }
};

/// Instantaneous field B(point) * cos(omega_trap t).
Vec3 trap_field(const TrapFieldModel& model, const Vec3& point, double t,
                const Constants& c = constants());

/// Amplitude field B1(point) (the cos = 1 snapshot).
Vec3 trap_field_amplitude(const TrapFieldModel& model, const Vec3& point,
                          const Constants& c = constants());

/// Curvatures d^2 B_{1,z} / dx_i^2 of the drive-field amplitude at the trap
/// center, signed. Consumers of the stability formulas take magnitudes.
struct CurvatureSet {
    double bpp_x = 0.0;  // [T/m^2]
    double bpp_y = 0.0;
    double bpp_z = 0.0;
    double i_trap = 0.0;      // current the values correspond to [A]
    double omega_trap = 0.0;  // drive angular frequency [rad/s]
    bool fit_warning = false;  // parabola-fit residual above threshold

    [[nodiscard]] CurvatureSet scaled_to_current(double new_i_trap) const;

    [[nodiscard]] std::string to_json() const;
    static CurvatureSet from_json(const std::string& text);
    static CurvatureSet from_json_file(const std::string& path);
};

/// Samples the amplitude field along each axis through the trap center over
/// +-half_range and fits a parabola (Simpson-weighted least squares).
/// n_samples must be odd and >= 21.
CurvatureSet extract_curvatures(const TrapFieldModel& model, double half_range = 15e-6,
                                int n_samples = 41, const Constants& c = constants());

/// External bias coil, modeled as N windings spread uniformly over the axial
/// extent, with its lower face a standoff z0 from the trap center.
struct BiasCoil {
    int windings = 835;
    double mean_radius = 13e-3;   // [m]
    double axial_extent = 13e-3;  // [m]
    double standoff = 8.2e-3;     // z0 [m]
    double current = 0.145;       // I_B0 [A]

    BiasCoil() = default;
    BiasCoil(int windings_, double mean_radius_m, double axial_extent_m, double standoff_m,
             double current_a);
};

/// Axial field and gradient of the geometric coil model at distance z below
/// the coil's lower face. The gradient sign convention is d B0 / d z_lab with
/// z_lab pointing from the trap toward the coil, so it is positive (the field
/// grows toward the coil).
struct CoilField {
    double b0;        // [T]
    double gradient;  // [T/m]
};
CoilField coil_field_and_gradient(const BiasCoil& coil, double z, const Constants& c = constants());

/// Linear calibration anchor: measured (B0, dB0/dz) at a reference current,
/// both scaling linearly with current.
struct CoilAnchor {
    double i_ref = 0.145;     // [A]
    double b0_ref = 1.8e-3;   // [T]
    double grad_ref = 0.19;   // [T/m]

    [[nodiscard]] double b0(double current) const { return b0_ref * current / i_ref; }
    [[nodiscard]] double gradient(double current) const { return grad_ref * current / i_ref; }
};

/// Coil current that levitates the particle: mu_z B0'(i) = m g, i.e. the
/// required gradient is mu0 rho_m g / B_sat. Throws std::domain_error for
/// non-positive bsat.
double levitation_current(const CoilAnchor& anchor, const Particle& p,
                          const Constants& c = constants());

/// The gradient itself, mu0 rho_m g / B_sat [T/m].
double levitation_gradient(const Particle& p, const Constants& c = constants());

}  // namespace maglev::fields
