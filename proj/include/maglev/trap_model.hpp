#pragma once

#include "maglev/constants.hpp"
#include "maglev/fields.hpp"
#include "maglev/particle.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace maglev::trap {

enum class Regime { secular, nonsecular_stable, unstable };

std::string to_string(Regime r);

/// Dimensionless drive-strength parameters q_i = 2 |B''_i| B_sat /
/// (mu0 rho_m Omega^2), classified against the secular bound 0.4 and the
/// Mathieu stability boundary 0.908.
struct StabilityParams {
    double q_x = 0.0;
    double q_y = 0.0;
    double q_z = 0.0;
    Regime regime = Regime::secular;

    [[nodiscard]] double max_q() const;
};

inline constexpr double kSecularBound = 0.4;
inline constexpr double kMathieuBoundary = 0.908;
/// Heuristic stand-in for the angular-stability requirement
/// omega_lib >> omega_i.
inline constexpr double kAngularStabilityFactor = 5.0;

struct ModeSet {
    double omega_x = 0.0;    // [rad/s]
    double omega_y = 0.0;
    double omega_z = 0.0;
    double omega_lib = 0.0;  // [rad/s]; 0 when no bias field given
    double omega_trap = 0.0;

    /// omega_lib > 5 * max(omega_i)
    [[nodiscard]] bool angular_stability_ok() const;
};

/// Raised when mode formulas are evaluated in the unstable regime; carries
/// the offending q values.
class StabilityError : public std::runtime_error {
public:
    StabilityError(const StabilityParams& sp);
    StabilityParams params;
};

/// Per-axis remanent fields, for when the three mode families are analyzed
/// with independently fitted B_sat values.
struct BsatPerAxis {
    double x, y, z;
};

StabilityParams stability_params(const fields::CurvatureSet& curv, const Particle& p,
                                 double omega_trap, const Constants& c = constants());
StabilityParams stability_params(const fields::CurvatureSet& curv, const BsatPerAxis& bsat,
                                 double density, double omega_trap,
                                 const Constants& c = constants());

/// omega_i = q_i Omega / (2 sqrt(2)); throws StabilityError when unstable.
std::array<double, 3> translational_modes(const StabilityParams& sp, double omega_trap);

/// omega_lib = sqrt(5 B0 B_sat / (2 mu0 rho_m a^2)) for a solid sphere.
double libration_mode(double b0, const Particle& p, const Constants& c = constants());

/// Pseudo-potential of the quadratic field model,
/// U_i(x) = (mu_z B''_i x)^2 / (4 m Omega^2), evaluated per axis.
std::vector<double> pseudo_potential(const fields::CurvatureSet& curv, const Particle& p,
                                     double omega_trap, int axis,
                                     const std::vector<double>& positions,
                                     const Constants& c = constants());

/// U_lib(theta) = mu B0 (1 - cos theta), zero-referenced at theta = 0.
double libration_potential(double theta, double b0, const Particle& p,
                           const Constants& c = constants());

/// One predicted spectral line |m Omega +- n omega| with its origin.
struct MicromotionLine {
    double freq_hz;
    int m;             // drive harmonic order
    int n;             // secular harmonic order
    int sign;          // +1 or -1 (meaningless when n = 0)
    std::string mode;  // "x", "y", "z", "lib", or "drive" for pure m Omega
    int rank;          // amplitude ordering hint: increasing n + m
};

/// Sorted, de-duplicated, non-negative line list for n <= n_max, m <= m_max.
std::vector<MicromotionLine> micromotion_lines(const ModeSet& modes, int n_max, int m_max);

/// All modes at once; the bias-coil inputs are optional (omega_lib = 0
/// when i_b0 = 0).
struct TrapConfig {
    fields::CurvatureSet curvatures;
    double omega_trap;  // [rad/s]
    double i_trap;      // [A]
    std::optional<BsatPerAxis> bsat_per_axis;  // defaults to particle bsat everywhere
    double i_b0 = 0.0;                         // bias coil current [A]
    fields::CoilAnchor coil_anchor{};
};

ModeSet compute_modes(const TrapConfig& cfg, const Particle& p, const Constants& c = constants());

/// One row of a parameter sweep.
struct SweepRow {
    double value;  // swept parameter value
    double f_x, f_y, f_z, f_lib;  // [Hz]
    double max_q;
    bool unstable;
};

struct SweepResult {
    std::string parameter;  // "i_trap", "i_b0", "omega_trap"
    std::vector<SweepRow> rows;
    // log-log slopes over the stable rows
    double exponent_f_x = 0.0, exponent_f_y = 0.0, exponent_f_z = 0.0, exponent_f_lib = 0.0;
    bool any_unstable = false;
};

SweepResult sweep_modes(const std::string& parameter, const std::vector<double>& grid,
                        const TrapConfig& base, const Particle& p,
                        const Constants& c = constants());

/// Libration-sweep arithmetic: C = delta_omega / (sqrt(i_f) - sqrt(i_i)),
/// omega_lib(i_i) = C sqrt(i_i), and the remanent field recovered from the
/// coil anchor.
struct LibrationSweepResult {
    double c_coeff;        // [rad/s/sqrt(A)]
    double omega_lib_i;    // omega_lib at i_initial [rad/s]
    double bsat;           // [T]
};

LibrationSweepResult bsat_from_libration_sweep(double delta_omega, double i_initial,
                                               double i_final, const Particle& p,
                                               const fields::CoilAnchor& anchor,
                                               const Constants& c = constants());

}  // namespace maglev::trap
