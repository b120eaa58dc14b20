#pragma once

#include "maglev/fields.hpp"
#include "maglev/particle.hpp"
#include "maglev/spin_coupling.hpp"
#include "maglev/thermo.hpp"
#include "maglev/trap_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace maglev {

/// Full run configuration. Snake_case keys with explicit units
/// (radius_um, pressure_mbar, ...); unknown keys are rejected with the
/// offending path.
struct RunConfig {
    // particle
    double radius_um = 6.5;
    double density_kg_m3 = 3.6e3;
    double bsat_T = 0.45;
    std::optional<std::array<double, 3>> bsat_xyz_T;  // per-axis override
    double zeta_th_per_K = -1.3e-3;
    double sigma_el_S_per_m = 0.67e6;
    double alpha_abs = 0.184;
    double epsilon_em = 0.184;
    double t0_K = 300.0;

    // gas
    double pressure_mbar = 1.0;
    double t_bath_K = 300.0;
    double m_gas_kg = 4.81e-26;
    double d_m_nm = 0.372;
    double c_acc = 0.65;

    // trap
    double omega_trap_Hz = 2485.0;
    double i_trap_A = 0.163;
    double xi = 2.0;
    std::string curvature_source = "file";  // "file" | "analytic"
    std::string curvature_file = "si_curvatures.json";
    double inner_radius_um = 85.0;
    double outer_radius_um = 170.0;
    double fit_half_range_um = 15.0;

    // coil
    double anchor_current_A = 0.145;
    double anchor_b0_mT = 1.8;
    double anchor_gradient_T_per_m = 0.19;
    double i_b0_A = 0.100;
    double standoff_mm = 8.2;
    int windings = 835;
    double mean_radius_mm = 13.0;
    double axial_extent_mm = 13.0;

    // optical
    double p_laser_W = 200e-9;
    double waist_um = 10.0;
    double lambda_nm = 633.0;

    // spin proposal (its own magnet; defaults are the small bulk-NdFeB
    // sphere of the coupling estimates)
    double spin_distance_um = 0.7;
    double spin_t2_star_ms = 0.5;
    double spin_gamma_lib_mHz = 1.0;
    double spin_t_bath_K = 4.0;
    double spin_b0_mT = 5.0;
    double spin_radius_um = 0.25;
    double spin_bsat_T = 1.4;
    double spin_density_kg_m3 = 7.4e3;

    // output
    std::string out_dir = ".";
    std::string format = "csv";  // "csv" | "json"
    std::uint64_t seed = 1;

    // --- materialized module objects ---
    [[nodiscard]] Particle particle() const;
    [[nodiscard]] Particle spin_particle() const;
    [[nodiscard]] GasEnvironment gas() const;
    [[nodiscard]] fields::TrapFieldModel trap_field_model() const;
    [[nodiscard]] fields::CurvatureSet curvatures() const;  // per curvature_source
    [[nodiscard]] fields::CoilAnchor coil_anchor() const;
    [[nodiscard]] fields::BiasCoil bias_coil() const;
    [[nodiscard]] trap::TrapConfig trap_config() const;
    [[nodiscard]] thermo::OpticalParams optical() const;
    [[nodiscard]] spin::SpinConfig spin_config() const;

    /// Defaults overlaid with the JSON file. Parse errors carry line:column;
    /// unknown keys and type errors carry the JSON path.
    static RunConfig from_json_file(const std::string& path);
    static RunConfig from_json_text(const std::string& text, const std::string& origin = "<config>");

    [[nodiscard]] std::string to_json() const;
};

/// Schema plus physics sanity, without running anything.
struct ValidationReport {
    bool ok = true;
    std::vector<std::string> errors;
    std::vector<std::string> notes;
    std::string regime;
    double max_q = 0.0;
    double knudsen = 0.0;
    bool lib_damping_valid = false;
    bool angular_stability = false;
};

ValidationReport validate_config(const RunConfig& cfg);

/// Resolves a data file: absolute or CWD-relative as given, else relative to
/// the bundled data directory.
std::string resolve_data_file(const std::string& name);

}  // namespace maglev
