#include "maglev/run_config.hpp"

#include "maglev/dissipation.hpp"
#include "maglev/units.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace maglev {

using nlohmann::json;

namespace {

/// json::parse reports a byte offset; convert to line:column.
[[noreturn]] void rethrow_with_location(const json::parse_error& e, const std::string& text,
                                        const std::string& origin) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::ostringstream msg;
    msg << origin << ":" << line << ":" << col << ": " << e.what();
    throw std::runtime_error(msg.str());
}

class SectionReader {
public:
    SectionReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

    void get(const char* key, double& out) {
        if (auto it = j_.find(key); it != j_.end()) {
            if (!it->is_number())
                throw std::runtime_error(path_ + "." + key + ": expected a number");
            out = it->get<double>();
            seen_.insert(key);
        }
    }
    void get(const char* key, int& out) {
        if (auto it = j_.find(key); it != j_.end()) {
            if (!it->is_number_integer())
                throw std::runtime_error(path_ + "." + key + ": expected an integer");
            out = it->get<int>();
            seen_.insert(key);
        }
    }
    void get(const char* key, std::uint64_t& out) {
        if (auto it = j_.find(key); it != j_.end()) {
            if (!it->is_number_unsigned() && !it->is_number_integer())
                throw std::runtime_error(path_ + "." + key + ": expected an integer");
            out = it->get<std::uint64_t>();
            seen_.insert(key);
        }
    }
    void get(const char* key, std::string& out) {
        if (auto it = j_.find(key); it != j_.end()) {
            if (!it->is_string())
                throw std::runtime_error(path_ + "." + key + ": expected a string");
            out = it->get<std::string>();
            seen_.insert(key);
        }
    }
    void get(const char* key, std::optional<std::array<double, 3>>& out) {
        if (auto it = j_.find(key); it != j_.end()) {
            if (!it->is_array() || it->size() != 3)
                throw std::runtime_error(path_ + "." + key + ": expected an array of 3 numbers");
            out = std::array<double, 3>{(*it)[0].get<double>(), (*it)[1].get<double>(),
                                        (*it)[2].get<double>()};
            seen_.insert(key);
        }
    }

    /// Every key present must have been consumed.
    void reject_unknown() const {
        for (const auto& [key, value] : j_.items()) {
            if (!seen_.contains(key))
                throw std::runtime_error("unknown config key: " + path_ + "." + key);
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        rethrow_with_location(e, text, origin);
    }
    if (!root.is_object()) throw std::runtime_error(origin + ": config root must be an object");

    RunConfig cfg;
    std::set<std::string> known_sections = {"particle", "gas",  "trap",   "coil",
                                            "optical",  "spin", "output", "seed"};
    for (const auto& [key, value] : root.items()) {
        if (!known_sections.contains(key))
            throw std::runtime_error("unknown config section: " + key);
    }

    if (root.contains("particle")) {
        SectionReader s(root["particle"], "particle");
        s.get("radius_um", cfg.radius_um);
        s.get("density_kg_m3", cfg.density_kg_m3);
        s.get("bsat_T", cfg.bsat_T);
        s.get("bsat_xyz_T", cfg.bsat_xyz_T);
        s.get("zeta_th_per_K", cfg.zeta_th_per_K);
        s.get("sigma_el_S_per_m", cfg.sigma_el_S_per_m);
        s.get("alpha_abs", cfg.alpha_abs);
        s.get("epsilon_em", cfg.epsilon_em);
        s.get("t0_K", cfg.t0_K);
        s.reject_unknown();
    }
    if (root.contains("gas")) {
        SectionReader s(root["gas"], "gas");
        s.get("pressure_mbar", cfg.pressure_mbar);
        s.get("t_bath_K", cfg.t_bath_K);
        s.get("m_gas_kg", cfg.m_gas_kg);
        s.get("d_m_nm", cfg.d_m_nm);
        s.get("c_acc", cfg.c_acc);
        s.reject_unknown();
    }
    if (root.contains("trap")) {
        SectionReader s(root["trap"], "trap");
        s.get("omega_trap_Hz", cfg.omega_trap_Hz);
        s.get("i_trap_A", cfg.i_trap_A);
        s.get("xi", cfg.xi);
        s.get("curvature_source", cfg.curvature_source);
        s.get("curvature_file", cfg.curvature_file);
        s.get("inner_radius_um", cfg.inner_radius_um);
        s.get("outer_radius_um", cfg.outer_radius_um);
        s.get("fit_half_range_um", cfg.fit_half_range_um);
        s.reject_unknown();
        if (cfg.curvature_source != "file" && cfg.curvature_source != "analytic")
            throw std::runtime_error("trap.curvature_source must be \"file\" or \"analytic\"");
    }
    if (root.contains("coil")) {
        SectionReader s(root["coil"], "coil");
        s.get("anchor_current_A", cfg.anchor_current_A);
        s.get("anchor_b0_mT", cfg.anchor_b0_mT);
        s.get("anchor_gradient_T_per_m", cfg.anchor_gradient_T_per_m);
        s.get("i_b0_A", cfg.i_b0_A);
        s.get("standoff_mm", cfg.standoff_mm);
        s.get("windings", cfg.windings);
        s.get("mean_radius_mm", cfg.mean_radius_mm);
        s.get("axial_extent_mm", cfg.axial_extent_mm);
        s.reject_unknown();
    }
    if (root.contains("optical")) {
        SectionReader s(root["optical"], "optical");
        s.get("p_laser_W", cfg.p_laser_W);
        s.get("waist_um", cfg.waist_um);
        s.get("lambda_nm", cfg.lambda_nm);
        s.reject_unknown();
        if (!(cfg.waist_um > 0.0))
            throw std::runtime_error("optical.waist_um: must be > 0 (key required; the beam "
                                     "waist has no measured value)");
    }
    if (root.contains("spin")) {
        SectionReader s(root["spin"], "spin");
        s.get("distance_um", cfg.spin_distance_um);
        s.get("t2_star_ms", cfg.spin_t2_star_ms);
        s.get("gamma_lib_mHz", cfg.spin_gamma_lib_mHz);
        s.get("t_bath_K", cfg.spin_t_bath_K);
        s.get("b0_mT", cfg.spin_b0_mT);
        s.get("radius_um", cfg.spin_radius_um);
        s.get("bsat_T", cfg.spin_bsat_T);
        s.get("density_kg_m3", cfg.spin_density_kg_m3);
        s.reject_unknown();
    }
    if (root.contains("output")) {
        SectionReader s(root["output"], "output");
        s.get("directory", cfg.out_dir);
        s.get("format", cfg.format);
        s.reject_unknown();
        if (cfg.format != "csv" && cfg.format != "json")
            throw std::runtime_error("output.format must be \"csv\" or \"json\"");
    }
    if (root.contains("seed")) {
        if (!root["seed"].is_number_integer() && !root["seed"].is_number_unsigned())
            throw std::runtime_error("seed: expected an integer");
        cfg.seed = root["seed"].get<std::uint64_t>();
    }
    return cfg;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return from_json_text(ss.str(), path);
}

std::string RunConfig::to_json() const {
    nlohmann::ordered_json j;
    auto& p = j["particle"];
    p["radius_um"] = radius_um;
    p["density_kg_m3"] = density_kg_m3;
    p["bsat_T"] = bsat_T;
    if (bsat_xyz_T) p["bsat_xyz_T"] = *bsat_xyz_T;
    p["zeta_th_per_K"] = zeta_th_per_K;
    p["sigma_el_S_per_m"] = sigma_el_S_per_m;
    p["alpha_abs"] = alpha_abs;
    p["epsilon_em"] = epsilon_em;
    p["t0_K"] = t0_K;
    auto& g = j["gas"];
    g["pressure_mbar"] = pressure_mbar;
    g["t_bath_K"] = t_bath_K;
    g["m_gas_kg"] = m_gas_kg;
    g["d_m_nm"] = d_m_nm;
    g["c_acc"] = c_acc;
    auto& t = j["trap"];
    t["omega_trap_Hz"] = omega_trap_Hz;
    t["i_trap_A"] = i_trap_A;
    t["xi"] = xi;
    t["curvature_source"] = curvature_source;
    t["curvature_file"] = curvature_file;
    t["inner_radius_um"] = inner_radius_um;
    t["outer_radius_um"] = outer_radius_um;
    t["fit_half_range_um"] = fit_half_range_um;
    auto& co = j["coil"];
    co["anchor_current_A"] = anchor_current_A;
    co["anchor_b0_mT"] = anchor_b0_mT;
    co["anchor_gradient_T_per_m"] = anchor_gradient_T_per_m;
    co["i_b0_A"] = i_b0_A;
    co["standoff_mm"] = standoff_mm;
    co["windings"] = windings;
    co["mean_radius_mm"] = mean_radius_mm;
    co["axial_extent_mm"] = axial_extent_mm;
    auto& o = j["optical"];
    o["p_laser_W"] = p_laser_W;
    o["waist_um"] = waist_um;
    o["lambda_nm"] = lambda_nm;
    auto& sp = j["spin"];
    sp["distance_um"] = spin_distance_um;
    sp["t2_star_ms"] = spin_t2_star_ms;
    sp["gamma_lib_mHz"] = spin_gamma_lib_mHz;
    sp["t_bath_K"] = spin_t_bath_K;
    sp["b0_mT"] = spin_b0_mT;
    sp["radius_um"] = spin_radius_um;
    sp["bsat_T"] = spin_bsat_T;
    sp["density_kg_m3"] = spin_density_kg_m3;
    auto& out = j["output"];
    out["directory"] = out_dir;
    out["format"] = format;
    j["seed"] = seed;
    return j.dump(2) + "\n";
}

Particle RunConfig::particle() const {
    return Particle(units::um_to_m(radius_um), density_kg_m3, bsat_T, zeta_th_per_K,
                    sigma_el_S_per_m, alpha_abs, epsilon_em, t0_K);
}

Particle RunConfig::spin_particle() const {
    return Particle(units::um_to_m(spin_radius_um), spin_density_kg_m3, spin_bsat_T);
}

GasEnvironment RunConfig::gas() const {
    return GasEnvironment(units::mbar_to_pa(pressure_mbar), t_bath_K, m_gas_kg,
                          units::nm_to_m(d_m_nm), c_acc);
}

fields::TrapFieldModel RunConfig::trap_field_model() const {
    return fields::TrapFieldModel(units::um_to_m(inner_radius_um), units::um_to_m(outer_radius_um),
                                  xi, units::hz_to_rad(omega_trap_Hz), i_trap_A);
}

fields::CurvatureSet RunConfig::curvatures() const {
    if (curvature_source == "analytic") {
        auto curv = fields::extract_curvatures(trap_field_model(),
                                               units::um_to_m(fit_half_range_um));
        return curv;
    }
    auto curv = fields::CurvatureSet::from_json_file(resolve_data_file(curvature_file));
    return curv;
}

fields::CoilAnchor RunConfig::coil_anchor() const {
    return fields::CoilAnchor{anchor_current_A, units::mt_to_t(anchor_b0_mT),
                              anchor_gradient_T_per_m};
}

fields::BiasCoil RunConfig::bias_coil() const {
    return fields::BiasCoil(windings, units::mm_to_m(mean_radius_mm),
                            units::mm_to_m(axial_extent_mm), units::mm_to_m(standoff_mm), i_b0_A);
}

trap::TrapConfig RunConfig::trap_config() const {
    trap::TrapConfig t;
    t.curvatures = curvatures();
    t.omega_trap = units::hz_to_rad(omega_trap_Hz);
    t.i_trap = i_trap_A;
    if (bsat_xyz_T)
        t.bsat_per_axis = trap::BsatPerAxis{(*bsat_xyz_T)[0], (*bsat_xyz_T)[1], (*bsat_xyz_T)[2]};
    t.i_b0 = i_b0_A;
    t.coil_anchor = coil_anchor();
    return t;
}

thermo::OpticalParams RunConfig::optical() const {
    return thermo::OpticalParams(p_laser_W, units::um_to_m(waist_um), units::nm_to_m(lambda_nm));
}

spin::SpinConfig RunConfig::spin_config() const {
    return spin::SpinConfig(units::um_to_m(spin_distance_um), spin_t2_star_ms * 1e-3,
                            units::hz_to_rad(spin_gamma_lib_mHz * 1e-3), spin_t_bath_K);
}

ValidationReport validate_config(const RunConfig& cfg) {
    ValidationReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.errors.push_back(msg);
    };
    try {
        const auto p = cfg.particle();
        const auto gas = cfg.gas();
        const auto tc = cfg.trap_config();
        const auto sp = trap::stability_params(
            tc.curvatures.scaled_to_current(tc.i_trap),
            tc.bsat_per_axis.value_or(trap::BsatPerAxis{p.bsat0, p.bsat0, p.bsat0}), p.density,
            tc.omega_trap);
        rep.max_q = sp.max_q();
        rep.regime = trap::to_string(sp.regime);
        if (sp.regime == trap::Regime::unstable)
            rep.notes.push_back("trap is in the unstable regime (max q = " +
                                std::to_string(rep.max_q) + ")");

        rep.knudsen = dissipation::knudsen_number(p, gas);
        rep.lib_damping_valid = rep.knudsen > 100.0;
        if (!rep.lib_damping_valid)
            rep.notes.push_back("Kn <= 100: librational gas-damping formula out of its regime");

        if (sp.regime != trap::Regime::unstable && cfg.i_b0_A > 0.0) {
            trap::ModeSet modes;
            const auto w = trap::translational_modes(sp, tc.omega_trap);
            modes.omega_x = w[0];
            modes.omega_y = w[1];
            modes.omega_z = w[2];
            modes.omega_lib = trap::libration_mode(tc.coil_anchor.b0(cfg.i_b0_A), p);
            rep.angular_stability = modes.angular_stability_ok();
            if (!rep.angular_stability)
                rep.notes.push_back("angular-stability margin omega_lib > 5 max(omega_i) not met");
        }

        if (cfg.curvature_source == "file")
            static_cast<void>(cfg.curvatures());  // check the file loads
    } catch (const std::exception& e) {
        fail(e.what());
    }
    return rep;
}

std::string resolve_data_file(const std::string& name) {
    namespace fs = std::filesystem;
    if (fs::exists(name)) return name;
    const fs::path bundled = fs::path(MAGLEV_DATA_DIR) / name;
    if (fs::exists(bundled)) return bundled.string();
    return name;  // let the open fail with the user's spelling
}

}  // namespace maglev
