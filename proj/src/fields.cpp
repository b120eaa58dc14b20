#include "maglev/fields.hpp"

#include "maglev/elliptic.hpp"
#include "maglev/fit.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace maglev::fields {

namespace {
constexpr double kFilamentGuard = 1e-12;  // [m]
}

CurrentLoop::CurrentLoop(double radius_m, double center_z_m, double current_a)
    : radius(radius_m), center_z(center_z_m), current(current_a) {
    if (!(radius > 0.0)) throw std::invalid_argument("loop radius must be > 0");
}

double loop_field_axial(const CurrentLoop& loop, double z, const Constants& c) {
    const double dz = z - loop.center_z;
    const double r2 = loop.radius * loop.radius;
    const double denom = std::pow(r2 + dz * dz, 1.5);
    return c.mu0 * loop.current * r2 / (2.0 * denom);
}

Vec3 loop_field(const CurrentLoop& loop, const Vec3& point, const Constants& c) {
    const double R = loop.radius;
    const double rho = std::hypot(point[0], point[1]);
    const double dz = point[2] - loop.center_z;

    if (std::hypot(rho - R, dz) < kFilamentGuard)
        throw std::domain_error("loop_field: point on the loop filament");

    // Near the axis the elliptic expressions are 0/0; use the axial expansion
    // B_rho = -(rho/2) dBz/dz, B_z = Bz(axis) - (rho^2/4) d2Bz/dz2, accurate
    // to (rho/R)^4 here.
    if (rho < 1e-4 * R) {
        const double r2 = R * R;
        const double u2 = r2 + dz * dz;
        const double pref = c.mu0 * loop.current * r2 / 2.0;
        const double bz0 = pref / std::pow(u2, 1.5);
        const double dbz = pref * (-3.0 * dz) / std::pow(u2, 2.5);
        const double d2bz = pref * (-3.0 / std::pow(u2, 2.5) + 15.0 * dz * dz / std::pow(u2, 3.5));
        const double brho = -0.5 * rho * dbz;
        const double bz = bz0 - 0.25 * rho * rho * d2bz;
        if (rho == 0.0) return {0.0, 0.0, bz};
        return {brho * point[0] / rho, brho * point[1] / rho, bz};
    }

    const double sum2 = (R + rho) * (R + rho) + dz * dz;
    const double diff2 = (R - rho) * (R - rho) + dz * dz;
    const double m = 4.0 * R * rho / sum2;
    const auto [K, E] = elliptic_ke(m);
    const double pref = c.mu0 * loop.current / (2.0 * std::numbers::pi * std::sqrt(sum2));
    const double bz = pref * (K + (R * R - rho * rho - dz * dz) / diff2 * E);
    const double brho = pref * (dz / rho) * (-K + (R * R + rho * rho + dz * dz) / diff2 * E);
    return {brho * point[0] / rho, brho * point[1] / rho, bz};
}

TrapFieldModel::TrapFieldModel(double inner_radius_m, double outer_radius_m, double xi_,
                               double omega_trap_rad_s, double i_trap_a)
    : inner(inner_radius_m, 0.0, i_trap_a),
      outer(outer_radius_m, 0.0, -xi_ * i_trap_a),
      xi(xi_),
      omega_trap(omega_trap_rad_s),
      i_trap(i_trap_a) {
    if (!(omega_trap > 0.0)) throw std::invalid_argument("omega_trap must be > 0");
}

Vec3 trap_field_amplitude(const TrapFieldModel& model, const Vec3& point, const Constants& c) {
    const Vec3 bi = loop_field(model.inner, point, c);
    const Vec3 bo = loop_field(model.outer, point, c);
    return {bi[0] + bo[0], bi[1] + bo[1], bi[2] + bo[2]};
}

Vec3 trap_field(const TrapFieldModel& model, const Vec3& point, double t, const Constants& c) {
    Vec3 b = trap_field_amplitude(model, point, c);
    const double phase = std::cos(model.omega_trap * t);
    for (auto& v : b) v *= phase;
    return b;
}

CurvatureSet CurvatureSet::scaled_to_current(double new_i_trap) const {
    if (!(i_trap != 0.0)) throw std::domain_error("CurvatureSet: reference current is zero");
    const double s = new_i_trap / i_trap;
    CurvatureSet out = *this;
    out.bpp_x *= s;
    out.bpp_y *= s;
    out.bpp_z *= s;
    out.i_trap = new_i_trap;
    return out;
}

std::string CurvatureSet::to_json() const {
    nlohmann::ordered_json j;
    j["bpp_x_T_per_m2"] = bpp_x;
    j["bpp_y_T_per_m2"] = bpp_y;
    j["bpp_z_T_per_m2"] = bpp_z;
    j["i_trap_A"] = i_trap;
    j["omega_trap_Hz"] = omega_trap / (2.0 * std::numbers::pi);
    return j.dump(2) + "\n";
}

CurvatureSet CurvatureSet::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    CurvatureSet out;
    out.bpp_x = j.at("bpp_x_T_per_m2").get<double>();
    out.bpp_y = j.at("bpp_y_T_per_m2").get<double>();
    out.bpp_z = j.at("bpp_z_T_per_m2").get<double>();
    out.i_trap = j.at("i_trap_A").get<double>();
    out.omega_trap = 2.0 * std::numbers::pi * j.at("omega_trap_Hz").get<double>();
    if (!std::isfinite(out.bpp_x) || !std::isfinite(out.bpp_y) || !std::isfinite(out.bpp_z))
        throw std::invalid_argument("CurvatureSet: non-finite curvature");
    return out;
}

CurvatureSet CurvatureSet::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open curvature file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

namespace {

/// Simpson coefficients (h/3)(1,4,2,...,4,1); n odd. Absolute scale cancels
/// in the weighted least squares, only the relative weights matter.
std::vector<double> simpson_weights(int n) {
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    w.front() = w.back() = 1.0;
    for (int i = 1; i + 1 < n; ++i) w[static_cast<std::size_t>(i)] = (i % 2 == 1) ? 4.0 : 2.0;
    return w;
}

}  // namespace

CurvatureSet extract_curvatures(const TrapFieldModel& model, double half_range, int n_samples,
                                const Constants& c) {
    if (!(half_range > 0.0)) throw std::invalid_argument("extract_curvatures: half_range must be > 0");
    if (n_samples < 21) throw std::invalid_argument("extract_curvatures: need >= 21 samples");
    if (n_samples % 2 == 0) ++n_samples;

    const auto weights = simpson_weights(n_samples);
    std::vector<double> xs(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i)
        xs[static_cast<std::size_t>(i)] =
            -half_range + 2.0 * half_range * i / (n_samples - 1);

    CurvatureSet out;
    out.i_trap = model.i_trap;
    out.omega_trap = model.omega_trap;

    double* const comps[3] = {&out.bpp_x, &out.bpp_y, &out.bpp_z};
    for (int axis = 0; axis < 3; ++axis) {
        std::vector<double> bz(xs.size());
        double bmax = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            Vec3 p{0.0, 0.0, 0.0};
            p[static_cast<std::size_t>(axis)] = xs[i];
            bz[i] = trap_field_amplitude(model, p, c)[2];
            bmax = std::max(bmax, std::abs(bz[i]));
        }
        const auto coef = polyfit(xs, bz, 2, weights);
        *comps[axis] = 2.0 * coef[2];

        double ss = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double fit = coef[0] + coef[1] * xs[i] + coef[2] * xs[i] * xs[i];
            ss += (bz[i] - fit) * (bz[i] - fit);
        }
        const double rel_rms = std::sqrt(ss / static_cast<double>(xs.size())) /
                               std::max(bmax, 1e-300);
        if (rel_rms > 1e-2) out.fit_warning = true;
    }
    return out;
}

BiasCoil::BiasCoil(int windings_, double mean_radius_m, double axial_extent_m, double standoff_m,
                   double current_a)
    : windings(windings_),
      mean_radius(mean_radius_m),
      axial_extent(axial_extent_m),
      standoff(standoff_m),
      current(current_a) {
    if (windings < 1) throw std::invalid_argument("coil windings must be >= 1");
    if (!(standoff > 0.0)) throw std::invalid_argument("coil standoff must be > 0");
    if (!(mean_radius > 0.0) || !(axial_extent > 0.0))
        throw std::invalid_argument("coil geometry must be positive");
}

CoilField coil_field_and_gradient(const BiasCoil& coil, double z, const Constants& c) {
    const double r2 = coil.mean_radius * coil.mean_radius;
    const int n = coil.windings;
    double b = 0.0;
    double db = 0.0;
    for (int j = 0; j < n; ++j) {
        // winding j sits (j+0.5)/n of the extent above the coil's lower face
        const double u = z + (j + 0.5) * coil.axial_extent / n;
        const double u2 = r2 + u * u;
        b += c.mu0 * coil.current * r2 / (2.0 * std::pow(u2, 1.5));
        db += c.mu0 * coil.current * r2 * (-3.0 * u) / (2.0 * std::pow(u2, 2.5));
    }
    // db/dz with z = distance from the coil; flip to the lab convention
    // (z_lab toward the coil), giving a positive gradient.
    return {b, -db};
}

double levitation_gradient(const Particle& p, const Constants& c) {
    if (!(p.bsat0 > 0.0)) throw std::domain_error("levitation_gradient: bsat must be > 0");
    return c.mu0 * p.density * c.g_accel / p.bsat0;
}

double levitation_current(const CoilAnchor& anchor, const Particle& p, const Constants& c) {
    const double grad_per_amp = anchor.grad_ref / anchor.i_ref;
    return levitation_gradient(p, c) / grad_per_amp;
}

}  // namespace maglev::fields
