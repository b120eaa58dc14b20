#include "maglev/dynamics.hpp"

#include "maglev/dissipation.hpp"
#include "maglev/util.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maglev::dynamics {

namespace {

/// d B_{1,z} / d x_i of the amplitude field by central differences.
std::array<double, 3> field_gradient_bz(const fields::TrapFieldModel& model,
                                        const std::array<double, 3>& r, const Constants& c) {
    const double h = model.inner.radius * 1e-5;
    std::array<double, 3> g{};
    for (int i = 0; i < 3; ++i) {
        auto rp = r, rm = r;
        rp[static_cast<std::size_t>(i)] += h;
        rm[static_cast<std::size_t>(i)] -= h;
        g[static_cast<std::size_t>(i)] =
            (fields::trap_field_amplitude(model, rp, c)[2] -
             fields::trap_field_amplitude(model, rm, c)[2]) /
            (2.0 * h);
    }
    return g;
}

}  // namespace

Derivative equations_of_motion(const DynamicState& s, double t, const PhysicsSetup& phys,
                               bool include_damping, double gamma_com, double gamma_lib,
                               const Constants& c) {
    const double m = phys.particle.mass();
    const double inertia = phys.particle.moment_of_inertia();
    const double mu = phys.particle.dipole_moment(c);
    const double phase = phys.drive_on ? std::cos(phys.omega_trap * t) : 0.0;

    Derivative d{};
    d.v = s.v;
    d.theta_dot = s.theta_dot;

    double torque_drive = 0.0;
    if (phys.drive == DriveModel::full_field && phys.field_model) {
        const auto grad = field_gradient_bz(*phys.field_model, s.r, c);
        for (int i = 0; i < 3; ++i)
            d.a[static_cast<std::size_t>(i)] =
                mu * grad[static_cast<std::size_t>(i)] * phase / m;
        const auto b1 = fields::trap_field_amplitude(*phys.field_model, s.r, c);
        // dipole tipped by theta in the x-z plane: tau_y = mu (B_x cos - B_z sin)
        torque_drive = mu * phase * (b1[0] * std::cos(s.theta) - b1[2] * std::sin(s.theta));
    } else {
        d.a[0] = mu * phys.curvatures.bpp_x * s.r[0] * phase / m;
        d.a[1] = mu * phys.curvatures.bpp_y * s.r[1] * phase / m;
        d.a[2] = mu * phys.curvatures.bpp_z * s.r[2] * phase / m;
    }

    d.a[2] += mu * phys.b0_gradient / m;
    if (phys.gravity) d.a[2] -= c.g_accel;

    d.theta_ddot = (-mu * phys.b0 * std::sin(s.theta) + torque_drive) / inertia;

    if (include_damping) {
        for (int i = 0; i < 3; ++i) d.a[static_cast<std::size_t>(i)] -= gamma_com * s.v[static_cast<std::size_t>(i)];
        d.theta_ddot -= gamma_lib * s.theta_dot;
    }
    return d;
}

namespace {

DynamicState advance_state(const DynamicState& s, const Derivative& d, double dt) {
    DynamicState out = s;
    for (int i = 0; i < 3; ++i) {
        out.r[static_cast<std::size_t>(i)] += dt * d.v[static_cast<std::size_t>(i)];
        out.v[static_cast<std::size_t>(i)] += dt * d.a[static_cast<std::size_t>(i)];
    }
    out.theta += dt * d.theta_dot;
    out.theta_dot += dt * d.theta_ddot;
    return out;
}

DynamicState rk4_step(const DynamicState& s, double t, double dt, const PhysicsSetup& phys,
                      bool damping, double gc, double gl, const Constants& c) {
    const auto k1 = equations_of_motion(s, t, phys, damping, gc, gl, c);
    const auto k2 = equations_of_motion(advance_state(s, k1, 0.5 * dt), t + 0.5 * dt, phys,
                                        damping, gc, gl, c);
    const auto k3 = equations_of_motion(advance_state(s, k2, 0.5 * dt), t + 0.5 * dt, phys,
                                        damping, gc, gl, c);
    const auto k4 = equations_of_motion(advance_state(s, k3, dt), t + dt, phys, damping, gc, gl, c);

    DynamicState out = s;
    for (int i = 0; i < 3; ++i) {
        const auto u = static_cast<std::size_t>(i);
        out.r[u] += dt / 6.0 * (k1.v[u] + 2.0 * k2.v[u] + 2.0 * k3.v[u] + k4.v[u]);
        out.v[u] += dt / 6.0 * (k1.a[u] + 2.0 * k2.a[u] + 2.0 * k3.a[u] + k4.a[u]);
    }
    out.theta += dt / 6.0 * (k1.theta_dot + 2.0 * k2.theta_dot + 2.0 * k3.theta_dot + k4.theta_dot);
    out.theta_dot +=
        dt / 6.0 * (k1.theta_ddot + 2.0 * k2.theta_ddot + 2.0 * k3.theta_ddot + k4.theta_ddot);
    return out;
}

DynamicState semi_implicit_step(const DynamicState& s, double t, double dt,
                                const PhysicsSetup& phys, bool damping, double gc, double gl,
                                const Constants& c) {
    const auto d = equations_of_motion(s, t, phys, damping, gc, gl, c);
    DynamicState out = s;
    for (int i = 0; i < 3; ++i) {
        const auto u = static_cast<std::size_t>(i);
        out.v[u] += dt * d.a[u];
        out.r[u] += dt * out.v[u];
    }
    out.theta_dot += dt * d.theta_ddot;
    out.theta += dt * out.theta_dot;
    return out;
}

bool state_finite(const DynamicState& s) {
    for (const double v : s.r)
        if (!std::isfinite(v)) return false;
    for (const double v : s.v)
        if (!std::isfinite(v)) return false;
    return std::isfinite(s.theta) && std::isfinite(s.theta_dot);
}

}  // namespace

Trajectory integrate(const SimConfig& cfg, const DynamicState& initial,
                     const PhysicsSetup& phys_in, const Constants& c) {
    if (!(phys_in.omega_trap > 0.0))
        throw std::invalid_argument("integrate: omega_trap must be > 0");
    PhysicsSetup phys = phys_in;
    phys.drive = cfg.drive;
    const double dt_max = 2.0 * std::numbers::pi / (20.0 * phys.omega_trap);
    if (!(cfg.dt > 0.0) || cfg.dt >= dt_max)
        throw std::invalid_argument("integrate: dt must give >= 20 steps per drive period");
    if (cfg.store_every < 1) throw std::invalid_argument("integrate: store_every must be >= 1");

    double gamma_com = 0.0, gamma_lib = 0.0;
    if (cfg.include_damping || cfg.include_noise) {
        gamma_com = dissipation::gamma_translational(phys.particle, phys.gas, c);
        gamma_lib = dissipation::gamma_librational(phys.particle, phys.gas, c);
    }

    const auto n_steps = static_cast<std::size_t>(std::llround(cfg.duration / cfg.dt));
    Trajectory traj;
    traj.dt = cfg.dt * cfg.store_every;
    traj.omega_trap = phys.omega_trap;
    traj.t.reserve(n_steps / cfg.store_every + 1);
    traj.states.reserve(n_steps / cfg.store_every + 1);

    NormalSampler noise(cfg.seed);
    const double m = phys.particle.mass();
    const double inertia = phys.particle.moment_of_inertia();
    const double kick_v =
        cfg.include_noise ? std::sqrt(2.0 * gamma_com * c.kB * phys.gas.t_bath * cfg.dt / m) : 0.0;
    const double kick_w = cfg.include_noise
                              ? std::sqrt(2.0 * gamma_lib * c.kB * phys.gas.t_bath * cfg.dt / inertia)
                              : 0.0;

    DynamicState s = initial;
    traj.t.push_back(0.0);
    traj.states.push_back(s);
    for (std::size_t step = 1; step <= n_steps; ++step) {
        const double t = static_cast<double>(step - 1) * cfg.dt;
        s = cfg.scheme == Scheme::rk4
                ? rk4_step(s, t, cfg.dt, phys, cfg.include_damping, gamma_com, gamma_lib, c)
                : semi_implicit_step(s, t, cfg.dt, phys, cfg.include_damping, gamma_com, gamma_lib,
                                     c);
        if (cfg.include_noise) {
            for (int i = 0; i < 3; ++i) s.v[static_cast<std::size_t>(i)] += kick_v * noise();
            s.theta_dot += kick_w * noise();
        }
        if (!state_finite(s))
            throw std::runtime_error("integrate: non-finite state at step " + std::to_string(step));
        const double r2 = s.r[0] * s.r[0] + s.r[1] * s.r[1] + s.r[2] * s.r[2];
        if (step % static_cast<std::size_t>(cfg.store_every) == 0) {
            traj.t.push_back(static_cast<double>(step) * cfg.dt);
            traj.states.push_back(s);
        }
        if (r2 >= cfg.escape_radius * cfg.escape_radius) {
            traj.escaped = true;
            traj.escape_step = step;
            break;
        }
    }
    return traj;
}

double total_energy(const DynamicState& s, const PhysicsSetup& phys, const Constants& c) {
    const double m = phys.particle.mass();
    const double inertia = phys.particle.moment_of_inertia();
    const double mu = phys.particle.dipole_moment(c);
    const double kin = 0.5 * m * (s.v[0] * s.v[0] + s.v[1] * s.v[1] + s.v[2] * s.v[2]) +
                       0.5 * inertia * s.theta_dot * s.theta_dot;
    double pot = mu * phys.b0 * (1.0 - std::cos(s.theta));
    pot -= mu * phys.b0_gradient * s.r[2];
    if (phys.gravity) pot += m * c.g_accel * s.r[2];
    return kin + pot;
}

std::vector<double> Trajectory::column(int which) const {
    std::vector<double> out(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& s = states[i];
        switch (which) {
            case 0: out[i] = s.r[0]; break;
            case 1: out[i] = s.r[1]; break;
            case 2: out[i] = s.r[2]; break;
            case 3: out[i] = s.v[0]; break;
            case 4: out[i] = s.v[1]; break;
            case 5: out[i] = s.v[2]; break;
            case 6: out[i] = s.theta; break;
            case 7: out[i] = s.theta_dot; break;
            default: throw std::invalid_argument("Trajectory::column: index out of range");
        }
    }
    return out;
}

analysis::TimeSeries synthetic_detector_trace(const Trajectory& traj, const DetectorModel& det) {
    analysis::TimeSeries ts;
    ts.sample_rate = traj.sample_rate();
    ts.source = "synthetic-detector";
    ts.seed = det.seed;
    ts.samples.resize(traj.states.size());
    NormalSampler noise(det.seed);
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const auto& s = traj.states[i];
        const std::array<double, 4> u{s.r[0], s.r[1], s.r[2], s.theta};
        double val = det.offset;
        for (int k = 0; k < 4; ++k) {
            const auto j = static_cast<std::size_t>(k);
            val += det.linear[j] * u[j] + det.quadratic[j] * u[j] * u[j];
        }
        if (det.noise_floor > 0.0) val += det.noise_floor * noise();
        ts.samples[i] = val;
    }
    return ts;
}

std::array<std::optional<double>, 4> secular_frequency_measure(const Trajectory& traj) {
    if (traj.states.size() < (1u << 14))
        throw std::invalid_argument("secular_frequency_measure: need >= 2^14 samples");
    const double f_limit = traj.omega_trap / (2.0 * std::numbers::pi) / 2.0;

    std::array<std::optional<double>, 4> out;
    const int cols[4] = {0, 1, 2, 6};
    for (int k = 0; k < 4; ++k) {
        analysis::TimeSeries ts;
        ts.sample_rate = traj.sample_rate();
        ts.samples = traj.column(cols[k]);
        const auto spec = analysis::psd_welch(ts, 0, 0.0, "hann");

        // peak must clear the in-band noise floor (median + 6 MAD)
        std::vector<double> band;
        std::size_t imax = 0;
        double vmax = -1.0;
        for (std::size_t i = 1; i + 1 < spec.freq.size() && spec.freq[i] < f_limit; ++i) {
            band.push_back(spec.psd[i]);
            if (spec.psd[i] > vmax) {
                vmax = spec.psd[i];
                imax = i;
            }
        }
        if (band.size() < 8 || imax == 0) continue;
        std::vector<double> sorted = band;
        std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2),
                         sorted.end());
        const double med = sorted[sorted.size() / 2];
        for (auto& v : sorted) v = std::abs(v - med);
        std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2),
                         sorted.end());
        const double mad = sorted[sorted.size() / 2];
        if (vmax <= med + 6.0 * mad) continue;
        out[static_cast<std::size_t>(k)] =
            analysis::peak_frequency_interpolated(spec, spec.resolution, f_limit);
    }
    return out;
}

}  // namespace maglev::dynamics
