#include "maglev/thermo.hpp"

#include "maglev/units.hpp"

#include <doctest.h>

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace maglev;
using namespace maglev::thermo;

namespace {
const Particle kRef(6.5e-6, 3.6e3, 0.45, -1.3e-3, 0.67e6, 0.184, 0.184, 300.0);

GasEnvironment air_at(double mbar) { return GasEnvironment(units::mbar_to_pa(mbar), 300.0); }
}  // namespace

TEST_CASE("absorbed power") {
    CHECK(absorbed_power(OpticalParams(1e-6, 10e-6), kRef) ==
          doctest::Approx(1.0496144608922397e-7).epsilon(1e-12));

    // wide-beam limit: geometric factor -> 2 a^2 / w^2
    const OpticalParams wide(1e-6, 500e-6);
    const double expect_wide = 0.184 * 2.0 * 6.5e-6 * 6.5e-6 / (500e-6 * 500e-6) * 1e-6;
    CHECK(absorbed_power(wide, kRef) == doctest::Approx(expect_wide).epsilon(1e-3));

    // tight-beam limit: factor -> 1
    const OpticalParams tight(1e-6, 0.5e-6);
    CHECK(absorbed_power(tight, kRef) == doctest::Approx(0.184 * 1e-6).epsilon(1e-12));
}

TEST_CASE("radiated power") {
    CHECK(radiated_power(400.0, 300.0, kRef) ==
          doctest::Approx(9.694026121292845e-8).epsilon(1e-12));
    CHECK(radiated_power(300.0, 300.0, kRef) == 0.0);
    // antisymmetric in the two temperatures
    CHECK(radiated_power(350.0, 320.0, kRef) ==
          doctest::Approx(-radiated_power(320.0, 350.0, kRef)).epsilon(1e-12));
}

TEST_CASE("conducted power") {
    const auto gas = air_at(0.1);
    CHECK(conducted_power(350.0, gas, kRef) ==
          doctest::Approx(2.020038908650623e-7).epsilon(1e-12));
    CHECK(conducted_power(300.0, gas, kRef) == 0.0);
    // linear in pressure and in the temperature difference
    auto gas2 = gas;
    gas2.pressure *= 2.0;
    CHECK(conducted_power(350.0, gas2, kRef) ==
          doctest::Approx(2.0 * conducted_power(350.0, gas, kRef)).epsilon(1e-12));
    CHECK(conducted_power(400.0, gas, kRef) ==
          doctest::Approx(2.0 * conducted_power(350.0, gas, kRef)).epsilon(1e-12));
}

TEST_CASE("steady-state temperature") {
    SUBCASE("no laser: exactly the bath temperature") {
        const auto s = steady_state_temperature(OpticalParams(0.0, 10e-6), air_at(0.1), kRef);
        CHECK(s.temperature == 300.0);
        CHECK(s.p_abs == 0.0);
    }
    SUBCASE("radiation-only closed form") {
        const auto gas = GasEnvironment(0.0, 300.0);
        const auto opt = OpticalParams(1e-6, 10e-6);
        const auto s = steady_state_temperature(opt, gas, kRef);
        const double area = 4.0 * oracles::kPi * 6.5e-6 * 6.5e-6;
        const double expect = std::pow(std::pow(300.0, 4) + absorbed_power(opt, kRef) /
                                                                (0.184 * 5.670374419e-8 * area),
                                       0.25);
        CHECK(s.temperature == doctest::Approx(expect).epsilon(1e-6));
    }
    SUBCASE("conduction-dominated limit matches the linearized estimate") {
        const auto gas = air_at(10.0);
        const auto opt = OpticalParams(1e-6, 10e-6);
        const auto s = steady_state_temperature(opt, gas, kRef);
        const double coeff = conducted_power(301.0, gas, kRef);  // per kelvin
        CHECK(s.temperature - 300.0 ==
              doctest::Approx(absorbed_power(opt, kRef) / coeff).epsilon(1e-2));
    }
    SUBCASE("energy balance closes at the solution") {
        const auto s = steady_state_temperature(OpticalParams(5e-7, 10e-6), air_at(0.1), kRef);
        const double residual = std::abs(s.p_abs - s.p_rad - s.p_cond);
        CHECK(residual < std::max(1e-12 * s.p_abs, 1e-18));
    }
    SUBCASE("balance is strictly decreasing in T (root unique)") {
        const auto gas = air_at(0.1);
        const auto opt = OpticalParams(1e-6, 10e-6);
        const double pa = absorbed_power(opt, kRef);
        double last = pa;
        for (double t = 300.0; t < 1500.0; t += 10.0) {
            const double f = pa - radiated_power(t, 300.0, kRef) - conducted_power(t, gas, kRef);
            if (t > 300.0) CHECK(f < last);
            last = f;
        }
    }
    SUBCASE("monotone in laser power, pressure and absorptivity") {
        std::mt19937_64 rng(31);
        for (int i = 0; i < 50; ++i) {
            const double pl = oracles::log_uniform(rng, 1e-9, 1e-5);
            const double pg = oracles::log_uniform(rng, 1e-4, 1e2);
            const double alpha = oracles::uniform(rng, 0.02, 0.9);
            Particle p = kRef;
            p.alpha_abs = alpha;
            p.epsilon_em = alpha;
            const auto base =
                steady_state_temperature(OpticalParams(pl, 10e-6), air_at(pg), p);
            const auto more_laser =
                steady_state_temperature(OpticalParams(1.3 * pl, 10e-6), air_at(pg), p);
            const auto more_gas =
                steady_state_temperature(OpticalParams(pl, 10e-6), air_at(1.3 * pg), p);
            Particle darker = p;
            darker.alpha_abs = std::min(1.0, 1.2 * alpha);
            // keep emissivity fixed so only absorption grows
            darker.epsilon_em = p.epsilon_em;
            const auto more_alpha =
                steady_state_temperature(OpticalParams(pl, 10e-6), air_at(pg), darker);
            CHECK(more_laser.temperature >= base.temperature - 2e-6);
            CHECK(more_gas.temperature <= base.temperature + 2e-6);
            CHECK(more_alpha.temperature >= base.temperature - 2e-6);
        }
    }
}

TEST_CASE("remanence vs temperature") {
    CHECK(bsat_at_temperature(300.0, kRef).bsat == doctest::Approx(0.45));
    // zeta = -0.13 %/K and dT = 100 K: a 13% reduction
    const auto warm = bsat_at_temperature(400.0, kRef);
    CHECK(warm.bsat == doctest::Approx(0.45 * (1.0 - 0.13)).epsilon(1e-12));
    CHECK_FALSE(warm.clamped);
    CHECK_FALSE(warm.out_of_linear_range);
    CHECK(bsat_at_temperature(499.0, kRef).out_of_linear_range == false);
    CHECK(bsat_at_temperature(501.0, kRef).out_of_linear_range == true);

    // beyond 1/|zeta| the linear model would go negative: clamped to zero
    const auto fried = bsat_at_temperature(300.0 + 1.0 / 1.3e-3 + 10.0, kRef);
    CHECK(fried.bsat == 0.0);
    CHECK(fried.clamped);
}

TEST_CASE("shifted modes") {
    const double wz_ref = units::hz_to_rad(368.9);
    const double wl_ref = units::hz_to_rad(11108.0);

    SUBCASE("zero heating leaves modes unshifted") {
        const auto s = shifted_modes(OpticalParams(0.0, 10e-6), air_at(0.1), kRef, wz_ref, wl_ref);
        CHECK(s.omega_z == doctest::Approx(wz_ref).epsilon(1e-12));
        CHECK(s.omega_lib == doctest::Approx(wl_ref).epsilon(1e-12));
    }
    SUBCASE("first-order shift ratio: translational shift is twice the librational") {
        const auto s =
            shifted_modes(OpticalParams(5e-9, 10e-6), air_at(1.0), kRef, wz_ref, wl_ref);
        const double dz = (wz_ref - s.omega_z) / wz_ref;
        const double dl = (wl_ref - s.omega_lib) / wl_ref;
        REQUIRE(dz > 0.0);
        CHECK(dz == doctest::Approx(2.0 * dl).epsilon(1e-3));
    }
    SUBCASE("monotone decrease with laser power") {
        double last = wz_ref + 1.0;
        for (const double pl : {1e-8, 1e-7, 3e-7, 1e-6}) {
            const auto s =
                shifted_modes(OpticalParams(pl, 10e-6), air_at(0.1), kRef, wz_ref, wl_ref);
            CHECK(s.omega_z < last);
            last = s.omega_z;
        }
    }
}

TEST_CASE("remanence drop map") {
    std::vector<double> lasers{2e-8, 1e-7, 5e-7, 1e-6};
    std::vector<double> pressures{1e-3, 1e-2, 1e-1, 1.0};
    const auto map = bsat_drop_map(lasers, pressures, OpticalParams(0.0, 10e-6), air_at(1.0), kRef);

    REQUIRE(map.rel_drop.size() == 16);
    for (const auto f : map.failed) CHECK_FALSE(f);

    // rows monotone in laser power (drop grows more negative), columns in pressure
    for (std::size_t j = 0; j < pressures.size(); ++j)
        for (std::size_t i = 1; i < lasers.size(); ++i)
            CHECK(map.rel_drop[i * 4 + j] <= map.rel_drop[(i - 1) * 4 + j] + 1e-12);
    for (std::size_t i = 0; i < lasers.size(); ++i)
        for (std::size_t j = 1; j < pressures.size(); ++j)
            CHECK(map.rel_drop[i * 4 + j] >= map.rel_drop[i * 4 + j - 1] - 1e-12);

    // extreme cell: highest laser power, lowest pressure
    double min_v = 1.0;
    std::size_t min_at = 0;
    for (std::size_t k = 0; k < map.rel_drop.size(); ++k)
        if (map.rel_drop[k] < min_v) {
            min_v = map.rel_drop[k];
            min_at = k;
        }
    CHECK(min_at == 3 * 4 + 0);
    CHECK(min_v < 0.0);

    // map vanishes with the laser off
    const auto dark = bsat_drop_map({1e-15}, pressures, OpticalParams(0.0, 10e-6), air_at(1.0), kRef);
    for (const double v : dark.rel_drop) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("thermo model fit") {
    // synthesize a laser-power sweep with known (alpha, bsat0)
    const double truth_alpha = 0.184;
    const double truth_bsat = 0.50;
    Particle truth = kRef;
    truth.alpha_abs = truth_alpha;
    truth.epsilon_em = truth_alpha;
    truth.bsat0 = truth_bsat;
    const auto gas = air_at(0.1);
    const OpticalParams opt_tpl(0.0, 10e-6);

    // translational mode scale: omega at bsat = 1 T
    const double scale = units::hz_to_rad(368.9) / 0.51;

    std::vector<double> pl, wz;
    for (int i = 0; i < 12; ++i) {
        const double p_laser = 2e-8 + i * (1e-6 - 2e-8) / 11.0;
        OpticalParams opt = opt_tpl;
        opt.p_laser = p_laser;
        const auto s = steady_state_temperature(opt, gas, truth);
        pl.push_back(p_laser);
        wz.push_back(scale * s.bsat_t);
    }

    SUBCASE("noiseless round trip is exact to solver tolerance") {
        const auto fit = fit_thermo_model(pl, wz, ModeKind::translational, gas, kRef, opt_tpl, scale);
        CHECK(fit.alpha == doctest::Approx(truth_alpha).epsilon(1e-6));
        CHECK(fit.bsat0 == doctest::Approx(truth_bsat).epsilon(1e-6));
    }
    SUBCASE("0.1% noise recovered within 2 sigma") {
        std::mt19937_64 rng(41);
        std::vector<double> noisy = wz;
        for (auto& w : noisy) {
            const double u1 = oracles::uniform(rng, 1e-12, 1.0);
            const double u2 = oracles::uniform(rng, 0.0, 1.0);
            const double n = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * oracles::kPi * u2);
            w *= 1.0 + 1e-3 * n;
        }
        const auto fit =
            fit_thermo_model(pl, noisy, ModeKind::translational, gas, kRef, opt_tpl, scale);
        CHECK(std::abs(fit.alpha - truth_alpha) < 2.0 * fit.alpha_sigma);
        CHECK(std::abs(fit.bsat0 - truth_bsat) < 2.0 * fit.bsat0_sigma);
        CHECK(fit.alpha_sigma > 0.0);
    }
    SUBCASE("librational observable round trip") {
        const double lib_scale = units::hz_to_rad(11108.0) / std::sqrt(0.30);
        std::vector<double> wl;
        for (std::size_t i = 0; i < pl.size(); ++i) {
            OpticalParams opt = opt_tpl;
            opt.p_laser = pl[i];
            const auto s = steady_state_temperature(opt, gas, truth);
            wl.push_back(lib_scale * std::sqrt(s.bsat_t));
        }
        const auto fit =
            fit_thermo_model(pl, wl, ModeKind::librational, gas, kRef, opt_tpl, lib_scale);
        CHECK(fit.alpha == doctest::Approx(truth_alpha).epsilon(1e-5));
        CHECK(fit.bsat0 == doctest::Approx(truth_bsat).epsilon(1e-5));
    }
    SUBCASE("too few observations rejected") {
        std::vector<double> p3(pl.begin(), pl.begin() + 3);
        std::vector<double> w3(wz.begin(), wz.begin() + 3);
        CHECK_THROWS_AS(
            fit_thermo_model(p3, w3, ModeKind::translational, gas, kRef, opt_tpl, scale),
            std::invalid_argument);
    }
}
