#include "maglev/particle.hpp"
#include "maglev/units.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace maglev;

TEST_CASE("particle mass") {
    const Particle p(6.5e-6, 3.6e3, 0.45);
    // hand arithmetic: rho (4/3) pi a^3
    CHECK(p.mass() == doctest::Approx(4.141247435962064e-12).epsilon(1e-12));

    const Particle small(0.25e-6, 3.6e3, 0.30);
    CHECK(small.mass() == doctest::Approx(2.3561944901923445e-16).epsilon(1e-12));

    CHECK_THROWS_AS(Particle(0.0, 3.6e3, 0.45), std::invalid_argument);
    CHECK_THROWS_AS(Particle(-1e-6, 3.6e3, 0.45), std::invalid_argument);
}

TEST_CASE("dipole moment") {
    const Particle p(6.5e-6, 3.6e3, 0.45);
    CHECK(p.dipole_moment(0.45) == doctest::Approx(4.119375e-10).epsilon(1e-12));
    // linearity in bsat
    CHECK(p.dipole_moment(0.90) == doctest::Approx(2.0 * p.dipole_moment(0.45)).epsilon(1e-15));

    const Particle small(0.25e-6, 3.6e3, 0.30);
    CHECK(small.dipole_moment(0.30) == doctest::Approx(1.5625e-14).epsilon(1e-12));

    CHECK_THROWS_AS(p.dipole_moment(0.0), std::domain_error);
    CHECK_THROWS_AS(p.dipole_moment(-0.1), std::domain_error);
}

TEST_CASE("moment of inertia") {
    const Particle p(6.5e-6, 3.6e3, 0.45);
    CHECK(p.moment_of_inertia() == doctest::Approx(6.998708166775888e-23).epsilon(1e-12));

    const Particle small(0.25e-6, 3.6e3, 0.30);
    CHECK(small.moment_of_inertia() == doctest::Approx(5.890486225480861e-30).epsilon(1e-12));

    // doubling a multiplies I by 2^5 (m ~ a^3, I ~ m a^2)
    const Particle dbl(13.0e-6, 3.6e3, 0.45);
    CHECK(dbl.moment_of_inertia() == doctest::Approx(32.0 * p.moment_of_inertia()).epsilon(1e-12));
}

TEST_CASE("dipole-to-mass ratio is independent of radius") {
    const double expected = 0.45 / (constants().mu0 * 3.6e3);
    for (const double a_um : {0.1, 1.0, 10.0}) {
        const Particle p(units::um_to_m(a_um), 3.6e3, 0.45);
        CHECK(p.dipole_moment() / p.mass() == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("derived properties are pure") {
    const Particle a(6.5e-6, 3.6e3, 0.45);
    const Particle b(6.5e-6, 3.6e3, 0.45);
    CHECK(a.mass() == b.mass());
    CHECK(a.moment_of_inertia() == b.moment_of_inertia());
    CHECK(a.dipole_moment() == b.dipole_moment());
}

TEST_CASE("particle field invariants") {
    CHECK_THROWS_AS(Particle(6.5e-6, -1.0, 0.45), std::invalid_argument);
    CHECK_THROWS_AS(Particle(6.5e-6, 3.6e3, -0.45), std::invalid_argument);
    CHECK_THROWS_AS(Particle(6.5e-6, 3.6e3, 0.45, -1.3e-3, 0.67e6, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(Particle(6.5e-6, 3.6e3, 0.45, -1.3e-3, 0.67e6, 0.2, -0.1),
                    std::invalid_argument);
}

TEST_CASE("gas environment") {
    const GasEnvironment gas(units::mbar_to_pa(1.0), 300.0);
    CHECK(gas.pressure == doctest::Approx(100.0));
    CHECK(gas.d_m == doctest::Approx(0.372e-9));
    CHECK(gas.c_acc == doctest::Approx(0.65));
    CHECK(gas.m_gas == doctest::Approx(4.81e-26));
    // sigma = pi d^2
    CHECK(gas.cross_section() == doctest::Approx(4.347461577743699e-19).epsilon(1e-12));

    CHECK_THROWS_AS(GasEnvironment(-1.0, 300.0), std::invalid_argument);
    CHECK_THROWS_AS(GasEnvironment(100.0, 0.0), std::invalid_argument);
    CHECK_NOTHROW(GasEnvironment(0.0, 300.0));  // vacuum is a valid environment
}
