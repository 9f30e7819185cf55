// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "support.hpp"

using namespace capa;

TEST_SUITE_BEGIN("em_channel");

TEST_CASE("boresight kernel magnitude matches the hand evaluation") {
    // eta / (2 lambda d) with d = 20 m, lambda = 0.125 m, eta = 120 pi and a
    // unit projection factor on the y-axis.
    const EMConstants consts = EMConstants::from_frequency(2.4e9);
    CHECK(consts.wavelength_m == doctest::Approx(0.125));

    const Matrix3cd g = green_tensor(Vec3(0, 0, 20), Vec3(0, 0, 0), consts);
    CHECK(std::abs(g(1, 1)) == doctest::Approx(75.398).epsilon(1e-5));

    // Boresight geometry: the projector leaves the y-polarization untouched.
    CHECK(g(1, 1) == g(0, 0));
    CHECK(std::abs(g(2, 2)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("coincident points are rejected") {
    const EMConstants consts = EMConstants::from_frequency(2.4e9);
    CHECK_THROWS_AS(green_tensor(Vec3(1, 2, 3), Vec3(1, 2, 3), consts),
                    std::domain_error);
}

TEST_CASE("kernel is symmetric in its arguments") {
    const EMConstants consts = EMConstants::from_frequency(2.4e9);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        const Vec3 r(uniform_double(rng, -5, 5), uniform_double(rng, -5, 5),
                     uniform_double(rng, 10, 30));
        const Vec3 s(uniform_double(rng, -0.25, 0.25),
                     uniform_double(rng, -0.25, 0.25), 0.0);
        const Matrix3cd a = green_tensor(r, s, consts);
        const Matrix3cd b = green_tensor(s, r, consts);
        CHECK((a - b.transpose()).norm() <= 1e-12 * a.norm());
        CHECK((a - a.transpose()).norm() <= 1e-12 * a.norm());
    }
}

TEST_CASE("scalar channel on the boresight axis") {
    const ScenarioConfig s = default_scenario();
    UserSpec user;
    user.position = Vec3(0, 0, 20);

    SUBCASE("y-polarized receiver sees the full kernel entry") {
        const cdouble h = scalar_channel(user, Vec3(0, 0, 0), s.aperture, s.consts);
        CHECK(std::abs(h) == doctest::Approx(75.398).epsilon(1e-5));
    }
    SUBCASE("x-polarized receiver on the z-axis sees nothing") {
        user.polarization = Vec3(1, 0, 0);
        const cdouble h = scalar_channel(user, Vec3(0, 0, 0), s.aperture, s.consts);
        CHECK(std::abs(h) <= 1e-14);
    }
    SUBCASE("points off the aperture are rejected") {
        CHECK_THROWS_AS(scalar_channel(user, Vec3(0.3, 0, 0), s.aperture, s.consts),
                        std::domain_error);
        CHECK_THROWS_AS(scalar_channel(user, Vec3(0, 0, 0.1), s.aperture, s.consts),
                        std::domain_error);
    }
}

TEST_CASE("boresight channel magnitude decays as 1/z") {
    const ScenarioConfig s = default_scenario();
    UserSpec user;
    user.position = Vec3(0, 0, 15);
    const double h1 = std::abs(scalar_channel(user, Vec3(0, 0, 0), s.aperture, s.consts));
    user.position = Vec3(0, 0, 30);
    const double h2 = std::abs(scalar_channel(user, Vec3(0, 0, 0), s.aperture, s.consts));
    CHECK(h1 == doctest::Approx(2.0 * h2).epsilon(1e-12));
}

TEST_CASE("half-wavelength array dimensions at the stock setup") {
    const ScenarioConfig s = default_scenario();
    CHECK(discrete_element_count(s.aperture, s.consts) == 64);

    UserSpec user;
    user.position = Vec3(1, 2, 20);
    const Eigen::VectorXcd channel =
        discrete_channel_vector(s.aperture, user, s.consts);
    CHECK(channel.size() == 64);

    // Per-element effective area lambda^2 / (4 pi).
    const double area = 0.125 * 0.125 / (4.0 * M_PI);
    CHECK(area == doctest::Approx(1.2434e-3).epsilon(1e-4));

    // Entries are sqrt(area) times the scalar channel at the grid position.
    const double spacing = 0.5 * s.consts.wavelength_m;
    const Vec3 element(2 * spacing - 0.25, 3 * spacing - 0.25, 0.0);
    const cdouble direct = std::sqrt(area) *
                           scalar_channel(user, element, s.aperture, s.consts);
    CHECK(std::abs(channel[3 * 8 + 2] - direct) <= 1e-14 * std::abs(direct));
}

TEST_CASE("single-element degenerate array") {
    Aperture tiny;
    tiny.length_x = tiny.length_y = 0.0625;  // exactly one half-wavelength cell
    const EMConstants consts = EMConstants::from_frequency(2.4e9);
    UserSpec user;
    user.position = Vec3(0, 0, 20);
    CHECK(discrete_channel_vector(tiny, user, consts).size() == 1);

    Aperture too_small;
    too_small.length_x = too_small.length_y = 0.05;
    CHECK_THROWS_AS(discrete_channel_vector(too_small, user, consts),
                    std::invalid_argument);
}

TEST_SUITE_END();
