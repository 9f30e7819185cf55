// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace capa {

using Vec3 = Eigen::Vector3d;
using cdouble = std::complex<double>;

inline constexpr double kWaveSpeed = 3.0e8;  // m/s

/// Carrier frequency, wavelength and medium impedance for one scenario.
struct EMConstants {
    double frequency_hz = 2.4e9;
    double wavelength_m = kWaveSpeed / 2.4e9;
    double impedance_ohm = 120.0 * M_PI;

    static EMConstants from_frequency(double frequency_hz,
                                      double impedance_ohm = 120.0 * M_PI) {
        if (frequency_hz <= 0.0) throw std::invalid_argument("frequency must be positive");
        if (impedance_ohm <= 0.0) throw std::invalid_argument("impedance must be positive");
        EMConstants c;
        c.frequency_hz = frequency_hz;
        c.wavelength_m = kWaveSpeed / frequency_hz;
        c.impedance_ohm = impedance_ohm;
        return c;
    }

    double wavenumber() const { return 2.0 * M_PI / wavelength_m; }
};

/// Rectangular transmit surface in the z = 0 plane, centered at the origin.
struct Aperture {
    double length_x = 0.5;  // m
    double length_y = 0.5;  // m

    static Aperture square(double area_m2) {
        if (area_m2 <= 0.0) throw std::invalid_argument("aperture area must be positive");
        Aperture a;
        a.length_x = a.length_y = std::sqrt(area_m2);
        return a;
    }

    double area() const { return length_x * length_y; }

    bool contains(const Vec3& s, double slack = 1e-12) const {
        const double ex = slack * (1.0 + length_x);
        const double ey = slack * (1.0 + length_y);
        return std::abs(s.x()) <= 0.5 * length_x + ex &&
               std::abs(s.y()) <= 0.5 * length_y + ey &&
               std::abs(s.z()) <= slack;
    }
};

/// Receiver description: position, antenna polarization, noise level.
struct UserSpec {
    Vec3 position{0.0, 0.0, 20.0};
    Vec3 polarization{0.0, 1.0, 0.0};  // unit vector
    double noise_power = 5.6e-3;       // V^2/m^2
};

/// Raised when the two receiver channels are numerically parallel and the
/// two-dimensional weighting formulation collapses.
struct DegenerateChannels : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace capa
