// SPDX-License-Identifier: Apache-2.0
#include "capa/em_channel.hpp"

#include <cmath>
#include <stdexcept>

namespace capa {

Matrix3cd green_tensor(const Vec3& field_point, const Vec3& source,
                       const EMConstants& consts) {
    const Vec3 diff = field_point - source;
    const double dist = diff.norm();
    if (dist <= 0.0) throw std::domain_error("singular Green evaluation");

    const double phase = -consts.wavenumber() * dist;
    const cdouble scale = -cdouble(0.0, 1.0) * consts.impedance_ohm *
                          std::polar(1.0, phase) /
                          (2.0 * consts.wavelength_m * dist);
    const Eigen::Matrix3d projector =
        Eigen::Matrix3d::Identity() - (diff * diff.transpose()) / (dist * dist);
    return scale * projector;
}

cdouble scalar_channel(const UserSpec& user, const Vec3& s,
                       const Aperture& aperture, const EMConstants& consts) {
    if (!aperture.contains(s)) throw std::domain_error("point outside aperture");
    static const Vec3 source_polarization(0.0, 1.0, 0.0);
    const Matrix3cd g = green_tensor(user.position, s, consts);
    return user.polarization.transpose() * (g * source_polarization.cast<cdouble>());
}

int discrete_elements_per_axis(double length, double wavelength) {
    const double spacing = 0.5 * wavelength;
    return static_cast<int>(std::ceil(length / spacing - 1e-12));
}

int discrete_element_count(const Aperture& aperture, const EMConstants& consts) {
    return discrete_elements_per_axis(aperture.length_x, consts.wavelength_m) *
           discrete_elements_per_axis(aperture.length_y, consts.wavelength_m);
}

Eigen::VectorXcd discrete_channel_vector(const Aperture& aperture,
                                         const UserSpec& user,
                                         const EMConstants& consts) {
    const double spacing = 0.5 * consts.wavelength_m;
    if (spacing > std::min(aperture.length_x, aperture.length_y) * (1.0 + 1e-12))
        throw std::invalid_argument("aperture shorter than half a wavelength");

    const int nx = discrete_elements_per_axis(aperture.length_x, consts.wavelength_m);
    const int ny = discrete_elements_per_axis(aperture.length_y, consts.wavelength_m);
    const double element_gain =
        std::sqrt(consts.wavelength_m * consts.wavelength_m / (4.0 * M_PI));
    static const Vec3 source_polarization(0.0, 1.0, 0.0);

    Eigen::VectorXcd channel(nx * ny);
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const Vec3 element(ix * spacing - 0.5 * aperture.length_x,
                               iy * spacing - 0.5 * aperture.length_y, 0.0);
            const Matrix3cd g = green_tensor(user.position, element, consts);
            channel[iy * nx + ix] =
                element_gain *
                (user.polarization.transpose() *
                 (g * source_polarization.cast<cdouble>()))(0);
        }
    }
    return channel;
}

}  // namespace capa
