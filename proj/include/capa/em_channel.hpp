// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "capa/geometry.hpp"

namespace capa {

using Matrix3cd = Eigen::Matrix3cd;

/// Dyadic free-space kernel mapping a current element at `source` to the
/// electric field at `field_point`:
///
///   G(r, s) = -j eta exp(-j 2 pi d / lambda) / (2 lambda d) * (I - ddT/d^2)
///
/// with d = ||r - s||. Symmetric in its 3x3 structure and in (r, s).
/// Throws std::domain_error on coincident points.
Matrix3cd green_tensor(const Vec3& field_point, const Vec3& source,
                       const EMConstants& consts);

/// Scalar channel seen by `user` from a y-polarized current element at `s`:
/// H(s) = u_user^T G(r_user, s) u_y. `s` must lie on the aperture.
cdouble scalar_channel(const UserSpec& user, const Vec3& s,
                       const Aperture& aperture, const EMConstants& consts);

/// Channel vector of a half-wavelength-spaced planar array filling the
/// aperture. Element (nx, ny) sits at ((nx-1)d - Lx/2, (ny-1)d - Ly/2, 0)
/// with d = lambda/2; each entry is sqrt(Ad) u_user^T G u_y with the
/// per-element effective area Ad = lambda^2 / (4 pi). Entries are ordered
/// row-major in (ny, nx).
Eigen::VectorXcd discrete_channel_vector(const Aperture& aperture,
                                         const UserSpec& user,
                                         const EMConstants& consts);

/// Number of half-wavelength grid elements per axis and in total.
int discrete_elements_per_axis(double length, double wavelength);
int discrete_element_count(const Aperture& aperture, const EMConstants& consts);

}  // namespace capa
