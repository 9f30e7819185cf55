// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace capa {

/// Maximizes a scalar function on [lo, hi] by a coarse uniform grid followed
/// by golden-section refinement of the best bracket. The grid pass guards
/// against multimodal objectives; refinement stops when the bracket width
/// falls below `tol`.
double maximize_scalar(const std::function<double(double)>& f, double lo,
                       double hi, int grid_points, double tol);

}  // namespace capa
