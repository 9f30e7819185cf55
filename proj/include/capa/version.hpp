// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace capa {

inline constexpr const char* kCapaVersion = "0.1.0";

}  // namespace capa
