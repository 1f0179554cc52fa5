#pragma once

namespace csb {
inline constexpr const char *kVersion = "0.1.0";
}
