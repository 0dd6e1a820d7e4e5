#pragma once

namespace remimo {

inline constexpr const char* version = "1.0.0";

} // namespace remimo
