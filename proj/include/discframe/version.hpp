#pragma once

namespace discframe {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace discframe
