#pragma once

namespace qlie {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qlie
