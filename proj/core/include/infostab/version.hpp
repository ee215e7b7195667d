#pragma once

namespace infostab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace infostab
