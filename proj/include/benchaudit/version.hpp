#pragma once

namespace benchaudit {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace benchaudit
