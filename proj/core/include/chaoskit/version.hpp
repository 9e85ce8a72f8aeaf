#pragma once

namespace chaoskit {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "chaoskit/1";

}  // namespace chaoskit
