#pragma once

namespace reqnet {
/// Stamped into every report as `tool_version`.
extern const char* const kToolVersion;
inline constexpr int kReportSchemaVersion = 1;
}  // namespace reqnet
