#pragma once

namespace smt {

inline constexpr const char* k_tool_name = "smtinv";
inline constexpr const char* k_version = "0.1.0";

}  // namespace smt
