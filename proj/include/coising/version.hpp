#pragma once

namespace coising {

inline constexpr const char* kVersion = "0.1.0";

} // namespace coising
