#pragma once

namespace sarcctx {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sarcctx
