#pragma once

namespace gatekit {

inline constexpr const char* kVersion = "0.1.0";

}
