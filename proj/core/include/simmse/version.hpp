#pragma once

namespace simmse {

inline constexpr const char* kVersion = "0.1.0";

}
