#pragma once

namespace synth {

inline constexpr const char* kVersion = "0.1.0";

}
