#pragma once

namespace rydeph {

inline constexpr const char* version_string = "0.1.0";

}
