#pragma once

#include <string>

namespace qmw {

// Orbit counts reach ~10^15 and Burnside numerators exceed 2^64.
__extension__ typedef __int128 BigCount;

std::string to_string(BigCount value);

}  // namespace qmw
