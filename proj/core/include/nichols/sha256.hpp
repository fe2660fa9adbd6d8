#pragma once

#include <cstdint>
#include <string>

namespace nichols {

/// Hex SHA-256 digest of a byte string.
std::string sha256Hex(const std::string& data);

}  // namespace nichols
