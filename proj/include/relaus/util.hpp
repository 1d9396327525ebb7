#pragma once
#include <string>

namespace relaus {

std::string sha256_hex(const std::string& data);

}  // namespace relaus
