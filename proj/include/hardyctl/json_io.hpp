#pragma once

#include <filesystem>
#include <string>

#include "hardyctl/bigfloat.hpp"

namespace hardyctl::io {

/// Round-trip decimal string for a double (shortest form).
std::string decimal(double x);

/// Round-trip decimal string at the value's full working precision.
inline std::string decimal(const BigFloat& x) { return x.to_string(); }

/// Writes content to `path` atomically (temp file in the same directory,
/// then rename).
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace hardyctl::io
