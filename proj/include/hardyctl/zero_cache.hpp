#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hardyctl/bigfloat.hpp"

namespace hardyctl {

/// On-disk cache of Bessel zero tables. One JSON document maps
/// "nu(12 decimals)|K|mantissa_bits" to an array of full-precision decimal
/// strings. Writes go through a temp file plus rename; concurrent processes
/// coordinate through an advisory flock on a sidecar lock file.
class ZeroCache {
 public:
  explicit ZeroCache(std::filesystem::path dir);

  std::optional<std::vector<BigFloat>> lookup(const BigFloat& nu, int K, int bits) const;
  void store(const BigFloat& nu, int K, int bits, const std::vector<BigFloat>& zeros);

  static std::string key(const BigFloat& nu, int K, int bits);
  const std::filesystem::path& file() const { return file_; }

 private:
  std::filesystem::path dir_;
  std::filesystem::path file_;
  std::filesystem::path lock_;
};

}  // namespace hardyctl
