#pragma once

#include <cmath>

#include "hardyctl/errors.hpp"

namespace hardyctl {

/// Working-arithmetic configuration: binary mantissa precision plus the
/// relative truncation tolerance used by power series. The tolerance may not
/// exceed 2^(-mantissa_bits/2), reserving half the mantissa for cancellation.
struct Precision {
  int mantissa_bits = 256;
  double series_tol = 0x1p-128;

  static Precision bits(int b) {
    Precision p;
    p.mantissa_bits = b;
    p.series_tol = std::ldexp(1.0, -b / 2);
    p.validate();
    return p;
  }

  void validate() const {
    if (mantissa_bits < 53) throw ConfigError("precision: mantissa_bits must be >= 53");
    if (mantissa_bits > 2000) throw ConfigError("precision: mantissa_bits above 2000 unsupported");
    if (!(series_tol > 0.0)) throw ConfigError("precision: series_tol must be positive");
    if (series_tol > std::ldexp(1.0, -mantissa_bits / 2)) {
      throw ConfigError("precision: series_tol must be <= 2^(-mantissa_bits/2)");
    }
  }
};

}  // namespace hardyctl
