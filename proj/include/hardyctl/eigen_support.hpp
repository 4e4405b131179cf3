#pragma once

#include <Eigen/Core>

#include "hardyctl/bigfloat.hpp"

namespace Eigen {

// Plugs BigFloat into Eigen's dense machinery (same pattern as the
// unsupported MPRealSupport module). epsilon() tracks the thread-local
// working precision, so decompositions run at whatever PrecisionGuard set.
template <>
struct NumTraits<hardyctl::BigFloat> : GenericNumTraits<hardyctl::BigFloat> {
  using Real = hardyctl::BigFloat;
  using NonInteger = hardyctl::BigFloat;
  using Nested = hardyctl::BigFloat;
  using Literal = long;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 30,
    MulCost = 100,
  };

  static inline Real epsilon() { return hardyctl::BigFloat::machine_epsilon(); }
  static inline Real dummy_precision() { return hardyctl::BigFloat::machine_epsilon() * 1024.0; }
  static inline int digits10() {
    return static_cast<int>(hardyctl::BigFloat::default_precision() * 0.30103);
  }
  static inline Real highest() { return ldexp2(hardyctl::BigFloat(1.0), 1L << 30); }
  static inline Real lowest() { return ldexp2(hardyctl::BigFloat(-1.0), 1L << 30); }
};

}  // namespace Eigen

namespace hardyctl {

using BigVec = Eigen::Matrix<BigFloat, Eigen::Dynamic, 1>;
using BigMat = Eigen::Matrix<BigFloat, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace hardyctl
