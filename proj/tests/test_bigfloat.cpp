#include "doctest.h"

#include <cmath>

#include "hardyctl/bigfloat.hpp"
#include "hardyctl/eigen_support.hpp"

#include <Eigen/Cholesky>

using hardyctl::BigFloat;
using hardyctl::PrecisionGuard;

TEST_CASE("arithmetic matches double for exact inputs") {
  PrecisionGuard guard(128);
  BigFloat a(1.5), b(0.25);
  CHECK((a + b).to_double() == 1.75);
  CHECK((a - b).to_double() == 1.25);
  CHECK((a * b).to_double() == 0.375);
  CHECK((a / b).to_double() == 6.0);
  CHECK((-a).to_double() == -1.5);
  CHECK((2.0 * a + 1.0).to_double() == 4.0);
  CHECK((1.0 - b).to_double() == 0.75);
}

TEST_CASE("precision propagates to the wider operand") {
  BigFloat a(1.0, 64), b(1.0, 320);
  CHECK((a + b).precision() == 320);
  CHECK((b * a).precision() == 320);
  a += b;
  CHECK(a.precision() == 320);
}

TEST_CASE("sqrt exp log agree with std at double scale") {
  PrecisionGuard guard(256);
  BigFloat x(2.0);
  CHECK(sqrt(x).to_double() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(exp(x).to_double() == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
  CHECK(log(x).to_double() == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(expm1(BigFloat(-1e-30)).to_double() == doctest::Approx(-1e-30).epsilon(1e-15));
}

TEST_CASE("decimal string round-trips exactly at full precision") {
  PrecisionGuard guard(256);
  BigFloat x = sqrt(BigFloat(2.0)) * exp(BigFloat(1.0)) / 7.0;
  BigFloat y = BigFloat::from_string(x.to_string(), 256);
  CHECK(x == y);
  CHECK(BigFloat(0.0).to_string() == "0");
  BigFloat tiny = exp(BigFloat(-700.0));
  CHECK(BigFloat::from_string(tiny.to_string(), 256) == tiny);
}

TEST_CASE("comparisons and helpers") {
  BigFloat a(3.0), b(4.0);
  CHECK(a < b);
  CHECK(b >= a);
  CHECK(a != b);
  CHECK(a == 3.0);
  CHECK(max(a, b) == b);
  CHECK(min(a, b) == a);
  CHECK(abs(BigFloat(-2.5)) == 2.5);
  CHECK(BigFloat(8.0).exponent2() == 4);  // 8 = 0.5 * 2^4
  CHECK(pow(BigFloat(2.0), 10L) == 1024.0);
}

TEST_CASE("huge exponents stay finite") {
  PrecisionGuard guard(128);
  BigFloat big = exp(BigFloat(50000.0));
  CHECK(!big.is_inf());
  CHECK((big * exp(BigFloat(-50000.0))).to_double() == doctest::Approx(1.0).epsilon(1e-25));
}

TEST_CASE("Eigen LLT solves an SPD system in extended precision") {
  PrecisionGuard guard(192);
  hardyctl::BigMat A(3, 3);
  A << BigFloat(4.0), BigFloat(1.0), BigFloat(0.5),
       BigFloat(1.0), BigFloat(3.0), BigFloat(0.25),
       BigFloat(0.5), BigFloat(0.25), BigFloat(2.0);
  hardyctl::BigVec b(3);
  b << BigFloat(1.0), BigFloat(2.0), BigFloat(3.0);
  Eigen::LLT<hardyctl::BigMat> llt(A);
  REQUIRE(llt.info() == Eigen::Success);
  hardyctl::BigVec x = llt.solve(b);
  hardyctl::BigVec r = A * x - b;
  CHECK(abs(r(0)).to_double() < 1e-50);
  CHECK(abs(r(1)).to_double() < 1e-50);
  CHECK(abs(r(2)).to_double() < 1e-50);
}
