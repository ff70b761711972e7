#pragma once

// The monoid Pi_0(p) = (Z_p Z_p; pZ_p Z_p^x) at finite precision, exact
// integer 2x2 matrices, the cofactor involution and the Mobius action.

#include <array>
#include <string>

#include "pwl/padic.hpp"

namespace pwl {

struct IntMat {
  i64 a = 1, b = 0, c = 0, d = 1;

  i64 det() const { return a * d - b * c; }
  IntMat operator*(const IntMat& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  bool operator==(const IntMat& o) const = default;
  IntMat cofactor() const { return {d, -b, -c, a}; }
  IntMat neg() const { return {-a, -b, -c, -d}; }
  // Inverse of a determinant +-1 matrix.
  IntMat inverse_unimodular() const;
  std::string str() const;
};

class Pi0Mat {
 public:
  Pi0Mat() = default;
  // Checks c = 0 mod p and d a unit.
  Pi0Mat(PrecInt a, PrecInt b, PrecInt c, PrecInt d);
  static Pi0Mat identity(i64 p, int r);
  static Pi0Mat from_int(const IntMat& m, i64 p, int r);

  const PrecInt& a() const { return a_; }
  const PrecInt& b() const { return b_; }
  const PrecInt& c() const { return c_; }
  const PrecInt& d() const { return d_; }
  i64 prime() const { return a_.prime(); }
  int precision() const;

  Pi0Mat operator*(const Pi0Mat& o) const;
  bool operator==(const Pi0Mat& o) const;
  PrecInt det() const { return a_ * d_ - b_ * c_; }
  Pi0Mat with_precision(int r) const;

  std::string str() const;

 private:
  PrecInt a_, b_, c_, d_;
};

Pi0Mat cofactor(const Pi0Mat& m);
IntMat cofactor(const IntMat& m);

// (az + b)/(cz + d).
PrecInt mobius(const Pi0Mat& m, const PrecInt& z);

}  // namespace pwl
