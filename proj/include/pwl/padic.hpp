#pragma once

// Residue arithmetic for Z_p at explicit finite precision, the extended
// binomial coefficient, the exponential d^n on 1 + pZ_p and the weight space
// W = Hom(Z_p^x, Z_p^x) ~ (Z/(p-1)Z) x Z_p.
//
// Every value carries its precision. Operations that divide by p consume
// digits and say so in the precision of their result.

#include <cstdint>
#include <string>

#include "pwl/error.hpp"

namespace pwl {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

bool is_prime(i64 n);

// p^e, failing if the result leaves the 62-bit residue range.
u64 prime_power(i64 p, int e);

// v_p(n) for n != 0.
int vp(i64 p, i64 n);

// v_p(n!) by Legendre's formula.
int vp_factorial(i64 p, u64 n);

// Arithmetic in Z/p^r on raw residues; the kernels use this directly.
struct ModRing {
  i64 p = 0;
  int r = 0;
  u64 mod = 1;

  ModRing() = default;
  ModRing(i64 prime, int precision);

  u64 reduce(i64 x) const {
    i64 m = static_cast<i64>(mod);
    i64 y = x % m;
    return static_cast<u64>(y < 0 ? y + m : y);
  }
  u64 reduce128(i128 x) const {
    i128 m = static_cast<i128>(mod);
    i128 y = x % m;
    return static_cast<u64>(y < 0 ? y + m : y);
  }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= mod ? s - mod : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + mod - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : mod - a; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<u128>(a) * b) % mod); }
  u64 pow(u64 a, u64 e) const;
  // Inverse of a unit; NotAUnit otherwise.
  u64 inv(u64 a) const;
  // v_p of a residue, r for zero.
  int val(u64 a) const;
  bool is_unit(u64 a) const { return a % static_cast<u64>(p) != 0; }
};

// A p-adic integer known modulo p^precision.
class PrecInt {
 public:
  PrecInt() = default;
  PrecInt(i64 prime, int precision, i64 value);

  static PrecInt from_residue(i64 prime, int precision, u64 residue);

  i64 prime() const { return p_; }
  int precision() const { return r_; }
  u64 residue() const { return residue_; }
  u64 modulus() const { return mod_; }
  ModRing ring() const { return ModRing(p_, r_); }

  // Representative in (-p^r/2, p^r/2].
  i64 centered() const;

  // Forget digits; asking for more digits than known is PrecisionExhausted.
  PrecInt with_precision(int precision) const;

  int valuation() const;
  bool is_zero() const { return residue_ == 0; }
  bool is_unit() const { return residue_ % static_cast<u64>(p_) != 0; }

  PrecInt inverse() const;
  PrecInt pow(u64 e) const;
  // Exact division by p^k; the quotient loses k digits of precision.
  PrecInt divide_by_p_power(int k) const;

  PrecInt operator-() const;
  PrecInt& operator+=(const PrecInt& o);
  PrecInt& operator-=(const PrecInt& o);
  PrecInt& operator*=(const PrecInt& o);
  friend PrecInt operator+(PrecInt a, const PrecInt& b) { return a += b; }
  friend PrecInt operator-(PrecInt a, const PrecInt& b) { return a -= b; }
  friend PrecInt operator*(PrecInt a, const PrecInt& b) { return a *= b; }
  PrecInt operator+(i64 k) const { return *this + PrecInt(p_, r_, k); }
  PrecInt operator-(i64 k) const { return *this - PrecInt(p_, r_, k); }
  PrecInt operator*(i64 k) const { return *this * PrecInt(p_, r_, k); }

  // Equality of residues at the common precision.
  friend bool operator==(const PrecInt& a, const PrecInt& b);
  friend bool operator!=(const PrecInt& a, const PrecInt& b) { return !(a == b); }
  bool equals(i64 k) const { return *this == PrecInt(p_, r_, k); }

  std::string str() const;

 private:
  void match(const PrecInt& o);

  i64 p_ = 0;
  int r_ = 0;
  u64 mod_ = 1;
  u64 residue_ = 0;
};

// An element of W: tame class mod p-1 and wild value n_p(chi) in Z_p.
class Weight {
 public:
  Weight() = default;
  // The tame part is reduced into [0, p-2].
  Weight(i64 tame, PrecInt wild);

  // chi_k : d -> d^k.
  static Weight integer(i64 p, int precision, i64 k);
  // chi_{p,n}: tame 0, wild n.
  static Weight wild_only(const PrecInt& n);

  int tame() const { return tame_; }
  const PrecInt& wild() const { return wild_; }
  i64 prime() const { return wild_.prime(); }

  Weight operator+(const Weight& o) const;
  Weight operator-() const;
  // chi shifted by the integer weight m, i.e. chi * chi_m.
  Weight shifted(i64 m) const;

  std::string str() const;

 private:
  int tame_ = 0;
  PrecInt wild_;
};

// c^k / k!, for c with v_p(c) >= 1 (or k < p). Output keeps the precision of c.
PrecInt divided_power(const PrecInt& c, u64 k);

// (1/m!) prod_{h<m} (n - h); loses v_p(m!) digits.
PrecInt binom(const PrecInt& n, u64 m);
// Integer n: exact binomial reduced mod p^r (no loss).
PrecInt binom(i64 n, u64 m, i64 p, int precision);

// Projection Z_p^x -> 1 + pZ_p killing the (p-1)-st roots of unity.
PrecInt unit_project(const PrecInt& d);

// Teichmuller representative omega(d) = d / unit_project(d).
PrecInt teichmuller(const PrecInt& d);

// d^n for d in 1 + pZ_p and n in Z_p, by the binomial series.
PrecInt pow_unit(const PrecInt& d, const PrecInt& n);

// d^chi for a unit d.
PrecInt eval_char(const Weight& chi, const PrecInt& d);

// Smallest m >= 0 with chi - chi_m in p^r (p-1) W.
u64 reduce_weight(const Weight& chi, int r);

// log(u) for u in 1 + pZ_p, by the alternating series of log(1 + x).
PrecInt log_one_unit(const PrecInt& u);

}  // namespace pwl
