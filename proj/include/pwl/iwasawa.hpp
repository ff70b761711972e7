#pragma once

// Lambda_0 = Z_p[[X]]^{p(p-1)} modulo (p^r, X^d) on each component, with
// component zeta written in X = z - zeta. Specialisation at integer or
// p-adic weights, the family representation rho_{z-2} on Lambda_0^N and the
// truncation idempotents.

#include <vector>

#include "pwl/pi0.hpp"
#include "pwl/symrep.hpp"

namespace pwl {

class Lambda0Elt {
 public:
  Lambda0Elt() = default;
  static Lambda0Elt zero(i64 p, int r, int d);
  static Lambda0Elt constant(i64 p, int r, int d, i64 c);
  static Lambda0Elt constant(const PrecInt& c, int d);
  // z: component zeta is zeta + X.
  static Lambda0Elt z(i64 p, int r, int d);
  static Lambda0Elt e_zeta(i64 p, int r, int d, int zeta);
  // (1+N)^z; needs p | N.
  static Lambda0Elt one_n(i64 p, int r, int d, i64 N);
  // chi -> u^chi for a unit u.
  static Lambda0Elt character(const PrecInt& u, int d);

  i64 prime() const { return p_; }
  int precision() const { return r_; }
  int degree() const { return d_; }
  int components() const { return static_cast<int>(comp_.size()); }
  const std::vector<u64>& component(int zeta) const { return comp_[static_cast<size_t>(zeta)]; }
  std::vector<u64>& component(int zeta) { return comp_[static_cast<size_t>(zeta)]; }
  ModRing ring() const { return ModRing(p_, r_); }

  Lambda0Elt operator+(const Lambda0Elt& o) const;
  Lambda0Elt operator-(const Lambda0Elt& o) const;
  Lambda0Elt operator*(const Lambda0Elt& o) const;
  Lambda0Elt scaled(u64 c) const;
  bool operator==(const Lambda0Elt& o) const;
  bool is_zero() const;

 private:
  void check(const Lambda0Elt& o) const;

  i64 p_ = 0;
  int r_ = 0;
  int d_ = 0;
  std::vector<std::vector<u64>> comp_;
};

// Coefficients of d^zeta exp(X log<d>) mod (p^r, X^deg).
std::vector<u64> char_series(const PrecInt& d, int zeta, int deg);

// Component index chi^{(1)} and value at the specialisation point.
PrecInt sp_k(i64 k, const Lambda0Elt& F);
PrecInt sp_chi(const Weight& chi, const Lambda0Elt& F);

struct FamilyVec {
  i64 p = 0;
  int r = 0;
  int d = 0;
  size_t out_width = 0;
  std::vector<Lambda0Elt> coords;  // length in_width

  size_t in_width() const { return coords.size(); }
};

// p(r + d).
size_t family_tail(i64 p, int r, int d);

FamilyVec make_family(i64 p, int r, int d, size_t out_width, std::vector<Lambda0Elt> coords);

// rho_{z-2}(A, F) on the first out_width coordinates.
FamilyVec act_family(const Pi0Mat& A, const FamilyVec& F, size_t out_width);
FamilyVec act_family(const Pi0Mat& A, const FamilyVec& F);

// Specialise every coordinate at weight k (the result carries chi_{k-2}).
SeqVec sp_family(i64 k, const FamilyVec& F);

// Keep coordinates 0..k0-2 / k0-1..end; x - x is the zero of either coordinate type.
template <class V>
V trunc_minus(int k0, V v) {
  for (size_t i = 0; i < v.coords.size(); ++i)
    if (static_cast<int>(i) > k0 - 2) v.coords[i] = v.coords[i] - v.coords[i];
  return v;
}

template <class V>
V trunc_plus(int k0, V v) {
  for (size_t i = 0; i < v.coords.size() && static_cast<int>(i) <= k0 - 2; ++i)
    v.coords[i] = v.coords[i] - v.coords[i];
  return v;
}

// Whether G lies in p^v (z - k0) Lambda_0 (or p^v Lambda_0 when linear is
// false), as far as the precision (p^r, X^d) can tell.
bool divisible_by(const Lambda0Elt& G, int v, i64 k0, bool linear);

}  // namespace pwl
