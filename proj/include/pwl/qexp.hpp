#pragma once

// Truncated q-expansions over Q or Z/p^r, Eisenstein series, Hecke operators
// on coefficients in two normalizations, and the pairing <A, f> = a_1(A f).

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <string>
#include <vector>

#include "pwl/padic.hpp"

namespace pwl {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct RationalRing {
  using value = Rat;
  value from_int(i64 k) const { return Rat(k); }
  value from_big(const BigInt& k) const { return Rat(k); }
  static std::string tag() { return "rational"; }
  static bool is_zero(const value& x) { return x == 0; }
};

struct PadicRing {
  using value = PrecInt;
  i64 p = 0;
  int r = 0;
  value from_int(i64 k) const { return PrecInt(p, r, k); }
  value from_big(const BigInt& k) const {
    BigInt m = prime_power(p, r);
    BigInt y = k % m;
    if (y < 0) y += m;
    return PrecInt::from_residue(p, r, static_cast<u64>(y));
  }
  static std::string tag() { return "padic"; }
  static bool is_zero(const value& x) { return x.is_zero(); }
};

template <class Ring>
struct QExp {
  Ring ring;
  std::vector<typename Ring::value> coeffs;  // a_0 .. a_T

  size_t T() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  const typename Ring::value& at(size_t h) const {
    if (h >= coeffs.size())
      fail(ErrorKind::TruncationTooShort, "a_" + std::to_string(h) + " requested from a q-expansion known to q^" + std::to_string(T()));
    return coeffs[h];
  }
  bool operator==(const QExp& o) const { return coeffs == o.coeffs; }
};

template <class Ring>
struct DirichletChar {
  i64 N = 1;
  std::vector<typename Ring::value> values;  // indexed by n mod N; 0 off the units

  typename Ring::value operator()(i64 n) const { return values[static_cast<size_t>(((n % N) + N) % N)]; }

  static DirichletChar trivial(i64 N, const Ring& ring) {
    DirichletChar e;
    e.N = N;
    for (i64 n = 0; n < N; ++n) e.values.push_back(ring.from_int(std::gcd(n, N) == 1 ? 1 : 0));
    return e;
  }
  // Legendre symbol mod an odd prime N.
  static DirichletChar quadratic(i64 N, const Ring& ring) {
    if (!is_prime(N) || N == 2) fail(ErrorKind::BadArgument, "quadratic character needs an odd prime modulus");
    DirichletChar e;
    e.N = N;
    for (i64 n = 0; n < N; ++n) {
      if (n == 0) {
        e.values.push_back(ring.from_int(0));
        continue;
      }
      ModRing R(N, 1);
      u64 t = R.pow(static_cast<u64>(n), static_cast<u64>((N - 1) / 2));
      e.values.push_back(ring.from_int(t == 1 ? 1 : -1));
    }
    return e;
  }
};

enum class Normalization { Cohomological, Classical };

// B_k with B_1 = -1/2.
Rat bernoulli(int k);
BigInt divisor_sum(i64 n, int e);

// E_k = -B_k/(2k) + sum sigma_{k-1}(h) q^h for even k >= 4.
QExp<RationalRing> eisenstein(int k, size_t T);

// Reduction of rational coefficients to Z/p^r; NotAUnit on a p in a denominator.
QExp<PadicRing> reduce_qexp(const QExp<RationalRing>& f, i64 p, int r);

namespace detail {
template <class V>
V power_of(V base, int e, V one) {
  V acc = one;
  for (int i = 0; i < e; ++i) acc = acc * base;
  return acc;
}
}  // namespace detail

// T_n by a_m(T_n f) = sum_{d | (m, n)} eps(d) d^e a_{mn/d^2}, e = k-2 (cohomological) or k-1 (classical).
// For prime n this is the two-term formula. out_T defaults to floor(T / n).
template <class Ring>
QExp<Ring> hecke_T(i64 n, int k, const DirichletChar<Ring>& eps, const QExp<Ring>& f, Normalization norm,
                   long out_T = -1) {
  if (n < 1) fail(ErrorKind::BadArgument, "T_n needs n >= 1");
  size_t maxT = f.T() / static_cast<size_t>(n);
  size_t T = out_T < 0 ? maxT : static_cast<size_t>(out_T);
  if (T > maxT)
    fail(ErrorKind::TruncationTooShort, "T_" + std::to_string(n) + " to q^" + std::to_string(T) + " needs input to q^" +
                                            std::to_string(T * static_cast<size_t>(n)));
  int e = norm == Normalization::Cohomological ? k - 2 : k - 1;
  const Ring& R = f.ring;
  QExp<Ring> out{R, {}};
  for (size_t m = 0; m <= T; ++m) {
    auto acc = R.from_int(0);
    i64 g = m == 0 ? n : std::gcd(static_cast<i64>(m), n);
    for (i64 d = 1; d <= g; ++d) {
      if (g % d) continue;
      auto w = eps(d) * detail::power_of(R.from_int(d), e, R.from_int(1));
      if (Ring::is_zero(w)) continue;
      acc = acc + w * f.at(static_cast<size_t>((static_cast<i64>(m) * n) / (d * d)));
    }
    out.coeffs.push_back(acc);
  }
  return out;
}

// eps(n) n^{k-2} f.
template <class Ring>
QExp<Ring> hecke_S(i64 n, int k, const DirichletChar<Ring>& eps, const QExp<Ring>& f) {
  if (std::gcd(n, eps.N) != 1) fail(ErrorKind::NotCoprime, std::to_string(n) + " is not prime to the level " + std::to_string(eps.N));
  const Ring& R = f.ring;
  auto c = eps(n) * detail::power_of(R.from_int(n), k - 2, R.from_int(1));
  QExp<Ring> out{R, {}};
  for (const auto& a : f.coeffs) out.coeffs.push_back(c * a);
  return out;
}

struct HeckeLetter {
  enum class Kind { T, S } kind = Kind::T;
  i64 n = 1;
};

// a_1 of A f for A = A_1 ... A_m (A_m applied first).
template <class Ring>
typename Ring::value pairing(const std::vector<HeckeLetter>& A, int k, const DirichletChar<Ring>& eps, const QExp<Ring>& f,
                             Normalization norm) {
  QExp<Ring> g = f;
  for (auto it = A.rbegin(); it != A.rend(); ++it)
    g = it->kind == HeckeLetter::Kind::T ? hecke_T(it->n, k, eps, g, norm) : hecke_S(it->n, k, eps, g);
  return g.at(1);
}

// v_p(a_p(f)) < s.
bool slope_check(const QExp<PadicRing>& f, int s);

}  // namespace pwl
