#include "pwl/qexp.hpp"

namespace pwl {

Rat bernoulli(int k) {
  if (k < 0) fail(ErrorKind::BadArgument, "Bernoulli index must be non-negative");
  // sum_{j<=m} binom(m+1, j) B_j = 0 for m >= 1
  std::vector<Rat> B(static_cast<size_t>(k) + 1);
  B[0] = 1;
  for (int m = 1; m <= k; ++m) {
    Rat s = 0;
    BigInt c = 1;  // binom(m+1, j)
    for (int j = 0; j < m; ++j) {
      s += Rat(c) * B[static_cast<size_t>(j)];
      c = c * (m + 1 - j) / (j + 1);
    }
    B[static_cast<size_t>(m)] = -s / Rat(m + 1);
  }
  return B[static_cast<size_t>(k)];
}

BigInt divisor_sum(i64 n, int e) {
  if (n < 1) fail(ErrorKind::BadArgument, "divisor_sum needs n >= 1");
  BigInt s = 0;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    s += boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(e));
    if (d * d != n) s += boost::multiprecision::pow(BigInt(n / d), static_cast<unsigned>(e));
  }
  return s;
}

QExp<RationalRing> eisenstein(int k, size_t T) {
  if (k < 4 || k % 2) fail(ErrorKind::BadWeight, "Eisenstein series needs even k >= 4, got " + std::to_string(k));
  QExp<RationalRing> f;
  f.coeffs.push_back(-bernoulli(k) / Rat(2 * k));
  for (size_t h = 1; h <= T; ++h) f.coeffs.push_back(Rat(divisor_sum(static_cast<i64>(h), k - 1)));
  return f;
}

QExp<PadicRing> reduce_qexp(const QExp<RationalRing>& f, i64 p, int r) {
  PadicRing R{p, r};
  QExp<PadicRing> out{R, {}};
  for (const Rat& a : f.coeffs) {
    BigInt num = boost::multiprecision::numerator(a), den = boost::multiprecision::denominator(a);
    if (den % p == 0) fail(ErrorKind::NotAUnit, "denominator divisible by p");
    out.coeffs.push_back(R.from_big(num) * R.from_big(den).inverse());
  }
  return out;
}

bool slope_check(const QExp<PadicRing>& f, int s) {
  const PrecInt& ap = f.at(static_cast<size_t>(f.ring.p));
  if (ap.precision() <= s) fail(ErrorKind::PrecisionExhausted, "a_p known to fewer than s + 1 digits");
  return ap.valuation() < s;
}

}  // namespace pwl
