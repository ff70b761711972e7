#include "pwl/padic.hpp"

#include <algorithm>
#include <sstream>

namespace pwl {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadArgument: return "BadArgument";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::PrecisionMismatch: return "PrecisionMismatch";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotOneUnit: return "NotOneUnit";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::WidthInsufficient: return "WidthInsufficient";
    case ErrorKind::CongruenceViolated: return "CongruenceViolated";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::BadLevel: return "BadLevel";
    case ErrorKind::BadWeight: return "BadWeight";
    case ErrorKind::NotInGroup: return "NotInGroup";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NoLift: return "NoLift";
    case ErrorKind::AmbiguousAtPrecision: return "AmbiguousAtPrecision";
    case ErrorKind::TruncationTooShort: return "TruncationTooShort";
    case ErrorKind::ContractViolated: return "ContractViolated";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 prime_power(i64 p, int e) {
  if (p < 2 || e < 0) fail(ErrorKind::BadArgument, "prime_power: bad input");
  u64 x = 1;
  for (int i = 0; i < e; ++i) {
    if (x > (u64(1) << 62) / static_cast<u64>(p))
      fail(ErrorKind::BadArgument, "p^r exceeds 2^62 (p=" + std::to_string(p) + ", r=" + std::to_string(e) + ")");
    x *= static_cast<u64>(p);
  }
  return x;
}

int vp(i64 p, i64 n) {
  if (n == 0) fail(ErrorKind::BadArgument, "vp(0)");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int vp_factorial(i64 p, u64 n) {
  int v = 0;
  while (n > 0) {
    n /= static_cast<u64>(p);
    v += static_cast<int>(n);
  }
  return v;
}

ModRing::ModRing(i64 prime, int precision) : p(prime), r(precision) {
  if (!is_prime(prime)) fail(ErrorKind::BadArgument, "not a prime: " + std::to_string(prime));
  if (precision < 0) fail(ErrorKind::BadArgument, "negative precision");
  mod = prime_power(prime, precision);
}

u64 ModRing::pow(u64 a, u64 e) const {
  u64 result = mod == 1 ? 0 : 1;
  a %= mod;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

u64 ModRing::inv(u64 a) const {
  if (mod == 1) return 0;
  if (!is_unit(a)) fail(ErrorKind::NotAUnit, "inverse of non-unit " + std::to_string(a) + " mod " + std::to_string(mod));
  i128 t = 0, nt = 1, rr = static_cast<i128>(mod), nr = static_cast<i128>(a % mod);
  while (nr != 0) {
    i128 q = rr / nr;
    i128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = rr - q * nr;
    rr = nr;
    nr = tmp;
  }
  return reduce128(t);
}

int ModRing::val(u64 a) const {
  a %= mod;
  if (a == 0) return r;
  int v = 0;
  while (a % static_cast<u64>(p) == 0) {
    a /= static_cast<u64>(p);
    ++v;
  }
  return v;
}

PrecInt::PrecInt(i64 prime, int precision, i64 value) {
  ModRing R(prime, precision);
  p_ = prime;
  r_ = precision;
  mod_ = R.mod;
  residue_ = R.reduce(value);
}

PrecInt PrecInt::from_residue(i64 prime, int precision, u64 residue) {
  PrecInt x(prime, precision, 0);
  x.residue_ = residue % x.mod_;
  return x;
}

i64 PrecInt::centered() const {
  i64 v = static_cast<i64>(residue_);
  if (residue_ > mod_ / 2) v -= static_cast<i64>(mod_);
  return v;
}

PrecInt PrecInt::with_precision(int precision) const {
  if (precision > r_)
    fail(ErrorKind::PrecisionExhausted,
         "requested " + std::to_string(precision) + " digits, only " + std::to_string(r_) + " known");
  return from_residue(p_, precision, residue_);
}

int PrecInt::valuation() const { return ring().val(residue_); }

PrecInt PrecInt::inverse() const { return from_residue(p_, r_, ring().inv(residue_)); }

PrecInt PrecInt::pow(u64 e) const { return from_residue(p_, r_, ring().pow(residue_, e)); }

PrecInt PrecInt::divide_by_p_power(int k) const {
  if (k < 0) fail(ErrorKind::BadArgument, "negative shift");
  if (k > r_) fail(ErrorKind::PrecisionExhausted, "division by p^" + std::to_string(k) + " at precision " + std::to_string(r_));
  u64 pk = prime_power(p_, k);
  if (residue_ % pk != 0) fail(ErrorKind::BadArgument, "not divisible by p^" + std::to_string(k));
  return from_residue(p_, r_ - k, residue_ / pk);
}

void PrecInt::match(const PrecInt& o) {
  if (p_ != o.p_) fail(ErrorKind::PrecisionMismatch, "primes differ: " + std::to_string(p_) + " vs " + std::to_string(o.p_));
  if (o.r_ < r_) *this = with_precision(o.r_);
}

PrecInt PrecInt::operator-() const { return from_residue(p_, r_, residue_ == 0 ? 0 : mod_ - residue_); }

PrecInt& PrecInt::operator+=(const PrecInt& o) {
  match(o);
  residue_ = ModRing(p_, r_).add(residue_, o.residue_ % mod_);
  return *this;
}

PrecInt& PrecInt::operator-=(const PrecInt& o) {
  match(o);
  residue_ = ModRing(p_, r_).sub(residue_, o.residue_ % mod_);
  return *this;
}

PrecInt& PrecInt::operator*=(const PrecInt& o) {
  match(o);
  residue_ = static_cast<u64>((static_cast<u128>(residue_) * (o.residue_ % mod_)) % mod_);
  return *this;
}

bool operator==(const PrecInt& a, const PrecInt& b) {
  if (a.p_ != b.p_) return false;
  u64 m = std::min(a.mod_, b.mod_);
  return a.residue_ % m == b.residue_ % m;
}

std::string PrecInt::str() const {
  std::ostringstream os;
  os << residue_ << " + O(" << p_ << "^" << r_ << ")";
  return os.str();
}

Weight::Weight(i64 tame, PrecInt wild) : wild_(std::move(wild)) {
  i64 pm1 = wild_.prime() - 1;
  tame_ = static_cast<int>(((tame % pm1) + pm1) % pm1);
}

Weight Weight::integer(i64 p, int precision, i64 k) { return Weight(k, PrecInt(p, precision, k)); }

Weight Weight::wild_only(const PrecInt& n) { return Weight(0, n); }

Weight Weight::operator+(const Weight& o) const { return Weight(tame_ + o.tame_, wild_ + o.wild_); }

Weight Weight::operator-() const { return Weight(-tame_, -wild_); }

Weight Weight::shifted(i64 m) const { return Weight(tame_ + m, wild_ + m); }

std::string Weight::str() const {
  std::ostringstream os;
  os << "(" << tame_ << ", " << wild_.str() << ")";
  return os.str();
}

PrecInt divided_power(const PrecInt& c, u64 k) {
  i64 p = c.prime();
  int r = c.precision();
  int v = vp_factorial(p, k);
  if (v > 0 && c.residue() % static_cast<u64>(p) != 0)
    fail(ErrorKind::BadArgument, "c^k/k! needs v_p(c) >= 1 once k >= p");
  if (v == 0) {
    ModRing R(p, r);
    u64 f = 1;
    for (u64 i = 2; i <= k; ++i) f = R.mul(f, R.reduce(static_cast<i64>(i)));
    return PrecInt::from_residue(p, r, R.mul(R.pow(c.residue(), k), R.inv(f)));
  }
  // c^k is divisible by p^k and k > v, so computing at r + v digits and
  // shifting is exact; the answer mod p^r does not depend on the lift of c.
  if (k >= static_cast<u64>(r + v)) return PrecInt(p, r, 0);
  ModRing big(p, r + v);
  u64 ck = big.pow(c.residue(), k);
  u64 pv = prime_power(p, v);
  ModRing R(p, r);
  u64 unit = 1;
  for (u64 i = 2; i <= k; ++i) {
    u64 j = i;
    while (j % static_cast<u64>(p) == 0) j /= static_cast<u64>(p);
    unit = R.mul(unit, j % R.mod);
  }
  return PrecInt::from_residue(p, r, R.mul((ck / pv) % R.mod, R.inv(unit)));
}

PrecInt binom(const PrecInt& n, u64 m) {
  i64 p = n.prime();
  int r = n.precision();
  int v = vp_factorial(p, m);
  if (v >= r && m > 0)
    fail(ErrorKind::PrecisionExhausted, "binom: v_p(" + std::to_string(m) + "!) >= precision");
  ModRing R(p, r);
  u64 num = 1;
  u64 unit = 1;
  for (u64 h = 0; h < m; ++h) {
    num = R.mul(num, R.sub(n.residue(), R.reduce(static_cast<i64>(h))));
    u64 j = h + 1;
    while (j % static_cast<u64>(p) == 0) j /= static_cast<u64>(p);
    unit = R.mul(unit, j % R.mod);
  }
  u64 pv = prime_power(p, v);
  if (num % pv != 0) fail(ErrorKind::InternalInconsistency, "binom numerator not divisible by p^v(m!)");
  ModRing out(p, r - v);
  return PrecInt::from_residue(p, r - v, out.mul((num / pv) % out.mod, out.inv(unit % out.mod)));
}

PrecInt binom(i64 n, u64 m, i64 p, int precision) {
  int v = vp_factorial(p, m);
  return binom(PrecInt(p, precision + v, n), m).with_precision(precision);
}

PrecInt unit_project(const PrecInt& d) {
  if (!d.is_unit()) fail(ErrorKind::NotAUnit, "unit_project of " + d.str());
  return d * teichmuller(d).inverse();
}

PrecInt teichmuller(const PrecInt& d) {
  if (!d.is_unit()) fail(ErrorKind::NotAUnit, "teichmuller of " + d.str());
  int r = d.precision();
  if (r == 0) return d;
  return d.pow(prime_power(d.prime(), r - 1));
}

PrecInt pow_unit(const PrecInt& d, const PrecInt& n) {
  i64 p = d.prime();
  if (n.prime() != p) fail(ErrorKind::PrecisionMismatch, "pow_unit: primes differ");
  if ((d.residue() % static_cast<u64>(p)) != 1 % static_cast<u64>(p))
    fail(ErrorKind::NotOneUnit, "pow_unit base " + d.str() + " is not 1 mod p");
  int r = std::min(d.precision(), n.precision());
  PrecInt dd = d.with_precision(r);
  PrecInt c = dd - 1;
  ModRing R(p, r);
  u64 nn = n.residue() % R.mod;
  u64 total = 0;
  u64 falling = 1;
  // terms with h(p-2) >= r(p-1) vanish mod p^r; p = 2 is excluded upstream.
  for (u64 h = 0;; ++h) {
    if (p > 2 && static_cast<i64>(h) * (p - 2) >= static_cast<i64>(r) * (p - 1)) break;
    if (p == 2 && h > static_cast<u64>(4 * r + 4)) break;
    if (falling == 0 && h > 0) break;
    total = R.add(total, R.mul(falling, divided_power(c, h).residue()));
    falling = R.mul(falling, R.sub(nn, R.reduce(static_cast<i64>(h))));
  }
  return PrecInt::from_residue(p, r, total);
}

PrecInt eval_char(const Weight& chi, const PrecInt& d) {
  if (!d.is_unit()) fail(ErrorKind::NotAUnit, "character evaluated at non-unit " + d.str());
  int r = std::min(d.precision(), chi.wild().precision());
  PrecInt dd = d.with_precision(r);
  PrecInt expo = chi.wild().with_precision(r) - chi.tame();
  return dd.pow(static_cast<u64>(chi.tame())) * pow_unit(unit_project(dd), expo);
}

u64 reduce_weight(const Weight& chi, int r) {
  i64 p = chi.prime();
  u64 pr = prime_power(p, r);
  u64 w = chi.wild().with_precision(r).residue();
  i64 pm1 = p - 1;
  i64 t = ((chi.tame() - static_cast<i64>(w % static_cast<u64>(pm1))) % pm1 + pm1) % pm1;
  return w + pr * static_cast<u64>(t);
}

PrecInt log_one_unit(const PrecInt& u) {
  i64 p = u.prime();
  int r = u.precision();
  if (u.residue() % static_cast<u64>(p) != 1 % static_cast<u64>(p))
    fail(ErrorKind::NotOneUnit, "log of " + u.str());
  u64 total = 0;
  ModRing R(p, r);
  // x^n/n with v(x) >= 1 has valuation >= n - log_p(n) >= r once n >= 2r + 4.
  for (u64 n = 1; n < static_cast<u64>(2 * r + 4); ++n) {
    int vn = vp(p, static_cast<i64>(n));
    if (static_cast<i64>(n) - vn >= r) continue;
    ModRing big(p, r + vn);
    u64 x = big.sub(u.residue() % big.mod, 1);
    u64 xn = big.pow(x, n);
    u64 pv = prime_power(p, vn);
    u64 unit = (n / pv) % R.mod;
    u64 term = R.mul((xn / pv) % R.mod, R.inv(unit));
    total = (n % 2 == 1) ? R.add(total, term) : R.sub(total, term);
  }
  return PrecInt::from_residue(p, r, total);
}

}  // namespace pwl
