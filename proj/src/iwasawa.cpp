#include "pwl/iwasawa.hpp"

#include <algorithm>

namespace pwl {

namespace {

size_t component_count(i64 p) { return static_cast<size_t>(p * (p - 1)); }

// a <- a * b mod X^deg
std::vector<u64> series_mul(const ModRing& R, const std::vector<u64>& a, const std::vector<u64>& b) {
  size_t n = a.size();
  std::vector<u64> out(n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; i + j < n; ++j) out[i + j] = R.add(out[i + j], R.mul(a[i], b[j]));
  }
  return out;
}

// a * (X + c)
void mul_linear(const ModRing& R, std::vector<u64>& a, u64 c) {
  for (size_t e = a.size(); e-- > 0;) {
    u64 v = R.mul(a[e], c);
    if (e > 0) v = R.add(v, a[e - 1]);
    a[e] = v;
  }
}

PrecInt eval_series(const std::vector<u64>& g, const PrecInt& x) {
  PrecInt acc(x.prime(), x.precision(), 0);
  for (size_t e = g.size(); e-- > 0;) acc = acc * x + PrecInt::from_residue(x.prime(), x.precision(), g[e]);
  return acc;
}

}  // namespace

Lambda0Elt Lambda0Elt::zero(i64 p, int r, int d) {
  if (d < 1) fail(ErrorKind::BadArgument, "X-adic precision must be positive");
  Lambda0Elt x;
  x.p_ = p;
  x.r_ = r;
  x.d_ = d;
  ModRing R(p, r);  // validates p and r
  x.comp_.assign(component_count(p), std::vector<u64>(static_cast<size_t>(d), 0));
  return x;
}

Lambda0Elt Lambda0Elt::constant(i64 p, int r, int d, i64 c) { return constant(PrecInt(p, r, c), d); }

Lambda0Elt Lambda0Elt::constant(const PrecInt& c, int d) {
  Lambda0Elt x = zero(c.prime(), c.precision(), d);
  for (auto& s : x.comp_) s[0] = c.residue();
  return x;
}

Lambda0Elt Lambda0Elt::z(i64 p, int r, int d) {
  Lambda0Elt x = zero(p, r, d);
  ModRing R(p, r);
  for (size_t zeta = 0; zeta < x.comp_.size(); ++zeta) {
    x.comp_[zeta][0] = R.reduce(static_cast<i64>(zeta));
    if (d > 1) x.comp_[zeta][1] = 1 % R.mod;
  }
  return x;
}

Lambda0Elt Lambda0Elt::e_zeta(i64 p, int r, int d, int zeta) {
  Lambda0Elt x = zero(p, r, d);
  if (zeta < 0 || static_cast<size_t>(zeta) >= x.comp_.size()) fail(ErrorKind::BadRange, "component index out of range");
  x.comp_[static_cast<size_t>(zeta)][0] = 1 % x.ring().mod;
  return x;
}

Lambda0Elt Lambda0Elt::one_n(i64 p, int r, int d, i64 N) {
  if (N % p != 0) fail(ErrorKind::BadLevel, "(1+N)^z needs p | N");
  return character(PrecInt(p, r, 1 + N), d);
}

Lambda0Elt Lambda0Elt::character(const PrecInt& u, int d) {
  Lambda0Elt x = zero(u.prime(), u.precision(), d);
  for (size_t zeta = 0; zeta < x.comp_.size(); ++zeta) x.comp_[zeta] = char_series(u, static_cast<int>(zeta), d);
  return x;
}

void Lambda0Elt::check(const Lambda0Elt& o) const {
  if (p_ != o.p_ || r_ != o.r_ || d_ != o.d_)
    fail(ErrorKind::PrecisionMismatch, "Lambda_0 elements at different (p, r, d)");
}

Lambda0Elt Lambda0Elt::operator+(const Lambda0Elt& o) const {
  check(o);
  ModRing R = ring();
  Lambda0Elt x = *this;
  for (size_t k = 0; k < comp_.size(); ++k)
    for (size_t e = 0; e < comp_[k].size(); ++e) x.comp_[k][e] = R.add(comp_[k][e], o.comp_[k][e]);
  return x;
}

Lambda0Elt Lambda0Elt::operator-(const Lambda0Elt& o) const {
  check(o);
  ModRing R = ring();
  Lambda0Elt x = *this;
  for (size_t k = 0; k < comp_.size(); ++k)
    for (size_t e = 0; e < comp_[k].size(); ++e) x.comp_[k][e] = R.sub(comp_[k][e], o.comp_[k][e]);
  return x;
}

Lambda0Elt Lambda0Elt::operator*(const Lambda0Elt& o) const {
  check(o);
  ModRing R = ring();
  Lambda0Elt x = *this;
  for (size_t k = 0; k < comp_.size(); ++k) x.comp_[k] = series_mul(R, comp_[k], o.comp_[k]);
  return x;
}

Lambda0Elt Lambda0Elt::scaled(u64 c) const {
  ModRing R = ring();
  Lambda0Elt x = *this;
  c %= R.mod;
  for (auto& s : x.comp_)
    for (auto& v : s) v = R.mul(v, c);
  return x;
}

bool Lambda0Elt::operator==(const Lambda0Elt& o) const {
  return p_ == o.p_ && r_ == o.r_ && d_ == o.d_ && comp_ == o.comp_;
}

bool Lambda0Elt::is_zero() const {
  for (const auto& s : comp_)
    for (u64 v : s)
      if (v != 0) return false;
  return true;
}

std::vector<u64> char_series(const PrecInt& d, int zeta, int deg) {
  if (!d.is_unit()) fail(ErrorKind::NotAUnit, "character series at non-unit");
  PrecInt L = log_one_unit(unit_project(d));
  PrecInt lead = d.pow(static_cast<u64>(zeta));
  std::vector<u64> out(static_cast<size_t>(deg));
  for (int h = 0; h < deg; ++h) out[static_cast<size_t>(h)] = (lead * divided_power(L, static_cast<u64>(h))).residue();
  return out;
}

PrecInt sp_k(i64 k, const Lambda0Elt& F) {
  i64 p = F.prime();
  return sp_chi(Weight::integer(p, F.precision(), k), F);
}

PrecInt sp_chi(const Weight& chi, const Lambda0Elt& F) {
  i64 p = F.prime();
  int r = std::min(F.precision(), chi.wild().precision());
  u64 zeta = reduce_weight(chi, 1);
  PrecInt x = chi.wild().with_precision(r) - static_cast<i64>(zeta);
  if (x.residue() % static_cast<u64>(p) != 0) fail(ErrorKind::InternalInconsistency, "specialisation point not in pZ_p");
  PrecInt v = eval_series(F.component(static_cast<int>(zeta)), x);
  int out = std::min(r, F.degree());
  return v.with_precision(out);
}

size_t family_tail(i64 p, int r, int d) { return static_cast<size_t>(p) * static_cast<size_t>(r + d); }

FamilyVec make_family(i64 p, int r, int d, size_t out_width, std::vector<Lambda0Elt> coords) {
  FamilyVec F;
  F.p = p;
  F.r = r;
  F.d = d;
  F.out_width = out_width;
  F.coords = std::move(coords);
  size_t need = out_width + family_tail(p, r, d);
  while (F.coords.size() < need) F.coords.push_back(Lambda0Elt::zero(p, r, d));
  return F;
}

FamilyVec act_family(const Pi0Mat& A, const FamilyVec& F, size_t out_width) {
  i64 p = F.p;
  if (A.prime() != p) fail(ErrorKind::PrecisionMismatch, "act_family: primes differ");
  if (A.precision() < F.r) fail(ErrorKind::PrecisionMismatch, "act_family: matrix known to fewer digits than the vector");
  int r = F.r;
  int deg = F.d;
  size_t ftail = family_tail(p, r, deg);
  if (F.in_width() < out_width + ftail)
    fail(ErrorKind::WidthInsufficient, "act_family: need " + std::to_string(out_width + ftail) + " input coordinates, have " +
                                           std::to_string(F.in_width()));
  ModRing R(p, r);
  // c^{j-h}/(j-h)! vanishes mod p^r once j - i reaches the universal tail.
  size_t tail = std::min(universal_tail(p, r), ftail);
  size_t J = out_width + tail;

  PrecInt c = A.c().with_precision(r);
  PrecInt dd = A.d().with_precision(r);
  std::vector<u64> dp(J + 1);
  for (size_t k = 0; k <= J; ++k) dp[k] = divided_power(c, k).residue();
  std::vector<u64> dinv(out_width + J + 3);
  u64 di = dd.inverse().residue();
  dinv[0] = 1 % R.mod;
  for (size_t k = 1; k < dinv.size(); ++k) dinv[k] = R.mul(dinv[k - 1], di);
  std::vector<u64> pa(out_width + 1), pb(out_width + 1);
  pa[0] = pb[0] = 1 % R.mod;
  for (size_t k = 1; k <= out_width; ++k) {
    pa[k] = R.mul(pa[k - 1], A.a().residue() % R.mod);
    pb[k] = R.mul(pb[k - 1], A.b().residue() % R.mod);
  }
  std::vector<std::vector<u64>> C(out_width + 1);
  for (size_t i = 0; i <= out_width; ++i) {
    C[i].assign(i + 1, 1 % R.mod);
    for (size_t k = 1; k < i; ++k) C[i][k] = R.add(C[i - 1][k - 1], C[i - 1][k]);
  }

  FamilyVec out;
  out.p = p;
  out.r = r;
  out.d = deg;
  out.out_width = out_width > ftail ? out_width - ftail : 0;
  out.coords.assign(out_width, Lambda0Elt::zero(p, r, deg));

  size_t K = component_count(p);
  size_t D = static_cast<size_t>(deg);
  for (size_t zeta = 0; zeta < K; ++zeta) {
    std::vector<u64> cs = char_series(dd, static_cast<int>(zeta), deg);
    for (size_t i = 0; i < out_width; ++i) {
      // poly[L] = prod_{m=i}^{i+L-1} (X + zeta - 2 - m)
      std::vector<std::vector<u64>> poly(J + 1, std::vector<u64>(D, 0));
      poly[0][0] = 1 % R.mod;
      for (size_t L = 0; L < J; ++L) {
        poly[L + 1] = poly[L];
        mul_linear(R, poly[L + 1], R.reduce(static_cast<i64>(zeta) - 2 - static_cast<i64>(i + L)));
      }
      std::vector<u64> acc(D, 0);
      size_t jmax = std::min(i + tail, F.in_width());
      for (size_t j = 0; j < jmax; ++j) {
        const auto& Fj = F.coords[j].component(static_cast<int>(zeta));
        bool zero = std::all_of(Fj.begin(), Fj.end(), [](u64 v) { return v == 0; });
        if (zero) continue;
        std::vector<u64> kern(D, 0);
        for (size_t h = 0; h <= std::min(i, j); ++h) {
          size_t L = j - h;
          if (dp[L] == 0) continue;
          u64 s = R.mul(C[i][h], R.mul(pa[h], pb[i - h]));
          s = R.mul(s, R.mul(dp[L], dinv[2 + i + j - h]));
          if (s == 0) continue;
          for (size_t e = 0; e < D; ++e) kern[e] = R.add(kern[e], R.mul(s, poly[L][e]));
        }
        auto t = series_mul(R, Fj, kern);
        for (size_t e = 0; e < D; ++e) acc[e] = R.add(acc[e], t[e]);
      }
      out.coords[i].component(static_cast<int>(zeta)) = series_mul(R, acc, cs);
    }
  }
  return out;
}

FamilyVec act_family(const Pi0Mat& A, const FamilyVec& F) { return act_family(A, F, F.out_width); }

SeqVec sp_family(i64 k, const FamilyVec& F) {
  int r = std::min(F.r, F.d);
  SeqVec s;
  s.chi = Weight::integer(F.p, r, k - 2);
  s.p = F.p;
  s.r = r;
  s.out_width = F.out_width;
  s.coords.resize(F.in_width());
  for (size_t i = 0; i < F.in_width(); ++i) s.coords[i] = sp_k(k, F.coords[i]).residue();
  return s;
}

bool divisible_by(const Lambda0Elt& G, int v, i64 k0, bool linear) {
  i64 p = G.prime();
  int r = G.precision();
  if (v >= r) return G.is_zero();
  u64 pv = prime_power(p, v);
  int rr = r - v;
  ModRing R(p, rr);
  for (int zeta = 0; zeta < G.components(); ++zeta) {
    const auto& g = G.component(zeta);
    std::vector<u64> q(g.size());
    for (size_t e = 0; e < g.size(); ++e) {
      if (g[e] % pv != 0) return false;
      q[e] = (g[e] / pv) % R.mod;
    }
    if (!linear) continue;
    i64 a = zeta - k0;
    if (a % p != 0) continue;  // X + a is a unit
    int w = rr;
    if (a != 0) w = std::min<i64>(rr, static_cast<i64>(G.degree()) * vp(p, a));
    PrecInt at = eval_series(q, PrecInt(p, rr, -a));
    if (at.residue() % prime_power(p, w) != 0) return false;
  }
  return true;
}

}  // namespace pwl
