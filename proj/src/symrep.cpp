#include "pwl/symrep.hpp"

#include <algorithm>

namespace pwl {

namespace {

std::vector<std::vector<u64>> pascal(const ModRing& R, size_t n) {
  std::vector<std::vector<u64>> C(n + 1);
  for (size_t i = 0; i <= n; ++i) {
    C[i].assign(i + 1, 1 % R.mod);
    for (size_t k = 1; k < i; ++k) C[i][k] = R.add(C[i - 1][k - 1], C[i - 1][k]);
  }
  return C;
}

std::vector<u64> powers(const ModRing& R, u64 x, size_t count) {
  std::vector<u64> out(count + 1);
  out[0] = 1 % R.mod;
  for (size_t k = 1; k <= count; ++k) out[k] = R.mul(out[k - 1], x);
  return out;
}

}  // namespace

size_t universal_tail(i64 p, int r) {
  if (p < 3) fail(ErrorKind::BadArgument, "p must be odd");
  i64 num = static_cast<i64>(r) * (p - 1);
  return static_cast<size_t>((num + (p - 2) - 1) / (p - 2));
}

SeqVec make_seq(const Weight& chi, int r, size_t out_width, std::vector<u64> coords) {
  SeqVec s;
  s.chi = chi;
  s.p = chi.prime();
  s.r = r;
  s.out_width = out_width;
  s.coords = std::move(coords);
  size_t need = out_width + universal_tail(s.p, r);
  if (s.coords.size() < need) s.coords.resize(need, 0);
  ModRing R(s.p, r);
  for (auto& x : s.coords) x %= R.mod;
  return s;
}

std::vector<std::vector<u64>> sym_matrix(int n, const Pi0Mat& A, int r) {
  i64 p = A.prime();
  r = std::min(r, A.precision());
  ModRing R(p, r);
  size_t N = static_cast<size_t>(n);
  auto C = pascal(R, N);
  auto pa = powers(R, A.a().residue() % R.mod, N);
  auto pb = powers(R, A.b().residue() % R.mod, N);
  auto pc = powers(R, A.c().residue() % R.mod, N);
  auto pd = powers(R, A.d().residue() % R.mod, N);
  std::vector<std::vector<u64>> M(N + 1, std::vector<u64>(N + 1, 0));
  for (size_t i = 0; i <= N; ++i) {
    for (size_t j = 0; j <= N; ++j) {
      u64 s = 0;
      size_t hlo = j > N - i ? j - (N - i) : 0;
      for (size_t h = hlo; h <= std::min(i, j); ++h) {
        u64 t = R.mul(C[i][h], C[N - i][j - h]);
        t = R.mul(t, R.mul(pa[h], pb[i - h]));
        t = R.mul(t, R.mul(pc[j - h], pd[N - i - j + h]));
        s = R.add(s, t);
      }
      M[i][j] = s;
    }
  }
  return M;
}

SymVec act_sym(int n, const Pi0Mat& A, const SymVec& v) {
  if (v.n != n || v.coords.size() != static_cast<size_t>(n) + 1)
    fail(ErrorKind::DimensionMismatch, "act_sym: vector is not in Sym^" + std::to_string(n));
  if (v.p != A.prime()) fail(ErrorKind::PrecisionMismatch, "act_sym: primes differ");
  int r = std::min(v.r, A.precision());
  ModRing R(v.p, r);
  auto M = sym_matrix(n, A, r);
  SymVec out = SymVec::zero(v.p, r, n);
  for (size_t i = 0; i <= static_cast<size_t>(n); ++i) {
    u64 s = 0;
    for (size_t j = 0; j <= static_cast<size_t>(n); ++j) s = R.add(s, R.mul(M[i][j], v.coords[j] % R.mod));
    out.coords[i] = s;
  }
  return out;
}

SeqVec act_universal(const Pi0Mat& A, const SeqVec& alpha, size_t out_width) {
  i64 p = alpha.p;
  if (A.prime() != p) fail(ErrorKind::PrecisionMismatch, "act_universal: primes differ");
  int r = std::min({alpha.r, A.precision(), alpha.chi.wild().precision()});
  size_t tail = universal_tail(p, r);
  if (alpha.in_width() < out_width + tail)
    fail(ErrorKind::WidthInsufficient, "act_universal: need " + std::to_string(out_width + tail) + " input coordinates, have " +
                                           std::to_string(alpha.in_width()));
  ModRing R(p, r);
  size_t J = out_width + tail;

  PrecInt c = A.c().with_precision(r);
  std::vector<u64> dp(J + 1);
  for (size_t k = 0; k <= J; ++k) dp[k] = divided_power(c, k).residue();

  PrecInt d = A.d().with_precision(r);
  u64 e0 = eval_char(alpha.chi, d).residue();
  auto dinv = powers(R, d.inverse().residue(), out_width + J);
  auto pa = powers(R, A.a().residue() % R.mod, out_width);
  auto pb = powers(R, A.b().residue() % R.mod, out_width);
  auto C = pascal(R, out_width);
  u64 n = alpha.chi.wild().residue() % R.mod;

  SeqVec out;
  out.chi = alpha.chi;
  out.p = p;
  out.r = r;
  out.out_width = out_width > tail ? out_width - tail : 0;
  out.coords.assign(out_width, 0);
  std::vector<u64> F(J + 1);
  for (size_t i = 0; i < out_width; ++i) {
    // F[L] = prod_{m=i}^{i+L-1} (n - m)
    F[0] = 1 % R.mod;
    for (size_t L = 0; L < J; ++L) F[L + 1] = R.mul(F[L], R.sub(n, R.reduce(static_cast<i64>(i + L))));
    u64 acc = 0;
    size_t jmax = std::min(i + tail, alpha.in_width());
    for (size_t j = 0; j < jmax; ++j) {
      u64 aj = alpha.coords[j] % R.mod;
      if (aj == 0) continue;
      u64 s = 0;
      for (size_t h = 0; h <= std::min(i, j); ++h) {
        size_t L = j - h;
        if (dp[L] == 0) continue;
        u64 t = R.mul(C[i][h], F[L]);
        t = R.mul(t, R.mul(pa[h], pb[i - h]));
        t = R.mul(t, dp[L]);
        t = R.mul(t, R.mul(e0, dinv[i + j - h]));
        s = R.add(s, t);
      }
      acc = R.add(acc, R.mul(aj, s));
    }
    out.coords[i] = acc;
  }
  return out;
}

SeqVec act_universal(const Pi0Mat& A, const SeqVec& alpha) { return act_universal(A, alpha, alpha.out_width); }

SymVec specialize(int n, const SeqVec& alpha) {
  const Weight& chi = alpha.chi;
  if (chi.tame() != static_cast<int>(((n % (alpha.p - 1)) + (alpha.p - 1)) % (alpha.p - 1)) || !chi.wild().equals(n))
    fail(ErrorKind::BadWeight, "specialize: weight is not chi_" + std::to_string(n));
  if (alpha.in_width() < static_cast<size_t>(n) + 1) fail(ErrorKind::WidthInsufficient, "specialize: fewer than n+1 coordinates");
  SymVec v = SymVec::zero(alpha.p, alpha.r, n);
  std::copy(alpha.coords.begin(), alpha.coords.begin() + n + 1, v.coords.begin());
  return v;
}

SymVec congr_project(int r, int n1, int n0, const SymVec& v) {
  if (v.n != n1) fail(ErrorKind::DimensionMismatch, "congr_project: vector degree differs from n1");
  if (n0 > n1 || n0 < 0) fail(ErrorKind::CongruenceViolated, "congr_project: need 0 <= n0 <= n1");
  i64 step = static_cast<i64>(prime_power(v.p, r - 1)) * (v.p - 1);
  if ((n1 - n0) % step != 0)
    fail(ErrorKind::CongruenceViolated, "congr_project: n1 - n0 not divisible by p^(r-1)(p-1)");
  int rr = std::min(r, v.r);
  ModRing R(v.p, rr);
  SymVec out = SymVec::zero(v.p, rr, n0);
  for (int i = 0; i <= n0; ++i) out.coords[static_cast<size_t>(i)] = v.coords[static_cast<size_t>(i)] % R.mod;
  return out;
}

IdentitySides binom_identity(const PrecInt& n, int i, int j, int h) {
  if (h < 0 || h > std::min(i, j)) fail(ErrorKind::BadRange, "binom_identity: need h <= min(i, j)");
  i64 p = n.prime();
  int r = n.precision();
  PrecInt lhs(p, r, 0);
  for (int m = h; m <= std::min(i, j); ++m) {
    PrecInt t = binom(n - m, static_cast<u64>(i - m)) * binom(j, static_cast<u64>(m), p, r) *
                binom(m, static_cast<u64>(h), p, r);
    lhs = ((m - h) % 2 == 0) ? lhs + t : lhs - t;
  }
  PrecInt rhs = binom(n - j, static_cast<u64>(i - h)) * binom(j, static_cast<u64>(h), p, r);
  return {lhs, rhs};
}

}  // namespace pwl
