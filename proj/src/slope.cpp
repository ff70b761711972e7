#include "pwl/slope.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace pwl {

namespace {

using Poly = std::vector<u64>;  // low-first

Poly pmul(const ModRing& R, const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = R.add(c[i + j], R.mul(a[i], b[j]));
  return c;
}

Poly psub(const ModRing& R, Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = R.sub(a[i], b[i]);
  return a;
}

Poly reduce_poly(const ModRing& R, Poly a) {
  for (auto& x : a) x %= R.mod;
  return a;
}

// Quotient of a by the monic g.
Poly pdiv_monic(const ModRing& R, Poly a, const Poly& g) {
  size_t dg = g.size() - 1;
  if (a.size() <= dg) return {0};
  Poly q(a.size() - dg, 0);
  for (size_t k = a.size(); k-- > dg;) {
    u64 c = a[k];
    q[k - dg] = c;
    if (c == 0) continue;
    for (size_t i = 0; i <= dg; ++i) a[k - dg + i] = R.sub(a[k - dg + i], R.mul(c, g[i]));
  }
  return q;
}

int poly_val(const ModRing& R, const Poly& a) {
  int v = R.r;
  for (u64 x : a) v = std::min(v, R.val(x));
  return v;
}

Mat eval_at(const Poly& f, const Mat& M) {
  const ModRing& R = M.ring();
  Mat acc(R, M.rows(), M.cols());
  Mat I = Mat::identity(R, M.rows());
  for (size_t k = f.size(); k-- > 0;) acc = acc * M + I.scaled(f[k] % R.mod);
  return acc;
}

// Sylvester-type matrix: columns X^j A (j < nb) then X^j B (j < na), n rows.
Mat sylvester(const ModRing& R, const Poly& A, const Poly& Bp, size_t nb, size_t na, size_t n) {
  Mat S(R, n, nb + na);
  for (size_t j = 0; j < nb; ++j)
    for (size_t i = 0; i < A.size() && i + j < n; ++i) S(i + j, j) = A[i] % R.mod;
  for (size_t j = 0; j < na; ++j)
    for (size_t i = 0; i < Bp.size() && i + j < n; ++i) S(i + j, nb + j) = Bp[i] % R.mod;
  return S;
}

Rational make_rational(i64 num, i64 den) {
  i64 g = std::gcd(num, den);
  if (g == 0) g = 1;
  return {num / g, den / g};
}

}  // namespace

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

CharPoly char_poly(const Mat& M) {
  if (M.rows() != M.cols()) fail(ErrorKind::DimensionMismatch, "char_poly of a non-square matrix");
  return {M.ring().p, M.ring().r, charpoly(M)};
}

int NewtonPolygon::count_below(i64 s) const {
  int c = 0;
  for (const auto& seg : segments)
    if (seg.root_valuation.less(s)) c += seg.multiplicity();
  return c;
}

NewtonPolygon newton_polygon(const CharPoly& P) {
  ModRing R = P.ring();
  NewtonPolygon np;
  np.precision = P.r;
  size_t n = P.degree();
  std::vector<std::pair<int, int>> pts;
  for (size_t i = 0; i <= n; ++i) {
    np.censored.push_back(P.coeffs[i] % R.mod == 0);
    pts.emplace_back(static_cast<int>(i), R.val(P.coeffs[i] % R.mod));
  }
  std::vector<std::pair<int, int>> hull;
  for (const auto& q : pts) {
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull.back();
      // drop the middle point unless it lies strictly below the chord
      i64 cross = static_cast<i64>(x2 - x1) * (q.second - y1) - static_cast<i64>(y2 - y1) * (q.first - x1);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(q);
  }
  np.vertices = hull;
  for (size_t k = 0; k + 1 < hull.size(); ++k) {
    NewtonPolygon::Segment seg;
    seg.x0 = hull[k].first;
    seg.x1 = hull[k + 1].first;
    seg.root_valuation = make_rational(hull[k].second - hull[k + 1].second, seg.x1 - seg.x0);
    np.segments.push_back(seg);
  }
  return np;
}

SlopeSplit slope_factor(const CharPoly& P, i64 s) {
  if (s < 1) fail(ErrorKind::BadArgument, "slope bound must be positive");
  ModRing R = P.ring();
  size_t n = P.degree();
  int r = P.r;
  std::vector<int> v(n + 1);
  std::vector<bool> cens(n + 1);
  for (size_t i = 0; i <= n; ++i) {
    cens[i] = P.coeffs[i] % R.mod == 0;
    v[i] = R.val(P.coeffs[i] % R.mod);
  }
  i64 best = std::numeric_limits<i64>::max();
  size_t i0 = 0;
  for (size_t i = 0; i <= n; ++i) {
    i64 f = v[i] + s * static_cast<i64>(i);
    if (f <= best) {
      best = f;
      i0 = i;
    }
  }
  for (size_t j = 0; j <= n; ++j)
    if (cens[j] && r + s * static_cast<i64>(j) <= best)
      fail(ErrorKind::AmbiguousAtPrecision, "coefficient " + std::to_string(j) + " vanishes mod p^" + std::to_string(r) +
                                                " and could move the slope-" + std::to_string(s) + " split");
  SlopeSplit out;
  if (i0 == n || i0 == 0) {
    CharPoly one{P.p, r, {1 % R.mod}};
    out.below = i0 == n ? one : P;
    out.at_least = i0 == n ? P : one;
    out.precision = r;
    return out;
  }
  int v0 = v[i0];
  int rw = r - v0;
  ModRing W(P.p, rw);
  u64 pv = prime_power(P.p, v0);
  u64 unit_inv = W.inv((P.coeffs[i0] / pv) % W.mod);
  Poly G(i0 + 1, 0);
  G[i0] = 1 % W.mod;
  for (size_t i = 0; i < i0; ++i) G[i] = W.mul((P.coeffs[i] / pv) % W.mod, unit_inv);
  Poly Pw = reduce_poly(W, P.coeffs);
  Poly H = pdiv_monic(W, Pw, G);
  H.resize(n - i0 + 1, 0);
  size_t dH = n - i0;
  int last = -1;
  for (int iter = 0; iter < 200; ++iter) {
    Poly E = psub(W, Pw, pmul(W, G, H));
    E.resize(n + 1, 0);
    int ve = poly_val(W, E);
    if (ve >= rw || ve <= last) break;
    last = ve;
    // H dG + G dH = E with deg dG < i0, deg dH < dH; the X^n coefficient of E is 0.
    Mat S = sylvester(W, H, G, i0, dH, n);
    Poly rhs(E.begin(), E.begin() + static_cast<long>(n));
    auto x = solve(S, rhs);
    if (!x) break;
    for (size_t j = 0; j < i0; ++j) G[j] = W.add(G[j], (*x)[j]);
    for (size_t j = 0; j < dH; ++j) H[j] = W.add(H[j], (*x)[i0 + j]);
  }
  Poly E = psub(W, Pw, pmul(W, G, H));
  int cert = std::min(rw, poly_val(W, E));
  if (cert <= 0) fail(ErrorKind::AmbiguousAtPrecision, "slope split could not be lifted at this precision");
  ModRing C(P.p, cert);
  out.at_least = {P.p, cert, reduce_poly(C, G)};
  out.below = {P.p, cert, reduce_poly(C, H)};
  out.precision = cert;
  out.loss = r - cert;
  return out;
}

SlopeProjector slope_projector(const Mat& M, const SlopeSplit& split) {
  if (M.rows() != M.cols()) fail(ErrorKind::DimensionMismatch, "slope_projector: matrix is not square");
  size_t n = M.rows();
  size_t nb = split.below.degree(), na = split.at_least.degree();
  if (nb + na != n) fail(ErrorKind::DimensionMismatch, "slope_projector: split degrees do not match the matrix");
  int r = std::min(split.precision, M.ring().r);
  ModRing R(M.ring().p, r);
  Mat Mr = M.reduced(r);
  SlopeProjector out;
  if (nb == 0 || na == 0) {
    out.projector = nb == 0 ? Mat(R, n, n) : Mat::identity(R, n);
    out.basis = nb == 0 ? Mat(R, n, 0) : Mat::identity(R, n);
    out.coords = nb == 0 ? Mat(R, 0, n) : Mat::identity(R, n);
    out.block = nb == 0 ? Mat(R, 0, 0) : Mr;
    out.precision = r;
    return out;
  }
  const Poly& G = split.at_least.coeffs;
  const Poly& H = split.below.coeffs;
  // U G + V H = p^t with deg U < nb, deg V < na.
  Mat S = sylvester(R, G, H, nb, na, n);
  std::optional<std::vector<u64>> x;
  int t = 0;
  for (; t < r; ++t) {
    std::vector<u64> rhs(n, 0);
    rhs[0] = prime_power(R.p, t) % R.mod;
    if ((x = solve(S, rhs))) break;
  }
  if (!x) fail(ErrorKind::AmbiguousAtPrecision, "factors are not coprime at this precision");
  Poly U(x->begin(), x->begin() + static_cast<long>(nb));
  Mat E = eval_at(U, Mr) * eval_at(G, Mr);
  int rp = r - t;
  if (rp <= 0) fail(ErrorKind::PrecisionExhausted, "projector needs more digits");
  ModRing Rp(R.p, rp);
  u64 pt = prime_power(R.p, t);
  Mat e(Rp, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (E(i, j) % pt != 0) fail(ErrorKind::InternalInconsistency, "U(M) G(M) is not divisible by the Bezout constant");
      e(i, j) = (E(i, j) / pt) % Rp.mod;
    }
  Mat Mp = M.reduced(rp);
  if (!(e * e == e) || !(e * Mp == Mp * e)) fail(ErrorKind::InternalInconsistency, "slope projector is not an idempotent commuting with M");
  SmithForm sf = smith(e);
  size_t m = 0;
  for (int ex : sf.exps) {
    if (ex == 0)
      ++m;
    else if (ex != rp)
      fail(ErrorKind::AmbiguousAtPrecision, "slope projector image is not a direct summand at this precision");
  }
  if (m != nb) fail(ErrorKind::InternalInconsistency, "slope projector rank differs from the factor degree");
  Mat Uinv = inverse(sf.U);
  out.projector = e;
  out.basis = Uinv.block(0, 0, n, m);
  out.coords = sf.U.block(0, 0, m, n);
  out.block = out.coords * Mp * out.basis;
  out.precision = rp;
  return out;
}

PsInverse ps_tp_inv(const Mat& block, int s) {
  const ModRing& R = block.ring();
  if (block.rows() != block.cols()) fail(ErrorKind::DimensionMismatch, "ps_tp_inv: block is not square");
  if (R.r <= s) fail(ErrorKind::PrecisionExhausted, "ps_tp_inv needs precision above s");
  size_t n = block.rows();
  SmithForm sf = smith(block);
  Mat D(R, n, n);
  for (size_t i = 0; i < n; ++i) {
    if (sf.exps[i] > s)
      fail(ErrorKind::NotInvertible, "block has an elementary divisor p^" + std::to_string(sf.exps[i]) + " beyond p^" + std::to_string(s));
    D(i, i) = prime_power(R.p, s - sf.exps[i]) % R.mod;
  }
  return {sf.V * D * sf.U, R.r - s};
}

bool nilpotent_to(const Mat& X, int m) {
  if (m > X.ring().r) fail(ErrorKind::PrecisionExhausted, "nilpotence asked beyond the known digits");
  Mat Y = X.power(static_cast<u64>(X.rows()) * static_cast<u64>(m));
  return Y.valuation() >= m;
}

namespace {

Lambda0Elt random_lambda(i64 p, int r, int d, Rng& rng) {
  Lambda0Elt x = Lambda0Elt::zero(p, r, d);
  u64 mod = prime_power(p, r);
  for (int z = 0; z < x.components(); ++z)
    for (auto& c : x.component(z)) c = rng.below(mod);
  return x;
}

FamilyVec random_plus(i64 p, int r, int d, int k0, size_t width, Rng& rng) {
  FamilyVec F;
  F.p = p;
  F.r = r;
  F.d = d;
  F.out_width = width - family_tail(p, r, d);
  for (size_t i = 0; i < width; ++i)
    F.coords.push_back(static_cast<int>(i) <= k0 - 2 ? Lambda0Elt::zero(p, r, d) : random_lambda(p, r, d, rng));
  return F;
}

[[noreturn]] void violated(const std::string& which, const std::string& A, size_t coord, const Lambda0Elt& G) {
  std::ostringstream os;
  os << which << ": matrix " << A << ", coordinate " << coord << ", components";
  for (int z = 0; z < G.components(); ++z) {
    os << " [";
    for (size_t e = 0; e < G.component(z).size(); ++e) os << (e ? "," : "") << G.component(z)[e];
    os << "]";
  }
  fail(ErrorKind::ContractViolated, os.str());
}

}  // namespace

TruncateReport verify_truncate_lemma(i64 N, i64 p, int s, int k0, int r, int d, int samples, Rng rng) {
  if (s < 1 || N % static_cast<i64>(prime_power(p, s)) != 0) fail(ErrorKind::BadArgument, "truncation check needs p^s | N");
  if (k0 < s + 1) fail(ErrorKind::BadArgument, "truncation check needs k0 >= s + 1");
  FreeBasis B = free_basis(N);
  int vN = vp(p, N);
  size_t out = static_cast<size_t>(k0) + 2;
  size_t width = out + family_tail(p, r, d);
  Lambda0Elt zk = Lambda0Elt::z(p, r, d) - Lambda0Elt::constant(p, r, d, k0);
  u64 ps = prime_power(p, s);
  TruncateReport rep;
  auto check_minus = [&](const FamilyVec& G, int v, const std::string& which, const std::string& A) {
    for (size_t i = 0; i < out; ++i) {
      bool minus = static_cast<int>(i) <= k0 - 2;
      if (minus && !divisible_by(G.coords[i], v, k0, true)) violated(which + " (tau_- part)", A, i, G.coords[i]);
      if (!minus && which != "gamma" && !divisible_by(G.coords[i], s, k0, false)) violated(which + " (tau_+ part)", A, i, G.coords[i]);
    }
  };
  for (int t = 0; t < samples; ++t) {
    Rng local = rng.split(static_cast<u64>(t));
    // Gamma_1(N): a random word, plus the fixed element (1 1; N N+1)
    IntMat A = t == 0 ? IntMat{1, 1, N, N + 1} : IntMat{};
    int len = 1 + static_cast<int>(local.below(4));
    for (int k = 0; t > 0 && k < len; ++k) {
      const IntMat& g = B.gens[local.below(static_cast<u64>(B.rank))];
      A = A * (local.below(2) ? g : g.inverse_unimodular());
    }
    FamilyVec F = random_plus(p, r, d, k0, width, local);
    check_minus(act_family(Pi0Mat::from_int(A, p, r), F, out), vN, "gamma", A.str());
    ++rep.checked_gamma;

    FamilyVec F2 = random_plus(p, r, d, k0, width, local);
    for (int i = 0; i <= k0 - 2; ++i) F2.coords[static_cast<size_t>(i)] = (zk * random_lambda(p, r, d, local)).scaled(ps);
    for (i64 th = 0; th < p; ++th) {
      IntMat At{p, -th, 0, 1};
      check_minus(act_family(Pi0Mat::from_int(At, p, r), F2, out), s, "theta", At.str());
    }
    ++rep.checked_theta;

    FamilyCocycle c;
    for (int h = 0; h < B.rank; ++h) c.push_back(random_plus(p, r, d, k0, width, local));
    FamilyCocycle Tc = family_hecke(B, HeckeOp::T(p), c, out);
    for (const FamilyVec& v : Tc) check_minus(v, s, "T_p", "T" + std::to_string(p));
    ++rep.checked_hecke;
  }
  return rep;
}

}  // namespace pwl
