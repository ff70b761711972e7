#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/multiprecision/cpp_int.hpp>

#include "oracles.hpp"
#include "pwl/slope.hpp"

using namespace pwl;

namespace {

// Expand prod (X - roots[i]) exactly, then reduce mod p^r.
CharPoly from_roots(i64 p, int r, const std::vector<i64>& roots) {
  using boost::multiprecision::cpp_int;
  std::vector<cpp_int> c{1};
  for (i64 a : roots) {
    std::vector<cpp_int> n(c.size() + 1, 0);
    for (size_t i = 0; i < c.size(); ++i) {
      n[i + 1] += c[i];
      n[i] -= c[i] * a;
    }
    c = n;
  }
  CharPoly P{p, r, {}};
  cpp_int m = prime_power(p, r);
  for (auto& x : c) {
    cpp_int y = x % m;
    if (y < 0) y += m;
    P.coeffs.push_back(static_cast<u64>(y));
  }
  return P;
}

std::vector<u64> mul_mod(const std::vector<u64>& a, const std::vector<u64>& b, const ModRing& R) {
  std::vector<u64> c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = R.add(c[i + j], R.mul(a[i] % R.mod, b[j] % R.mod));
  return c;
}

std::vector<u64> reduce(std::vector<u64> a, const ModRing& R) {
  for (auto& x : a) x %= R.mod;
  return a;
}

std::vector<Rational> root_vals(const NewtonPolygon& np) {
  std::vector<Rational> out;
  for (const auto& s : np.segments)
    for (int k = 0; k < s.multiplicity(); ++k) out.push_back(s.root_valuation);
  std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; });
  return out;
}

Mat companion(const CharPoly& P) {
  size_t n = P.degree();
  ModRing R = P.ring();
  Mat C(R, n, n);
  for (size_t i = 1; i < n; ++i) C(i, i - 1) = 1;
  for (size_t i = 0; i < n; ++i) C(i, n - 1) = R.neg(P.coeffs[i]);
  return C;
}

}  // namespace

TEST_CASE("char_poly examples") {
  ModRing R(5, 4);
  CharPoly I = char_poly(Mat::identity(R, 3));
  CHECK(I.coeffs == from_roots(5, 4, {1, 1, 1}).coeffs);
  Mat D(R, 2, 2);
  D(0, 0) = 7;
  D(1, 1) = 30;
  CHECK(char_poly(D).coeffs == from_roots(5, 4, {7, 30}).coeffs);
  CharPoly cubic{5, 4, {17, 123, 44, 1}};
  CHECK(char_poly(companion(cubic)).coeffs == cubic.coeffs);
}

TEST_CASE("Newton polygon examples") {
  auto np = newton_polygon(CharPoly{3, 6, {prime_power(3, 6) - 9, 1}});
  REQUIRE(np.segments.size() == 1);
  CHECK(np.segments[0].root_valuation == Rational{2, 1});
  np = newton_polygon(from_roots(3, 6, {1, 3}));
  CHECK(root_vals(np) == std::vector<Rational>{{0, 1}, {1, 1}});
  np = newton_polygon(CharPoly{3, 6, {3, prime_power(3, 6) - 1, 1}});
  CHECK(root_vals(np) == std::vector<Rational>{{0, 1}, {1, 1}});
  np = newton_polygon(from_roots(5, 6, {25, 5, 10, 2}));
  CHECK(root_vals(np) == std::vector<Rational>{{0, 1}, {1, 1}, {1, 1}, {2, 1}});
  np = newton_polygon(CharPoly{3, 5, {3, 0, 1}});  // X^2 + 3: two roots of valuation 1/2
  CHECK(root_vals(np) == std::vector<Rational>{{1, 2}, {1, 2}});
  CHECK(np.censored[1]);
  CHECK(np.count_below(1) == 2);
}

TEST_CASE("Newton polygon of a product concatenates the factors") {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    i64 p = trial % 2 ? 3 : 5;
    int r = 12;
    std::vector<i64> a, b;
    auto draw = [&]() {
      i64 u = rng.range(1, 30);
      if (u % p == 0) ++u;
      return u * static_cast<i64>(prime_power(p, static_cast<int>(rng.below(3))));
    };
    for (int k = 0; k < 1 + static_cast<int>(rng.below(3)); ++k) a.push_back(draw());
    for (int k = 0; k < 1 + static_cast<int>(rng.below(3)); ++k) b.push_back(draw());
    std::vector<i64> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    auto va = root_vals(newton_polygon(from_roots(p, r, a)));
    auto vb = root_vals(newton_polygon(from_roots(p, r, b)));
    auto vab = root_vals(newton_polygon(from_roots(p, r, ab)));
    va.insert(va.end(), vb.begin(), vb.end());
    std::sort(va.begin(), va.end(), [](const Rational& x, const Rational& y) { return x.num * y.den < y.num * x.den; });
    CHECK(vab == va);
  }
}

TEST_CASE("slope_factor examples and reassembly") {
  auto P = from_roots(3, 8, {1, 3});
  auto sp = slope_factor(P, 1);
  CHECK(sp.below.coeffs == reduce(from_roots(3, 8, {1}).coeffs, ModRing(3, sp.precision)));
  CHECK(sp.at_least.coeffs == reduce(from_roots(3, 8, {3}).coeffs, ModRing(3, sp.precision)));
  CHECK(sp.precision >= 6);
  auto all_big = slope_factor(from_roots(3, 8, {9, 27}), 1);
  CHECK(all_big.below.degree() == 0);
  CHECK(all_big.at_least.coeffs == from_roots(3, 8, {9, 27}).coeffs);
  auto all_small = slope_factor(from_roots(3, 8, {1, 2}), 1);
  CHECK(all_small.at_least.degree() == 0);
  // slope exactly s goes to the >= s factor
  auto eq = slope_factor(from_roots(5, 8, {5, 1}), 1);
  CHECK(eq.below.degree() == 1);
  CHECK_THROWS_AS(slope_factor(CharPoly{3, 2, {0, 0, 1}}, 2), Error);

  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    i64 p = trial % 2 ? 3 : 5;
    int r = 14;
    std::vector<i64> roots;
    int n = 2 + static_cast<int>(rng.below(4));
    for (int k = 0; k < n; ++k) {
      i64 u = rng.range(1, 40);
      if (u % p == 0) ++u;
      roots.push_back(u * static_cast<i64>(prime_power(p, static_cast<int>(rng.below(4)))));
    }
    CharPoly Q = from_roots(p, r, roots);
    for (i64 s : {1, 2, 3}) {
      SlopeSplit S = slope_factor(Q, s);
      ModRing C(p, S.precision);
      CHECK(mul_mod(S.below.coeffs, S.at_least.coeffs, C) == reduce(Q.coeffs, C));
      auto np = newton_polygon(Q);
      CHECK(static_cast<int>(S.below.degree()) == np.count_below(s));
      CHECK(S.loss == r - S.precision);
    }
  }
}

TEST_CASE("slope projector is an idempotent commuting with M") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    i64 p = 3;
    int r = 12;
    std::vector<i64> roots{1 + 3 * rng.range(0, 5), 2, 3 * rng.range(1, 4), 9};
    CharPoly Q = from_roots(p, r, roots);
    Mat M = companion(Q);
    // conjugate by a random unimodular upper-triangular matrix
    Mat Ug = Mat::identity(M.ring(), 4);
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = i + 1; j < 4; ++j) Ug(i, j) = rng.below(M.ring().mod);
    M = Ug * M * inverse(Ug);
    SlopeSplit S = slope_factor(char_poly(M), 1);
    SlopeProjector pr = slope_projector(M, S);
    const Mat& e = pr.projector;
    Mat Mr = M.reduced(pr.precision);
    CHECK(e * e == e);
    CHECK(e * Mr == Mr * e);
    CHECK(pr.block.rows() == 2);
    CHECK(pr.coords * pr.basis == Mat::identity(e.ring(), 2));
    CHECK(char_poly(pr.block).coeffs == reduce(S.below.coeffs, ModRing(p, pr.precision)));
  }
}

TEST_CASE("p^s T^{-1} and nilpotence") {
  ModRing R(7, 5);
  Mat one(R, 1, 1);
  one(0, 0) = 3;
  auto x = ps_tp_inv(one, 1);
  CHECK(x.matrix(0, 0) == R.mul(7, R.inv(3)));
  CHECK(R.val(x.matrix(0, 0)) == 1);
  Mat lam = Mat::identity(R, 3).scaled(5);
  CHECK(ps_tp_inv(lam, 2).matrix == Mat::identity(R, 3).scaled(R.mul(49, R.inv(5))));
  Mat bad = Mat::identity(R, 2).scaled(49);
  CHECK_THROWS_AS(ps_tp_inv(bad, 1), Error);
  Mat M = ps_tp_inv(one, 1).matrix;
  CHECK(nilpotent_to(M, 1));
  CHECK(nilpotent_to(M, 3));
  CHECK(!nilpotent_to(Mat::identity(R, 2), 1));
}

TEST_CASE("ordinary block of U_11 at level 11") {
  auto a = oracle::eta_level11(20);
  FreeBasis B = free_basis(11);
  Coefficients M = Coefficients::trivial(11, 6);
  H1 H = h1(B, M);
  Mat U = induced_map(H, hecke_matrix(B, M, HeckeOp::T(11))).free_matrix;
  CharPoly P = char_poly(U);
  auto np = newton_polygon(P);
  CHECK(np.count_below(1) == 7);
  SlopeSplit S = slope_factor(P, 1);
  // (X - a_11) divides the slope-< 1 factor mod 11
  auto [v, dv] = oracle::eval_with_derivative(S.below.coeffs, a[11], 11);
  (void)dv;
  CHECK(v == 0);
  SlopeProjector pr = slope_projector(U, S);
  auto inv = ps_tp_inv(pr.block, 1);
  for (int m = 1; m <= 3; ++m) CHECK(nilpotent_to(inv.matrix, m));
  CHECK(inv.matrix.reduced(1).is_zero());
}

TEST_CASE("truncation containments") {
  auto rep = verify_truncate_lemma(9, 3, 1, 2, 4, 4, 4, Rng(1));
  CHECK(rep.checked_gamma == 4);
  CHECK(rep.checked_theta == 4);
  CHECK(rep.checked_hecke == 4);
  CHECK_THROWS_AS(verify_truncate_lemma(10, 3, 1, 2, 4, 4, 1, Rng(1)), Error);
  CHECK_THROWS_AS(verify_truncate_lemma(9, 3, 1, 1, 4, 4, 1, Rng(1)), Error);
}

TEST_CASE("the containment check is not vacuous") {
  // A generic F (nonzero tau_- part) is not mapped into p(z - k0) tau_-.
  Rng rng(3);
  i64 p = 3;
  int r = 4, d = 4, k0 = 2;
  size_t out = 4, width = out + family_tail(p, r, d);
  std::vector<Lambda0Elt> coords;
  for (size_t i = 0; i < width; ++i) {
    Lambda0Elt x = Lambda0Elt::zero(p, r, d);
    for (int z = 0; z < x.components(); ++z)
      for (auto& c : x.component(z)) c = rng.below(81);
    coords.push_back(x);
  }
  FamilyVec F = make_family(p, r, d, out, coords);
  FamilyVec G = act_family(Pi0Mat::from_int(IntMat{3, -1, 0, 1}, p, r), F, out);
  CHECK(!divisible_by(G.coords[0], 1, k0, true));
}
