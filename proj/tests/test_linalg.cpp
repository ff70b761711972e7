#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "pwl/linalg.hpp"

using namespace pwl;

namespace {

Mat random_mat(std::mt19937_64& rng, const ModRing& R, size_t n, size_t m, int min_val = 0) {
  Mat A(R, n, m);
  u64 scale = prime_power(R.p, min_val);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) A(i, j) = R.mul(rng() % R.mod, scale);
  return A;
}

// Leibniz expansion over Z/p^r; independent of the Berkowitz recursion.
u64 leibniz_det(const Mat& A) {
  const ModRing& R = A.ring();
  size_t n = A.rows();
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  u64 total = 0;
  do {
    int inv = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    u64 t = 1 % R.mod;
    for (size_t i = 0; i < n; ++i) t = R.mul(t, A(i, perm[i]));
    total = inv % 2 ? R.sub(total, t) : R.add(total, t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

u64 eval_poly(const ModRing& R, const std::vector<u64>& c, u64 x) {
  u64 acc = 0;
  for (size_t i = c.size(); i-- > 0;) acc = R.add(R.mul(acc, x), c[i]);
  return acc;
}

}  // namespace

TEST_CASE("smith form reconstructs") {
  std::mt19937_64 rng(1);
  ModRing R(3, 5);
  for (int t = 0; t < 50; ++t) {
    size_t n = 1 + rng() % 6, m = 1 + rng() % 6;
    Mat A = random_mat(rng, R, n, m, static_cast<int>(rng() % 3));
    if (t % 5 == 0) {  // force rank deficiency
      for (size_t j = 0; j < m; ++j) A(n - 1, j) = R.mul(A(0, j), 3);
    }
    SmithForm S = smith(A);
    CHECK(S.U * A * S.V == S.D);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < m; ++j) {
        if (i != j) CHECK(S.D(i, j) == 0);
      }
    for (size_t k = 0; k < S.exps.size(); ++k) {
      u64 expect = S.exps[k] == R.r ? 0 : prime_power(3, S.exps[k]);
      CHECK(S.D(k, k) == expect);
      if (k > 0) CHECK(S.exps[k] >= S.exps[k - 1]);
    }
    CHECK(smith(S.U).exps == std::vector<int>(n, 0));
    CHECK(smith(S.V).exps == std::vector<int>(m, 0));
  }
}

TEST_CASE("solve") {
  std::mt19937_64 rng(2);
  ModRing R(5, 4);
  for (int t = 0; t < 50; ++t) {
    size_t n = 1 + rng() % 6, m = 1 + rng() % 6;
    Mat A = random_mat(rng, R, n, m, static_cast<int>(rng() % 2));
    std::vector<u64> x(m);
    for (auto& v : x) v = rng() % R.mod;
    auto b = A.apply(x);
    auto sol = solve(A, b);
    REQUIRE(sol.has_value());
    CHECK(A.apply(*sol) == b);
  }
  Mat Z(R, 2, 2);
  Z(0, 0) = 5;
  CHECK_FALSE(solve(Z, {1, 0}).has_value());
  CHECK(solve(Z, {10, 0}).has_value());
}

TEST_CASE("howell form is canonical for the row span") {
  std::mt19937_64 rng(3);
  ModRing R(3, 4);
  for (int t = 0; t < 40; ++t) {
    size_t n = 1 + rng() % 5, m = 1 + rng() % 5;
    Mat A = random_mat(rng, R, n, m, static_cast<int>(rng() % 3));
    // another generating set of the same span: invertible row operations plus an extra combination
    Mat P = random_mat(rng, R, n, n);
    for (size_t i = 0; i < n; ++i) P(i, i) = R.add(R.mul(P(i, i), 3), 1);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) P(i, j) = 0;
    Mat B = P * A;
    CHECK(howell(A) == howell(B));
    Mat H = howell(A);
    std::vector<u64> coef(n);
    for (auto& c : coef) c = rng() % R.mod;
    std::vector<u64> v(m, 0);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < m; ++j) v[j] = R.add(v[j], R.mul(coef[i], A(i, j)));
    CHECK(in_row_span(H, v));
  }
  // p^{r-1} e_0 is in the span of 3 e_0 over Z/81, e_1 is not
  Mat A(R, 1, 2);
  A(0, 0) = 3;
  Mat H = howell(A);
  CHECK(in_row_span(H, {27, 0}));
  CHECK_FALSE(in_row_span(H, {1, 0}));
  CHECK_FALSE(in_row_span(H, {0, 1}));
  // Howell property: (3, 1) generates (0, 27) after scaling
  Mat B(R, 1, 2);
  B(0, 0) = 3;
  B(0, 1) = 1;
  CHECK(in_row_span(howell(B), {0, 27}));
}

TEST_CASE("characteristic polynomial") {
  ModRing R(7, 3);
  Mat I = Mat::identity(R, 4);
  auto c = charpoly(I);
  // (X - 1)^4 = X^4 - 4X^3 + 6X^2 - 4X + 1
  CHECK(c == std::vector<u64>{1, R.reduce(-4), 6, R.reduce(-4), 1});
  Mat D(R, 2, 2);
  D(0, 0) = 3;
  D(1, 1) = 5;
  CHECK(charpoly(D) == std::vector<u64>{15, R.reduce(-8), 1});
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    // companion matrix of X^3 + a2 X^2 + a1 X + a0
    u64 a0 = rng() % R.mod, a1 = rng() % R.mod, a2 = rng() % R.mod;
    Mat C(R, 3, 3);
    C(1, 0) = 1;
    C(2, 1) = 1;
    C(0, 2) = R.neg(a0);
    C(1, 2) = R.neg(a1);
    C(2, 2) = R.neg(a2);
    CHECK(charpoly(C) == std::vector<u64>{a0, a1, a2, 1});
  }
  for (int t = 0; t < 20; ++t) {
    size_t n = 1 + rng() % 6;
    Mat A = random_mat(rng, R, n, n);
    auto cp = charpoly(A);
    for (u64 x = 0; x < 4; ++x) {
      Mat XI = Mat::identity(R, n).scaled(x) - A;
      CHECK(eval_poly(R, cp, x) == leibniz_det(XI));
    }
    // Cayley-Hamilton
    Mat acc(R, n, n);
    for (size_t i = cp.size(); i-- > 0;) acc = acc * A + Mat::identity(R, n).scaled(cp[i]);
    CHECK(acc.is_zero());
    CHECK(det(A) == leibniz_det(A));
  }
}

TEST_CASE("inverse") {
  std::mt19937_64 rng(5);
  ModRing R(5, 3);
  for (int t = 0; t < 20; ++t) {
    size_t n = 1 + rng() % 5;
    Mat A = random_mat(rng, R, n, n);
    if (R.val(det(A)) > 0) {
      CHECK_THROWS_AS(inverse(A), Error);
      continue;
    }
    CHECK(A * inverse(A) == Mat::identity(R, n));
  }
}
