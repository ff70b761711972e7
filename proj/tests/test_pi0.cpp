#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pwl/pi0.hpp"

using namespace pwl;

namespace {

Pi0Mat random_pi0(std::mt19937_64& rng, i64 p, int r) {
  u64 mod = prime_power(p, r);
  i64 d = static_cast<i64>(rng() % mod);
  if (d % p == 0) d += 1;
  return Pi0Mat(PrecInt(p, r, static_cast<i64>(rng() % mod)), PrecInt(p, r, static_cast<i64>(rng() % mod)),
                PrecInt(p, r, p * static_cast<i64>(rng() % mod)), PrecInt(p, r, d));
}

}  // namespace

TEST_CASE("multiplication examples") {
  Pi0Mat I = Pi0Mat::identity(5, 3);
  Pi0Mat T = Pi0Mat::from_int({1, 1, 0, 1}, 5, 3);
  CHECK(T * I == T);
  CHECK(T * T == Pi0Mat::from_int({1, 2, 0, 1}, 5, 3));
  Pi0Mat L = Pi0Mat::from_int({1, 0, 5, 1}, 5, 3);
  CHECK(L * L == Pi0Mat::from_int({1, 0, 10, 1}, 5, 3));
}

TEST_CASE("membership is enforced") {
  CHECK_THROWS_AS(Pi0Mat::from_int({1, 0, 1, 1}, 5, 3), Error);
  CHECK_THROWS_AS(Pi0Mat::from_int({1, 0, 0, 5}, 5, 3), Error);
  CHECK_THROWS_AS(Pi0Mat::from_int({1, 0, 0, 1}, 5, 3) * Pi0Mat::from_int({1, 0, 0, 1}, 7, 3), Error);
}

TEST_CASE("cofactor") {
  IntMat I;
  CHECK(cofactor(I) == I);
  for (i64 th = 0; th < 5; ++th) {
    IntMat A{1, th, 0, 5};
    CHECK(cofactor(A) == IntMat{5, -th, 0, 1});
  }
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    IntMat A{static_cast<i64>(rng() % 41) - 20, static_cast<i64>(rng() % 41) - 20, static_cast<i64>(rng() % 41) - 20,
             static_cast<i64>(rng() % 41) - 20};
    IntMat B{static_cast<i64>(rng() % 41) - 20, static_cast<i64>(rng() % 41) - 20, static_cast<i64>(rng() % 41) - 20,
             static_cast<i64>(rng() % 41) - 20};
    IntMat P = A * cofactor(A);
    CHECK(P == IntMat{A.det(), 0, 0, A.det()});
    CHECK(cofactor(A * B) == cofactor(B) * cofactor(A));
  }
}

TEST_CASE("mobius") {
  PrecInt z(3, 2, 5);
  CHECK(mobius(Pi0Mat::identity(3, 2), z) == z);
  CHECK(mobius(Pi0Mat::from_int({1, 1, 0, 1}, 3, 2), z) == z + 1);
  CHECK(mobius(Pi0Mat::from_int({1, 0, 3, 1}, 3, 2), PrecInt(3, 2, 1)).residue() == 7);
}

TEST_CASE("closure and monoid action law") {
  std::mt19937_64 rng(11);
  for (i64 p : {3, 5}) {
    int r = 6;
    for (int t = 0; t < 100; ++t) {
      Pi0Mat A = random_pi0(rng, p, r), B = random_pi0(rng, p, r);
      Pi0Mat AB = A * B;
      CHECK(AB.c().residue() % p == 0);
      CHECK(AB.d().is_unit());
      PrecInt z(p, r, static_cast<i64>(rng() % prime_power(p, r)));
      CHECK(mobius(AB, z) == mobius(A, mobius(B, z)));
      if (A.a().is_unit() && B.a().is_unit()) CHECK(cofactor(AB) == cofactor(B) * cofactor(A));
    }
  }
}
