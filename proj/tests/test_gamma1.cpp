#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pwl/gamma1.hpp"

using namespace pwl;

namespace {

// Random element of Gamma_1(N) as a product of random generators.
IntMat random_element(const FreeBasis& B, std::mt19937_64& rng, int len, Word* w = nullptr) {
  IntMat m;
  for (int i = 0; i < len; ++i) {
    Letter l{static_cast<int>(rng() % static_cast<u64>(B.rank)), rng() % 2 ? 1 : -1};
    if (w) w->push_back(l);
    const IntMat& g = B.gens[static_cast<size_t>(l.gen)];
    m = m * (l.exp > 0 ? g : g.inverse_unimodular());
  }
  return m;
}

}  // namespace

TEST_CASE("coset counts") {
  CHECK(coset_count(5) == 24);
  CHECK(coset_count(9) == 72);
  CHECK(coset_count(11) == 120);
  CHECK(coset_count(12) == 96);
  CHECK(coset_table(7).size() == 48);
  CHECK_THROWS_AS(coset_table(4), Error);
}

TEST_CASE("ranks of the free bases") {
  CHECK(free_basis(5).rank == 3);
  CHECK(free_basis(7).rank == 5);
  CHECK(free_basis(9).rank == 7);
  CHECK(free_basis(11).rank == 11);
  for (i64 N = 5; N <= 25; ++N) CHECK(free_basis(N).rank == predicted_rank(N));
}

TEST_CASE("transversal: representatives land in their cosets") {
  for (i64 N : {5, 8, 11}) {
    CosetTable t = coset_table(N);
    for (size_t x = 0; x < t.size(); ++x) {
      const IntMat& g = t.rep[x];
      CHECK(g.det() == 1);
      CHECK(sl2_replay(t.rep_word[x]) == g);
      CHECK(t.index(g.c, g.d) == static_cast<int>(x));
    }
    // action tables are permutations compatible with letters
    for (size_t x = 0; x < t.size(); ++x) {
      CHECK(t.act(t.act(static_cast<int>(x), kS), -kS) == static_cast<int>(x));
      CHECK(t.act(t.act(static_cast<int>(x), kU), -kU) == static_cast<int>(x));
      CHECK(t.act(t.act(static_cast<int>(x), -kS), kU) == t.act(static_cast<int>(x), kT));
    }
  }
}

TEST_CASE("generators lie in Gamma_1(N) and their S/T words replay") {
  for (i64 N : {5, 6, 9, 11, 16}) {
    FreeBasis B = free_basis(N);
    for (int i = 0; i < B.rank; ++i) {
      CHECK(in_gamma1(B.gens[static_cast<size_t>(i)], N));
      CHECK(sl2_replay(B.gen_words[static_cast<size_t>(i)]) == B.gens[static_cast<size_t>(i)]);
    }
    CHECK(B.hash.size() == 16);
    CHECK(B.hash == free_basis(N).hash);
  }
  CHECK(free_basis(5).hash != free_basis(7).hash);
}

TEST_CASE("sl2_decompose replays to the input") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> letters;
    int len = static_cast<int>(rng() % 20);
    for (int i = 0; i < len; ++i) {
      int l = 1 + static_cast<int>(rng() % 3);
      letters.push_back(rng() % 2 ? l : -l);
    }
    IntMat g = sl2_replay(letters);
    CHECK(sl2_replay(sl2_decompose(g)) == g);
  }
  CHECK(sl2_decompose(IntMat{}).empty());
  CHECK(sl2_replay(sl2_decompose(IntMat{}.neg())) == IntMat{}.neg());
  CHECK_THROWS_AS(sl2_decompose(IntMat{2, 0, 0, 1}), Error);
}

TEST_CASE("word problem: random words round-trip") {
  std::mt19937_64 rng(5);
  for (i64 N : {5, 7, 9, 11, 12}) {
    FreeBasis B = free_basis(N);
    for (int trial = 0; trial < 100; ++trial) {
      Word w;
      IntMat g = random_element(B, rng, 1 + static_cast<int>(rng() % 8), &w);
      Word e = express_word(g, B);
      CHECK(replay(e, B) == g);
      // free basis: the reduced word is unique
      CHECK(e == free_reduce(w));
    }
  }
}

TEST_CASE("express_word on parabolic and diagonal elements") {
  for (i64 N : {5, 9, 11}) {
    FreeBasis B = free_basis(N);
    IntMat TN{1, N, 0, 1};
    CHECK(replay(express_word(TN, B), B) == TN);
    IntMat low{1, 0, N, 1};
    CHECK(replay(express_word(low, B), B) == low);
    CHECK(express_word(IntMat{}, B).empty());
    CHECK_THROWS_AS(express_word(IntMat{2, 1, 1, 1}, B), Error);
    CHECK_THROWS_AS(express_word(IntMat{}.neg(), B), Error);
  }
}

TEST_CASE("free_reduce and inverse_word") {
  Word w{{0, 1}, {1, 1}, {1, -1}, {2, -1}};
  CHECK(free_reduce(w) == Word{{0, 1}, {2, -1}});
  CHECK(free_reduce(w).size() == 2);
  Word inv = inverse_word(w);
  Word both = w;
  both.insert(both.end(), inv.begin(), inv.end());
  CHECK(free_reduce(both).empty());
  CHECK(word_str(Word{{0, 1}, {3, -1}}) == "g0 g3^-1");
}
