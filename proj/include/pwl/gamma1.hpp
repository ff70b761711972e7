#pragma once

// Gamma_1(N) inside SL_2(Z): right cosets as bottom rows mod N, a free basis
// from Reidemeister-Schreier on <S, U | S^4, U^6, S^2 U^-3>, and the word
// problem for that basis.

#include <string>
#include <vector>

#include "pwl/pi0.hpp"

namespace pwl {

// Letters of SL_2(Z) words: +-1 = S^{+-1}, +-2 = U^{+-1}, +-3 = T^{+-1}.
enum : int { kS = 1, kU = 2, kT = 3 };

IntMat sl2_letter(int letter);
IntMat sl2_replay(const std::vector<int>& letters);

struct CosetTable {
  i64 N = 0;
  std::vector<std::pair<i64, i64>> rows;  // bottom row (c, d) mod N
  std::vector<int> lookup;                // c * N + d -> coset, or -1
  std::vector<int> act_S, act_Sinv, act_U, act_Uinv, act_T, act_Tinv;
  std::vector<std::vector<int>> rep_word;  // S/U letters, rep(x) = replay(rep_word[x])
  std::vector<IntMat> rep;
  int base = 0;

  size_t size() const { return rows.size(); }
  int index(i64 c, i64 d) const;
  int act(int coset, int letter) const;
};

CosetTable coset_table(i64 N);

// N^2 prod_{l | N} (1 - l^-2).
i64 coset_count(i64 N);

bool in_gamma1(const IntMat& g, i64 N);

struct Letter {
  int gen = 0;
  int exp = 1;  // +1 or -1
  bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

Word free_reduce(const Word& w);
Word inverse_word(const Word& w);

struct FreeBasis {
  i64 N = 0;
  int rank = 0;
  std::vector<IntMat> gens;
  std::vector<std::vector<int>> gen_words;  // S/T letters
  std::string hash;

  CosetTable table;
  // Schreier generator for (coset, g in {S, U}) at index 2 * coset + g: id or -1 when trivial.
  std::vector<int> schreier_id;
  // Expansion of each nontrivial Schreier generator in the free basis.
  std::vector<Word> expansion;
};

FreeBasis free_basis(i64 N);

// Rank predicted by the index: 1 + mu / 12.
int predicted_rank(i64 N);

// S/T letters for an SL_2(Z) matrix (continued fractions on the bottom row).
std::vector<int> sl2_decompose(const IntMat& g);

Word express_word(const IntMat& g, const FreeBasis& B);
IntMat replay(const Word& w, const FreeBasis& B);

std::string word_str(const Word& w);

}  // namespace pwl
