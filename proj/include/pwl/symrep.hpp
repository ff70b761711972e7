#pragma once

// Symmetric powers in the lattice basis e_{n,i} = binom(n,i) T1^i T2^{n-i},
// the universal representation rho_chi on Z_p^N at finite width, and the
// specialisation / congruence projections between them.

#include <vector>

#include "pwl/pi0.hpp"

namespace pwl {

struct SymVec {
  i64 p = 0;
  int r = 0;
  int n = 0;
  std::vector<u64> coords;  // length n + 1

  static SymVec zero(i64 p, int r, int n) { return {p, r, n, std::vector<u64>(static_cast<size_t>(n) + 1, 0)}; }
  bool operator==(const SymVec&) const = default;
};

struct SeqVec {
  Weight chi;
  i64 p = 0;
  int r = 0;
  size_t out_width = 0;
  std::vector<u64> coords;  // length in_width

  size_t in_width() const { return coords.size(); }
};

// ceil(r(p-1)/(p-2)): input coordinates this far past i cannot reach output i.
size_t universal_tail(i64 p, int r);

// Makes a SeqVec whose storage satisfies the width contract for out_width.
SeqVec make_seq(const Weight& chi, int r, size_t out_width, std::vector<u64> coords);

// Matrix of Sym^n(A) in the e_{n,i} basis; column j is the image of e_{n,j}.
std::vector<std::vector<u64>> sym_matrix(int n, const Pi0Mat& A, int r);

SymVec act_sym(int n, const Pi0Mat& A, const SymVec& v);

// rho_chi(A, alpha) on the first out_width coordinates.
SeqVec act_universal(const Pi0Mat& A, const SeqVec& alpha, size_t out_width);
SeqVec act_universal(const Pi0Mat& A, const SeqVec& alpha);

// varpi_n: keep coordinates 0..n. Requires chi = chi_n.
SymVec specialize(int n, const SeqVec& alpha);

// varpi^r_{n1,n0}: keep coordinates 0..n0; needs n1 = n0 mod p^{r-1}(p-1).
SymVec congr_project(int r, int n1, int n0, const SymVec& v);

struct IdentitySides {
  PrecInt lhs, rhs;
};

// sum_{m=h}^{min(i,j)} (-1)^{m-h} binom(n-m,i-m) binom(j,m) binom(m,h)
// against binom(n-j,i-h) binom(j,h).
IdentitySides binom_identity(const PrecInt& n, int i, int j, int h);

}  // namespace pwl
