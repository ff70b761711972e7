#pragma once

// 1-cocycles on the free basis of Gamma_1(N), H^1 over Z/p^r through Smith
// form of the coboundary map, double-coset Hecke operators, and the family
// cocycles with Lambda_0-coefficients together with their specialisations.
//
// Cocycle convention: c(gh) = c(g) + rho(g) c(h).

#include <optional>
#include <string>
#include <vector>

#include "pwl/gamma1.hpp"
#include "pwl/iwasawa.hpp"
#include "pwl/linalg.hpp"

namespace pwl {

// Trivial Z/p^r or Sym^n mod p^r (lattice basis e_{n,i}).
struct Coefficients {
  enum class Kind { Trivial, Sym };
  Kind kind = Kind::Trivial;
  i64 p = 0;
  int r = 0;
  int n = 0;

  static Coefficients trivial(i64 p, int r);
  static Coefficients sym(i64 p, int r, int n);

  size_t dim() const { return kind == Kind::Trivial ? 1 : static_cast<size_t>(n) + 1; }
  ModRing ring() const { return ModRing(p, r); }
  // Weight k with Sym^{k-2}; trivial coefficients are weight 2.
  int weight() const { return kind == Kind::Trivial ? 2 : n + 2; }
  Mat rho(const Pi0Mat& g) const;
  std::string str() const;
};

// Values on the free generators, flattened generator-major.
struct Cocycle {
  std::string basis_hash;
  size_t dim = 0;
  std::vector<u64> values;

  std::vector<u64> value(size_t h) const;
};

// c(x_1 ... x_n) = sum_n sign_n rho(prefix_n) c(gen_n).
struct CocycleTerm {
  int sign = 1;
  int gen = 0;
  IntMat prefix;
};

std::vector<CocycleTerm> cocycle_terms(const Word& w, const FreeBasis& B);

std::vector<u64> eval_cocycle(const Cocycle& c, const IntMat& g, const FreeBasis& B, const Coefficients& M);

Cocycle coboundary(const std::vector<u64>& b, const FreeBasis& B, const Coefficients& M);

// (rank * dim) x dim matrix of b -> (rho(gamma_h) b - b)_h.
Mat boundary_matrix(const FreeBasis& B, const Coefficients& M);

struct H1 {
  Coefficients M;
  std::string basis_hash;
  int rank = 0;
  Mat boundary;
  SmithForm sf;
  Mat Uinv;
  // Exponent of each U-coordinate of Z^1: the class coordinate is (U z)_i mod p^{e_i}.
  std::vector<int> coord_exps;
  std::vector<size_t> class_rows;  // coordinates with e_i > 0
  std::vector<size_t> free_rows;   // coordinates with e_i = r

  int free_rank() const { return static_cast<int>(free_rows.size()); }
  // Largest torsion exponent (0 when free).
  int max_torsion() const;
  bool is_free() const { return max_torsion() == 0; }
  // Length as a Z_p-module: sum of exponents.
  int length() const;
  // Exponents e > 0 of the cyclic factors Z/p^e, ascending.
  std::vector<int> elementary_divisors() const;
  std::vector<u64> classes(const std::vector<u64>& z) const;
  bool is_coboundary(const std::vector<u64>& z) const;
  // Cocycle with the given class coordinates (one value per class row).
  std::vector<u64> lift(const std::vector<u64>& cls) const;
};

H1 h1(const FreeBasis& B, const Coefficients& M);

struct InducedMap {
  // On class coordinates, row i reduced mod p^{e_i}.
  Mat matrix;
  // On H^1 / H^1[p^E], the free quotient, at precision r - E.
  Mat free_matrix;
  int free_precision = 0;
  bool free = true;
};

// Fails with InternalInconsistency if T does not preserve coboundaries.
InducedMap induced_map(const H1& H, const Mat& T);

struct CosetRep {
  IntMat A;
  IntMat gamma;
  IntMat B;  // A * gamma
};

struct DoubleCosetData {
  IntMat seed;
  std::vector<CosetRep> reps;
};

enum class RepOrder { Forward, Reverse };

// Right cosets Gamma_1(N) B inside Gamma_1(N) A Gamma_1(N); needs A^iota in Pi_0(p).
DoubleCosetData double_coset_reps(const FreeBasis& B, const IntMat& A, i64 p, RepOrder order = RepOrder::Forward);

struct HeckeOp {
  enum class Kind { T, Diamond, S, Custom };
  Kind kind = Kind::T;
  i64 n = 1;
  IntMat custom;

  static HeckeOp T(i64 l) { return {Kind::T, l, {}}; }
  static HeckeOp diamond(i64 n) { return {Kind::Diamond, n, {}}; }
  static HeckeOp S(i64 n) { return {Kind::S, n, {}}; }
  static HeckeOp matrix(const IntMat& A) { return {Kind::Custom, 1, A}; }
  // "T2", "U11", "diamond:3", "S2".
  static HeckeOp parse(const std::string& s);

  IntMat seed(i64 N) const;
  std::string str() const;
};

// a n - b N = 1, D(n) = (a b; N n); the identity when n = 1 mod N.
IntMat diamond_matrix(i64 n, i64 N);

// Matrix on Z^1 (rank * dim square), acting on flattened cocycles.
Mat hecke_matrix(const FreeBasis& B, const Coefficients& M, const HeckeOp& op, RepOrder order = RepOrder::Forward);

std::vector<u64> charpoly_of(const Mat& T);

// Family cocycles: one FamilyVec per generator.
using FamilyCocycle = std::vector<FamilyVec>;

FamilyCocycle family_hecke(const FreeBasis& B, const HeckeOp& op, const FamilyCocycle& c, size_t out_width,
                           RepOrder order = RepOrder::Forward);

// rho_{z-2}(g) applied to a family cocycle value.
FamilyCocycle family_coboundary(const FreeBasis& B, const FamilyVec& b, size_t out_width);

// sp_k then varpi_{k-2}, generator by generator: a Sym^{k-2} cocycle mod p^{min(r, d)}.
std::vector<u64> specialize_cocycle(i64 k, const FamilyCocycle& c);

struct Preimage {
  FamilyCocycle family;   // width k - 1
  std::vector<u64> bdry;  // b with sp(family) + boundary(b) = z
};

// A family cocycle whose specialisation is cohomologous to z; NoLift if none at this precision.
Preimage family_preimage(const FreeBasis& B, i64 k, const std::vector<u64>& z, i64 p, int r, int d);

}  // namespace pwl
