#pragma once

// Characteristic polynomials over Z/p^r, Newton polygons with censored
// coefficients, the slope-< s factorization and its projector, p^s T_p^{-1}
// on the slope-< s block, and the truncation containments.

#include <string>
#include <vector>

#include "pwl/cohomology.hpp"
#include "pwl/rng.hpp"

namespace pwl {

// Monic, low-first.
struct CharPoly {
  i64 p = 0;
  int r = 0;
  std::vector<u64> coeffs;

  size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  ModRing ring() const { return ModRing(p, r); }
};

CharPoly char_poly(const Mat& M);

struct Rational {
  i64 num = 0, den = 1;
  bool operator==(const Rational&) const = default;
  bool less(i64 s) const { return num < s * den; }
  std::string str() const;
};

struct NewtonPolygon {
  struct Segment {
    int x0 = 0, x1 = 0;       // horizontal extent
    Rational root_valuation;  // valuation of the x1 - x0 roots it carries
    int multiplicity() const { return x1 - x0; }
  };
  std::vector<std::pair<int, int>> vertices;  // (index, valuation), left to right
  std::vector<Segment> segments;              // left to right; root valuations decrease
  std::vector<bool> censored;                 // coefficient is 0 mod p^r, valuation only >= r
  int precision = 0;

  // Roots of valuation < s, counted with multiplicity.
  int count_below(i64 s) const;
};

NewtonPolygon newton_polygon(const CharPoly& P);

struct SlopeSplit {
  CharPoly below;    // P_{<s}, roots of valuation < s
  CharPoly at_least; // P_{>=s}
  int precision = 0; // certified: P = below * at_least mod p^precision
  int loss = 0;
};

SlopeSplit slope_factor(const CharPoly& P, i64 s);

// Projector onto the generalized slope-< s eigenspace of M, via Bezout on the split.
struct SlopeProjector {
  Mat projector;  // idempotent, commutes with M, at precision `precision`
  Mat block;      // M on the image, in the basis below
  Mat basis;      // columns spanning the image
  Mat coords;     // left inverse of basis
  int precision = 0;
};

SlopeProjector slope_projector(const Mat& M, const SlopeSplit& split);

struct PsInverse {
  Mat matrix;
  int precision = 0;
};

// p^s M^{-1}; NotInvertible if an elementary divisor of M exceeds p^s.
PsInverse ps_tp_inv(const Mat& block, int s);

// X^{n m} = 0 mod p^m, n the size of X.
bool nilpotent_to(const Mat& X, int m);

struct TruncateReport {
  int checked_gamma = 0;   // containment for Gamma_1(N) elements
  int checked_theta = 0;   // containment for (p -theta; 0 1)
  int checked_hecke = 0;   // T_p image of tau_+ cocycles
};

// Checks the three containments on `samples` random F each; ContractViolated
// with the offending data on failure.
TruncateReport verify_truncate_lemma(i64 N, i64 p, int s, int k0, int r, int d, int samples, Rng rng);

}  // namespace pwl
