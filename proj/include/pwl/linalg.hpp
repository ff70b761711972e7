#pragma once

// Dense linear algebra over Z/p^r: Smith and Howell forms, linear solving,
// inverses and division-free characteristic polynomials.

#include <optional>
#include <string>
#include <vector>

#include "pwl/padic.hpp"

namespace pwl {

class Mat {
 public:
  Mat() = default;
  Mat(const ModRing& R, size_t rows, size_t cols) : R_(R), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  static Mat identity(const ModRing& R, size_t n);

  const ModRing& ring() const { return R_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  u64& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  u64 operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(u64 c) const;
  std::vector<u64> apply(const std::vector<u64>& v) const;
  Mat transpose() const;
  // Same entries read modulo p^r' for r' <= r.
  Mat reduced(int r) const;
  Mat block(size_t r0, size_t c0, size_t nr, size_t nc) const;
  void set_block(size_t r0, size_t c0, const Mat& b);
  bool operator==(const Mat& o) const;
  bool is_zero() const;
  // Smallest valuation of an entry (r for the zero matrix).
  int valuation() const;
  Mat power(u64 e) const;

  std::vector<std::vector<u64>> to_rows() const;

 private:
  ModRing R_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<u64> a_;
};

// U M V = D with U, V invertible and D diagonal with entries p^{e_i}.
struct SmithForm {
  Mat U, V, D;
  std::vector<int> exps;  // length min(rows, cols); r marks a zero diagonal entry
};

SmithForm smith(const Mat& M);

// Some x with M x = b, or nothing.
std::optional<std::vector<u64>> solve(const Mat& M, const std::vector<u64>& b);

// Canonical generating rows of the row span (zero rows dropped).
Mat howell(const Mat& M);

// Whether v lies in the row span of a Howell form.
bool in_row_span(const Mat& howell_form, std::vector<u64> v);

Mat inverse(const Mat& M);
u64 det(const Mat& M);

// Coefficients c_0..c_n of det(X I - M), c_n = 1.
std::vector<u64> charpoly(const Mat& M);

}  // namespace pwl
