#include "pwl/linalg.hpp"

#include <algorithm>

namespace pwl {

Mat Mat::identity(const ModRing& R, size_t n) {
  Mat m(R, n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1 % R.mod;
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) fail(ErrorKind::DimensionMismatch, "matrix product shapes");
  Mat out(R_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      u64 x = (*this)(i, k);
      if (x == 0) continue;
      for (size_t j = 0; j < o.cols_; ++j) out(i, j) = R_.add(out(i, j), R_.mul(x, o(k, j)));
    }
  return out;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::DimensionMismatch, "matrix sum shapes");
  Mat out = *this;
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = R_.add(a_[i], o.a_[i]);
  return out;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::DimensionMismatch, "matrix difference shapes");
  Mat out = *this;
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = R_.sub(a_[i], o.a_[i]);
  return out;
}

Mat Mat::scaled(u64 c) const {
  Mat out = *this;
  c %= R_.mod;
  for (auto& x : out.a_) x = R_.mul(x, c);
  return out;
}

std::vector<u64> Mat::apply(const std::vector<u64>& v) const {
  if (v.size() != cols_) fail(ErrorKind::DimensionMismatch, "matrix-vector shapes");
  std::vector<u64> out(rows_, 0);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out[i] = R_.add(out[i], R_.mul((*this)(i, j), v[j] % R_.mod));
  return out;
}

Mat Mat::transpose() const {
  Mat out(R_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Mat Mat::reduced(int r) const {
  if (r > R_.r) fail(ErrorKind::PrecisionExhausted, "cannot raise matrix precision");
  Mat out(ModRing(R_.p, r), rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] % out.R_.mod;
  return out;
}

Mat Mat::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
  Mat out(R_, nr, nc);
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

void Mat::set_block(size_t r0, size_t c0, const Mat& b) {
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j) % R_.mod;
}

bool Mat::operator==(const Mat& o) const {
  return R_.mod == o.R_.mod && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](u64 x) { return x == 0; });
}

int Mat::valuation() const {
  int v = R_.r;
  for (u64 x : a_) v = std::min(v, R_.val(x));
  return v;
}

Mat Mat::power(u64 e) const {
  if (rows_ != cols_) fail(ErrorKind::DimensionMismatch, "power of non-square matrix");
  Mat result = identity(R_, rows_), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::vector<std::vector<u64>> Mat::to_rows() const {
  std::vector<std::vector<u64>> out(rows_);
  for (size_t i = 0; i < rows_; ++i) out[i].assign(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_));
  return out;
}

namespace {

void swap_rows(Mat& m, size_t a, size_t b) {
  if (a == b) return;
  for (size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(Mat& m, size_t a, size_t b) {
  if (a == b) return;
  for (size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst -= f * row_src
void row_axpy(Mat& m, size_t dst, size_t src, u64 f) {
  const ModRing& R = m.ring();
  if (f == 0) return;
  for (size_t j = 0; j < m.cols(); ++j) m(dst, j) = R.sub(m(dst, j), R.mul(f, m(src, j)));
}

void col_axpy(Mat& m, size_t dst, size_t src, u64 f) {
  const ModRing& R = m.ring();
  if (f == 0) return;
  for (size_t i = 0; i < m.rows(); ++i) m(i, dst) = R.sub(m(i, dst), R.mul(f, m(i, src)));
}

void row_scale(Mat& m, size_t i, u64 f) {
  const ModRing& R = m.ring();
  for (size_t j = 0; j < m.cols(); ++j) m(i, j) = R.mul(m(i, j), f);
}

// unit part of a nonzero residue x = p^e u
u64 unit_part(const ModRing& R, u64 x, int e) { return (x / prime_power(R.p, e)) % R.mod; }

}  // namespace

SmithForm smith(const Mat& M) {
  const ModRing& R = M.ring();
  SmithForm S{Mat::identity(R, M.rows()), Mat::identity(R, M.cols()), M, {}};
  Mat& D = S.D;
  size_t n = std::min(M.rows(), M.cols());
  S.exps.assign(n, R.r);
  for (size_t k = 0; k < n; ++k) {
    int best = R.r;
    size_t bi = k, bj = k;
    for (size_t i = k; i < D.rows() && best > 0; ++i)
      for (size_t j = k; j < D.cols(); ++j) {
        int v = R.val(D(i, j));
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (best == R.r) break;
    swap_rows(D, k, bi);
    swap_rows(S.U, k, bi);
    swap_cols(D, k, bj);
    swap_cols(S.V, k, bj);
    u64 uinv = R.inv(unit_part(R, D(k, k), best));
    row_scale(D, k, uinv);
    row_scale(S.U, k, uinv);
    u64 pe = prime_power(R.p, best);
    for (size_t i = k + 1; i < D.rows(); ++i) {
      u64 f = D(i, k) / pe;
      row_axpy(D, i, k, f);
      row_axpy(S.U, i, k, f);
    }
    for (size_t j = k + 1; j < D.cols(); ++j) {
      u64 f = D(k, j) / pe;
      col_axpy(D, j, k, f);
      col_axpy(S.V, j, k, f);
    }
    S.exps[k] = best;
  }
  return S;
}

std::optional<std::vector<u64>> solve(const Mat& M, const std::vector<u64>& b) {
  const ModRing& R = M.ring();
  if (b.size() != M.rows()) fail(ErrorKind::DimensionMismatch, "solve: right-hand side length");
  SmithForm S = smith(M);
  std::vector<u64> c = S.U.apply(b);
  std::vector<u64> y(M.cols(), 0);
  for (size_t i = 0; i < M.rows(); ++i) {
    int e = i < S.exps.size() ? S.exps[i] : R.r;
    if (R.val(c[i]) < e) return std::nullopt;
    if (e < R.r) y[i] = c[i] / prime_power(R.p, e);
  }
  return S.V.apply(y);
}

Mat howell(const Mat& M) {
  const ModRing& R = M.ring();
  std::vector<std::vector<u64>> pool = M.to_rows();
  std::vector<std::vector<u64>> out;
  std::vector<size_t> pivcol;
  std::vector<int> pivexp;
  size_t cols = M.cols();
  for (size_t c = 0; c < cols; ++c) {
    int best = R.r;
    size_t bi = 0;
    for (size_t i = 0; i < pool.size(); ++i) {
      int v = R.val(pool[i][c]);
      if (v < best) {
        best = v;
        bi = i;
      }
    }
    if (best == R.r) continue;
    std::vector<u64> piv = pool[bi];
    pool.erase(pool.begin() + static_cast<long>(bi));
    u64 uinv = R.inv(unit_part(R, piv[c], best));
    for (auto& x : piv) x = R.mul(x, uinv);
    u64 pe = prime_power(R.p, best);
    for (auto& row : pool) {
      u64 f = row[c] / pe;
      if (f == 0) continue;
      for (size_t j = 0; j < cols; ++j) row[j] = R.sub(row[j], R.mul(f, piv[j]));
    }
    // p^{r-e} times the pivot row loses its pivot; keep it for later columns.
    if (best > 0) {
      std::vector<u64> extra(cols);
      u64 q = prime_power(R.p, R.r - best);
      for (size_t j = 0; j < cols; ++j) extra[j] = R.mul(piv[j], q);
      pool.push_back(extra);
    }
    pool.erase(std::remove_if(pool.begin(), pool.end(),
                              [](const std::vector<u64>& r) { return std::all_of(r.begin(), r.end(), [](u64 x) { return x == 0; }); }),
               pool.end());
    out.push_back(piv);
    pivcol.push_back(c);
    pivexp.push_back(best);
  }
  // reduce entries above each pivot into [0, p^e)
  for (size_t k = 0; k < out.size(); ++k) {
    size_t c = pivcol[k];
    u64 pe = prime_power(R.p, pivexp[k]);
    for (size_t i = 0; i < k; ++i) {
      u64 f = out[i][c] / pe;
      if (f == 0) continue;
      for (size_t j = 0; j < cols; ++j) out[i][j] = R.sub(out[i][j], R.mul(f, out[k][j]));
    }
  }
  Mat H(R, out.size(), cols);
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = 0; j < cols; ++j) H(i, j) = out[i][j];
  return H;
}

bool in_row_span(const Mat& H, std::vector<u64> v) {
  const ModRing& R = H.ring();
  if (v.size() != H.cols()) fail(ErrorKind::DimensionMismatch, "in_row_span: length");
  for (auto& x : v) x %= R.mod;
  for (size_t i = 0; i < H.rows(); ++i) {
    size_t c = 0;
    while (c < H.cols() && H(i, c) == 0) ++c;
    if (c == H.cols()) continue;
    int e = R.val(H(i, c));
    u64 pe = prime_power(R.p, e);
    if (R.val(v[c]) < e) return false;
    u64 f = v[c] / pe;
    for (size_t j = 0; j < H.cols(); ++j) v[j] = R.sub(v[j], R.mul(f, H(i, j)));
  }
  return std::all_of(v.begin(), v.end(), [](u64 x) { return x == 0; });
}

Mat inverse(const Mat& M) {
  if (M.rows() != M.cols()) fail(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  SmithForm S = smith(M);
  for (int e : S.exps)
    if (e != 0) fail(ErrorKind::NotInvertible, "matrix is singular mod p");
  // D = I, so M^{-1} = V U
  return S.V * S.U;
}

u64 det(const Mat& M) {
  auto c = charpoly(M);
  u64 d = c[0];
  return M.rows() % 2 == 1 ? M.ring().neg(d) : d;
}

std::vector<u64> charpoly(const Mat& A) {
  if (A.rows() != A.cols()) fail(ErrorKind::DimensionMismatch, "charpoly of non-square matrix");
  const ModRing& R = A.ring();
  size_t n = A.rows();
  // Berkowitz: C holds det(X I - A_r) for the leading r x r block, highest degree first.
  std::vector<u64> C{1 % R.mod};
  for (size_t r = 0; r < n; ++r) {
    std::vector<u64> s(r + 2, 0);
    s[0] = 1 % R.mod;
    s[1] = R.neg(A(r, r));
    // w = M^k col, M the leading r x r block, col = A[0..r)[r]
    std::vector<u64> w(r);
    for (size_t i = 0; i < r; ++i) w[i] = A(i, r);
    for (size_t k = 0; k < r; ++k) {
      u64 dot = 0;
      for (size_t i = 0; i < r; ++i) dot = R.add(dot, R.mul(A(r, i), w[i]));
      s[k + 2] = R.neg(dot);
      std::vector<u64> nw(r, 0);
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) nw[i] = R.add(nw[i], R.mul(A(i, j), w[j]));
      w = nw;
    }
    std::vector<u64> next(r + 2, 0);
    for (size_t i = 0; i < r + 2; ++i)
      for (size_t j = 0; j <= std::min(i, r); ++j) next[i] = R.add(next[i], R.mul(s[i - j], C[j]));
    C = next;
  }
  std::reverse(C.begin(), C.end());
  return C;
}

}  // namespace pwl
