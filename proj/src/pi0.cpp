#include "pwl/pi0.hpp"

#include <algorithm>
#include <sstream>

namespace pwl {

IntMat IntMat::inverse_unimodular() const {
  i64 dt = det();
  if (dt == 1) return cofactor();
  if (dt == -1) return cofactor().neg();
  fail(ErrorKind::NotInvertible, "matrix " + str() + " is not unimodular");
}

std::string IntMat::str() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

Pi0Mat::Pi0Mat(PrecInt a, PrecInt b, PrecInt c, PrecInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  i64 p = a_.prime();
  if (b_.prime() != p || c_.prime() != p || d_.prime() != p)
    fail(ErrorKind::PrecisionMismatch, "matrix entries over different primes");
  if (c_.residue() % static_cast<u64>(p) != 0) fail(ErrorKind::NotInGroup, "lower-left entry not divisible by p");
  if (!d_.is_unit()) fail(ErrorKind::NotInGroup, "lower-right entry not a unit");
}

Pi0Mat Pi0Mat::identity(i64 p, int r) {
  return Pi0Mat(PrecInt(p, r, 1), PrecInt(p, r, 0), PrecInt(p, r, 0), PrecInt(p, r, 1));
}

Pi0Mat Pi0Mat::from_int(const IntMat& m, i64 p, int r) {
  return Pi0Mat(PrecInt(p, r, m.a), PrecInt(p, r, m.b), PrecInt(p, r, m.c), PrecInt(p, r, m.d));
}

int Pi0Mat::precision() const {
  return std::min({a_.precision(), b_.precision(), c_.precision(), d_.precision()});
}

Pi0Mat Pi0Mat::operator*(const Pi0Mat& o) const {
  if (prime() != o.prime()) fail(ErrorKind::PrecisionMismatch, "primes differ");
  return Pi0Mat(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

bool Pi0Mat::operator==(const Pi0Mat& o) const { return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_; }

Pi0Mat Pi0Mat::with_precision(int r) const {
  return Pi0Mat(a_.with_precision(r), b_.with_precision(r), c_.with_precision(r), d_.with_precision(r));
}

std::string Pi0Mat::str() const {
  std::ostringstream os;
  os << "[[" << a_.residue() << "," << b_.residue() << "],[" << c_.residue() << "," << d_.residue() << "]] mod "
     << prime() << "^" << precision();
  return os.str();
}

Pi0Mat cofactor(const Pi0Mat& m) {
  // NotInGroup unless a is a unit.
  return Pi0Mat(m.d(), -m.b(), -m.c(), m.a());
}

IntMat cofactor(const IntMat& m) { return m.cofactor(); }

PrecInt mobius(const Pi0Mat& m, const PrecInt& z) { return (m.a() * z + m.b()) * (m.c() * z + m.d()).inverse(); }

}  // namespace pwl
