#include "pwl/cohomology.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

namespace pwl {

namespace {

i64 narrow(i128 v) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
    fail(ErrorKind::BadArgument, "integer overflow in a matrix product");
  return static_cast<i64>(v);
}

IntMat mul_checked(const IntMat& x, const IntMat& y) {
  return {narrow(i128(x.a) * y.a + i128(x.b) * y.c), narrow(i128(x.a) * y.b + i128(x.b) * y.d),
          narrow(i128(x.c) * y.a + i128(x.d) * y.c), narrow(i128(x.c) * y.b + i128(x.d) * y.d)};
}

i64 mod_n(i64 x, i64 N) { return ((x % N) + N) % N; }

// Whether B2 B1^{-1} lies in Gamma_1(N); if so, returns it.
std::optional<IntMat> quotient_in_gamma1(const IntMat& B2, const IntMat& B1, i64 N) {
  i64 D = B1.det();
  IntMat X = mul_checked(B2, B1.cofactor());
  if (X.a % D || X.b % D || X.c % D || X.d % D) return std::nullopt;
  IntMat Q{X.a / D, X.b / D, X.c / D, X.d / D};
  if (!in_gamma1(Q, N)) return std::nullopt;
  return Q;
}

bool admissible(const IntMat& A, i64 p) {
  IntMat c = A.cofactor();
  return A.det() > 0 && mod_n(c.c, p) == 0 && mod_n(c.d, p) != 0;
}

Pi0Mat pi0(const IntMat& m, i64 p, int r) { return Pi0Mat::from_int(m, p, r); }

// One summand of (A c)(gamma_h): sign * rho(g) c(gen).
struct HeckeTerm {
  int sign;
  int gen;
  IntMat theta_iota;
  IntMat prefix;
};

std::vector<std::vector<HeckeTerm>> hecke_terms(const FreeBasis& B, const DoubleCosetData& D) {
  std::vector<std::vector<HeckeTerm>> out(static_cast<size_t>(B.rank));
  for (int h = 0; h < B.rank; ++h) {
    for (const CosetRep& rep : D.reps) {
      IntMat Y = mul_checked(rep.B, B.gens[static_cast<size_t>(h)]);
      std::optional<IntMat> gt;
      for (const CosetRep& other : D.reps)
        if ((gt = quotient_in_gamma1(Y, other.B, B.N))) break;
      if (!gt) fail(ErrorKind::InternalInconsistency, "double coset representatives are not permuted by " + B.gens[static_cast<size_t>(h)].str());
      for (const CocycleTerm& t : cocycle_terms(express_word(*gt, B), B))
        out[static_cast<size_t>(h)].push_back({t.sign, t.gen, rep.B.cofactor(), t.prefix});
    }
  }
  return out;
}

}  // namespace

Coefficients Coefficients::trivial(i64 p, int r) {
  ModRing check(p, r);
  (void)check;
  return {Kind::Trivial, p, r, 0};
}

Coefficients Coefficients::sym(i64 p, int r, int n) {
  if (n < 0) fail(ErrorKind::BadWeight, "Sym^n needs n >= 0");
  ModRing check(p, r);
  (void)check;
  return {Kind::Sym, p, r, n};
}

Mat Coefficients::rho(const Pi0Mat& g) const {
  ModRing R = ring();
  if (kind == Kind::Trivial) return Mat::identity(R, 1);
  auto S = sym_matrix(n, g, r);
  Mat m(R, dim(), dim());
  for (size_t i = 0; i < dim(); ++i)
    for (size_t j = 0; j < dim(); ++j) m(i, j) = S[i][j];
  return m;
}

std::string Coefficients::str() const {
  std::ostringstream os;
  if (kind == Kind::Trivial)
    os << "Z/" << p << "^" << r;
  else
    os << "Sym^" << n << " mod " << p << "^" << r;
  return os.str();
}

std::vector<u64> Cocycle::value(size_t h) const {
  return std::vector<u64>(values.begin() + static_cast<long>(h * dim), values.begin() + static_cast<long>((h + 1) * dim));
}

std::vector<CocycleTerm> cocycle_terms(const Word& w, const FreeBasis& B) {
  std::vector<CocycleTerm> out;
  IntMat P;
  for (const Letter& l : w) {
    const IntMat& g = B.gens.at(static_cast<size_t>(l.gen));
    if (l.exp > 0) {
      out.push_back({1, l.gen, P});
      P = mul_checked(P, g);
    } else {
      P = mul_checked(P, g.inverse_unimodular());
      out.push_back({-1, l.gen, P});
    }
  }
  return out;
}

std::vector<u64> eval_cocycle(const Cocycle& c, const IntMat& g, const FreeBasis& B, const Coefficients& M) {
  if (c.basis_hash != B.hash) fail(ErrorKind::BadArgument, "cocycle was built on a different basis");
  ModRing R = M.ring();
  std::vector<u64> acc(M.dim(), 0);
  for (const CocycleTerm& t : cocycle_terms(express_word(g, B), B)) {
    auto v = M.rho(pi0(t.prefix, M.p, M.r)).apply(c.value(static_cast<size_t>(t.gen)));
    for (size_t i = 0; i < acc.size(); ++i) acc[i] = t.sign > 0 ? R.add(acc[i], v[i]) : R.sub(acc[i], v[i]);
  }
  return acc;
}

Mat boundary_matrix(const FreeBasis& B, const Coefficients& M) {
  size_t dim = M.dim();
  ModRing R = M.ring();
  Mat D(R, static_cast<size_t>(B.rank) * dim, dim);
  Mat I = Mat::identity(R, dim);
  for (int h = 0; h < B.rank; ++h)
    D.set_block(static_cast<size_t>(h) * dim, 0, M.rho(pi0(B.gens[static_cast<size_t>(h)], M.p, M.r)) - I);
  return D;
}

Cocycle coboundary(const std::vector<u64>& b, const FreeBasis& B, const Coefficients& M) {
  if (b.size() != M.dim()) fail(ErrorKind::DimensionMismatch, "coboundary: vector has the wrong size");
  return {B.hash, M.dim(), boundary_matrix(B, M).apply(b)};
}

int H1::max_torsion() const {
  int E = 0;
  for (int e : coord_exps)
    if (e > 0 && e < M.r) E = std::max(E, e);
  return E;
}

int H1::length() const {
  int s = 0;
  for (int e : coord_exps) s += e;
  return s;
}

std::vector<int> H1::elementary_divisors() const {
  std::vector<int> out;
  for (int e : coord_exps)
    if (e > 0) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u64> H1::classes(const std::vector<u64>& z) const {
  auto u = sf.U.apply(z);
  std::vector<u64> out;
  for (size_t i : class_rows) out.push_back(u[i] % prime_power(M.p, coord_exps[i]));
  return out;
}

bool H1::is_coboundary(const std::vector<u64>& z) const {
  auto c = classes(z);
  return std::all_of(c.begin(), c.end(), [](u64 x) { return x == 0; });
}

std::vector<u64> H1::lift(const std::vector<u64>& cls) const {
  if (cls.size() != class_rows.size()) fail(ErrorKind::DimensionMismatch, "lift: wrong number of class coordinates");
  std::vector<u64> u(coord_exps.size(), 0);
  for (size_t k = 0; k < cls.size(); ++k) u[class_rows[k]] = cls[k] % prime_power(M.p, coord_exps[class_rows[k]]);
  return Uinv.apply(u);
}

H1 h1(const FreeBasis& B, const Coefficients& M) {
  H1 H;
  H.M = M;
  H.basis_hash = B.hash;
  H.rank = B.rank;
  H.boundary = boundary_matrix(B, M);
  H.sf = smith(H.boundary);
  H.Uinv = inverse(H.sf.U);
  size_t n = H.boundary.rows();
  H.coord_exps.assign(n, M.r);
  for (size_t i = 0; i < H.sf.exps.size(); ++i) H.coord_exps[i] = H.sf.exps[i];
  for (size_t i = 0; i < n; ++i) {
    if (H.coord_exps[i] > 0) H.class_rows.push_back(i);
    if (H.coord_exps[i] == M.r) H.free_rows.push_back(i);
  }
  return H;
}

InducedMap induced_map(const H1& H, const Mat& T) {
  const ModRing& R = T.ring();
  i64 p = H.M.p;
  int r = H.M.r;
  Mat Tp = H.sf.U * T * H.Uinv;
  size_t n = Tp.rows();
  // Coboundaries p^{e_j} u_j must map to coboundaries.
  for (size_t j = 0; j < H.sf.exps.size(); ++j) {
    int ej = H.coord_exps[j];
    if (ej >= r) continue;
    u64 pe = prime_power(p, ej);
    for (size_t i = 0; i < n; ++i)
      if (R.mul(Tp(i, j), pe) % prime_power(p, H.coord_exps[i]) != 0)
        fail(ErrorKind::InternalInconsistency, "operator does not preserve coboundaries");
  }
  InducedMap out;
  size_t m = H.class_rows.size();
  out.matrix = Mat(R, m, m);
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b)
      out.matrix(a, b) = Tp(H.class_rows[a], H.class_rows[b]) % prime_power(p, H.coord_exps[H.class_rows[a]]);
  int E = H.max_torsion();
  out.free = E == 0;
  out.free_precision = r - E;
  ModRing Rf(p, r - E);
  size_t f = H.free_rows.size();
  out.free_matrix = Mat(Rf, f, f);
  for (size_t a = 0; a < f; ++a)
    for (size_t b = 0; b < f; ++b) out.free_matrix(a, b) = Tp(H.free_rows[a], H.free_rows[b]) % Rf.mod;
  return out;
}

DoubleCosetData double_coset_reps(const FreeBasis& B, const IntMat& A, i64 p, RepOrder order) {
  if (!admissible(A, p)) fail(ErrorKind::NotAdmissible, "cofactor of " + A.str() + " is not in Pi_0(" + std::to_string(p) + ")");
  std::vector<Letter> letters;
  if (order == RepOrder::Forward) {
    for (int h = 0; h < B.rank; ++h) {
      letters.push_back({h, 1});
      letters.push_back({h, -1});
    }
  } else {
    for (int h = B.rank - 1; h >= 0; --h) {
      letters.push_back({h, -1});
      letters.push_back({h, 1});
    }
  }
  DoubleCosetData D;
  D.seed = A;
  D.reps.push_back({A, IntMat{}, A});
  std::deque<size_t> q{0};
  while (!q.empty()) {
    size_t k = q.front();
    q.pop_front();
    for (const Letter& l : letters) {
      const IntMat& g = B.gens[static_cast<size_t>(l.gen)];
      IntMat gamma = mul_checked(D.reps[k].gamma, l.exp > 0 ? g : g.inverse_unimodular());
      IntMat Bn = mul_checked(A, gamma);
      bool seen = false;
      for (const CosetRep& c : D.reps)
        if (quotient_in_gamma1(Bn, c.B, B.N)) {
          seen = true;
          break;
        }
      if (seen) continue;
      if (!admissible(Bn, p)) fail(ErrorKind::NotAdmissible, "representative " + Bn.str() + " has cofactor outside Pi_0(p)");
      D.reps.push_back({A, gamma, Bn});
      q.push_back(D.reps.size() - 1);
    }
  }
  return D;
}

IntMat diamond_matrix(i64 n, i64 N) {
  if (mod_n(n, N) == 1 % N) return IntMat{};
  i64 a = 0;
  for (i64 t = 1; t < N; ++t)
    if (mod_n(t * mod_n(n, N), N) == 1) {
      a = t;
      break;
    }
  if (a == 0) fail(ErrorKind::NotCoprime, std::to_string(n) + " is not a unit mod " + std::to_string(N));
  i64 b = (a * n - 1) / N;
  return {a, b, N, n};
}

HeckeOp HeckeOp::parse(const std::string& s) {
  auto number = [&](const std::string& t) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) fail(ErrorKind::BadArgument, "bad operator '" + s + "'");
    return std::stoll(t);
  };
  if (s.rfind("diamond:", 0) == 0) return diamond(number(s.substr(8)));
  if (s.size() > 1 && (s[0] == 'T' || s[0] == 'U')) return T(number(s.substr(1)));
  if (s.size() > 1 && s[0] == 'S') return S(number(s.substr(1)));
  fail(ErrorKind::BadArgument, "bad operator '" + s + "'");
}

IntMat HeckeOp::seed(i64 N) const {
  switch (kind) {
    case Kind::T:
      if (!is_prime(n)) fail(ErrorKind::BadArgument, "T_l needs a prime l, got " + std::to_string(n));
      return {1, 0, 0, n};
    case Kind::Diamond:
    case Kind::S:
      return diamond_matrix(n, N);
    case Kind::Custom:
      return custom;
  }
  fail(ErrorKind::BadArgument, "unknown operator");
}

std::string HeckeOp::str() const {
  switch (kind) {
    case Kind::T: return "T" + std::to_string(n);
    case Kind::Diamond: return "diamond:" + std::to_string(n);
    case Kind::S: return "S" + std::to_string(n);
    case Kind::Custom: return "A" + custom.str();
  }
  return "?";
}

Mat hecke_matrix(const FreeBasis& B, const Coefficients& M, const HeckeOp& op, RepOrder order) {
  auto D = double_coset_reps(B, op.seed(B.N), M.p, order);
  auto terms = hecke_terms(B, D);
  size_t dim = M.dim();
  ModRing R = M.ring();
  Mat T(R, static_cast<size_t>(B.rank) * dim, static_cast<size_t>(B.rank) * dim);
  for (int h = 0; h < B.rank; ++h) {
    for (const HeckeTerm& t : terms[static_cast<size_t>(h)]) {
      Mat g = M.rho(pi0(t.theta_iota, M.p, M.r) * pi0(t.prefix, M.p, M.r));
      size_t r0 = static_cast<size_t>(h) * dim, c0 = static_cast<size_t>(t.gen) * dim;
      Mat cur = T.block(r0, c0, dim, dim);
      T.set_block(r0, c0, t.sign > 0 ? cur + g : cur - g);
    }
  }
  if (op.kind == HeckeOp::Kind::S) {
    i64 k = M.weight();
    T = T.scaled(PrecInt(M.p, M.r, op.n).pow(static_cast<u64>(k - 2)).residue());
  }
  return T;
}

std::vector<u64> charpoly_of(const Mat& T) { return charpoly(T); }

FamilyCocycle family_hecke(const FreeBasis& B, const HeckeOp& op, const FamilyCocycle& c, size_t out_width,
                           RepOrder order) {
  if (c.size() != static_cast<size_t>(B.rank)) fail(ErrorKind::DimensionMismatch, "family cocycle has the wrong number of values");
  if (op.kind == HeckeOp::Kind::S) fail(ErrorKind::BadArgument, "S_n depends on the weight; use diamonds on families");
  i64 p = c[0].p;
  int r = c[0].r, d = c[0].d;
  auto D = double_coset_reps(B, op.seed(B.N), p, order);
  auto terms = hecke_terms(B, D);
  size_t ftail = family_tail(p, r, d);
  FamilyCocycle out;
  for (int h = 0; h < B.rank; ++h) {
    FamilyVec acc;
    acc.p = p;
    acc.r = r;
    acc.d = d;
    acc.out_width = out_width > ftail ? out_width - ftail : 0;
    acc.coords.assign(out_width, Lambda0Elt::zero(p, r, d));
    for (const HeckeTerm& t : terms[static_cast<size_t>(h)]) {
      Pi0Mat g = pi0(t.theta_iota, p, r) * pi0(t.prefix, p, r);
      FamilyVec v = act_family(g, c[static_cast<size_t>(t.gen)], out_width);
      for (size_t i = 0; i < out_width; ++i)
        acc.coords[i] = t.sign > 0 ? acc.coords[i] + v.coords[i] : acc.coords[i] - v.coords[i];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

FamilyCocycle family_coboundary(const FreeBasis& B, const FamilyVec& b, size_t out_width) {
  FamilyCocycle out;
  for (int h = 0; h < B.rank; ++h) {
    FamilyVec v = act_family(pi0(B.gens[static_cast<size_t>(h)], b.p, b.r), b, out_width);
    for (size_t i = 0; i < out_width; ++i) v.coords[i] = v.coords[i] - b.coords[i];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<u64> specialize_cocycle(i64 k, const FamilyCocycle& c) {
  if (k < 2) fail(ErrorKind::BadWeight, "specialisation needs k >= 2");
  std::vector<u64> out;
  for (const FamilyVec& F : c) {
    SymVec v = specialize(static_cast<int>(k - 2), sp_family(k, F));
    out.insert(out.end(), v.coords.begin(), v.coords.end());
  }
  return out;
}

Preimage family_preimage(const FreeBasis& B, i64 k, const std::vector<u64>& z, i64 p, int r, int d) {
  if (k < 2) fail(ErrorKind::BadWeight, "specialisation needs k >= 2");
  int rs = std::min(r, d);
  Coefficients M = Coefficients::sym(p, rs, static_cast<int>(k - 2));
  size_t dim = M.dim();
  size_t rank = static_cast<size_t>(B.rank);
  if (z.size() != rank * dim) fail(ErrorKind::DimensionMismatch, "family_preimage: cocycle has the wrong size");
  size_t K = static_cast<size_t>(p * (p - 1));
  size_t D = static_cast<size_t>(d);
  size_t nf = rank * dim * K * D;
  ModRing R(p, rs);
  Mat A(R, rank * dim, nf + dim);
  // Column (h, j, zeta, e): the unit X^e in component zeta at coordinate j of generator h.
  for (size_t zeta = 0; zeta < K; ++zeta)
    for (size_t e = 0; e < D; ++e) {
      Lambda0Elt u = Lambda0Elt::zero(p, r, d);
      u.component(static_cast<int>(zeta))[e] = 1;
      u64 s = sp_k(k, u).residue() % R.mod;
      if (s == 0) continue;
      for (size_t h = 0; h < rank; ++h)
        for (size_t j = 0; j < dim; ++j) A(h * dim + j, ((h * dim + j) * K + zeta) * D + e) = s;
    }
  A.set_block(0, nf, boundary_matrix(B, M));
  std::vector<u64> rhs(z.size());
  for (size_t i = 0; i < z.size(); ++i) rhs[i] = z[i] % R.mod;
  auto x = solve(A, rhs);
  if (!x) fail(ErrorKind::NoLift, "no family cocycle specialises to this class at precision " + std::to_string(rs));
  Preimage out;
  for (size_t h = 0; h < rank; ++h) {
    std::vector<Lambda0Elt> coords;
    for (size_t j = 0; j < dim; ++j) {
      Lambda0Elt u = Lambda0Elt::zero(p, r, d);
      for (size_t zeta = 0; zeta < K; ++zeta)
        for (size_t e = 0; e < D; ++e) u.component(static_cast<int>(zeta))[e] = (*x)[((h * dim + j) * K + zeta) * D + e];
      coords.push_back(std::move(u));
    }
    FamilyVec F;
    F.p = p;
    F.r = r;
    F.d = d;
    F.out_width = dim;
    F.coords = std::move(coords);
    out.family.push_back(std::move(F));
  }
  out.bdry.assign(x->begin() + static_cast<long>(nf), x->end());
  auto spz = specialize_cocycle(k, out.family);
  auto bz = boundary_matrix(B, M).apply(out.bdry);
  for (size_t i = 0; i < z.size(); ++i)
    if (R.add(spz[i], bz[i]) != rhs[i]) fail(ErrorKind::InternalInconsistency, "family preimage does not specialise back");
  return out;
}

}  // namespace pwl
