#include "pwl/verify.hpp"

#include <algorithm>
#include <numeric>

#include "pwl/iwasawa.hpp"
#include "pwl/qexp.hpp"
#include "pwl/slope.hpp"
#include "pwl/symrep.hpp"

namespace pwl {

using nlohmann::json;

namespace {

std::vector<u64> random_coords(Rng& rng, u64 mod, size_t n) {
  std::vector<u64> v(n);
  for (auto& x : v) x = rng.below(mod);
  return v;
}

Lambda0Elt random_lambda(Rng& rng, i64 p, int r, int d) {
  Lambda0Elt x = Lambda0Elt::zero(p, r, d);
  u64 mod = prime_power(p, r);
  for (int z = 0; z < x.components(); ++z)
    for (auto& c : x.component(z)) c = rng.below(mod);
  return x;
}

// Runs one case; an Error becomes a counterexample.
template <class F>
void guarded(CheckResult& res, json where, F&& body) {
  ++res.cases;
  try {
    body();
  } catch (const Error& e) {
    where["error"] = e.what();
    res.record(std::move(where));
  }
}

// Akiyama-Tanigawa, B_1 = +1/2 convention.
Rat bernoulli_at(int k) {
  std::vector<Rat> a(static_cast<size_t>(k) + 1);
  for (int m = 0; m <= k; ++m) {
    a[static_cast<size_t>(m)] = Rat(1, m + 1);
    for (int j = m; j >= 1; --j) a[static_cast<size_t>(j - 1)] = Rat(j) * (a[static_cast<size_t>(j - 1)] - a[static_cast<size_t>(j)]);
  }
  return a[0];
}

i64 euler_phi(i64 n) {
  i64 r = n;
  for (i64 q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      while (n % q == 0) n /= q;
      r -= r / q;
    }
  if (n > 1) r -= r / n;
  return r;
}

}  // namespace

bool SuiteReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return true;
}

json SuiteReport::to_json() const {
  json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["pass"] = pass();
  j["checks"] = json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass()}, {"cases", c.cases}, {"note", c.note}, {"counterexamples", c.counterexamples}});
  return j;
}

Pi0Mat random_pi0(Rng& rng, i64 p, int r) {
  u64 mod = prime_power(p, r);
  i64 d = static_cast<i64>(rng.below(mod));
  if (d % p == 0) d += 1;
  return Pi0Mat(PrecInt(p, r, static_cast<i64>(rng.below(mod))), PrecInt(p, r, static_cast<i64>(rng.below(mod))),
                PrecInt(p, r, p * static_cast<i64>(rng.below(mod))), PrecInt(p, r, d));
}

IntMat random_gamma1(const FreeBasis& B, Rng& rng, int len) {
  IntMat m;
  for (int i = 0; i < len; ++i) {
    const IntMat& g = B.gens[rng.below(static_cast<u64>(B.rank))];
    m = m * (rng.below(2) ? g : g.inverse_unimodular());
  }
  return m;
}

CheckResult check_action_law(Rng rng, int pairs) {
  CheckResult res("action law");
  const int r = 5;
  const size_t D = 6;
  for (i64 p : {3, 5}) {
    u64 mod = prime_power(p, r);
    size_t tail = universal_tail(p, r);
    std::vector<std::pair<std::string, Weight>> weights = {
        {"chi_0", Weight::integer(p, r, 0)},
        {"chi_3", Weight::integer(p, r, 3)},
        {"chi_{p,1+p}", Weight::wild_only(PrecInt(p, r, 1 + p))}};
    for (const auto& [name, chi] : weights)
      for (int t = 0; t < pairs; ++t) {
        Pi0Mat A = random_pi0(rng, p, r), B = random_pi0(rng, p, r);
        SeqVec a = make_seq(chi, r, D + tail, random_coords(rng, mod, D + 2 * tail));
        json where = {{"p", p}, {"chi", name}, {"A", A.str()}, {"B", B.str()}};
        guarded(res, where, [&] {
          SeqVec lhs = act_universal(A * B, a, D);
          SeqVec rhs = act_universal(A, act_universal(B, a, D + tail), D);
          if (lhs.coords != rhs.coords) {
            json ce = where;
            ce["lhs"] = lhs.coords;
            ce["rhs"] = rhs.coords;
            res.record(ce);
          }
        });
      }
  }
  return res;
}

CheckResult check_identity(Rng rng, int padic_samples) {
  CheckResult res("combinatorial identity");
  auto one = [&](const PrecInt& n, int i, int j, int h, int cmp) {
    json where = {{"n", n.residue()}, {"p", n.prime()}, {"i", i}, {"j", j}, {"h", h}};
    guarded(res, where, [&] {
      auto s = binom_identity(n, i, j, h);
      int known = std::min(s.lhs.precision(), s.rhs.precision());
      if (known < cmp || s.lhs.with_precision(known) != s.rhs.with_precision(known)) {
        json ce = where;
        ce["lhs"] = s.lhs.residue();
        ce["rhs"] = s.rhs.residue();
        res.record(ce);
      }
    });
  };
  // both sides stay below 7^19 / 2 in absolute value, so agreement mod 7^19 is equality
  for (int n = -12; n <= 12; ++n)
    for (int i = 0; i <= 10; ++i)
      for (int j = 0; j <= 10; ++j)
        for (int h = 0; h <= std::min(i, j); ++h) one(PrecInt(7, 21, n), i, j, h, 19);
  // binomials lose v_p(m!) digits; start high enough to keep six
  for (i64 p : {3, 5})
    for (int t = 0; t < padic_samples; ++t) {
      PrecInt n(p, 12, static_cast<i64>(rng.below(prime_power(p, 12))));
      int i = static_cast<int>(rng.below(6)), j = static_cast<int>(rng.below(6));
      int h = static_cast<int>(rng.below(static_cast<u64>(std::min(i, j)) + 1));
      one(n, i, j, h, 6);
    }
  return res;
}

CheckResult check_specialisation(Rng rng, int per_n) {
  CheckResult res("specialisation equivariance");
  const int r = 6;
  for (i64 p : {3, 5}) {
    u64 mod = prime_power(p, r);
    for (int n = 0; n <= 8; ++n)
      for (int t = 0; t < per_n; ++t) {
        Pi0Mat A = random_pi0(rng, p, r);
        size_t D = static_cast<size_t>(n) + 1;
        SeqVec a = make_seq(Weight::integer(p, r, n), r, D, random_coords(rng, mod, D + universal_tail(p, r)));
        json where = {{"p", p}, {"n", n}, {"A", A.str()}};
        guarded(res, where, [&] {
          SymVec lhs = specialize(n, act_universal(A, a, D));
          SymVec rhs = act_sym(n, A, specialize(n, a));
          if (!(lhs == rhs)) {
            json ce = where;
            ce["lhs"] = lhs.coords;
            ce["rhs"] = rhs.coords;
            res.record(ce);
          }
        });
      }
  }
  return res;
}

CheckResult check_congruence(Rng rng, int per_pair) {
  CheckResult res("congruence projections");
  const i64 p = 3;
  for (int r : {1, 2}) {
    int step = static_cast<int>(prime_power(p, r - 1) * (p - 1));
    u64 mod = prime_power(p, r);
    std::vector<std::pair<int, int>> pairs = {{1, 1 + step}, {2, 2 + step}, {0, 2 * step}};
    for (auto [n0, n1] : pairs)
      for (int t = 0; t < per_pair; ++t) {
        Pi0Mat A = random_pi0(rng, p, r);
        SymVec w{p, r, n1, random_coords(rng, mod, static_cast<size_t>(n1) + 1)};
        json where = {{"r", r}, {"n0", n0}, {"n1", n1}, {"A", A.str()}};
        guarded(res, where, [&] {
          SymVec lhs = congr_project(r, n1, n0, act_sym(n1, A, w));
          SymVec rhs = act_sym(n0, A, congr_project(r, n1, n0, w));
          if (!(lhs == rhs)) {
            json ce = where;
            ce["lhs"] = lhs.coords;
            ce["rhs"] = rhs.coords;
            res.record(ce);
          }
        });
      }
  }
  return res;
}

CheckResult check_family_intertwining(Rng rng, int per_k) {
  CheckResult res("family intertwining");
  const i64 p = 3;
  const int r = 4, d = 4;
  const size_t D = 5;
  for (i64 k : {2, 3, 4, 7})
    for (int t = 0; t < per_k; ++t) {
      Pi0Mat A = random_pi0(rng, p, r);
      std::vector<Lambda0Elt> coords;
      for (size_t i = 0; i < D + family_tail(p, r, d); ++i) coords.push_back(random_lambda(rng, p, r, d));
      FamilyVec F = make_family(p, r, d, D, coords);
      json where = {{"k", k}, {"A", A.str()}};
      guarded(res, where, [&] {
        SeqVec lhs = sp_family(k, act_family(A, F));
        SeqVec rhs = act_universal(A, sp_family(k, F), D);
        std::vector<u64> l(lhs.coords.begin(), lhs.coords.begin() + D), rr(rhs.coords.begin(), rhs.coords.begin() + D);
        if (l != rr) {
          json ce = where;
          ce["lhs"] = l;
          ce["rhs"] = rr;
          res.record(ce);
        }
      });
    }
  return res;
}

i64 cusps_x1(i64 N) {
  if (N < 5) fail(ErrorKind::BadLevel, "cusp count needs N >= 5");
  i64 s = 0;
  for (i64 d = 1; d <= N; ++d)
    if (N % d == 0) s += euler_phi(d) * euler_phi(N / d);
  return s / 2;
}

i64 genus_x1(i64 N) {
  i64 mu = coset_count(N) / 2;  // index of the image in PSL_2(Z)
  i64 twelve_g = 12 + mu - 6 * cusps_x1(N);
  if (twelve_g % 12) fail(ErrorKind::InternalInconsistency, "non-integral genus");
  return twelve_g / 12;
}

CheckResult check_free_ranks(const std::vector<i64>& levels) {
  CheckResult res("free ranks");
  for (i64 N : levels) {
    json where = {{"level", N}};
    guarded(res, where, [&] {
      FreeBasis B = free_basis(N);
      i64 expected = 1 + coset_count(N) / 12;
      bool ok = B.rank == expected && B.rank == predicted_rank(N);
      for (int h = 0; ok && h < B.rank; ++h)
        ok = in_gamma1(B.gens[static_cast<size_t>(h)], N) && sl2_replay(B.gen_words[static_cast<size_t>(h)]) == B.gens[static_cast<size_t>(h)];
      if (!ok) {
        json ce = where;
        ce["rank"] = B.rank;
        ce["expected"] = expected;
        res.record(ce);
      }
    });
  }
  return res;
}

CheckResult check_h1_trivial(i64 N, i64 p, int r) {
  CheckResult res("H^1 rank");
  json where = {{"level", N}, {"p", p}, {"r", r}};
  guarded(res, where, [&] {
    H1 H = h1(free_basis(N), Coefficients::trivial(p, r));
    i64 expected = 2 * genus_x1(N) + cusps_x1(N) - 1;
    if (!H.is_free() || H.free_rank() != expected) {
      json ce = where;
      ce["free_rank"] = H.free_rank();
      ce["elementary_divisors"] = H.elementary_divisors();
      ce["expected"] = expected;
      res.record(ce);
    }
  });
  return res;
}

CheckResult check_hecke_commutativity(i64 N, i64 p, int r, const std::vector<i64>& ops) {
  CheckResult res("Hecke commutativity");
  FreeBasis B = free_basis(N);
  Coefficients M = Coefficients::trivial(p, r);
  H1 H = h1(B, M);
  std::vector<Mat> Z;
  for (i64 l : ops) {
    json where = {{"level", N}, {"op", "T" + std::to_string(l)}, {"orders", "forward/reverse"}};
    guarded(res, where, [&] {
      Mat f = hecke_matrix(B, M, HeckeOp::T(l), RepOrder::Forward);
      Mat b = hecke_matrix(B, M, HeckeOp::T(l), RepOrder::Reverse);
      if (!(induced_map(H, f).matrix == induced_map(H, b).matrix)) res.record(where);
      Z.push_back(f);
    });
  }
  for (size_t i = 0; i < Z.size(); ++i)
    for (size_t j = i + 1; j < Z.size(); ++j) {
      json where = {{"level", N}, {"pair", {ops[i], ops[j]}}};
      guarded(res, where, [&] {
        if (!(induced_map(H, Z[i] * Z[j]).matrix == induced_map(H, Z[j] * Z[i]).matrix)) res.record(where);
        if (H.is_free()) {
          Mat a = induced_map(H, Z[i]).matrix, b = induced_map(H, Z[j]).matrix;
          if (!(a * b == b * a)) res.record(where);
        }
      });
    }
  return res;
}

CheckResult check_nilpotence(i64 N, const Coefficients& M, int s) {
  CheckResult res("p^s U_p^{-1} nilpotence");
  json where = {{"level", N}, {"coefficients", M.str()}, {"s", s}};
  guarded(res, where, [&] {
    FreeBasis B = free_basis(N);
    H1 H = h1(B, M);
    Mat U = induced_map(H, hecke_matrix(B, M, HeckeOp::T(M.p))).free_matrix;
    SlopeSplit S = slope_factor(char_poly(U), s);
    res.note = "level " + std::to_string(N) + ", block size " + std::to_string(S.below.degree());
    if (S.below.degree() == 0) return;
    SlopeProjector pr = slope_projector(U, S);
    PsInverse inv = ps_tp_inv(pr.block, s);
    for (int m = 1; m <= 3; ++m) {
      if (m > inv.precision) {
        json ce = where;
        ce["error"] = "precision " + std::to_string(inv.precision) + " too low for m = " + std::to_string(m);
        res.record(ce);
        break;
      }
      if (!nilpotent_to(inv.matrix.reduced(std::min(inv.precision, inv.matrix.ring().r)), m)) {
        json ce = where;
        ce["m"] = m;
        ce["block_size"] = pr.block.rows();
        res.record(ce);
      }
    }
  });
  return res;
}

CheckResult check_surjectivity(Rng rng, i64 N, i64 k, i64 p, int r, int d, int samples) {
  CheckResult res("specialisation surjectivity");
  FreeBasis B = free_basis(N);
  Coefficients M = Coefficients::sym(p, std::min(r, d), static_cast<int>(k - 2));
  H1 H = h1(B, M);
  for (int t = 0; t < samples; ++t) {
    std::vector<u64> cls;
    for (size_t row : H.class_rows) cls.push_back(rng.below(prime_power(p, H.coord_exps[row])));
    json where = {{"level", N}, {"k", k}, {"class", cls}};
    guarded(res, where, [&] {
      auto z = H.lift(cls);
      Preimage pre = family_preimage(B, k, z, p, r, d);
      if (H.classes(specialize_cocycle(k, pre.family)) != H.classes(z)) res.record(where);
    });
  }
  return res;
}

CheckResult check_truncate(Rng rng, int samples) {
  CheckResult res("truncation containments");
  json where = {{"level", 9}, {"p", 3}, {"s", 1}, {"k0", 2}, {"r", 4}, {"d", 4}};
  guarded(res, where, [&] {
    TruncateReport rep = verify_truncate_lemma(9, 3, 1, 2, 4, 4, samples, rng);
    res.cases = rep.checked_gamma + rep.checked_theta + rep.checked_hecke;
    if (rep.checked_gamma != samples || rep.checked_theta != samples || rep.checked_hecke != samples) res.record(where);
  });
  return res;
}

CheckResult check_eisenstein() {
  CheckResult res("Eisenstein data");
  for (int k : {4, 6, 8}) {
    json where = {{"k", k}};
    guarded(res, where, [&] {
      auto E = eisenstein(k, 50);
      if (E.at(0) != -bernoulli_at(k) / Rat(2 * k)) {
        json ce = where;
        ce["a0"] = E.at(0).str();
        res.record(ce);
      }
      for (i64 h = 1; h <= 50; ++h) {
        BigInt s = 0;
        for (i64 d = 1; d <= h; ++d)
          if (h % d == 0) s += boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(k - 1));
        if (E.at(static_cast<size_t>(h)) != Rat(s)) {
          json ce = where;
          ce["h"] = h;
          res.record(ce);
        }
      }
    });
  }
  json where = {{"k", 4}, {"op", "T2"}, {"normalization", "classical"}};
  guarded(res, where, [&] {
    RationalRing Q;
    auto E4 = eisenstein(4, 100);
    auto T2 = hecke_T(2, 4, DirichletChar<RationalRing>::trivial(1, Q), E4, Normalization::Classical);
    for (size_t h = 0; h <= T2.T(); ++h)
      if (T2.at(h) != 9 * E4.at(h)) {
        json ce = where;
        ce["h"] = h;
        res.record(ce);
        break;
      }
  });
  return res;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"action", "identity", "congruence", "hecke", "slope", "truncate", "all"};
  return names;
}

SuiteReport run_suite(const std::string& suite, std::uint64_t seed) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) fail(ErrorKind::BadArgument, "unknown suite " + suite);
  SuiteReport rep;
  rep.suite = suite;
  rep.seed = seed;
  Rng root(seed);
  auto want = [&](const char* s) { return suite == "all" || suite == s; };
  if (want("action")) {
    rep.checks.push_back(check_action_law(root.split(1)));
    rep.checks.push_back(check_specialisation(root.split(3)));
    rep.checks.push_back(check_family_intertwining(root.split(5)));
  }
  if (want("identity")) rep.checks.push_back(check_identity(root.split(2)));
  if (want("congruence")) rep.checks.push_back(check_congruence(root.split(4)));
  if (want("hecke")) {
    rep.checks.push_back(check_free_ranks({5, 6, 7, 8, 9, 10, 11, 12, 13, 15, 16, 20, 25}));
    rep.checks.push_back(check_h1_trivial(11, 11, 6));
    rep.checks.push_back(check_hecke_commutativity(11, 11, 4, {2, 3, 5}));
    rep.checks.push_back(check_surjectivity(root.split(14), 9, 3, 3, 3, 3, 10));
    rep.checks.push_back(check_eisenstein());
  }
  if (want("slope")) {
    rep.checks.push_back(check_nilpotence(11, Coefficients::trivial(11, 6), 1));
    rep.checks.push_back(check_nilpotence(9, Coefficients::trivial(3, 6), 1));
    rep.checks.push_back(check_nilpotence(10, Coefficients::trivial(5, 5), 1));
  }
  if (want("truncate")) rep.checks.push_back(check_truncate(root.split(12), 20));
  return rep;
}

}  // namespace pwl
