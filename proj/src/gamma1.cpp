#include "pwl/gamma1.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "pwl/hash.hpp"

namespace pwl {

namespace {

constexpr int kPresentationVersion = 1;

i64 mod_n(i64 x, i64 N) { return ((x % N) + N) % N; }

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

using SWord = std::vector<int>;  // signed Schreier ids, +-(id + 1)

SWord reduce_cyclic(const SWord& w) {
  SWord st;
  for (int x : w) {
    if (!st.empty() && st.back() == -x)
      st.pop_back();
    else
      st.push_back(x);
  }
  size_t lo = 0, hi = st.size();
  while (hi - lo >= 2 && st[lo] == -st[hi - 1]) {
    ++lo;
    --hi;
  }
  return SWord(st.begin() + static_cast<long>(lo), st.begin() + static_cast<long>(hi));
}

SWord invert(const SWord& w) {
  SWord out(w.rbegin(), w.rend());
  for (auto& x : out) x = -x;
  return out;
}

SWord substitute(const SWord& w, int gen, const SWord& def) {
  SWord out;
  SWord inv = invert(def);
  for (int x : w) {
    if (x == gen + 1)
      out.insert(out.end(), def.begin(), def.end());
    else if (x == -(gen + 1))
      out.insert(out.end(), inv.begin(), inv.end());
    else
      out.push_back(x);
  }
  return out;
}

// 2x2 product modulo 2^61 - 1, used only as a consistency trap.
struct ModMat {
  u64 a, b, c, d;
};
constexpr u64 kTrapMod = (u64(1) << 61) - 1;
u64 tm(i64 x) { return static_cast<u64>(((x % static_cast<i64>(kTrapMod)) + static_cast<i64>(kTrapMod)) % static_cast<i64>(kTrapMod)); }
u64 tmul(u64 x, u64 y) { return static_cast<u64>((static_cast<u128>(x) * y) % kTrapMod); }
ModMat to_mm(const IntMat& m) { return {tm(m.a), tm(m.b), tm(m.c), tm(m.d)}; }
ModMat mm_mul(const ModMat& x, const ModMat& y) {
  return {(tmul(x.a, y.a) + tmul(x.b, y.c)) % kTrapMod, (tmul(x.a, y.b) + tmul(x.b, y.d)) % kTrapMod,
          (tmul(x.c, y.a) + tmul(x.d, y.c)) % kTrapMod, (tmul(x.c, y.b) + tmul(x.d, y.d)) % kTrapMod};
}
bool mm_eq(const ModMat& x, const ModMat& y) { return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d; }

}  // namespace

IntMat sl2_letter(int letter) {
  switch (letter) {
    case kS: return {0, -1, 1, 0};
    case -kS: return {0, 1, -1, 0};
    case kU: return {0, -1, 1, 1};
    case -kU: return {1, 1, -1, 0};
    case kT: return {1, 1, 0, 1};
    case -kT: return {1, -1, 0, 1};
  }
  fail(ErrorKind::BadArgument, "unknown SL_2 letter " + std::to_string(letter));
}

IntMat sl2_replay(const std::vector<int>& letters) {
  IntMat m;
  for (int l : letters) m = m * sl2_letter(l);
  return m;
}

i64 coset_count(i64 N) {
  i64 mu = N * N;
  i64 n = N;
  for (i64 l = 2; l * l <= n; ++l) {
    if (n % l == 0) {
      mu = mu / (l * l) * (l * l - 1);
      while (n % l == 0) n /= l;
    }
  }
  if (n > 1) mu = mu / (n * n) * (n * n - 1);
  return mu;
}

int predicted_rank(i64 N) { return static_cast<int>(1 + coset_count(N) / 12); }

int CosetTable::index(i64 c, i64 d) const { return lookup[static_cast<size_t>(mod_n(c, N) * N + mod_n(d, N))]; }

int CosetTable::act(int x, int letter) const {
  switch (letter) {
    case kS: return act_S[static_cast<size_t>(x)];
    case -kS: return act_Sinv[static_cast<size_t>(x)];
    case kU: return act_U[static_cast<size_t>(x)];
    case -kU: return act_Uinv[static_cast<size_t>(x)];
    case kT: return act_T[static_cast<size_t>(x)];
    case -kT: return act_Tinv[static_cast<size_t>(x)];
  }
  fail(ErrorKind::BadArgument, "unknown SL_2 letter");
}

CosetTable coset_table(i64 N) {
  if (N < 5) fail(ErrorKind::BadLevel, "level must be at least 5, got " + std::to_string(N));
  CosetTable t;
  t.N = N;
  t.lookup.assign(static_cast<size_t>(N * N), -1);
  for (i64 c = 0; c < N; ++c)
    for (i64 d = 0; d < N; ++d)
      if (std::gcd(std::gcd(c, d), N) == 1) {
        t.lookup[static_cast<size_t>(c * N + d)] = static_cast<int>(t.rows.size());
        t.rows.emplace_back(c, d);
      }
  auto table_for = [&](int letter) {
    IntMat m = sl2_letter(letter);
    std::vector<int> out(t.rows.size());
    for (size_t x = 0; x < t.rows.size(); ++x) {
      auto [c, d] = t.rows[x];
      out[x] = t.index(c * m.a + d * m.c, c * m.b + d * m.d);
    }
    return out;
  };
  t.act_S = table_for(kS);
  t.act_Sinv = table_for(-kS);
  t.act_U = table_for(kU);
  t.act_Uinv = table_for(-kU);
  t.act_T = table_for(kT);
  t.act_Tinv = table_for(-kT);
  t.base = t.index(0, 1);
  t.rep_word.assign(t.rows.size(), {});
  t.rep.assign(t.rows.size(), IntMat{});
  std::vector<bool> seen(t.rows.size(), false);
  std::deque<int> q{t.base};
  seen[static_cast<size_t>(t.base)] = true;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int l : {int(kS), -kS, int(kU), -kU}) {
      int y = t.act(x, l);
      if (seen[static_cast<size_t>(y)]) continue;
      seen[static_cast<size_t>(y)] = true;
      t.rep_word[static_cast<size_t>(y)] = t.rep_word[static_cast<size_t>(x)];
      t.rep_word[static_cast<size_t>(y)].push_back(l);
      t.rep[static_cast<size_t>(y)] = t.rep[static_cast<size_t>(x)] * sl2_letter(l);
      q.push_back(y);
    }
  }
  if (static_cast<i64>(t.rows.size()) != coset_count(N) || std::find(seen.begin(), seen.end(), false) != seen.end())
    fail(ErrorKind::InternalInconsistency, "coset table incomplete");
  return t;
}

bool in_gamma1(const IntMat& g, i64 N) {
  return g.det() == 1 && mod_n(g.c, N) == 0 && mod_n(g.a, N) == 1 % N && mod_n(g.d, N) == 1 % N;
}

Word free_reduce(const Word& w) {
  Word st;
  for (const Letter& l : w) {
    if (!st.empty() && st.back().gen == l.gen && st.back().exp == -l.exp)
      st.pop_back();
    else
      st.push_back(l);
  }
  return st;
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l.exp = -l.exp;
  return out;
}

FreeBasis free_basis(i64 N) {
  FreeBasis B;
  B.N = N;
  B.table = coset_table(N);
  const CosetTable& t = B.table;
  size_t mu = t.size();

  // Tree edges give trivial Schreier generators.
  std::vector<bool> trivial(2 * mu, false);
  for (size_t y = 0; y < mu; ++y) {
    const auto& w = t.rep_word[y];
    if (w.empty()) continue;
    int l = w.back();
    int g = std::abs(l) == kS ? 0 : 1;
    if (l > 0) {
      // rep(y) = rep(x) g with x = y g^-1
      int x = t.act(static_cast<int>(y), -l);
      trivial[2 * static_cast<size_t>(x) + static_cast<size_t>(g)] = true;
    } else {
      trivial[2 * y + static_cast<size_t>(g)] = true;
    }
  }
  B.schreier_id.assign(2 * mu, -1);
  std::vector<std::pair<int, int>> sgen;  // id -> (coset, g)
  for (size_t k = 0; k < 2 * mu; ++k)
    if (!trivial[k]) {
      B.schreier_id[k] = static_cast<int>(sgen.size());
      sgen.emplace_back(static_cast<int>(k / 2), static_cast<int>(k % 2));
    }
  auto sgen_matrix = [&](int id) {
    auto [x, g] = sgen[static_cast<size_t>(id)];
    int l = g == 0 ? kS : kU;
    int y = t.act(x, l);
    return t.rep[static_cast<size_t>(x)] * sl2_letter(l) * t.rep[static_cast<size_t>(y)].inverse_unimodular();
  };

  // Rewrite the relators at every coset.
  const int s = kS, u = kU;
  const std::vector<std::vector<int>> relators{{s, s, s, s}, {u, u, u, u, u, u}, {s, s, -u, -u, -u}};
  std::vector<SWord> rels;
  for (size_t x0 = 0; x0 < mu; ++x0)
    for (const auto& R : relators) {
      SWord w;
      int x = static_cast<int>(x0);
      for (int l : R) {
        int g = std::abs(l) == kS ? 0 : 1;
        if (l > 0) {
          int id = B.schreier_id[2 * static_cast<size_t>(x) + static_cast<size_t>(g)];
          if (id >= 0) w.push_back(id + 1);
          x = t.act(x, l);
        } else {
          int y = t.act(x, l);
          int id = B.schreier_id[2 * static_cast<size_t>(y) + static_cast<size_t>(g)];
          if (id >= 0) w.push_back(-(id + 1));
          x = y;
        }
      }
      if (x != static_cast<int>(x0)) fail(ErrorKind::InternalInconsistency, "relator does not close up");
      w = reduce_cyclic(w);
      if (!w.empty()) rels.push_back(w);
    }

  // Greedy Tietze elimination.
  size_t G = sgen.size();
  std::vector<bool> alive(G, true);
  std::vector<std::pair<int, SWord>> defs;
  std::vector<int> count(G, 0);
  while (true) {
    int best_rel = -1, best_gen = -1;
    size_t best_len = SIZE_MAX;
    for (size_t k = 0; k < rels.size(); ++k) {
      if (rels[k].size() >= best_len) continue;
      for (int x : rels[k]) ++count[static_cast<size_t>(std::abs(x) - 1)];
      for (int x : rels[k])
        if (count[static_cast<size_t>(std::abs(x) - 1)] == 1) {
          best_rel = static_cast<int>(k);
          best_gen = std::abs(x) - 1;
          best_len = rels[k].size();
          break;
        }
      for (int x : rels[k]) count[static_cast<size_t>(std::abs(x) - 1)] = 0;
    }
    if (best_rel < 0) break;
    SWord rel = rels[static_cast<size_t>(best_rel)];
    auto pos = std::find_if(rel.begin(), rel.end(), [&](int x) { return std::abs(x) - 1 == best_gen; });
    std::rotate(rel.begin(), pos, rel.end());
    int sign = rel[0] > 0 ? 1 : -1;
    SWord rest(rel.begin() + 1, rel.end());
    SWord def = sign > 0 ? invert(rest) : rest;
    defs.emplace_back(best_gen, def);
    alive[static_cast<size_t>(best_gen)] = false;
    rels.erase(rels.begin() + best_rel);
    std::vector<SWord> next;
    for (auto& r : rels) {
      SWord s = reduce_cyclic(substitute(r, best_gen, def));
      if (!s.empty()) next.push_back(std::move(s));
    }
    rels = std::move(next);
  }
  if (!rels.empty())
    fail(ErrorKind::InternalInconsistency, std::to_string(rels.size()) + " relators survive Tietze elimination at level " + std::to_string(N));

  std::vector<int> free_index(G, -1);
  for (size_t g = 0; g < G; ++g)
    if (alive[g]) {
      free_index[g] = static_cast<int>(B.gens.size());
      B.gens.push_back(sgen_matrix(static_cast<int>(g)));
      auto [x, gg] = sgen[g];
      int l = gg == 0 ? kS : kU;
      int y = t.act(x, l);
      std::vector<int> su = t.rep_word[static_cast<size_t>(x)];
      su.push_back(l);
      for (auto it = t.rep_word[static_cast<size_t>(y)].rbegin(); it != t.rep_word[static_cast<size_t>(y)].rend(); ++it)
        su.push_back(-*it);
      std::vector<int> st;
      for (int s : su) {
        if (s == kU) {
          st.push_back(kS);
          st.push_back(kT);
        } else if (s == -kU) {
          st.push_back(-kT);
          st.push_back(-kS);
        } else {
          st.push_back(s);
        }
      }
      B.gen_words.push_back(st);
    }
  B.rank = static_cast<int>(B.gens.size());
  if (B.rank != predicted_rank(N))
    fail(ErrorKind::InternalInconsistency, "free rank " + std::to_string(B.rank) + " disagrees with index formula " +
                                               std::to_string(predicted_rank(N)));

  B.expansion.assign(G, {});
  for (size_t g = 0; g < G; ++g)
    if (alive[g]) B.expansion[g] = {Letter{free_index[g], 1}};
  auto expand = [&](const SWord& w) {
    Word out;
    for (int x : w) {
      const Word& e = B.expansion[static_cast<size_t>(std::abs(x) - 1)];
      if (x > 0)
        out.insert(out.end(), e.begin(), e.end());
      else {
        Word inv = inverse_word(e);
        out.insert(out.end(), inv.begin(), inv.end());
      }
    }
    return free_reduce(out);
  };
  for (auto it = defs.rbegin(); it != defs.rend(); ++it) B.expansion[static_cast<size_t>(it->first)] = expand(it->second);

  for (size_t g = 0; g < G; ++g) {
    if (!in_gamma1(sgen_matrix(static_cast<int>(g)), N))
      fail(ErrorKind::InternalInconsistency, "Schreier generator outside Gamma_1(N)");
    ModMat acc = to_mm(IntMat{});
    for (const Letter& l : B.expansion[g]) {
      const IntMat& m = B.gens[static_cast<size_t>(l.gen)];
      acc = mm_mul(acc, to_mm(l.exp > 0 ? m : m.inverse_unimodular()));
    }
    if (!mm_eq(acc, to_mm(sgen_matrix(static_cast<int>(g)))))
      fail(ErrorKind::InternalInconsistency, "expansion of a Schreier generator does not replay");
  }

  std::ostringstream os;
  os << "pwl-basis-v" << kPresentationVersion << "|" << N;
  for (const auto& m : B.gens) os << "|" << m.a << "," << m.b << "," << m.c << "," << m.d;
  B.hash = content_hash(os.str());
  return B;
}

std::vector<int> sl2_decompose(const IntMat& g) {
  if (g.det() != 1) fail(ErrorKind::NotInGroup, "matrix " + g.str() + " is not in SL_2(Z)");
  IntMat M = g;
  std::vector<int> left;  // letters X with M <- X M, in order
  while (M.c != 0) {
    i64 q = floor_div(M.a, M.c);
    M.a -= q * M.c;
    M.b -= q * M.d;
    for (i64 k = 0; k < std::abs(q); ++k) left.push_back(q > 0 ? -kT : kT);
    M = sl2_letter(kS) * M;
    left.push_back(kS);
  }
  // g = X_1^-1 X_2^-1 ... X_n^-1 M
  std::vector<int> out;
  for (int l : left) out.push_back(-l);
  i64 b = M.b;
  if (M.a == -1) {
    out.push_back(kS);
    out.push_back(kS);
    b = -b;
  }
  for (i64 k = 0; k < std::abs(b); ++k) out.push_back(b > 0 ? kT : -kT);
  return out;
}

Word express_word(const IntMat& g, const FreeBasis& B) {
  if (!in_gamma1(g, B.N)) fail(ErrorKind::NotInGroup, "matrix " + g.str() + " is not in Gamma_1(" + std::to_string(B.N) + ")");
  std::vector<int> su;
  for (int l : sl2_decompose(g)) {
    if (l == kT) {
      su.push_back(-kS);
      su.push_back(kU);
    } else if (l == -kT) {
      su.push_back(-kU);
      su.push_back(kS);
    } else {
      su.push_back(l);
    }
  }
  const CosetTable& t = B.table;
  int x = t.base;
  Word out;
  for (int l : su) {
    int gidx = std::abs(l) == kS ? 0 : 1;
    int id;
    int sign;
    if (l > 0) {
      id = B.schreier_id[2 * static_cast<size_t>(x) + static_cast<size_t>(gidx)];
      sign = 1;
      x = t.act(x, l);
    } else {
      x = t.act(x, l);
      id = B.schreier_id[2 * static_cast<size_t>(x) + static_cast<size_t>(gidx)];
      sign = -1;
    }
    if (id < 0) continue;
    const Word& e = B.expansion[static_cast<size_t>(id)];
    if (sign > 0)
      out.insert(out.end(), e.begin(), e.end());
    else {
      Word inv = inverse_word(e);
      out.insert(out.end(), inv.begin(), inv.end());
    }
    out = free_reduce(out);
  }
  if (x != t.base) fail(ErrorKind::InternalInconsistency, "coset walk did not return to the base coset");
  return free_reduce(out);
}

IntMat replay(const Word& w, const FreeBasis& B) {
  IntMat m;
  for (const Letter& l : w) {
    const IntMat& g = B.gens.at(static_cast<size_t>(l.gen));
    m = m * (l.exp > 0 ? g : g.inverse_unimodular());
  }
  return m;
}

std::string word_str(const Word& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << " ";
    os << "g" << w[i].gen;
    if (w[i].exp < 0) os << "^-1";
  }
  return os.str();
}

}  // namespace pwl
