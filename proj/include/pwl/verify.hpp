#pragma once

// Property checks behind `pwl verify`. Each check draws from its own split of
// the seed and records counterexamples as JSON.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "pwl/cohomology.hpp"
#include "pwl/rng.hpp"

namespace pwl {

struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  int cases = 0;
  nlohmann::json counterexamples = nlohmann::json::array();
  std::string note;

  bool pass() const { return counterexamples.empty(); }
  void record(nlohmann::json ce) { counterexamples.push_back(std::move(ce)); }
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool pass() const;
  nlohmann::json to_json() const;
};

Pi0Mat random_pi0(Rng& rng, i64 p, int r);
IntMat random_gamma1(const FreeBasis& B, Rng& rng, int len);

// rho_chi(AB) = rho_chi(A) rho_chi(B) on 6 coordinates mod p^5, p in {3,5},
// chi in {chi_0, chi_3, chi_{p,1+p}}.
CheckResult check_action_law(Rng rng, int pairs = 50);
// The binomial identity for integer n in [-12, 12] and random p-adic n mod p^6.
CheckResult check_identity(Rng rng, int padic_samples = 20);
// varpi_n rho_n(A) = Sym^n(A) varpi_n mod p^6, n <= 8.
CheckResult check_specialisation(Rng rng, int per_n = 20);
// Equivariance of varpi^r_{n1,n0}, p = 3, r in {1, 2}.
CheckResult check_congruence(Rng rng, int per_pair = 10);
// sp_k rho_{z-2}(A) = rho_{k-2}(A) sp_k mod (3^4, X^4), k in {2,3,4,7}.
CheckResult check_family_intertwining(Rng rng, int per_k = 10);

// Genus and cusp count of X_1(N), N >= 5.
i64 cusps_x1(i64 N);
i64 genus_x1(i64 N);

// Basis rank against 1 + mu/12 and against the replayed generators.
CheckResult check_free_ranks(const std::vector<i64>& levels);
// H^1(Gamma_1(N), Z/p^r) free of rank 2g + c - 1.
CheckResult check_h1_trivial(i64 N, i64 p, int r);
// T_l T_m = T_m T_l on H^1 and forward/reverse representatives agree.
CheckResult check_hecke_commutativity(i64 N, i64 p, int r, const std::vector<i64>& ops);
// Every slope-< s block of U_p: (p^s U_p^{-1})^{n m} = 0 mod p^m for m <= 3.
CheckResult check_nilpotence(i64 N, const Coefficients& M, int s);
// Random classes of H^1(Gamma_1(N), Sym^{k-2}) lift to family cocycles.
CheckResult check_surjectivity(Rng rng, i64 N, i64 k, i64 p, int r, int d, int samples);
CheckResult check_truncate(Rng rng, int samples);
// Eisenstein coefficients against brute-force divisor sums; classical T_2 E_4 = 9 E_4.
CheckResult check_eisenstein();

// action | identity | congruence | hecke | slope | truncate | all.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed);
const std::vector<std::string>& suite_names();

}  // namespace pwl
