#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pwl/io.hpp"
#include "pwl/verify.hpp"

using namespace pwl;
using nlohmann::json;

namespace {

struct Options {
  i64 level = 0;
  int weight = 2;
  std::vector<int> weights;
  i64 prime = 0;
  int prec = 0;
  int xdeg = 0;
  int s = 1;
  size_t terms = 20;
  std::string op;
  std::string suite = "all";
  std::string out;
  std::string cache;
  bool no_cache = false;
  bool no_meta = false;
  std::uint64_t seed = 1;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void usage_check(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

i64 smallest_odd_prime_factor(i64 N) {
  for (i64 q = 3; q <= N; q += 2)
    if (N % q == 0 && is_prime(q)) return q;
  return 0;
}

// Level/prime/precision invariants shared by the cohomology commands.
void job_invariants(Options& o) {
  usage_check(o.level >= 5, "--level must be at least 5");
  if (o.prime == 0) o.prime = smallest_odd_prime_factor(o.level);
  usage_check(o.prime > 2 && is_prime(o.prime), "--prime must be an odd prime");
  usage_check(o.level % o.prime == 0, "--prime must divide --level");
  usage_check(o.prec >= 1, "--prec must be at least 1");
}

Coefficients coefficients_for(const Options& o, int k) {
  usage_check(k >= 2, "weights must be at least 2");
  return k == 2 ? Coefficients::trivial(o.prime, o.prec) : Coefficients::sym(o.prime, o.prec, k - 2);
}

Cache make_cache(const Options& o) {
  if (o.no_cache) return Cache(std::filesystem::path());
  return Cache(resolve_cache_dir(o.cache));
}

HeckeOp parse_op(const Options& o) {
  std::string s = o.op.empty() || o.op == "Up" ? "T" + std::to_string(o.prime) : o.op;
  try {
    return HeckeOp::parse(s);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

json header(const Options& o, const std::string& command) {
  json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  if (!o.no_meta) {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["meta"] = {{"timestamp", buf}};
  }
  return j;
}

json cmd_basis(Options& o) {
  usage_check(o.level >= 5, "--level must be at least 5");
  Cache cache = make_cache(o);
  json j = header(o, "basis");
  j["basis"] = to_json(cached_free_basis(o.level, cache));
  return j;
}

json cmd_h1(Options& o) {
  job_invariants(o);
  Cache cache = make_cache(o);
  FreeBasis B = cached_free_basis(o.level, cache);
  Coefficients M = coefficients_for(o, o.weight);
  H1 H = h1(B, M);
  json j = header(o, "h1");
  j["level"] = o.level;
  j["weight"] = o.weight;
  j["p"] = o.prime;
  j["precision"] = o.prec;
  j["basisHash"] = B.hash;
  j["coefficients"] = M.str();
  j["free_rank"] = H.free_rank();
  j["elementary_divisors"] = H.elementary_divisors();
  j["length"] = H.length();
  return j;
}

json cmd_hecke(Options& o) {
  job_invariants(o);
  usage_check(!o.op.empty(), "--op is required");
  HeckeOp op = parse_op(o);
  Cache cache = make_cache(o);
  FreeBasis B = cached_free_basis(o.level, cache);
  Coefficients M = coefficients_for(o, o.weight);
  H1 H = h1(B, M);
  InducedMap I = induced_map(H, cached_hecke_matrix(B, M, op, cache));
  json j = header(o, "hecke");
  j["level"] = o.level;
  j["weight"] = o.weight;
  j["p"] = o.prime;
  j["precision"] = o.prec;
  j["basisHash"] = B.hash;
  j["operator"] = op.str();
  j["elementary_divisors"] = H.elementary_divisors();
  j["matrix"] = to_json(I.matrix);
  j["free_matrix"] = to_json(I.free_matrix);
  j["free_precision"] = I.free_precision;
  j["charpoly"] = to_json(char_poly(I.free_matrix));
  return j;
}

json cmd_slopes(Options& o) {
  job_invariants(o);
  Cache cache = make_cache(o);
  FreeBasis B = cached_free_basis(o.level, cache);
  Coefficients M = coefficients_for(o, o.weight);
  H1 H = h1(B, M);
  HeckeOp op = HeckeOp::T(o.prime);
  InducedMap I = induced_map(H, cached_hecke_matrix(B, M, op, cache));
  CharPoly P = char_poly(I.free_matrix);
  NewtonPolygon np = newton_polygon(P);
  json j = header(o, "slopes");
  j["level"] = o.level;
  j["weight"] = o.weight;
  j["p"] = o.prime;
  j["precision"] = o.prec;
  j["basisHash"] = B.hash;
  j["operator"] = op.str();
  j["s"] = o.s;
  j["charpoly"] = to_json(P);
  j["polygon"] = to_json(np);
  j["count_below"] = np.count_below(o.s);
  SlopeSplit S = slope_factor(P, o.s);
  j["split"] = to_json(S);
  if (S.below.degree() > 0) {
    SlopeProjector pr = slope_projector(I.free_matrix, S);
    j["projector"] = to_json(pr.projector);
    j["block"] = to_json(pr.block);
  }
  return j;
}

json cmd_family(Options& o) {
  job_invariants(o);
  usage_check(o.xdeg >= 1, "--xdeg must be at least 1");
  usage_check(!o.weights.empty(), "--weights is required");
  HeckeOp op = parse_op(o);
  usage_check(op.kind != HeckeOp::Kind::S, "S_n has no family version");
  Cache cache = make_cache(o);
  FreeBasis B = cached_free_basis(o.level, cache);
  int kmax = 2;
  for (int k : o.weights) {
    usage_check(k >= 2, "weights must be at least 2");
    kmax = std::max(kmax, k);
  }
  size_t out = static_cast<size_t>(kmax) - 1;
  size_t width = out + family_tail(o.prime, o.prec, o.xdeg);
  Rng rng(o.seed);
  u64 mod = prime_power(o.prime, o.prec);
  FamilyCocycle c;
  for (int h = 0; h < B.rank; ++h) {
    std::vector<Lambda0Elt> coords;
    for (size_t i = 0; i < width; ++i) {
      Lambda0Elt x = Lambda0Elt::zero(o.prime, o.prec, o.xdeg);
      for (int z = 0; z < x.components(); ++z)
        for (auto& v : x.component(z)) v = rng.below(mod);
      coords.push_back(x);
    }
    c.push_back(make_family(o.prime, o.prec, o.xdeg, out, coords));
  }
  FamilyCocycle Tc = family_hecke(B, op, c, out);
  int r_sp = std::min(o.prec, o.xdeg);
  json rows = json::array();
  bool all_ok = true;
  for (int k : o.weights) {
    Coefficients M = k == 2 ? Coefficients::trivial(o.prime, r_sp) : Coefficients::sym(o.prime, r_sp, k - 2);
    auto lhs = specialize_cocycle(k, Tc);
    auto rhs = cached_hecke_matrix(B, M, op, cache).apply(specialize_cocycle(k, c));
    H1 H = h1(B, M);
    bool ok = lhs == rhs;
    all_ok = all_ok && ok;
    rows.push_back({{"k", k},
                    {"consistent", ok},
                    {"elementary_divisors", H.elementary_divisors()},
                    {"specialised_image", H.classes(lhs)}});
  }
  json j = header(o, "family");
  j["level"] = o.level;
  j["p"] = o.prime;
  j["precision"] = o.prec;
  j["xdeg"] = o.xdeg;
  j["basisHash"] = B.hash;
  j["operator"] = op.str();
  j["seed"] = o.seed;
  j["out_width"] = out;
  j["weights"] = rows;
  j["consistent"] = all_ok;
  if (!all_ok) fail(ErrorKind::ContractViolated, "family Hecke image does not specialise to the weight-k image: " + rows.dump());
  return j;
}

json cmd_eisenstein(Options& o) {
  usage_check(o.weight >= 4 && o.weight % 2 == 0, "--weight must be even and at least 4");
  json j = header(o, "eisenstein");
  j["weight"] = o.weight;
  j["qexp"] = to_json(eisenstein(o.weight, o.terms));
  return j;
}

void emit(const Options& o, const json& j) {
  std::string text = j.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

void report_failure(const std::string& kind, const std::string& message, const json& extra = nullptr) {
  json r = {{"schema", kSchemaVersion}, {"status", "failure"}, {"kind", kind}, {"message", message}};
  if (!extra.is_null()) r["report"] = extra;
  std::cerr << r.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic weight families, Hecke operators on H^1(Gamma_1(N)) and slopes"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--out", o.out, "write JSON here instead of stdout");
  app.add_option("--cache", o.cache, "cache directory (PWL_CACHE_DIR overrides)");
  app.add_flag("--no-cache", o.no_cache, "do not read or write the cache");
  app.add_flag("--no-meta", o.no_meta, "omit the timestamp block");
  app.add_option("--seed", o.seed, "seed for random data");

  auto level = [&](CLI::App* c) { c->add_option("--level", o.level, "level N")->required(); };
  auto prime = [&](CLI::App* c) { c->add_option("--prime", o.prime, "prime p dividing N (default: smallest odd one)"); };
  auto prec = [&](CLI::App* c) { c->add_option("--prec", o.prec, "precision r")->required(); };

  auto* basis = app.add_subcommand("basis", "free basis of Gamma_1(N)");
  level(basis);

  auto* h1c = app.add_subcommand("h1", "elementary divisors of H^1");
  level(h1c);
  h1c->add_option("--weight", o.weight, "weight k (Sym^{k-2})")->required();
  prime(h1c);
  prec(h1c);

  auto* hecke = app.add_subcommand("hecke", "Hecke matrix and characteristic polynomial");
  level(hecke);
  hecke->add_option("--weight", o.weight, "weight k")->required();
  hecke->add_option("--op", o.op, "Tl, Ul, Up, diamond:n or Sn")->required();
  prime(hecke);
  prec(hecke);

  auto* slopes = app.add_subcommand("slopes", "Newton polygon of U_p and the slope-< s factor");
  level(slopes);
  slopes->add_option("--weight", o.weight, "weight k")->required();
  slopes->add_option("--s", o.s, "slope bound")->required();
  prime(slopes);
  prec(slopes);

  auto* family = app.add_subcommand("family", "family Hecke operator against its specialisations");
  level(family);
  family->add_option("--weights", o.weights, "comma-separated weights")->required()->delimiter(',');
  family->add_option("--xdeg", o.xdeg, "X-adic precision d")->required();
  family->add_option("--op", o.op, "operator (default Up)");
  prime(family);
  prec(family);

  auto* eis = app.add_subcommand("eisenstein", "q-expansion of E_k");
  eis->add_option("--weight", o.weight, "even weight k >= 4")->required();
  eis->add_option("--terms", o.terms, "truncation T")->required();

  auto* verify = app.add_subcommand("verify", "property suites");
  verify->add_option("--suite", o.suite, "action|identity|congruence|hecke|slope|truncate|all")
      ->check(CLI::IsMember(suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_failure("usage", e.what());
    return 2;
  }

  try {
    if (*basis) emit(o, cmd_basis(o));
    else if (*h1c) emit(o, cmd_h1(o));
    else if (*hecke) emit(o, cmd_hecke(o));
    else if (*slopes) emit(o, cmd_slopes(o));
    else if (*family) emit(o, cmd_family(o));
    else if (*eis) emit(o, cmd_eisenstein(o));
    else if (*verify) {
      SuiteReport rep = run_suite(o.suite, o.seed);
      json j = header(o, "verify");
      j["report"] = rep.to_json();
      emit(o, j);
      if (!rep.pass()) {
        report_failure("verification", "suite " + o.suite + " failed", rep.to_json());
        return 1;
      }
    }
  } catch (const UsageError& e) {
    report_failure("usage", e.what());
    return 2;
  } catch (const Error& e) {
    report_failure(to_string(e.kind()), e.what());
    return 1;
  }
  return 0;
}
