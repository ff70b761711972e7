#include "pwl/io.hpp"

#include <cstdlib>
#include <fstream>

#include "pwl/hash.hpp"

namespace pwl {

using nlohmann::json;
namespace fs = std::filesystem;

json to_json(const PrecInt& x) { return {{"p", x.prime()}, {"r", x.precision()}, {"residue", x.residue()}}; }

PrecInt precint_from_json(const json& j) {
  try {
    return PrecInt::from_residue(j.at("p").get<i64>(), j.at("r").get<int>(), j.at("residue").get<u64>());
  } catch (const json::exception& e) {
    fail(ErrorKind::BadArgument, std::string("PrecInt JSON: ") + e.what());
  }
}

json to_json(const IntMat& m) { return json::array({json::array({m.a, m.b}), json::array({m.c, m.d})}); }

IntMat intmat_from_json(const json& j) {
  try {
    return {j.at(0).at(0).get<i64>(), j.at(0).at(1).get<i64>(), j.at(1).at(0).get<i64>(), j.at(1).at(1).get<i64>()};
  } catch (const json::exception& e) {
    fail(ErrorKind::BadArgument, std::string("matrix JSON: ") + e.what());
  }
}

json to_json(const FreeBasis& B) {
  json gens = json::array(), words = json::array();
  for (const auto& g : B.gens) gens.push_back(to_json(g));
  for (const auto& w : B.gen_words) words.push_back(w);
  return {{"level", B.N}, {"rank", B.rank}, {"generators", gens}, {"words", words}, {"hash", B.hash}};
}

json to_json(const Mat& M) {
  return {{"p", M.ring().p}, {"r", M.ring().r}, {"rows", M.rows()}, {"cols", M.cols()}, {"entries", M.to_rows()}};
}

Mat mat_from_json(const json& j) {
  try {
    ModRing R(j.at("p").get<i64>(), j.at("r").get<int>());
    Mat M(R, j.at("rows").get<size_t>(), j.at("cols").get<size_t>());
    const json& e = j.at("entries");
    for (size_t i = 0; i < M.rows(); ++i)
      for (size_t k = 0; k < M.cols(); ++k) M(i, k) = R.reduce128(e.at(i).at(k).get<u64>());
    return M;
  } catch (const json::exception& e) {
    fail(ErrorKind::BadArgument, std::string("matrix JSON: ") + e.what());
  }
}

json to_json(const CharPoly& P) { return {{"p", P.p}, {"r", P.r}, {"coeffs", P.coeffs}, {"order", "low-first"}}; }

CharPoly charpoly_from_json(const json& j) {
  try {
    return {j.at("p").get<i64>(), j.at("r").get<int>(), j.at("coeffs").get<std::vector<u64>>()};
  } catch (const json::exception& e) {
    fail(ErrorKind::BadArgument, std::string("char poly JSON: ") + e.what());
  }
}

json to_json(const NewtonPolygon& np) {
  json v = json::array(), s = json::array();
  for (auto [x, y] : np.vertices) v.push_back({x, y});
  for (const auto& seg : np.segments)
    s.push_back({{"from", seg.x0}, {"to", seg.x1}, {"slope", seg.root_valuation.str()}, {"multiplicity", seg.multiplicity()}});
  return {{"vertices", v}, {"segments", s}, {"censored", np.censored}, {"precision", np.precision}};
}

json to_json(const SlopeSplit& s) {
  return {{"below", to_json(s.below)}, {"at_least", to_json(s.at_least)}, {"precision", s.precision}, {"loss", s.loss}};
}

json to_json(const QExp<RationalRing>& f) {
  json c = json::array();
  for (const auto& a : f.coeffs) c.push_back(a.str());
  return {{"ring", RationalRing::tag()}, {"T", f.T()}, {"coeffs", c}};
}

json to_json(const QExp<PadicRing>& f) {
  json c = json::array();
  for (const auto& a : f.coeffs) c.push_back(a.residue());
  return {{"ring", {{"tag", PadicRing::tag()}, {"p", f.ring.p}, {"r", f.ring.r}}}, {"T", f.T()}, {"coeffs", c}};
}

fs::path resolve_cache_dir(const std::string& flag) {
  if (const char* env = std::getenv("PWL_CACHE_DIR"); env && *env) return env;
  if (!flag.empty()) return flag;
  return ".pwl-cache";
}

fs::path Cache::path_for(const std::string& key) const { return dir_ / (content_hash(key) + ".json"); }

std::optional<json> Cache::get(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path_for(key));
  if (!in) return std::nullopt;
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("schema", -1) != kSchemaVersion || j.value("key", "") != key)
    return std::nullopt;
  return j.at("value");
}

void Cache::put(const std::string& key, const json& value) const {
  if (!enabled()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) fail(ErrorKind::BadArgument, "cannot create cache directory " + dir_.string());
  fs::path target = path_for(key);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) fail(ErrorKind::BadArgument, "cannot write " + tmp.string());
    out << json{{"schema", kSchemaVersion}, {"key", key}, {"value", value}}.dump();
  }
  fs::rename(tmp, target, ec);
  if (ec) fail(ErrorKind::BadArgument, "cannot write " + target.string());
}

FreeBasis cached_free_basis(i64 N, const Cache& cache) {
  FreeBasis B = free_basis(N);
  std::string key = "basis|" + std::to_string(N);
  if (auto hit = cache.get(key)) {
    if (hit->value("hash", "") != B.hash)
      fail(ErrorKind::InternalInconsistency, "cached basis for level " + std::to_string(N) + " has a different hash");
  } else {
    cache.put(key, to_json(B));
  }
  return B;
}

Mat cached_hecke_matrix(const FreeBasis& B, const Coefficients& M, const HeckeOp& op, const Cache& cache) {
  std::string key = "hecke|" + std::to_string(B.N) + "|" + M.str() + "|" + op.str() + "|" + std::to_string(M.r) + "|" + B.hash;
  if (auto hit = cache.get(key)) return mat_from_json(*hit);
  Mat T = hecke_matrix(B, M, op);
  cache.put(key, to_json(T));
  return T;
}

}  // namespace pwl
