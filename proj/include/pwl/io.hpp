#pragma once

// JSON encodings and the on-disk cache.

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "pwl/cohomology.hpp"
#include "pwl/qexp.hpp"
#include "pwl/slope.hpp"

namespace pwl {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const PrecInt& x);
PrecInt precint_from_json(const nlohmann::json& j);

nlohmann::json to_json(const IntMat& m);  // [[a,b],[c,d]]
IntMat intmat_from_json(const nlohmann::json& j);

// {level, rank, generators, words, hash}
nlohmann::json to_json(const FreeBasis& B);

// {p, r, rows, cols, entries}
nlohmann::json to_json(const Mat& M);
Mat mat_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CharPoly& P);
CharPoly charpoly_from_json(const nlohmann::json& j);
nlohmann::json to_json(const NewtonPolygon& np);
nlohmann::json to_json(const SlopeSplit& s);

nlohmann::json to_json(const QExp<RationalRing>& f);
nlohmann::json to_json(const QExp<PadicRing>& f);

// PWL_CACHE_DIR, else the flag, else ./.pwl-cache.
std::filesystem::path resolve_cache_dir(const std::string& flag);

class Cache {
 public:
  // Empty path disables the cache.
  explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  bool enabled() const { return !dir_.empty(); }
  // Entries whose schema differs are treated as missing.
  std::optional<nlohmann::json> get(const std::string& key) const;
  void put(const std::string& key, const nlohmann::json& value) const;
  std::filesystem::path path_for(const std::string& key) const;

 private:
  std::filesystem::path dir_;
};

// free_basis(N), cross-checked against a cached copy by hash.
FreeBasis cached_free_basis(i64 N, const Cache& cache);

// Hecke matrix on Z^1, keyed by (N, coefficients, operator, precision, basis hash).
Mat cached_hecke_matrix(const FreeBasis& B, const Coefficients& M, const HeckeOp& op, const Cache& cache);

}  // namespace pwl
