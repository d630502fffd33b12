#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "egyfrac/arith.hpp"
#include "egyfrac/egypt.hpp"

namespace egyfrac {

enum class OracleMode {
  full,        // A3 from the direct oracle, sandwich checked for p >= 5
  types_only,  // A3 from the classification {1,2,3} u {p,2p,3p} u TypeI u TypeII
};

inline constexpr u64 kFullOracleCap = u64{1} << 14;
inline constexpr u64 kTypesOnlyCap = u64{1} << 17;

struct RecordOptions {
  OracleMode mode = OracleMode::full;
  Semantics semantics = Semantics::repeats_allowed;
  unsigned threads = 1;
};

struct A3Record {
  u64 p = 0;
  u64 a3 = 0;
  u64 a3_type1 = 0;
  u64 a3_type2 = 0;
  u64 overlap12 = 0;
  std::optional<bool> sandwich_ok;  // empty when not checked

  friend bool operator==(const A3Record&, const A3Record&) = default;
};

/// One record per prime p <= x, in increasing p.
std::vector<A3Record> build_records(u64 x, const RecordOptions& opts = {});

struct Checkpoint {
  u64 x = 0;
  u64 s = 0;   // sum of a3 over p <= x
  u64 s1 = 0;  // sum of |Type I|
  u64 s2 = 0;  // sum of |Type II|
  double ratio3 = 0;
  double ratio3ll = 0;
  double ratio5 = 0;
};

struct GrowthReport {
  std::vector<Checkpoint> checkpoints;
};

/// Powers of two 2, 4, ..., <= x.
std::vector<u64> default_checkpoints(u64 x);

/// Cumulative sums at each checkpoint. Checkpoints must be sorted, >= 2, and
/// not exceed `computed_x`, the bound the records were built for.
GrowthReport fit_growth(std::span<const A3Record> records, u64 computed_x,
                        std::span<const u64> checkpoints);

std::string growth_to_json(const GrowthReport& report);
std::string growth_to_csv(const GrowthReport& report);

// ---- cache -----------------------------------------------------------------

inline constexpr const char* kCacheFormat = "v1";

/// Identity of a cached run.
struct CacheKey {
  u64 x = 0;
  std::string flags;

  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

/// Flag string for the key, e.g. "oracle" or "types+distinct".
std::string cache_flags(const RecordOptions& opts);

struct CacheHeader {
  std::string version;
  u64 x = 0;
  std::string flags;
  std::string sha256;
};

/// Rows only, one per record, each terminated by '\n'.
std::string records_to_csv_body(std::span<const A3Record> records);

/// Writes header and rows to a temporary sibling, then renames over `path`.
void cache_store(std::span<const A3Record> records, const CacheKey& key,
                 const std::filesystem::path& path);

/// Reads and validates a cache file. Throws IntegrityError on malformed
/// content or checksum mismatch, StaleCacheError when the format version or
/// (when given) the expected key differ.
std::vector<A3Record> cache_load(const std::filesystem::path& path,
                                 const std::optional<CacheKey>& expected = std::nullopt);

/// Header of a validated cache file (same checks as cache_load without key).
CacheHeader cache_inspect(const std::filesystem::path& path, std::size_t* rows = nullptr);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view data);

}  // namespace egyfrac
