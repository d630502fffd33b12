#include "egyfrac/aggregate.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "egyfrac/parallel.hpp"
#include "egyfrac/types.hpp"

namespace egyfrac {

namespace {

A3Record make_record(u64 p, const RecordOptions& opts) {
  A3Record rec;
  rec.p = p;
  const TypeSets sets = type_sets(p);
  rec.a3_type1 = sets.type1.values.size();
  rec.a3_type2 = sets.type2.values.size();
  rec.overlap12 = sets.overlap();
  if (opts.mode == OracleMode::full) {
    const A3Result oracle = a3_exact(p, opts.semantics);
    rec.a3 = oracle.value;
    if (p >= 5 && opts.semantics == Semantics::repeats_allowed)
      rec.sandwich_ok = sandwich_check(oracle, sets).ok();
  } else {
    rec.a3 = p < 5 ? a3_exact(p).value : classified_values(sets).size();
  }
  return rec;
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "";
  return fmt::format("{}", v);
}

}  // namespace

std::vector<A3Record> build_records(u64 x, const RecordOptions& opts) {
  if (x < 2) throw PreconditionError("build_records: x must be >= 2");
  const u64 cap = opts.mode == OracleMode::full ? kFullOracleCap : kTypesOnlyCap;
  if (x > cap) throw CapacityError("build_records: x exceeds desk-scale cap " + std::to_string(cap));
  if (opts.mode == OracleMode::types_only && opts.semantics == Semantics::distinct)
    throw PreconditionError("build_records: the type classification assumes repeats are allowed");

  const PrimeTable table = sieve_primes(x);
  const auto primes = table.primes();
  std::vector<A3Record> records(primes.size());
  // largest primes first: they dominate the cost
  parallel_for(primes.size(), opts.threads, [&](std::size_t i) {
    const std::size_t idx = primes.size() - 1 - i;
    records[idx] = make_record(primes[idx], opts);
  });
  return records;
}

std::vector<u64> default_checkpoints(u64 x) {
  std::vector<u64> out;
  for (u64 c = 2; c <= x; c *= 2) out.push_back(c);
  return out;
}

GrowthReport fit_growth(std::span<const A3Record> records, u64 computed_x,
                        std::span<const u64> checkpoints) {
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()))
    throw PreconditionError("fit_growth: checkpoints must be sorted");
  if (!checkpoints.empty() && checkpoints.front() < 2)
    throw PreconditionError("fit_growth: checkpoints must be >= 2");
  if (!checkpoints.empty() && checkpoints.back() > computed_x)
    throw PreconditionError("fit_growth: checkpoint beyond computed range");

  GrowthReport rep;
  std::size_t i = 0;
  u64 s = 0, s1 = 0, s2 = 0;
  for (u64 cx : checkpoints) {
    for (; i < records.size() && records[i].p <= cx; ++i) {
      s += records[i].a3;
      s1 += records[i].a3_type1;
      s2 += records[i].a3_type2;
    }
    const double L = std::log2(static_cast<double>(cx));
    const double LL = std::log2(L);
    const double base = static_cast<double>(cx) * L * L * L;
    Checkpoint c;
    c.x = cx;
    c.s = s;
    c.s1 = s1;
    c.s2 = s2;
    c.ratio3 = static_cast<double>(s) / base;
    c.ratio3ll = LL > 0 ? static_cast<double>(s) / (base * LL * LL)
                        : std::numeric_limits<double>::quiet_NaN();
    c.ratio5 = static_cast<double>(s) / (base * L * L);
    rep.checkpoints.push_back(c);
  }
  return rep;
}

std::string growth_to_json(const GrowthReport& report) {
  nlohmann::ordered_json j;
  j["checkpoints"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checkpoints) {
    nlohmann::ordered_json row;
    row["x"] = c.x;
    row["s"] = c.s;
    row["s1"] = c.s1;
    row["s2"] = c.s2;
    row["ratio3"] = c.ratio3;
    row["ratio3ll"] = std::isfinite(c.ratio3ll) ? nlohmann::ordered_json(c.ratio3ll) : nullptr;
    row["ratio5"] = c.ratio5;
    j["checkpoints"].push_back(std::move(row));
  }
  j["meta"] = {{"log_base_ratios", 2},
               {"ratio3", "s / (x * log2(x)^3)"},
               {"ratio3ll", "s / (x * log2(x)^3 * log2(log2(x))^2)"},
               {"ratio5", "s / (x * log2(x)^5)"}};
  return j.dump(2) + "\n";
}

std::string growth_to_csv(const GrowthReport& report) {
  std::string out = "x,s,s1,s2,ratio3,ratio3ll,ratio5\n";
  for (const auto& c : report.checkpoints)
    out += fmt::format("{},{},{},{},{},{},{}\n", c.x, c.s, c.s1, c.s2, format_double(c.ratio3),
                       format_double(c.ratio3ll), format_double(c.ratio5));
  return out;
}

// ---- cache -----------------------------------------------------------------

namespace {

constexpr const char* kColumns = "p,a3,a3_type1,a3_type2,overlap12,sandwich_ok";

struct ParsedCache {
  CacheHeader header;
  std::vector<A3Record> records;
};

u64 parse_u64(const std::string& field) {
  if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos)
    throw IntegrityError("cache: malformed integer field '" + field + "'");
  try {
    return std::stoull(field);
  } catch (const std::exception&) {
    throw IntegrityError("cache: integer field out of range");
  }
}

ParsedCache parse_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cache: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();

  const auto eol = content.find('\n');
  if (eol == std::string::npos) throw IntegrityError("cache: missing header line");
  const std::string first = content.substr(0, eol);
  const std::string body = content.substr(eol + 1);

  static const std::regex header_re(
      R"(^# egyfrac-cache (\S+); x=([0-9]+); flags=([^;]*); sha256=([0-9a-f]{64})$)");
  std::smatch match;
  if (!std::regex_match(first, match, header_re)) throw IntegrityError("cache: malformed header");

  ParsedCache parsed;
  parsed.header.version = match[1];
  parsed.header.x = parse_u64(match[2]);
  parsed.header.flags = match[3];
  parsed.header.sha256 = match[4];
  if (parsed.header.version != kCacheFormat)
    throw StaleCacheError("cache: format " + parsed.header.version + " is not " + kCacheFormat);
  if (sha256_hex(body) != parsed.header.sha256) throw IntegrityError("cache: checksum mismatch");

  std::istringstream lines(body);
  std::string line;
  if (!std::getline(lines, line) || line != kColumns) throw IntegrityError("cache: bad column line");
  u64 last_p = 0;
  while (std::getline(lines, line)) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 6) throw IntegrityError("cache: wrong field count");
    A3Record rec;
    rec.p = parse_u64(fields[0]);
    rec.a3 = parse_u64(fields[1]);
    rec.a3_type1 = parse_u64(fields[2]);
    rec.a3_type2 = parse_u64(fields[3]);
    rec.overlap12 = parse_u64(fields[4]);
    if (fields[5] == "1") rec.sandwich_ok = true;
    else if (fields[5] == "0") rec.sandwich_ok = false;
    else if (!fields[5].empty()) throw IntegrityError("cache: bad sandwich_ok field");
    if (rec.p <= last_p || rec.p > parsed.header.x)
      throw IntegrityError("cache: rows out of order or beyond x");
    last_p = rec.p;
    parsed.records.push_back(rec);
  }
  return parsed;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 computation failed");
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string cache_flags(const RecordOptions& opts) {
  std::string flags = opts.mode == OracleMode::full ? "oracle" : "types";
  if (opts.semantics == Semantics::distinct) flags += "+distinct";
  return flags;
}

std::string records_to_csv_body(std::span<const A3Record> records) {
  std::string out;
  for (const auto& r : records)
    out += fmt::format("{},{},{},{},{},{}\n", r.p, r.a3, r.a3_type1, r.a3_type2, r.overlap12,
                       r.sandwich_ok ? (*r.sandwich_ok ? "1" : "0") : "");
  return out;
}

void cache_store(std::span<const A3Record> records, const CacheKey& key,
                 const std::filesystem::path& path) {
  if (key.flags.find(';') != std::string::npos || key.flags.find('\n') != std::string::npos)
    throw PreconditionError("cache_store: flags may not contain ';' or newlines");
  const std::string body = std::string(kColumns) + "\n" + records_to_csv_body(records);
  const std::string header = fmt::format("# egyfrac-cache {}; x={}; flags={}; sha256={}\n",
                                         kCacheFormat, key.x, key.flags, sha256_hex(body));
  auto tmp = path;
  tmp += fmt::format(".tmp.{}", ::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw PreconditionError("cache_store: cannot write " + tmp.string());
    out << header << body;
    if (!out.flush()) throw PreconditionError("cache_store: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::vector<A3Record> cache_load(const std::filesystem::path& path,
                                 const std::optional<CacheKey>& expected) {
  ParsedCache parsed = parse_cache(path);
  if (expected && (parsed.header.x != expected->x || parsed.header.flags != expected->flags))
    throw StaleCacheError(fmt::format("cache: key (x={}, flags={}) does not match query (x={}, flags={})",
                                      parsed.header.x, parsed.header.flags, expected->x,
                                      expected->flags));
  return std::move(parsed.records);
}

CacheHeader cache_inspect(const std::filesystem::path& path, std::size_t* rows) {
  ParsedCache parsed = parse_cache(path);
  if (rows) *rows = parsed.records.size();
  return parsed.header;
}

}  // namespace egyfrac
