#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "egyfrac/aggregate.hpp"
#include "egyfrac/types.hpp"
#include "oracles.hpp"

using namespace egyfrac;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "egyfrac_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

}  // namespace

TEST(Records, FullModeMatchesOracle) {
  const auto recs = build_records(120);
  const auto ps = oracle::primes_upto(120);
  ASSERT_EQ(recs.size(), ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    EXPECT_EQ(recs[i].p, ps[i]);
    EXPECT_EQ(recs[i].a3, a3_exact(ps[i]).value);
    const TypeSets s = type_sets(ps[i]);
    EXPECT_EQ(recs[i].a3_type1, s.type1.values.size());
    EXPECT_EQ(recs[i].a3_type2, s.type2.values.size());
    EXPECT_EQ(recs[i].overlap12, s.overlap());
    EXPECT_EQ(recs[i].sandwich_ok.has_value(), ps[i] >= 5);
    if (recs[i].sandwich_ok) EXPECT_TRUE(*recs[i].sandwich_ok);
  }
}

TEST(Records, TypesOnlyAgreesWithFull) {
  RecordOptions types;
  types.mode = OracleMode::types_only;
  const auto a = build_records(400);
  const auto b = build_records(400, types);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].a3, b[i].a3) << a[i].p;
    EXPECT_FALSE(b[i].sandwich_ok.has_value());
  }
}

TEST(Records, ThreadCountIndependent) {
  RecordOptions one, four;
  four.threads = 4;
  EXPECT_EQ(build_records(300, one), build_records(300, four));
}

TEST(Records, Preconditions) {
  EXPECT_THROW(build_records(1), PreconditionError);
  EXPECT_THROW(build_records(kFullOracleCap + 1), CapacityError);
  RecordOptions bad;
  bad.mode = OracleMode::types_only;
  bad.semantics = Semantics::distinct;
  EXPECT_THROW(build_records(100, bad), PreconditionError);
}

TEST(Growth, CumulativeSumsAndRatios) {
  const auto recs = build_records(64);
  const std::vector<u64> cps{2, 10, 32, 64};
  const GrowthReport g = fit_growth(recs, 64, cps);
  ASSERT_EQ(g.checkpoints.size(), cps.size());
  for (std::size_t i = 0; i < cps.size(); ++i) {
    u64 s = 0;
    for (u64 p : oracle::primes_upto(cps[i])) s += a3_exact(p).value;
    const auto& c = g.checkpoints[i];
    EXPECT_EQ(c.s, s);
    const double L = std::log2(static_cast<double>(cps[i]));
    EXPECT_DOUBLE_EQ(c.ratio3, s / (cps[i] * L * L * L));
    EXPECT_DOUBLE_EQ(c.ratio5, s / (cps[i] * L * L * L * L * L));
  }
  EXPECT_TRUE(std::isnan(g.checkpoints[0].ratio3ll));  // log2 log2 2 = 0
  EXPECT_EQ(g.checkpoints[0].s, 6u);
}

TEST(Growth, Preconditions) {
  const auto recs = build_records(32);
  const std::vector<u64> unsorted{8, 4};
  const std::vector<u64> beyond{64};
  EXPECT_THROW(fit_growth(recs, 32, unsorted), PreconditionError);
  EXPECT_THROW(fit_growth(recs, 32, beyond), PreconditionError);
}

TEST(Growth, JsonAndCsvCarrySameNumbers) {
  const auto recs = build_records(256);
  const GrowthReport g = fit_growth(recs, 256, default_checkpoints(256));
  const auto j = nlohmann::json::parse(growth_to_json(g));
  std::istringstream csv(growth_to_csv(g));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "x,s,s1,s2,ratio3,ratio3ll,ratio5");
  std::size_t i = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (f.size() == 6) f.emplace_back();  // trailing empty field
    ASSERT_EQ(f.size(), 7u);
    const auto& row = j["checkpoints"][i++];
    EXPECT_EQ(std::stoull(f[0]), row["x"].get<u64>());
    EXPECT_EQ(std::stoull(f[1]), row["s"].get<u64>());
    EXPECT_EQ(std::stod(f[4]), row["ratio3"].get<double>());
    if (row["ratio3ll"].is_null()) EXPECT_TRUE(f[5].empty());
    else EXPECT_EQ(std::stod(f[5]), row["ratio3ll"].get<double>());
    EXPECT_EQ(std::stod(f[6]), row["ratio5"].get<double>());
  }
  EXPECT_EQ(i, j["checkpoints"].size());
  EXPECT_EQ(j["meta"]["log_base_ratios"], 2);
}

TEST(Cache, RoundTripIdentity) {
  const auto recs = build_records(200);
  const CacheKey key{200, "oracle"};
  const auto path = temp_file("roundtrip.csv");
  cache_store(recs, key, path);
  EXPECT_EQ(cache_load(path, key), recs);
  EXPECT_EQ(cache_load(path), recs);
  std::size_t rows = 0;
  const CacheHeader h = cache_inspect(path, &rows);
  EXPECT_EQ(h.version, kCacheFormat);
  EXPECT_EQ(h.x, 200u);
  EXPECT_EQ(h.flags, "oracle");
  EXPECT_EQ(rows, recs.size());
  // store is deterministic
  const std::string first = slurp(path);
  cache_store(recs, key, path);
  EXPECT_EQ(slurp(path), first);
}

TEST(Cache, CorruptionRejected) {
  const auto recs = build_records(100);
  const CacheKey key{100, "oracle"};
  const auto path = temp_file("corrupt.csv");
  cache_store(recs, key, path);
  const std::string good = slurp(path);

  std::string flipped = good;
  const auto pos = flipped.rfind(",1");
  flipped[pos + 1] = '0';
  spit(path, flipped);
  EXPECT_THROW(cache_load(path, key), IntegrityError);

  spit(path, good.substr(0, good.size() - 5));
  EXPECT_THROW(cache_load(path, key), IntegrityError);

  spit(path, "garbage\n");
  EXPECT_THROW(cache_load(path, key), IntegrityError);

  std::string bad_header = good;
  bad_header.replace(bad_header.find("sha256=") + 7, 4, "zzzz");
  spit(path, bad_header);
  EXPECT_THROW(cache_load(path, key), IntegrityError);
}

TEST(Cache, StaleKeyOrVersionRejected) {
  const auto recs = build_records(50);
  const auto path = temp_file("stale.csv");
  cache_store(recs, CacheKey{50, "oracle"}, path);
  EXPECT_THROW(cache_load(path, CacheKey{60, "oracle"}), StaleCacheError);
  EXPECT_THROW(cache_load(path, CacheKey{50, "types"}), StaleCacheError);

  std::string text = slurp(path);
  text.replace(text.find(" v1;"), 4, " v0;");
  spit(path, text);
  EXPECT_THROW(cache_load(path), StaleCacheError);
}

TEST(Cache, FlagsAndDigest) {
  RecordOptions o;
  EXPECT_EQ(cache_flags(o), "oracle");
  o.semantics = Semantics::distinct;
  EXPECT_EQ(cache_flags(o), "oracle+distinct");
  o.mode = OracleMode::types_only;
  o.semantics = Semantics::repeats_allowed;
  EXPECT_EQ(cache_flags(o), "types");
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
