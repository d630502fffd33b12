#include <gtest/gtest.h>

#include <set>

#include "egyfrac/types.hpp"
#include "oracles.hpp"

using namespace egyfrac;

namespace {

std::set<u64> as_set(const std::vector<u64>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Witness, ValidityChecks) {
  // p = 7: Type I (a, b, c, u) = (1, 1, 2, 4) gives t = 1 and m = 2
  TypeWitness w{TypeKind::I, 1, 1, 2, 4, 1, 2};
  EXPECT_TRUE(witness_valid(w, 7));
  EXPECT_TRUE(reconstruction_holds(w, 7));
  w.m = 3;
  EXPECT_FALSE(witness_valid(w, 7));
  TypeWitness bad{TypeKind::II, 2, 4, 1, 1, 6, 1};  // gcd(a, b) = 2
  EXPECT_FALSE(witness_valid(bad, 7));
}

TEST(Witness, ReconstructionDenominators) {
  const TypeWitness w{TypeKind::II, 2, 3, 1, 1, 5, 6};
  ASSERT_TRUE(witness_valid(w, 7));
  const auto d = reconstruction_denominators(w, 7);
  EXPECT_EQ(d, (std::array<u64, 3>{42, 2, 3}));
  EXPECT_TRUE(equals(unit_sum({d[0], d[1], d[2]}), 6, 7));
}

TEST(Types, MatchBoxScan) {
  for (u64 p : {2, 3, 5, 7, 11, 13}) {
    const TypeSets s = type_sets(p);
    const auto want = oracle::type_values(p);
    EXPECT_EQ(as_set(s.type1.values), want.type1) << p;
    EXPECT_EQ(as_set(s.type2.values), want.type2) << p;
  }
}

TEST(Types, ValuesSortedWithOneWitnessEach) {
  for (u64 p : oracle::primes_upto(300)) {
    const TypeSets s = type_sets(p);
    for (const TypeFamily* fam : {&s.type1, &s.type2}) {
      EXPECT_TRUE(std::is_sorted(fam->values.begin(), fam->values.end()));
      EXPECT_EQ(std::adjacent_find(fam->values.begin(), fam->values.end()), fam->values.end());
      ASSERT_EQ(fam->values.size(), fam->witnesses.size());
      for (u64 m : fam->values) {
        const auto& w = fam->witnesses.at(m);
        EXPECT_EQ(w.m, m);
        EXPECT_LE(w.a, w.b);
        EXPECT_LE(m, 3 * p);
      }
    }
  }
}

TEST(Types, CanonicalWitnessIsLeast) {
  for (u64 p : {5, 7, 11, 13, 29, 31, 101}) {
    std::map<u64, std::tuple<u64, u64, u64, u64>> least1, least2;
    auto track = [](auto& least) {
      return [&least](const TypeWitness& w) {
        const auto key = std::make_tuple(w.a, w.b, w.c, w.u);
        auto [it, fresh] = least.emplace(w.m, key);
        if (!fresh && key < it->second) it->second = key;
      };
    };
    for_each_type1_witness(p, track(least1));
    for_each_type2_witness(p, track(least2));
    const TypeSets s = type_sets(p);
    for (const auto& [m, w] : s.type1.witnesses)
      EXPECT_EQ(std::make_tuple(w.a, w.b, w.c, w.u), least1.at(m)) << p << " I " << m;
    for (const auto& [m, w] : s.type2.witnesses)
      EXPECT_EQ(std::make_tuple(w.a, w.b, w.c, w.u), least2.at(m)) << p << " II " << m;
  }
}

TEST(Types, EveryEmittedWitnessReconstructs) {
  for (u64 p : oracle::primes_upto(200)) {
    auto check = [p](const TypeWitness& w) {
      ASSERT_TRUE(witness_valid(w, p)) << p;
      ASSERT_TRUE(reconstruction_holds(w, p)) << p << " m=" << w.m;
    };
    for_each_type1_witness(p, check);
    for_each_type2_witness(p, check);
  }
}

TEST(Sandwich, ExactAgreementSmallRange) {
  for (u64 p : oracle::primes_upto(250)) {
    if (p < 5) continue;
    const SandwichReport r = sandwich_check(p);
    EXPECT_TRUE(r.ok()) << p << " oracle_only=" << r.oracle_only.size()
                        << " classified_only=" << r.classified_only.size();
  }
}

TEST(Sandwich, DetectsTamperedSets) {
  const u64 p = 13;
  TypeSets sets = type_sets(p);
  A3Result oracle = a3_exact(p);
  ASSERT_TRUE(sandwich_check(oracle, sets).ok());
  // drop a Type II-only value from the classification
  const u64 victim = sets.type2.values.back();
  sets.type2.values.pop_back();
  sets.type2.witnesses.erase(victim);
  std::erase(sets.type1.values, victim);
  sets.type1.witnesses.erase(victim);
  const auto r = sandwich_check(oracle, sets);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.oracle_only, std::vector<u64>{victim});
}

TEST(Sandwich, Preconditions) {
  EXPECT_THROW(sandwich_check(3), PreconditionError);
  EXPECT_THROW(sandwich_check(15), PreconditionError);
  EXPECT_THROW(type_sets(21), PreconditionError);
}

TEST(Types, OverlapAndUnion) {
  const TypeSets s = type_sets(7);
  const auto u = s.union_values();
  EXPECT_EQ(u.size(), s.type1.values.size() + s.type2.values.size() - s.overlap());
  EXPECT_EQ(classified_values(s), a3_exact(7).members);
}
