#pragma once

#include <functional>
#include <map>
#include <vector>

#include "egyfrac/arith.hpp"
#include "egyfrac/egypt.hpp"

namespace egyfrac {

enum class TypeKind { I, II };

/// Parameters (a, b, c, u) with t = (a + b) / c realizing a numerator m:
///   Type I : m*a*b*u = p + t,    m/p = 1/(abu) + 1/(acpu) + 1/(bcpu)
///   Type II: m*a*b*u = 1 + p*t,  m/p = 1/(pabu) + 1/(acu) + 1/(bcu)
/// with gcd(a, b) = 1 and, in canonical form, a <= b.
struct TypeWitness {
  TypeKind kind = TypeKind::I;
  u64 a = 0, b = 0, c = 0, u = 0, t = 0, m = 0;

  friend bool operator==(const TypeWitness&, const TypeWitness&) = default;
};

/// True iff gcd(a,b) = 1, c*t = a+b and the integrality equation of the kind
/// holds for prime p.
bool witness_valid(const TypeWitness& w, u64 p);

/// Checks the three-unit-fraction reconstruction of m/p in exact rational
/// arithmetic.
bool reconstruction_holds(const TypeWitness& w, u64 p);

/// The three denominators of the reconstruction, unsorted.
std::array<u64, 3> reconstruction_denominators(const TypeWitness& w, u64 p);

/// Sorted distinct values of one kind plus one lexicographically least
/// witness (by a, b, c, u) per value.
struct TypeFamily {
  std::vector<u64> values;
  std::map<u64, TypeWitness> witnesses;
};

struct TypeSets {
  u64 p = 0;
  TypeFamily type1;
  TypeFamily type2;

  [[nodiscard]] std::size_t overlap() const;
  [[nodiscard]] std::vector<u64> union_values() const;
};

using WitnessVisitor = std::function<void(const TypeWitness&)>;

/// Calls `visit` for every canonical (a <= b) Type I witness of p.
void for_each_type1_witness(u64 p, const WitnessVisitor& visit);

/// Calls `visit` for every canonical (a <= b) Type II witness of p.
void for_each_type2_witness(u64 p, const WitnessVisitor& visit);

TypeFamily enumerate_type1(u64 p);
TypeFamily enumerate_type2(u64 p);

TypeSets type_sets(u64 p);

/// Set-level comparison between the oracle and the classification
/// {1,2,3} u {p,2p,3p} u TypeI(p) u TypeII(p) over m <= 3p.
struct SandwichReport {
  u64 p = 0;
  std::vector<u64> oracle_only;      // representable but unclassified
  std::vector<u64> classified_only;  // classified but not representable

  [[nodiscard]] bool ok() const { return oracle_only.empty() && classified_only.empty(); }
};

/// Requires p >= 5 prime.
SandwichReport sandwich_check(u64 p);
SandwichReport sandwich_check(const A3Result& oracle, const TypeSets& sets);

/// {1,2,3} u {p,2p,3p} u TypeI u TypeII restricted to [1, 3p], sorted.
std::vector<u64> classified_values(const TypeSets& sets);

}  // namespace egyfrac
