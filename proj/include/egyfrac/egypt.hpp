#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "egyfrac/arith.hpp"

namespace egyfrac {

/// A positive rational num/den in lowest terms.
class ReducedFraction {
 public:
  /// Throws DomainError unless num, den >= 1 and gcd(num, den) = 1.
  ReducedFraction(u64 num, u64 den);

  /// Divides out the gcd first.
  static ReducedFraction reduce(u64 num, u64 den);

  [[nodiscard]] u64 num() const { return num_; }
  [[nodiscard]] u64 den() const { return den_; }

  friend bool operator==(const ReducedFraction&, const ReducedFraction&) = default;

 private:
  u64 num_;
  u64 den_;
};

/// Denominators of 1/m1 + 1/m2 + 1/m3 with m1 <= m2 <= m3.
struct UnitTriple {
  u64 m1 = 0, m2 = 0, m3 = 0;
  friend auto operator<=>(const UnitTriple&, const UnitTriple&) = default;
};

/// 1/x + 1/y with x <= y.
struct UnitPair {
  u64 x = 0, y = 0;
  friend auto operator<=>(const UnitPair&, const UnitPair&) = default;
};

/// Whether repeated denominators are admitted. The default matches the
/// counting function A3, which quantifies over arbitrary m1, m2, m3.
enum class Semantics { repeats_allowed, distinct };

/// Exact value of a sum of unit fractions, reduced, in 128-bit arithmetic.
struct ExactFraction {
  u128 num = 0;
  u128 den = 1;
  friend bool operator==(const ExactFraction&, const ExactFraction&) = default;
};

/// Sum of 1/d over the given denominators; throws CapacityError on overflow.
ExactFraction unit_sum(std::initializer_list<u64> dens);

bool equals(const ExactFraction& lhs, u64 num, u64 den);

/// All x <= y with 1/x + 1/y = f, ascending in x. Complete and duplicate-free.
std::vector<UnitPair> two_term_solutions(ReducedFraction f,
                                         Semantics sem = Semantics::repeats_allowed);

bool three_term_exists(ReducedFraction f, Semantics sem = Semantics::repeats_allowed);

/// First triple in lexicographic order, if any.
std::optional<UnitTriple> three_term_witness(ReducedFraction f,
                                             Semantics sem = Semantics::repeats_allowed);

/// All triples in lexicographic order, truncated to `cap` when given.
std::vector<UnitTriple> three_term_enumerate(ReducedFraction f,
                                             std::optional<std::size_t> cap = std::nullopt,
                                             Semantics sem = Semantics::repeats_allowed);

struct A3Result {
  u64 p = 0;
  u64 value = 0;
  std::vector<u64> members;  // sorted m in [1, 3p] with m/p representable
};

/// A3(p): numerators m <= 3p whose reduced m/p is a sum of three unit fractions.
A3Result a3_exact(u64 p, Semantics sem = Semantics::repeats_allowed);

}  // namespace egyfrac
