#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "egyfrac/errors.hpp"

namespace egyfrac {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Upper bound on user-facing magnitudes (x, p, A, B, ...). Keeps every
/// intermediate of the form a^2*u*m + 1 inside 128 bits.
inline constexpr u64 kMaxInput = u64{1} << 40;

/// Largest limit accepted by sieve_primes.
inline constexpr u64 kMaxSieveLimit = u64{1} << 32;

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Complete prime factorization; factors sorted by strictly increasing prime.
struct Factorization {
  u64 value = 1;
  std::vector<PrimePower> factors;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// All primes up to a limit, in increasing order. Immutable once built.
class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(u64 limit, std::vector<u64> primes);

  [[nodiscard]] u64 limit() const { return limit_; }
  [[nodiscard]] std::span<const u64> primes() const { return primes_; }
  [[nodiscard]] std::size_t size() const { return primes_.size(); }

  /// Membership test; n must not exceed limit().
  [[nodiscard]] bool contains(u64 n) const;

  /// Number of primes <= x, for x <= limit().
  [[nodiscard]] std::size_t count_up_to(u64 x) const;

  /// Primes <= x as a prefix view.
  [[nodiscard]] std::span<const u64> up_to(u64 x) const;

 private:
  u64 limit_ = 0;
  std::vector<u64> primes_;
};

/// Segmented sieve of Eratosthenes. Throws CapacityError above kMaxSieveLimit
/// and PreconditionError for limit < 2.
PrimeTable sieve_primes(u64 limit);

Factorization factorize(u64 n);

/// Ascending list of all divisors.
std::vector<u64> divisors(const Factorization& f);

u64 tau(u64 n);
u64 tau(const Factorization& f);
u64 phi(u64 n);
u64 phi(const Factorization& f);

/// Jacobi symbol (a/q) for odd q >= 1. a is reduced mod q first; (a/1) = 1.
int jacobi(i64 a, u64 q);
int jacobi_u(u64 a, u64 q);

/// Deterministic on the whole 64-bit range.
bool is_prime(u64 n);

/// Exact count of primes p <= x with p = a (mod q), read from the table.
u64 pi_ap(const PrimeTable& table, u64 x, u64 q, u64 a);

/// counts[a] = pi(x; q, a) for every residue 0 <= a < q.
std::vector<u64> residue_counts(const PrimeTable& table, u64 x, u64 q);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

/// Product with overflow detection; throws CapacityError if the result does
/// not fit in 64 bits.
u64 checked_mul(u64 a, u64 b);

/// floor(log2(n)) for n >= 1.
unsigned ilog2(u64 n);

}  // namespace egyfrac
