#include "egyfrac/arith.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace egyfrac {

namespace {

// Smallest-prime-factor table used for small inputs of factorize().
constexpr u64 kSpfLimit = u64{1} << 21;

const std::vector<std::uint32_t>& spf_table() {
  static const std::vector<std::uint32_t> table = [] {
    std::vector<std::uint32_t> spf(kSpfLimit, 0);
    for (u64 i = 2; i < kSpfLimit; ++i) {
      if (spf[i] != 0) continue;
      for (u64 j = i; j < kSpfLimit; j += i)
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
  }();
  return table;
}

constexpr std::array<u64, 12> kMillerRabinBases = {2,  3,  5,  7,  11, 13,
                                                   17, 19, 23, 29, 31, 37};

u64 isqrt(u64 n) {
  auto r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Brent's variant of Pollard rho; n odd composite.
u64 rho_split(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 batch = 128;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(batch, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += batch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void collect_prime_factors(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = rho_split(n);
  collect_prime_factors(d, out);
  collect_prime_factors(n / d, out);
}

Factorization from_prime_list(u64 value, std::vector<u64> primes) {
  std::sort(primes.begin(), primes.end());
  Factorization f;
  f.value = value;
  for (u64 q : primes) {
    if (!f.factors.empty() && f.factors.back().prime == q)
      ++f.factors.back().exponent;
    else
      f.factors.push_back({q, 1});
  }
  return f;
}

}  // namespace

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 checked_mul(u64 a, u64 b) {
  u128 r = static_cast<u128>(a) * b;
  if (r > static_cast<u128>(UINT64_MAX))
    throw CapacityError("product exceeds 64-bit range");
  return static_cast<u64>(r);
}

unsigned ilog2(u64 n) { return static_cast<unsigned>(std::bit_width(n)) - 1; }

PrimeTable::PrimeTable(u64 limit, std::vector<u64> primes)
    : limit_(limit), primes_(std::move(primes)) {}

bool PrimeTable::contains(u64 n) const {
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::size_t PrimeTable::count_up_to(u64 x) const {
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

std::span<const u64> PrimeTable::up_to(u64 x) const {
  return std::span<const u64>(primes_).first(count_up_to(x));
}

PrimeTable sieve_primes(u64 limit) {
  if (limit < 2) throw PreconditionError("sieve_primes: limit must be >= 2");
  if (limit > kMaxSieveLimit)
    throw CapacityError("sieve_primes: limit " + std::to_string(limit) +
                        " exceeds configured maximum");

  const u64 root = isqrt(limit);
  std::vector<char> small(root + 1, 1);
  std::vector<u64> base;
  for (u64 i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (u64 j = i * i; j <= root; j += i) small[j] = 0;
  }

  std::vector<u64> primes;
  const double est = static_cast<double>(limit) / std::max(1.0, std::log(static_cast<double>(limit)) - 1.1);
  primes.reserve(static_cast<std::size_t>(est) + 16);

  constexpr u64 kSegment = u64{1} << 16;
  std::vector<char> seg(kSegment);
  // next[i] = next multiple of base[i] to cross off, as an absolute value
  std::vector<u64> next(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) next[i] = base[i] * base[i];

  for (u64 low = 2; low <= limit; low += kSegment) {
    const u64 high = std::min(limit, low + kSegment - 1);
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(high - low + 1), 1);
    for (std::size_t i = 0; i < base.size(); ++i) {
      const u64 q = base[i];
      if (q * q > high) break;
      u64 j = next[i];
      for (; j <= high; j += q) seg[j - low] = 0;
      next[i] = j;
    }
    for (u64 n = low; n <= high; ++n)
      if (seg[n - low]) primes.push_back(n);
  }
  return PrimeTable(limit, std::move(primes));
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : kMillerRabinBases) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  if (n < 37 * 37) return true;
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kMillerRabinBases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(u64 n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  Factorization f;
  f.value = n;
  if (n < kSpfLimit) {
    const auto& spf = spf_table();
    while (n > 1) {
      const u64 q = spf[n];
      unsigned e = 0;
      while (n % q == 0) {
        n /= q;
        ++e;
      }
      f.factors.push_back({q, e});
    }
    return f;
  }

  std::vector<u64> found;
  for (u64 q = 2; q < 1000 && q * q <= n; q += (q == 2 ? 1 : 2)) {
    while (n % q == 0) {
      found.push_back(q);
      n /= q;
    }
  }
  if (n > 1) collect_prime_factors(n, found);
  return from_prime_list(f.value, std::move(found));
}

std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (const auto& [q, e] : f.factors) {
    const std::size_t existing = out.size();
    u64 power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power *= q;
      for (std::size_t j = 0; j < existing; ++j) out.push_back(out[j] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 tau(const Factorization& f) {
  u64 r = 1;
  for (const auto& pp : f.factors) r *= pp.exponent + 1;
  return r;
}

u64 tau(u64 n) { return tau(factorize(n)); }

u64 phi(const Factorization& f) {
  u64 r = f.value;
  for (const auto& pp : f.factors) r = r / pp.prime * (pp.prime - 1);
  return r;
}

u64 phi(u64 n) { return phi(factorize(n)); }

int jacobi_u(u64 a, u64 q) {
  if (q == 0 || (q & 1) == 0)
    throw DomainError("jacobi: modulus must be odd and positive");
  a %= q;
  int sign = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const u64 r = q & 7;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(a, q);
    if ((a & 3) == 3 && (q & 3) == 3) sign = -sign;
    a %= q;
  }
  return q == 1 ? sign : 0;
}

int jacobi(i64 a, u64 q) {
  if (q == 0 || (q & 1) == 0)
    throw DomainError("jacobi: modulus must be odd and positive");
  if (a >= 0) return jacobi_u(static_cast<u64>(a), q);
  // reduce the negative numerator into [0, q)
  const u64 mag = static_cast<u64>(-(a + 1)) + 1;
  const u64 r = mag % q;
  return jacobi_u(r == 0 ? 0 : q - r, q);
}

u64 pi_ap(const PrimeTable& table, u64 x, u64 q, u64 a) {
  if (q == 0) throw PreconditionError("pi_ap: modulus must be positive");
  if (a >= q) throw PreconditionError("pi_ap: residue must lie in [0, q)");
  if (x > table.limit())
    throw PreconditionError("pi_ap: x exceeds the prime table limit");
  auto primes = table.up_to(x);
  // Walk the progression directly when it is shorter than the prime list.
  if (x / q < primes.size() / 8) {
    u64 count = 0;
    for (u64 n = a; n <= x; n += q)
      if (n >= 2 && table.contains(n)) ++count;
    return count;
  }
  u64 count = 0;
  for (u64 p : primes)
    if (p % q == a) ++count;
  return count;
}

std::vector<u64> residue_counts(const PrimeTable& table, u64 x, u64 q) {
  if (q == 0) throw PreconditionError("residue_counts: modulus must be positive");
  if (x > table.limit())
    throw PreconditionError("residue_counts: x exceeds the prime table limit");
  std::vector<u64> counts(q, 0);
  for (u64 p : table.up_to(x)) ++counts[p % q];
  return counts;
}

}  // namespace egyfrac
