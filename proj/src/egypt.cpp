#include "egyfrac/egypt.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace egyfrac {

namespace {

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Factorization of a*b/g given factorizations of a and b; g | a*b.
void merge_divide(const Factorization& fa, const Factorization& fb, u64 g,
                  std::vector<PrimePower>& out) {
  out.clear();
  std::size_t i = 0, j = 0;
  while (i < fa.factors.size() || j < fb.factors.size()) {
    PrimePower next;
    if (j == fb.factors.size() ||
        (i < fa.factors.size() && fa.factors[i].prime < fb.factors[j].prime)) {
      next = fa.factors[i++];
    } else if (i == fa.factors.size() || fb.factors[j].prime < fa.factors[i].prime) {
      next = fb.factors[j++];
    } else {
      next = {fa.factors[i].prime, fa.factors[i].exponent + fb.factors[j].exponent};
      ++i;
      ++j;
    }
    while (g % next.prime == 0) {
      g /= next.prime;
      --next.exponent;
    }
    if (next.exponent > 0) out.push_back(next);
  }
}

// Divisors d of s^2 with d <= s, where s = prod of `factors`.
void half_square_divisors(const std::vector<PrimePower>& factors, u64 s,
                          std::vector<u64>& out) {
  out.clear();
  out.push_back(1);
  for (const auto& [q, e] : factors) {
    const std::size_t existing = out.size();
    for (std::size_t k = 0; k < existing; ++k) {
      u64 d = out[k];
      for (unsigned i = 0; i < 2 * e; ++i) {
        if (d > s / q) break;
        d *= q;
        out.push_back(d);
      }
    }
  }
}

// Visits the solutions x <= y (x >= min_x) of 1/x + 1/y = r/s. The visitor
// returns false to stop. Returns false iff stopped early.
template <typename Visitor>
bool visit_two_term(u64 r, u64 s, const std::vector<PrimePower>& s_factors,
                    Semantics sem, u64 min_x, bool sorted, Visitor&& visit) {
  thread_local std::vector<u64> divs;
  half_square_divisors(s_factors, s, divs);
  if (sorted) std::sort(divs.begin(), divs.end());
  const u128 s2 = static_cast<u128>(s) * s;
  for (u64 d : divs) {
    if ((static_cast<u128>(d) + s) % r != 0) continue;
    const u128 e = s2 / d;
    if ((e + s) % r != 0) continue;
    if (sem == Semantics::distinct && d == s) continue;
    const u128 x = (static_cast<u128>(d) + s) / r;
    if (x < min_x) continue;
    const u128 y = (e + s) / r;
    if (y > static_cast<u128>(UINT64_MAX))
      throw CapacityError("two_term_solutions: denominator exceeds 64 bits");
    if (!visit(UnitPair{static_cast<u64>(x), static_cast<u64>(y)})) return false;
  }
  return true;
}

// Visits triples m1 <= m2 <= m3 (strict under Semantics::distinct) in
// lexicographic order when `sorted`.
template <typename Visitor>
void visit_three_term(ReducedFraction f, Semantics sem, bool sorted, Visitor&& visit) {
  const u64 m = f.num();
  const u64 n = f.den();
  // 1/m1 is the largest summand: m/(3n) <= 1/m1 < m/n.
  const u64 lo = n / m + 1;
  const u64 hi = sem == Semantics::distinct ? (3 * static_cast<u128>(n) - 1) / m
                                            : (3 * static_cast<u128>(n)) / m;
  if (lo > hi) return;
  checked_mul(n, hi);
  const Factorization fn = factorize(n);
  thread_local std::vector<PrimePower> s_factors;
  for (u64 m1 = lo; m1 <= hi; ++m1) {
    const u64 rem_num = m * m1 - n;
    const u64 rem_den = n * m1;
    const u64 g = std::gcd(rem_num, rem_den);
    const u64 r = rem_num / g;
    const u64 s = rem_den / g;
    merge_divide(fn, factorize(m1), g, s_factors);
    const u64 min_x = sem == Semantics::distinct ? m1 + 1 : m1;
    if (sorted) {
      std::vector<UnitPair> pairs;
      visit_two_term(r, s, s_factors, sem, min_x, true, [&](UnitPair pr) {
        pairs.push_back(pr);
        return true;
      });
      for (const auto& pr : pairs)
        if (!visit(UnitTriple{m1, pr.x, pr.y})) return;
    } else {
      bool keep_going = visit_two_term(r, s, s_factors, sem, min_x, false, [&](UnitPair pr) {
        return static_cast<bool>(visit(UnitTriple{m1, pr.x, pr.y}));
      });
      if (!keep_going) return;
    }
  }
}

}  // namespace

ReducedFraction::ReducedFraction(u64 num, u64 den) : num_(num), den_(den) {
  if (num == 0 || den == 0) throw DomainError("fraction terms must be positive");
  if (std::gcd(num, den) != 1)
    throw DomainError("fraction " + std::to_string(num) + "/" + std::to_string(den) +
                      " is not in lowest terms");
}

ReducedFraction ReducedFraction::reduce(u64 num, u64 den) {
  if (num == 0 || den == 0) throw DomainError("fraction terms must be positive");
  const u64 g = std::gcd(num, den);
  return ReducedFraction(num / g, den / g);
}

ExactFraction unit_sum(std::initializer_list<u64> dens) {
  ExactFraction acc{0, 1};
  for (u64 d : dens) {
    if (d == 0) throw DomainError("unit_sum: zero denominator");
    // acc + 1/d = (acc.num * (d/g) + acc.den/g) / lcm(acc.den, d)
    const u128 g = gcd128(acc.den, d);
    u128 lcm = 0, scaled = 0, num = 0;
    if (__builtin_mul_overflow(acc.den / g, static_cast<u128>(d), &lcm) ||
        __builtin_mul_overflow(acc.num, static_cast<u128>(d) / g, &scaled) ||
        __builtin_add_overflow(scaled, acc.den / g, &num))
      throw CapacityError("unit_sum: value exceeds 128 bits");
    const u128 h = gcd128(num, lcm);
    acc = {num / h, lcm / h};
  }
  return acc;
}

bool equals(const ExactFraction& lhs, u64 num, u64 den) {
  const u64 g = std::gcd(num, den);
  return lhs.num == num / g && lhs.den == den / g;
}

std::vector<UnitPair> two_term_solutions(ReducedFraction f, Semantics sem) {
  const Factorization fs = factorize(f.den());
  std::vector<UnitPair> out;
  visit_two_term(f.num(), f.den(), fs.factors, sem, 1, true, [&](UnitPair pr) {
    out.push_back(pr);
    return true;
  });
  return out;
}

bool three_term_exists(ReducedFraction f, Semantics sem) {
  bool found = false;
  visit_three_term(f, sem, false, [&](UnitTriple) {
    found = true;
    return false;
  });
  return found;
}

std::optional<UnitTriple> three_term_witness(ReducedFraction f, Semantics sem) {
  std::optional<UnitTriple> least;
  visit_three_term(f, sem, true, [&](UnitTriple t) {
    least = t;
    return false;
  });
  return least;
}

std::vector<UnitTriple> three_term_enumerate(ReducedFraction f, std::optional<std::size_t> cap,
                                             Semantics sem) {
  std::vector<UnitTriple> out;
  if (cap && *cap == 0) return out;
  visit_three_term(f, sem, true, [&](UnitTriple t) {
    out.push_back(t);
    return !(cap && out.size() >= *cap);
  });
  return out;
}

A3Result a3_exact(u64 p, Semantics sem) {
  if (!is_prime(p)) throw PreconditionError("a3_exact: p must be prime");
  if (p > kMaxInput) throw CapacityError("a3_exact: p exceeds input budget");
  A3Result res;
  res.p = p;
  for (u64 m = 1; m <= 3 * p; ++m)
    if (three_term_exists(ReducedFraction::reduce(m, p), sem)) res.members.push_back(m);
  res.value = res.members.size();
  return res;
}

}  // namespace egyfrac
