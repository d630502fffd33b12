#include "egyfrac/types.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace egyfrac {

namespace {

// Types enumeration keeps every product below 2^64 for p below this bound.
constexpr u64 kMaxTypePrime = u64{1} << 29;

void require_prime(u64 p, const char* op) {
  if (!is_prime(p)) throw PreconditionError(std::string(op) + ": p must be prime");
  if (p > kMaxTypePrime) throw CapacityError(std::string(op) + ": p exceeds enumeration budget");
}

// Emits one witness per factorization k = u*m.
void emit_splits(TypeKind kind, u64 a, u64 b, u64 c, u64 t, u64 k, const WitnessVisitor& visit) {
  for (u64 m : divisors(factorize(k))) visit(TypeWitness{kind, a, b, c, k / m, t, m});
}

bool lex_less(const TypeWitness& x, const TypeWitness& y) {
  return std::tie(x.a, x.b, x.c, x.u) < std::tie(y.a, y.b, y.c, y.u);
}

TypeFamily collect(u64 p, void (*walk)(u64, const WitnessVisitor&)) {
  TypeFamily fam;
  walk(p, [&](const TypeWitness& w) {
    auto [it, inserted] = fam.witnesses.try_emplace(w.m, w);
    if (!inserted && lex_less(w, it->second)) it->second = w;
  });
  fam.values.reserve(fam.witnesses.size());
  for (const auto& [m, w] : fam.witnesses) fam.values.push_back(m);
  return fam;
}

}  // namespace

bool witness_valid(const TypeWitness& w, u64 p) {
  if (w.a == 0 || w.b == 0 || w.c == 0 || w.u == 0 || w.t == 0 || w.m == 0) return false;
  if (std::gcd(w.a, w.b) != 1) return false;
  if (static_cast<u128>(w.c) * w.t != static_cast<u128>(w.a) + w.b) return false;
  const u128 lhs = static_cast<u128>(w.m) * w.a * w.b * w.u;
  const u128 rhs = w.kind == TypeKind::I ? static_cast<u128>(p) + w.t
                                         : 1 + static_cast<u128>(p) * w.t;
  return lhs == rhs;
}

std::array<u64, 3> reconstruction_denominators(const TypeWitness& w, u64 p) {
  const u64 abu = checked_mul(checked_mul(w.a, w.b), w.u);
  const u64 acu = checked_mul(checked_mul(w.a, w.c), w.u);
  const u64 bcu = checked_mul(checked_mul(w.b, w.c), w.u);
  if (w.kind == TypeKind::I) return {abu, checked_mul(acu, p), checked_mul(bcu, p)};
  return {checked_mul(abu, p), acu, bcu};
}

bool reconstruction_holds(const TypeWitness& w, u64 p) {
  const auto d = reconstruction_denominators(w, p);
  return equals(unit_sum({d[0], d[1], d[2]}), w.m, p);
}

void for_each_type1_witness(u64 p, const WitnessVisitor& visit) {
  require_prime(p, "enumerate_type1");
  // From m*a*b*u = p + t and b = c*t - a:  t*(a*k*c - 1) = p + k*a^2, k = u*m.
  // a <= b gives a*k*c <= 2(p + 1).
  const u64 bound = 2 * p + 2;
  for (u64 a = 1; a <= bound; ++a) {
    for (u64 k = 1; a * k <= bound; ++k) {
      const u64 ak = a * k;
      const u64 numer = p + k * a * a;
      const u64 c_hi = std::min(bound / ak, (numer + 1) / ak);
      for (u64 c = 1; c <= c_hi; ++c) {
        const u64 d = ak * c - 1;
        if (d == 0 || numer % d != 0) continue;
        const u64 t = numer / d;
        if (c * t < 2 * a) continue;
        const u64 b = c * t - a;
        if (std::gcd(a, b) != 1) continue;
        emit_splits(TypeKind::I, a, b, c, t, k, visit);
      }
    }
  }
}

void for_each_type2_witness(u64 p, const WitnessVisitor& visit) {
  require_prime(p, "enumerate_type2");
  // From m*a*b*u = 1 + p*t and b = c*t - a:  t*(a*k*c - p) = 1 + k*a^2.
  // a <= b gives a*k*c <= 4p.
  const u64 bound = 4 * p;
  for (u64 a = 1; a <= bound; ++a) {
    for (u64 k = 1; a * k <= bound; ++k) {
      const u64 ak = a * k;
      const u64 numer = 1 + k * a * a;
      const u64 c_lo = p / ak + 1;
      const u64 c_hi = std::min(bound / ak, (p + numer) / ak);
      for (u64 c = c_lo; c <= c_hi; ++c) {
        const u64 d = ak * c - p;
        if (numer % d != 0) continue;
        const u64 t = numer / d;
        if (c * t < 2 * a) continue;
        const u64 b = c * t - a;
        if (std::gcd(a, b) != 1) continue;
        emit_splits(TypeKind::II, a, b, c, t, k, visit);
      }
    }
  }
}

TypeFamily enumerate_type1(u64 p) { return collect(p, &for_each_type1_witness); }

TypeFamily enumerate_type2(u64 p) { return collect(p, &for_each_type2_witness); }

std::size_t TypeSets::overlap() const {
  std::vector<u64> both;
  std::set_intersection(type1.values.begin(), type1.values.end(), type2.values.begin(),
                        type2.values.end(), std::back_inserter(both));
  return both.size();
}

std::vector<u64> TypeSets::union_values() const {
  std::vector<u64> all;
  std::set_union(type1.values.begin(), type1.values.end(), type2.values.begin(),
                 type2.values.end(), std::back_inserter(all));
  return all;
}

TypeSets type_sets(u64 p) {
  TypeSets s;
  s.p = p;
  s.type1 = enumerate_type1(p);
  s.type2 = enumerate_type2(p);
  return s;
}

std::vector<u64> classified_values(const TypeSets& sets) {
  const u64 p = sets.p;
  std::vector<u64> out = sets.union_values();
  for (u64 v : {u64{1}, u64{2}, u64{3}, p, 2 * p, 3 * p}) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase_if(out, [&](u64 m) { return m == 0 || m > 3 * p; });
  return out;
}

SandwichReport sandwich_check(const A3Result& oracle, const TypeSets& sets) {
  if (oracle.p != sets.p) throw PreconditionError("sandwich_check: mismatched primes");
  if (oracle.p < 5) throw PreconditionError("sandwich_check: requires p >= 5");
  SandwichReport rep;
  rep.p = oracle.p;
  const auto classified = classified_values(sets);
  std::set_difference(oracle.members.begin(), oracle.members.end(), classified.begin(),
                      classified.end(), std::back_inserter(rep.oracle_only));
  std::set_difference(classified.begin(), classified.end(), oracle.members.begin(),
                      oracle.members.end(), std::back_inserter(rep.classified_only));
  return rep;
}

SandwichReport sandwich_check(u64 p) {
  if (p < 5) throw PreconditionError("sandwich_check: requires p >= 5");
  return sandwich_check(a3_exact(p), type_sets(p));
}

}  // namespace egyfrac
