#include "egyfrac/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "egyfrac/parallel.hpp"

namespace egyfrac {

namespace {

long double log2l_(long double v) { return std::log2(v); }

bool is_power_of_two(u64 v) { return v != 0 && (v & (v - 1)) == 0; }

RatioRow make_row(long double raw, long double envelope) {
  RatioRow row;
  row.raw = raw;
  row.envelope = envelope;
  row.ratio = raw / envelope;
  return row;
}

}  // namespace

// ---- divisor-function sums -------------------------------------------------

u64 tau_sum(u64 A, u64 B, u64 k, unsigned threads) {
  if (A == 0 || B == 0 || k == 0) throw PreconditionError("tau_sum: A, B, k must be positive");
  if (A > kMaxInput || B > kMaxInput) throw CapacityError("tau_sum: A or B exceeds input budget");
  // k*A*(2B)^2 + 1 must fit
  const u128 top = static_cast<u128>(k) * A * (2 * static_cast<u128>(B)) * (2 * static_cast<u128>(B));
  if (top >= static_cast<u128>(UINT64_MAX)) throw CapacityError("tau_sum: k*A*B^2 exceeds 64 bits");

  std::vector<u64> per_b(B, 0);
  parallel_for(B, threads, [&](std::size_t i) {
    const u64 b = i + 1;
    const u64 step = k * b * b;
    u64 acc = 0;
    for (u64 a = 1; a <= A; ++a) acc += tau(step * a + 1);
    per_b[i] = acc;
  });
  return std::accumulate(per_b.begin(), per_b.end(), u64{0});
}

RatioRow tau_sum_ratio(u64 A, u64 B, u64 k, unsigned threads) {
  if (A < 2 || B < 2) throw PreconditionError("tau_sum_ratio: A, B must be >= 2");
  if (k == 0 || k > A) throw PreconditionError("tau_sum_ratio: requires 1 <= k <= A");
  const u64 s = tau_sum(A, B, k, threads);
  const long double ab = static_cast<long double>(A) * B;
  RatioRow row = make_row(s, ab * log2l_(static_cast<long double>(A + B)));
  row.exact = static_cast<i64>(s);
  row.params = {{"A", A}, {"B", B}, {"k", k}};
  const long double env_k = row.envelope * log2l_(1.0L + k);
  row.extra["envelope_log1pk"] = env_k;
  row.extra["ratio_log1pk"] = row.raw / env_k;
  return row;
}

RatioRow weighted_jacobi_sum(u64 A, u64 B, u64 k) {
  if (A < 2 || B < 2) throw PreconditionError("weighted_jacobi_sum: A, B must be >= 2");
  if (k == 0) throw PreconditionError("weighted_jacobi_sum: k must be positive");
  if (A > kMaxInput || B > kMaxInput) throw CapacityError("weighted_jacobi_sum: input budget");
  long double total = 0;
  const long double logB = log2l_(static_cast<long double>(B));
  for (u64 q = 1; q <= B; q += 2) {
    if (std::gcd(q, k) != 1) continue;
    // inner character sum is an exact integer
    i64 inner = 0;
    const int sign_k = jacobi(-static_cast<i64>(k % q), q);
    if (sign_k == 0) continue;
    for (u64 a = 1; a <= A; a += 2) {
      if (std::gcd(a, q) != 1) continue;
      inner += jacobi_u(a, q);
    }
    const long double weight = (logB - log2l_(static_cast<long double>(q))) / q;
    total += static_cast<long double>(sign_k * inner) * weight;
  }
  RatioRow row = make_row(std::fabs(total), static_cast<long double>(A) * logB);
  row.params = {{"A", A}, {"B", B}, {"k", k}};
  row.extra["signed_sum"] = total;
  return row;
}

// ---- character sums --------------------------------------------------------

i64 char_sum(u64 q, i64 N, u64 H) {
  if (q < 3 || (q & 1) == 0) throw PreconditionError("char_sum: q must be odd and >= 3");
  if (H == 0) throw PreconditionError("char_sum: H must be positive");
  i64 s = 0;
  i64 n = N;
  for (u64 i = 0; i <= H; ++i, ++n) s += jacobi(n, q);
  return s;
}

bool is_squarefree(u64 n) {
  if (n == 0) return false;
  for (const auto& pp : factorize(n).factors)
    if (pp.exponent > 1) return false;
  return true;
}

RatioRow burgess_ratio(u64 q, i64 N, u64 H, unsigned r, long double eps) {
  if (r == 0) throw PreconditionError("burgess_ratio: r must be >= 1");
  if (!(eps > 0)) throw PreconditionError("burgess_ratio: eps must be positive");
  if (r != 2 && !is_squarefree(q))
    throw PreconditionError("burgess_ratio: q must be squarefree unless r = 2");
  const i64 s = char_sum(q, N, H);
  const long double env =
      std::pow(static_cast<long double>(H), 1.0L - 1.0L / (r + 1)) *
      std::pow(static_cast<long double>(q), 1.0L / (4.0L * r) + eps);
  RatioRow row = make_row(std::fabs(static_cast<long double>(s)), env);
  row.exact = s;
  row.params = {{"q", q}, {"N", N}, {"H", H}, {"r", r}, {"eps", eps}};
  return row;
}

// ---- primes in progressions ------------------------------------------------

BtReport bt_check(u64 x, u64 qmax, const PrimeTable* table) {
  if (qmax < 2 || qmax >= x) throw PreconditionError("bt_check: requires 2 <= qmax < x");
  if (x > kMaxSieveLimit) throw CapacityError("bt_check: x exceeds sieve budget");
  PrimeTable local;
  if (table == nullptr || table->limit() < x) {
    local = sieve_primes(x);
    table = &local;
  }
  BtReport rep;
  rep.x = x;
  rep.qmax = qmax;
  for (u64 q = 1; q <= qmax; ++q) {
    const u64 phi_q = phi(q);
    const long double bound =
        2.0L * x / (phi_q * std::log(static_cast<long double>(x) / static_cast<long double>(q)));
    rep.checked += phi_q;
    const auto counts = residue_counts(*table, x, q);
    for (u64 a = 0; a < q; ++a) {
      if (counts[a] == 0 || std::gcd(a, q) != 1) continue;
      if (static_cast<long double>(counts[a]) > bound) rep.violations.push_back({q, a, counts[a], bound});
    }
  }
  return rep;
}

// ---- the tuple count and its upper forms -----------------------------------

TCountResult t_count(u64 x, u64 cap) {
  if (x < 2) throw PreconditionError("t_count: x must be >= 2");
  if (x > cap) throw CapacityError("t_count: x exceeds desk-scale cap " + std::to_string(cap));
  const PrimeTable table = sieve_primes(x);
  std::vector<char> prime_flag(x + 1, 0);
  for (u64 p : table.primes()) prime_flag[p] = 1;

  TCountResult res;
  res.x = x;

  // Upper forms: one term per (a, u, m) with aum <= x and u <= m.
  for (u64 a = 1; a <= x; ++a) {
    for (u64 u = 1; a * u * u <= x; ++u) {
      for (u64 m = u; a * u * m <= x; ++m) {
        const u64 q = a * u * m;
        const u64 v = a * q + 1;
        const Factorization fv = factorize(v);
        const u64 tv = tau(fv);
        res.tau_total += tv;
        res.phi_envelope += static_cast<long double>(tv) * x /
                            (phi(q) * log2l_(2.0L + static_cast<long double>(x) / q));
        for (u64 t : divisors(fv)) {
          const u64 d = (v / t) % q;
          res.upper_rhs += pi_ap(table, x, q, d == 0 ? 0 : q - d);
        }
      }
    }
  }

  // Tuples: group by k = u*m; every prime p = c*a*k - (a^2 k + 1)/t with
  // gcd(a, c*t - a) = 1 contributes one tuple per split k = u*m, u <= m.
  for (u64 a = 1; a <= x; ++a) {
    for (u64 k = 1; a * k <= x; ++k) {
      const u64 ak = a * k;
      const u64 v = a * ak + 1;
      const u64 splits = (tau(k) + 1) / 2;
      for (u64 t : divisors(factorize(v))) {
        const u64 d = v / t;
        for (u64 c = d / ak + 1;; ++c) {
          const u64 p = c * ak - d;
          if (p > x) break;
          if (!prime_flag[p]) continue;
          if (std::gcd(a, c * t - a) != 1) continue;
          res.tuples += splits;
        }
      }
    }
  }
  return res;
}

// ---- dyadic decomposition --------------------------------------------------

std::vector<DyadicCell> dyadic_cells(u64 N, u64 x) {
  if (!is_power_of_two(N) || !is_power_of_two(x) || N > x)
    throw PreconditionError("dyadic_cells: N, x must be powers of two with N <= x");
  const unsigned L = ilog2(N);
  const unsigned LX = ilog2(x);
  std::vector<DyadicCell> cells;
  // [AUM, 8 AUM] meets [N/2, N]  <=>  N/16 <= AUM <= N
  const unsigned s_lo = L >= 4 ? L - 4 : 0;
  for (unsigned s = s_lo; s <= L; ++s) {
    for (unsigned i = 0; i <= s && i <= LX; ++i) {
      for (unsigned j = 0; i + 2 * j <= s; ++j) {
        const unsigned h = s - i - j;
        if (h > LX) continue;
        cells.push_back({u64{1} << i, u64{1} << j, u64{1} << h});
      }
    }
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

std::vector<u64> dyadic_weights(u64 limit) {
  std::vector<u64> w(limit + 1, 0);
  for (u64 a = 1; a <= limit; ++a)
    for (u64 u = 1; a * u * u <= limit; ++u)
      for (u64 m = u; a * u * m <= limit; ++m) {
        const u64 k = a * u * m;
        w[k] += tau(a * k + 1);
      }
  return w;
}

RatioRow dyadic_sum(u64 N, u64 x, std::span<const u64> weights) {
  if (N == 0 || N > x) throw PreconditionError("dyadic_sum: requires 1 <= N <= x");
  if (weights.size() <= N) throw PreconditionError("dyadic_sum: weight table too short");
  long double s = 0;
  u64 weight = 0;
  for (u64 k = (N + 1) / 2; k <= N; ++k) {
    if (k == 0) continue;
    s += static_cast<long double>(weights[k]) / k;
    weight += weights[k];
  }
  const long double lx = log2l_(static_cast<long double>(x));
  RatioRow row = make_row(s, lx * lx * lx);
  row.params = {{"N", N}, {"x", x}};
  row.extra["weight"] = weight;
  return row;
}

RatioRow dyadic_sum(u64 N, u64 x, u64 cap) {
  if (x > cap) throw CapacityError("dyadic_sum: x exceeds desk-scale cap");
  if (N == 0 || N > x) throw PreconditionError("dyadic_sum: requires 1 <= N <= x");
  const auto w = dyadic_weights(N);
  return dyadic_sum(N, x, w);
}

namespace {

RatioRow tail_sum_levels(unsigned L) {
  long double s = 0;
  for (unsigned i = 1; i <= L; ++i) s += log2l_(static_cast<long double>(i)) / (1.0L + L - i);
  const long double ll = log2l_(static_cast<long double>(L));
  RatioRow row = make_row(s, ll * ll);
  row.params = {{"L", L}};
  return row;
}

}  // namespace

RatioRow tail_sum(u64 x) {
  if (x < 4) throw PreconditionError("tail_sum: x must be >= 4");
  RatioRow row = tail_sum_levels(ilog2(x));
  row.params["x"] = x;
  return row;
}

// ---- the bounded-ratio criterion ------------------------------------------

QuartileVerdict quartile_rule(std::span<const long double> ratios) {
  if (ratios.size() < 4) throw PreconditionError("quartile_rule: need at least four rows");
  const std::size_t q = ratios.size() / 4;
  QuartileVerdict v;
  v.top_max = *std::max_element(ratios.end() - static_cast<std::ptrdiff_t>(q), ratios.end());
  v.middle_max = *std::max_element(ratios.begin() + static_cast<std::ptrdiff_t>(q),
                                   ratios.end() - static_cast<std::ptrdiff_t>(q));
  v.ok = v.top_max <= 2 * v.middle_max;
  return v;
}

// ---- scaling grids -----------------------------------------------------------

std::vector<RatioRow> tau_sum_grid(unsigned lo, unsigned hi, unsigned threads) {
  struct Point {
    u64 A, B, k;
  };
  std::vector<Point> pts;
  for (unsigned i = lo; i <= hi; ++i)
    for (unsigned j = lo; j <= hi; ++j) {
      const u64 A = u64{1} << i, B = u64{1} << j;
      for (u64 k : {u64{1}, A / 2, A})
        if (k >= 1) pts.push_back({A, B, k});
    }
  std::stable_sort(pts.begin(), pts.end(),
                   [](const Point& l, const Point& r) { return l.A * l.B < r.A * r.B; });
  std::vector<RatioRow> rows;
  rows.reserve(pts.size());
  for (const auto& pt : pts) rows.push_back(tau_sum_ratio(pt.A, pt.B, pt.k, threads));
  return rows;
}

std::vector<RatioRow> burgess_grid(u64 qmax, std::size_t samples, unsigned r, long double eps) {
  if (qmax < 3 || samples < 2) throw PreconditionError("burgess_grid: need qmax >= 3, samples >= 2");
  std::vector<u64> qs;
  for (std::size_t i = 0; i < samples; ++i) {
    const long double target =
        3.0L * std::pow(static_cast<long double>(qmax) / 3.0L,
                        static_cast<long double>(i) / static_cast<long double>(samples - 1));
    u64 q = static_cast<u64>(std::floor(target)) | 1;
    while (q <= qmax && !is_squarefree(q)) q += 2;
    if (q > qmax) continue;
    if (qs.empty() || qs.back() < q) qs.push_back(q);
  }
  std::vector<RatioRow> rows;
  for (u64 q : qs) {
    const long double lq = static_cast<long double>(q);
    for (u64 H : {static_cast<u64>(std::floor(std::sqrt(lq))),
                  static_cast<u64>(std::floor(std::pow(lq, 0.75L))), q})
      rows.push_back(burgess_ratio(q, 1, std::max<u64>(H, 1), r, eps));
  }
  return rows;
}

std::vector<RatioRow> dyadic_count_grid(unsigned max_exp) {
  std::vector<RatioRow> rows;
  for (unsigned ex = 1; ex <= max_exp; ++ex)
    for (unsigned en = 1; en <= ex; ++en) {
      const u64 N = u64{1} << en, x = u64{1} << ex;
      const auto n = dyadic_cells(N, x).size();
      RatioRow row = make_row(static_cast<long double>(n), static_cast<long double>(ex) * ex);
      row.exact = static_cast<i64>(n);
      row.params = {{"N", N}, {"x", x}};
      rows.push_back(std::move(row));
    }
  return rows;
}

std::vector<RatioRow> tail_sum_grid(unsigned max_L) {
  std::vector<RatioRow> rows;
  for (unsigned L = 2; L <= max_L; ++L) rows.push_back(tail_sum_levels(L));
  return rows;
}

}  // namespace egyfrac
