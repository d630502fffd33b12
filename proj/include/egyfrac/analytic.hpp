#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "egyfrac/arith.hpp"

namespace egyfrac {

/// One row of a scaling table: an exact or high-precision raw quantity
/// compared against an envelope function. ratio = raw / envelope.
struct RatioRow {
  std::map<std::string, long double> params;
  std::optional<i64> exact;  // set when raw is an exact integer
  long double raw = 0;
  long double envelope = 0;
  long double ratio = 0;
  std::map<std::string, long double> extra;  // secondary envelopes
};

/// Default desk-scale cap for t_count.
inline constexpr u64 kTCountCap = 5000;
/// Default cap for dyadic_sum.
inline constexpr u64 kDyadicSumCap = u64{1} << 16;

// ---- divisor-function sums -------------------------------------------------

/// Exact sum over a <= A, b <= B of tau(k*a*b^2 + 1).
u64 tau_sum(u64 A, u64 B, u64 k, unsigned threads = 1);

/// tau_sum / (A*B*log2(A+B)); requires k <= A. extra carries the envelope
/// with the additional log2(1+k) factor.
RatioRow tau_sum_ratio(u64 A, u64 B, u64 k, unsigned threads = 1);

/// |sum over odd q <= B coprime to k, a <= A coprime to 2q of
///  (-k*a / q) * log2(B/q) / q|, against A*log2(B).
RatioRow weighted_jacobi_sum(u64 A, u64 B, u64 k);

// ---- character sums --------------------------------------------------------

/// Sum of the Jacobi symbol (n/q) over N <= n <= N + H; q odd >= 3.
i64 char_sum(u64 q, i64 N, u64 H);

bool is_squarefree(u64 n);

/// |char_sum| / (H^(1 - 1/(r+1)) * q^(1/(4r) + eps)). Requires q squarefree
/// or r = 2.
RatioRow burgess_ratio(u64 q, i64 N, u64 H, unsigned r = 2, long double eps = 0.01L);

// ---- primes in progressions ------------------------------------------------

struct BtViolation {
  u64 q = 0;
  u64 a = 0;
  u64 count = 0;
  long double bound = 0;
};

struct BtReport {
  u64 x = 0;
  u64 qmax = 0;
  u64 checked = 0;  // (q, a) pairs compared
  std::vector<BtViolation> violations;
};

/// Compares pi(x; q, a) with 2x / (phi(q) ln(x/q)) for every q <= qmax and
/// every a coprime to q. Natural logarithm.
BtReport bt_check(u64 x, u64 qmax, const PrimeTable* table = nullptr);

// ---- the tuple count and its upper forms -----------------------------------

struct TCountResult {
  u64 x = 0;
  /// Type II tuples (m, p, a, b, c, u) with p <= x prime, a*u*m <= x, u <= m.
  u64 tuples = 0;
  /// sum over a*u*m <= x, u <= m, t | a^2 u m + 1 of pi(x; aum, -(a^2 u m + 1)/t).
  u64 upper_rhs = 0;
  /// sum over the same (a, u, m) of tau(a^2 u m + 1) x / (phi(aum) log2(2 + x/aum)).
  long double phi_envelope = 0;
  /// sum over the same (a, u, m) of tau(a^2 u m + 1).
  u64 tau_total = 0;
};

TCountResult t_count(u64 x, u64 cap = kTCountCap);

// ---- dyadic decomposition --------------------------------------------------

struct DyadicCell {
  u64 A = 1, U = 1, M = 1;
  friend auto operator<=>(const DyadicCell&, const DyadicCell&) = default;
};

/// Cells (2^i, 2^j, 2^h) with j <= h whose product range [AUM, 8AUM] meets
/// [N/2, N]. N and x are powers of two, N <= x.
std::vector<DyadicCell> dyadic_cells(u64 N, u64 x);

/// weights[k] = sum over a*u*m = k, u <= m of tau(a^2 u m + 1), k <= limit.
std::vector<u64> dyadic_weights(u64 limit);

/// Sum over N/2 <= aum <= N, u <= m of tau(a^2 u m + 1)/(aum), against
/// (log2 x)^3. The integer numerator sum is reported in extra["weight"].
RatioRow dyadic_sum(u64 N, u64 x, u64 cap = kDyadicSumCap);
RatioRow dyadic_sum(u64 N, u64 x, std::span<const u64> weights);

/// S(L) = sum_{i=1..L} log2(i)/(1 + L - i), L = floor(log2 x), against (log2 L)^2.
RatioRow tail_sum(u64 x);

// ---- the bounded-ratio criterion ------------------------------------------

struct QuartileVerdict {
  long double top_max = 0;
  long double middle_max = 0;
  bool ok = false;
};

/// `ratios` ordered by increasing problem scale. The top quartile is the last
/// quarter, the middle the central half; passes when top_max <= 2*middle_max.
QuartileVerdict quartile_rule(std::span<const long double> ratios);

// ---- scaling grids -----------------------------------------------------------

/// A, B in {2^lo..2^hi}, k in {1, A/2, A}; rows ordered by A*B (stable).
std::vector<RatioRow> tau_sum_grid(unsigned lo, unsigned hi, unsigned threads = 1);

/// Squarefree odd q sampled in [3, qmax], H in {q^(1/2), q^(3/4), q}, N = 1;
/// rows ordered by q.
std::vector<RatioRow> burgess_grid(u64 qmax, std::size_t samples, unsigned r = 2,
                                   long double eps = 0.01L);

/// Row per (N, x) with N, x powers of two up to 2^max_exp; ratio = cells/(log2 x)^2.
std::vector<RatioRow> dyadic_count_grid(unsigned max_exp);

/// tail_sum rows for L = 2..max_L.
std::vector<RatioRow> tail_sum_grid(unsigned max_L);

}  // namespace egyfrac
