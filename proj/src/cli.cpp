#include "egyfrac/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "egyfrac/aggregate.hpp"
#include "egyfrac/analytic.hpp"
#include "egyfrac/parallel.hpp"
#include "egyfrac/types.hpp"

namespace egyfrac::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { json, csv };

struct Common {
  Format format = Format::json;
  unsigned threads = 1;
};

std::string num(long double v) { return fmt::format("{}", static_cast<double>(v)); }

json witness_json(const TypeWitness& w) {
  return json{{"kind", w.kind == TypeKind::I ? "I" : "II"},
              {"m", w.m}, {"a", w.a}, {"b", w.b}, {"c", w.c}, {"u", w.u}, {"t", w.t}};
}

std::string witness_csv(const TypeWitness& w) {
  return fmt::format("{},{},{},{},{},{}", w.kind == TypeKind::I ? "I" : "II", w.a, w.b, w.c,
                     w.u, w.t);
}

const CLI::Validator& prime_validator() {
  static const CLI::Validator v(
      [](std::string& s) -> std::string {
        try {
          if (is_prime(std::stoull(s))) return {};
        } catch (const std::exception&) {
        }
        return "value " + s + " is not a prime";
      },
      "PRIME");
  return v;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---- subcommands -------------------------------------------------------------

int cmd_a3(const Common& c, u64 p, bool distinct, std::ostream& out) {
  const Semantics sem = distinct ? Semantics::distinct : Semantics::repeats_allowed;
  const A3Result oracle = a3_exact(p, sem);
  const TypeSets sets = type_sets(p);
  std::optional<bool> ok;
  if (p >= 5 && !distinct) ok = sandwich_check(oracle, sets).ok();

  if (c.format == Format::json) {
    json j;
    j["p"] = p;
    j["semantics"] = distinct ? "distinct" : "repeats";
    j["a3"] = oracle.value;
    j["members"] = oracle.members;
    j["type1"] = sets.type1.values;
    j["type2"] = sets.type2.values;
    j["overlap12"] = sets.overlap();
    j["sandwich_ok"] = ok ? json(*ok) : json(nullptr);
    j["witnesses"] = json::array();
    for (const auto* fam : {&sets.type1, &sets.type2})
      for (const auto& [m, w] : fam->witnesses) j["witnesses"].push_back(witness_json(w));
    emit(out, j);
  } else {
    out << "p,m,member,kind,a,b,c,u,t\n";
    std::set<u64> all(oracle.members.begin(), oracle.members.end());
    all.insert(sets.type1.values.begin(), sets.type1.values.end());
    all.insert(sets.type2.values.begin(), sets.type2.values.end());
    const std::set<u64> members(oracle.members.begin(), oracle.members.end());
    for (u64 m : all) {
      const int member = members.count(m) ? 1 : 0;
      bool any = false;
      for (const auto* fam : {&sets.type1, &sets.type2}) {
        auto it = fam->witnesses.find(m);
        if (it == fam->witnesses.end()) continue;
        any = true;
        out << fmt::format("{},{},{},{}\n", p, m, member, witness_csv(it->second));
      }
      if (!any) out << fmt::format("{},{},{},,,,,,\n", p, m, member);
    }
  }
  return ok.value_or(true) ? kExitOk : kExitViolation;
}

int cmd_types(const Common& c, u64 p, std::ostream& out) {
  const TypeSets sets = type_sets(p);
  if (c.format == Format::json) {
    json j;
    j["p"] = p;
    j["type1"] = sets.type1.values;
    j["type2"] = sets.type2.values;
    j["overlap12"] = sets.overlap();
    j["witnesses"] = json::array();
    for (const auto* fam : {&sets.type1, &sets.type2})
      for (const auto& [m, w] : fam->witnesses) j["witnesses"].push_back(witness_json(w));
    emit(out, j);
  } else {
    out << "kind,m,a,b,c,u,t\n";
    for (const auto* fam : {&sets.type1, &sets.type2})
      for (const auto& [m, w] : fam->witnesses)
        out << fmt::format("{},{},{},{},{},{},{}\n", w.kind == TypeKind::I ? "I" : "II", m, w.a,
                           w.b, w.c, w.u, w.t);
  }
  return kExitOk;
}

int cmd_sandwich(const Common& c, u64 pmax, std::ostream& out) {
  if (pmax < 5) throw PreconditionError("sandwich: --pmax must be >= 5");
  if (pmax > kFullOracleCap) throw CapacityError("sandwich: --pmax exceeds desk-scale cap");
  const PrimeTable table = sieve_primes(pmax);
  std::vector<u64> primes;
  for (u64 p : table.primes())
    if (p >= 5) primes.push_back(p);
  std::vector<SandwichReport> reports(primes.size());
  parallel_for(primes.size(), c.threads,
               [&](std::size_t i) { reports[i] = sandwich_check(primes[i]); });
  std::vector<const SandwichReport*> bad;
  for (const auto& r : reports)
    if (!r.ok()) bad.push_back(&r);

  if (c.format == Format::json) {
    json j;
    j["pmax"] = pmax;
    j["checked"] = primes.size();
    j["violations"] = json::array();
    for (const auto* r : bad)
      j["violations"].push_back(
          {{"p", r->p}, {"oracle_only", r->oracle_only}, {"classified_only", r->classified_only}});
    emit(out, j);
  } else {
    out << "p,m,side\n";
    for (const auto* r : bad) {
      for (u64 m : r->oracle_only) out << fmt::format("{},{},oracle_only\n", r->p, m);
      for (u64 m : r->classified_only) out << fmt::format("{},{},classified_only\n", r->p, m);
    }
  }
  return bad.empty() ? kExitOk : kExitViolation;
}

void emit_row(const Common& c, std::ostream& out,
              const std::vector<std::pair<std::string, json>>& fields) {
  if (c.format == Format::json) {
    json j;
    for (const auto& [k, v] : fields) j[k] = v;
    emit(out, j);
    return;
  }
  std::string head, row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) {
      head += ',';
      row += ',';
    }
    head += fields[i].first;
    const json& v = fields[i].second;
    if (v.is_number_float()) row += num(v.get<double>());
    else if (v.is_string()) row += v.get<std::string>();
    else if (v.is_null()) row += "";
    else row += v.dump();
  }
  out << head << "\n" << row << "\n";
}

int cmd_tausum(const Common& c, u64 A, u64 B, u64 k, std::ostream& out) {
  const RatioRow r = tau_sum_ratio(A, B, k, c.threads);
  emit_row(c, out,
           {{"A", A}, {"B", B}, {"k", k}, {"sum", *r.exact},
            {"envelope", static_cast<double>(r.envelope)}, {"ratio", static_cast<double>(r.ratio)},
            {"envelope_log1pk", static_cast<double>(r.extra.at("envelope_log1pk"))},
            {"ratio_log1pk", static_cast<double>(r.extra.at("ratio_log1pk"))}});
  return kExitOk;
}

int cmd_charsum(const Common& c, u64 q, i64 n, u64 h, bool burgess, unsigned r, double eps,
                std::ostream& out) {
  std::vector<std::pair<std::string, json>> fields{{"q", q}, {"n", n}, {"h", h}};
  if (burgess) {
    const RatioRow row = burgess_ratio(q, n, h, r, eps);
    fields.push_back({"sum", *row.exact});
    fields.push_back({"r", r});
    fields.push_back({"eps", eps});
    fields.push_back({"envelope", static_cast<double>(row.envelope)});
    fields.push_back({"ratio", static_cast<double>(row.ratio)});
  } else {
    fields.push_back({"sum", char_sum(q, n, h)});
  }
  emit_row(c, out, fields);
  return kExitOk;
}

int cmd_btcheck(const Common& c, u64 x, u64 qmax, std::ostream& out) {
  const BtReport rep = bt_check(x, qmax);
  if (c.format == Format::json) {
    json j;
    j["x"] = x;
    j["qmax"] = qmax;
    j["log"] = "natural";
    j["checked"] = rep.checked;
    j["violations"] = json::array();
    for (const auto& v : rep.violations)
      j["violations"].push_back({{"q", v.q}, {"a", v.a}, {"count", v.count},
                                 {"bound", static_cast<double>(v.bound)}});
    emit(out, j);
  } else {
    out << "q,a,count,bound\n";
    for (const auto& v : rep.violations)
      out << fmt::format("{},{},{},{}\n", v.q, v.a, v.count, num(v.bound));
  }
  return rep.violations.empty() ? kExitOk : kExitViolation;
}

int cmd_tcount(const Common& c, u64 x, u64 cap, std::ostream& out) {
  const TCountResult t = t_count(x, cap);
  const PrimeTable table = sieve_primes(x);
  std::vector<u64> per_p(table.size());
  parallel_for(table.size(), c.threads,
               [&](std::size_t i) { per_p[i] = enumerate_type2(table.primes()[i]).values.size(); });
  u64 set_sum = 0;
  for (u64 v : per_p) set_sum += v;
  const bool chain_ok = set_sum <= t.tuples && t.tuples <= t.upper_rhs;
  emit_row(c, out,
           {{"x", x}, {"type2_set_sum", set_sum}, {"tuples", t.tuples}, {"upper_rhs", t.upper_rhs},
            {"phi_envelope", static_cast<double>(t.phi_envelope)}, {"tau_total", t.tau_total},
            {"chain_ok", chain_ok},
            {"envelope_ok", static_cast<long double>(t.upper_rhs) <= t.phi_envelope}});
  return chain_ok ? kExitOk : kExitViolation;
}

int cmd_dyadic(const Common& c, u64 x, std::ostream& out) {
  if (x < 2 || (x & (x - 1)) != 0) throw PreconditionError("dyadic: --x must be a power of two >= 2");
  if (x > kDyadicSumCap) throw CapacityError("dyadic: --x exceeds desk-scale cap");
  const auto weights = dyadic_weights(x);
  const long double lx = std::log2(static_cast<long double>(x));
  struct Row {
    u64 N, cells, weight;
    long double cells_ratio, sum, ratio;
  };
  std::vector<Row> rows;
  for (u64 N = 2; N <= x; N *= 2) {
    const auto cells = dyadic_cells(N, x).size();
    const RatioRow r = dyadic_sum(N, x, weights);
    rows.push_back({N, cells, static_cast<u64>(r.extra.at("weight")), cells / (lx * lx), r.raw,
                    r.ratio});
  }
  if (c.format == Format::json) {
    json j;
    j["x"] = x;
    j["rows"] = json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"N", r.N}, {"cells", r.cells},
                           {"cells_ratio", static_cast<double>(r.cells_ratio)},
                           {"weight", r.weight}, {"sum", static_cast<double>(r.sum)},
                           {"ratio", static_cast<double>(r.ratio)}});
    emit(out, j);
  } else {
    out << "x,N,cells,cells_ratio,weight,sum,ratio\n";
    for (const auto& r : rows)
      out << fmt::format("{},{},{},{},{},{},{}\n", x, r.N, r.cells, num(r.cells_ratio), r.weight,
                         num(r.sum), num(r.ratio));
  }
  return kExitOk;
}

int cmd_tailsum(const Common& c, u64 x, std::ostream& out) {
  const RatioRow r = tail_sum(x);
  emit_row(c, out,
           {{"x", x}, {"L", static_cast<u64>(r.params.at("L"))},
            {"sum", static_cast<double>(r.raw)}, {"envelope", static_cast<double>(r.envelope)},
            {"ratio", static_cast<double>(r.ratio)}});
  return kExitOk;
}

int cmd_cache_inspect(const Common& c, const std::string& path, std::ostream& out) {
  std::size_t rows = 0;
  const CacheHeader h = cache_inspect(path, &rows);
  emit_row(c, out,
           {{"path", path}, {"version", h.version}, {"x", h.x}, {"flags", h.flags},
            {"sha256", h.sha256}, {"rows", rows}, {"valid", true}});
  return kExitOk;
}

std::optional<std::filesystem::path> resolve_cache(const std::string& explicit_path, u64 x,
                                                   const std::string& flags) {
  if (!explicit_path.empty()) return std::filesystem::path(explicit_path);
  if (const char* dir = std::getenv("EGYFRAC_CACHE_DIR"); dir && *dir)
    return std::filesystem::path(dir) / fmt::format("egyfrac-x{}-{}.csv", x, flags);
  return std::nullopt;
}

int cmd_sum(const Common& c, u64 x, std::vector<u64> checkpoints, bool types_only, bool distinct,
            const std::string& cache_path, std::ostream& out, std::ostream& err) {
  RecordOptions opts;
  opts.mode = types_only ? OracleMode::types_only : OracleMode::full;
  opts.semantics = distinct ? Semantics::distinct : Semantics::repeats_allowed;
  opts.threads = c.threads;
  const CacheKey key{x, cache_flags(opts)};

  std::vector<A3Record> records;
  const auto cache = resolve_cache(cache_path, x, key.flags);
  bool loaded = false;
  if (cache && std::filesystem::exists(*cache)) {
    try {
      records = cache_load(*cache, key);
      loaded = true;
      err << "egyfrac: using cache " << cache->string() << "\n";
    } catch (const IntegrityError& e) {
      err << "egyfrac: rejecting cache: " << e.what() << "\n";
    } catch (const StaleCacheError& e) {
      err << "egyfrac: rejecting cache: " << e.what() << "\n";
    }
  }
  if (!loaded) {
    records = build_records(x, opts);
    if (cache) cache_store(records, key, *cache);
  }

  if (checkpoints.empty()) checkpoints = default_checkpoints(x);
  const GrowthReport rep = fit_growth(records, x, checkpoints);
  out << (c.format == Format::json ? growth_to_json(rep) : growth_to_csv(rep));
  for (const auto& r : records)
    if (r.sandwich_ok && !*r.sandwich_ok) {
      err << "egyfrac: classification violated at p=" << r.p << "\n";
      return kExitViolation;
    }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computation and numerical checks for ternary Egyptian fractions m/p",
               "egyfrac"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  std::string format = "json";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();

  u64 p = 0, x = 0, pmax = 0, A = 0, B = 0, k = 0, q = 0, h = 0, qmax = 0;
  u64 cap = kTCountCap;
  i64 n = 1;
  unsigned r = 2;
  double eps = 0.01;
  bool distinct = false, types_only = false, burgess = false;
  std::vector<u64> checkpoints;
  std::string cache_path, inspect_path;

  auto* a3 = app.add_subcommand("a3", "A3(p) with members, type sets and witnesses");
  a3->add_option("--p", p, "Prime denominator")->required()->check(prime_validator());
  a3->add_flag("--distinct", distinct, "Require pairwise distinct denominators");

  auto* sum = app.add_subcommand("sum", "Growth report for the sum of A3(p) over p <= x");
  sum->add_option("--x", x, "Upper bound")->required()->check(CLI::Range(u64{2}, kTypesOnlyCap));
  sum->add_option("--checkpoints", checkpoints, "Checkpoint list (default: powers of two)")
      ->delimiter(',');
  sum->add_flag("--types-only", types_only, "Count via the type classification");
  sum->add_flag("--full-oracle", "Count via the direct oracle (default)");
  sum->add_flag("--distinct", distinct, "Require pairwise distinct denominators");
  sum->add_option("--cache", cache_path, "Cache file (default: $EGYFRAC_CACHE_DIR)");

  auto* types = app.add_subcommand("types", "Type I and Type II values and witnesses");
  types->add_option("--p", p, "Prime denominator")->required()->check(prime_validator());

  auto* sandwich = app.add_subcommand("sandwich", "Oracle versus classification for 5 <= p <= pmax");
  sandwich->add_option("--pmax", pmax, "Largest prime to check")->required();

  auto* tausum = app.add_subcommand("tausum", "Divisor sum of k*a*b^2 + 1");
  tausum->add_option("--A", A)->required();
  tausum->add_option("--B", B)->required();
  tausum->add_option("--k", k)->required();

  auto* charsum = app.add_subcommand("charsum", "Jacobi character sum over [n, n + h]");
  charsum->add_option("--q", q)->required();
  charsum->add_option("--n", n)->required();
  charsum->set_help_flag("--help", "Print this help message and exit");
  charsum->add_option("--h", h)->required();
  charsum->add_flag("--burgess", burgess, "Also report the Burgess-shape ratio");
  charsum->add_option("--r", r)->capture_default_str();
  charsum->add_option("--eps", eps)->capture_default_str();

  auto* btcheck = app.add_subcommand("btcheck", "Brun-Titchmarsh comparison for q <= qmax");
  btcheck->add_option("--x", x)->required();
  btcheck->add_option("--qmax", qmax)->required();

  auto* tcount = app.add_subcommand("tcount", "Type II tuple count and its upper forms");
  tcount->add_option("--x", x)->required();
  tcount->add_option("--cap", cap, "Desk-scale cap")->capture_default_str();

  auto* dyadic = app.add_subcommand("dyadic", "Dyadic cell counts and band sums");
  dyadic->add_option("--x", x)->required();

  auto* tailsum = app.add_subcommand("tailsum", "The log i / (1 + log x - i) tail sum");
  tailsum->add_option("--x", x)->required();

  auto* cache = app.add_subcommand("cache", "Cache file utilities");
  cache->add_option("--inspect", inspect_path, "Validate and describe a cache file")->required();

  std::vector<const char*> cargs;
  cargs.reserve(argv.size());
  for (const auto& a : argv) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "egyfrac: " << e.what() << "\n";
    return kExitUsage;
  }
  common.format = format == "csv" ? Format::csv : Format::json;

  try {
    if (a3->parsed()) return cmd_a3(common, p, distinct, out);
    if (sum->parsed())
      return cmd_sum(common, x, checkpoints, types_only, distinct, cache_path, out, err);
    if (types->parsed()) return cmd_types(common, p, out);
    if (sandwich->parsed()) return cmd_sandwich(common, pmax, out);
    if (tausum->parsed()) return cmd_tausum(common, A, B, k, out);
    if (charsum->parsed()) return cmd_charsum(common, q, n, h, burgess, r, eps, out);
    if (btcheck->parsed()) return cmd_btcheck(common, x, qmax, out);
    if (tcount->parsed()) return cmd_tcount(common, x, cap, out);
    if (dyadic->parsed()) return cmd_dyadic(common, x, out);
    if (tailsum->parsed()) return cmd_tailsum(common, x, out);
    if (cache->parsed()) return cmd_cache_inspect(common, inspect_path, out);
  } catch (const CapacityError& e) {
    err << "egyfrac: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const PreconditionError& e) {
    err << "egyfrac: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const DomainError& e) {
    err << "egyfrac: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const IntegrityError& e) {
    err << "egyfrac: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const StaleCacheError& e) {
    err << "egyfrac: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitUsage;
}

}  // namespace egyfrac::cli
