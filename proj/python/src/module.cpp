#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "egyfrac/aggregate.hpp"
#include "egyfrac/analytic.hpp"
#include "egyfrac/types.hpp"

namespace py = pybind11;
using namespace egyfrac;

namespace {

Semantics semantics(bool distinct) {
  return distinct ? Semantics::distinct : Semantics::repeats_allowed;
}

py::dict witness_dict(const TypeWitness& w) {
  py::dict d;
  d["kind"] = w.kind == TypeKind::I ? "I" : "II";
  d["m"] = w.m;
  d["a"] = w.a;
  d["b"] = w.b;
  d["c"] = w.c;
  d["u"] = w.u;
  d["t"] = w.t;
  return d;
}

py::dict ratio_dict(const RatioRow& r) {
  py::dict d;
  for (const auto& [k, v] : r.params) d[py::str(k)] = static_cast<double>(v);
  if (r.exact) d["exact"] = *r.exact;
  d["raw"] = static_cast<double>(r.raw);
  d["envelope"] = static_cast<double>(r.envelope);
  d["ratio"] = static_cast<double>(r.ratio);
  for (const auto& [k, v] : r.extra) d[py::str(k)] = static_cast<double>(v);
  return d;
}

}  // namespace

PYBIND11_MODULE(_egyfrac, m) {
  m.doc() = "Ternary Egyptian fractions m/p: exact oracle, Type I/II classification, analytic checks";

  py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_RuntimeError);
  py::register_exception<StaleCacheError>(m, "StaleCacheError", PyExc_RuntimeError);

  m.def("is_prime", &is_prime, py::arg("n"));
  m.def("primes_up_to", [](u64 limit) {
    const PrimeTable t = sieve_primes(limit);
    return std::vector<u64>(t.primes().begin(), t.primes().end());
  }, py::arg("limit"));
  m.def("factorize", [](u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (const auto& pp : factorize(n).factors) out.emplace_back(pp.prime, pp.exponent);
    return out;
  }, py::arg("n"));
  m.def("jacobi", py::overload_cast<i64, u64>(&jacobi), py::arg("a"), py::arg("q"));

  m.def("two_term_solutions", [](u64 num, u64 den, bool distinct) {
    std::vector<std::pair<u64, u64>> out;
    for (const auto& s : two_term_solutions(ReducedFraction(num, den), semantics(distinct)))
      out.emplace_back(s.x, s.y);
    return out;
  }, py::arg("num"), py::arg("den"), py::arg("distinct") = false);
  m.def("three_term_witness", [](u64 num, u64 den, bool distinct) -> py::object {
    const auto w = three_term_witness(ReducedFraction(num, den), semantics(distinct));
    if (!w) return py::none();
    return py::make_tuple(w->m1, w->m2, w->m3);
  }, py::arg("num"), py::arg("den"), py::arg("distinct") = false);
  m.def("a3", [](u64 p, bool distinct) {
    return a3_exact(p, semantics(distinct)).members;
  }, py::arg("p"), py::arg("distinct") = false,
     "Sorted m <= 3p whose reduced m/p is a sum of three unit fractions.");

  m.def("type_sets", [](u64 p) {
    const TypeSets s = type_sets(p);
    py::dict d;
    d["type1"] = s.type1.values;
    d["type2"] = s.type2.values;
    py::list ws;
    for (const auto* fam : {&s.type1, &s.type2})
      for (const auto& [value, w] : fam->witnesses) ws.append(witness_dict(w));
    d["witnesses"] = ws;
    return d;
  }, py::arg("p"));
  m.def("sandwich_check", [](u64 p) {
    const SandwichReport r = sandwich_check(p);
    return py::make_tuple(r.oracle_only, r.classified_only);
  }, py::arg("p"), "(oracle_only, classified_only); both empty when the classification is exact.");

  m.def("tau_sum", &tau_sum, py::arg("A"), py::arg("B"), py::arg("k"), py::arg("threads") = 1);
  m.def("char_sum", &char_sum, py::arg("q"), py::arg("N"), py::arg("H"));
  m.def("burgess_ratio", [](u64 q, i64 N, u64 H, unsigned r, double eps) {
    return ratio_dict(burgess_ratio(q, N, H, r, eps));
  }, py::arg("q"), py::arg("N"), py::arg("H"), py::arg("r") = 2, py::arg("eps") = 0.01);
  m.def("t_count", [](u64 x) {
    const TCountResult t = t_count(x);
    py::dict d;
    d["x"] = t.x;
    d["tuples"] = t.tuples;
    d["upper_rhs"] = t.upper_rhs;
    d["phi_envelope"] = static_cast<double>(t.phi_envelope);
    d["tau_total"] = t.tau_total;
    return d;
  }, py::arg("x"));
  m.def("dyadic_sum", [](u64 N, u64 x) { return ratio_dict(dyadic_sum(N, x)); }, py::arg("N"),
        py::arg("x"));
  m.def("tail_sum", [](u64 x) { return ratio_dict(tail_sum(x)); }, py::arg("x"));

  m.def("growth_json", [](u64 x, bool types_only, unsigned threads) {
    RecordOptions opts;
    opts.mode = types_only ? OracleMode::types_only : OracleMode::full;
    opts.threads = threads;
    const auto recs = build_records(x, opts);
    return growth_to_json(fit_growth(recs, x, default_checkpoints(x)));
  }, py::arg("x"), py::arg("types_only") = false, py::arg("threads") = 1,
     py::call_guard<py::gil_scoped_release>());
}
