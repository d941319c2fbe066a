#include "zdlab/selftest.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "zdlab/batch.hpp"
#include "zdlab/documents.hpp"
#include "zdlab/errors.hpp"
#include "zdlab/fingenlab.hpp"
#include "zdlab/models.hpp"

namespace zdlab::selftest {

using docs::Json;
using surface::Divisor;

namespace {

// Empty string: pass. Otherwise the reason for failing.
using Suite = std::function<std::string(const Options&)>;

std::string summarize(const batch::Report& r, const std::string& what) {
  if (r.failures == 0) return {};
  std::string s = std::to_string(r.failures) + "/" + std::to_string(r.checked) + " " + what + " failed";
  if (!r.problems.empty()) s += " (" + r.problems.front() + ")";
  return s;
}

Divisor lit(const surface::ModelPtr& m, const char* text) { return surface::parse_divisor(m, text); }

std::string zariski_oracle(const Options& o) {
  std::vector<Rat> values = o.quick ? std::vector<Rat>{-1, 0, 1, make_rat(1, 2), 2} : batch::small_rationals();
  for (const auto& m : {models::blp2(), models::blp2x2()}) {
    auto r = batch::oracle_equivalence(batch::grid_divisors(m, values), o.exec);
    if (auto s = summarize(r, "oracle comparisons on " + m->name()); !s.empty()) return s;
  }
  return {};
}

std::string zariski_golden(const Options&) {
  struct Case {
    surface::ModelPtr m;
    const char *d, *p, *n;
  };
  const Case cases[] = {{models::blp2(), "H + 2*E", "H", "2*E"},
                        {models::blp2x2(), "H + 2*E1 + 3*E2", "H", "2*E1 + 3*E2"},
                        {models::blp2x2(), "2*H - 2*E1 - 2*E2", "0", "2*H - 2*E1 - 2*E2"}};
  for (const auto& c : cases) {
    auto z = zariski::decompose(lit(c.m, c.d));
    if (!(z.positive == lit(c.m, c.p)) || !(z.negative == lit(c.m, c.n)))
      return std::string("golden decomposition of ") + c.d + " differs";
  }
  return {};
}

std::string sigma_suite(const Options& o) {
  const std::size_t count = o.quick ? 10 : 100;
  for (const auto& m : {models::blp2(), models::blp2x2()}) {
    const auto ample = zariski::default_ample(m);
    const auto ds = batch::random_pseudoeffective(m, count, o.seed);
    if (auto s = summarize(batch::sigma_agreement(ds, ample, o.exec), "sigma comparisons on " + m->name()); !s.empty())
      return s;
    for (std::size_t i = 0; i + 1 < std::min<std::size_t>(ds.size(), 6); ++i)
      for (const auto& g : m->generator_names()) {
        const auto a = *zariski::sigma(ds[i], g, ample).value;
        const auto b = *zariski::sigma(ds[i + 1], g, ample).value;
        if (*zariski::sigma(Rat(3) * ds[i], g, ample).value != 3 * a) return "sigma is not homogeneous";
        if (*zariski::sigma(ds[i] + ds[i + 1], g, ample).value > a + b) return "sigma is not convex";
      }
  }
  return {};
}

std::string dioph_suite(const Options& o) {
  if (auto s = summarize(batch::dioph_trials(o.quick ? 100 : 1000, o.seed, o.exec), "approximations"); !s.empty())
    return s;
  const std::size_t fuzz = o.quick ? 2000 : 100000;
  const std::vector<cones::RationalPolytope> ps = {
      cones::RationalPolytope::from_vertices(1, {QVec{Rat(0)}, QVec{Rat(1)}}),
      cones::RationalPolytope::from_vertices(2, {QVec::from_ints({0, 0}), QVec::from_ints({3, 0}), QVec::from_ints({0, 3})}),
      cones::RationalPolytope::from_vertices(2, {QVec{make_rat(1, 2), Rat(0)}, QVec{Rat(2), make_rat(1, 3)}, QVec{Rat(1), Rat(2)}})};
  for (const auto& p : ps) {
    const auto cert = dioph::polytope_certificate(p);
    auto r = batch::fuzz_criterion(p, cert, fuzz, o.seed, o.exec);
    if (r.violations) return "criterion violation: " + r.first_violation.value_or("");
    if (r.confirmed == 0) return "fuzzer never reached an applicable instance";
  }
  return {};
}

std::string hilbert_suite(const Options& o) {
  for (long k = 1; k <= 6; ++k) {
    auto cone = cones::convert(cones::RationalCone::from_generators(2, {QVec::from_ints({1, 0}), QVec::from_ints({1, k})}));
    auto hb = cones::hilbert_basis(cone, o.exec);
    if (hb.elements.size() != static_cast<std::size_t>(k + 1)) return "wrong Hilbert basis size for k = " + std::to_string(k);
    for (long x = 0; x <= 10; ++x)
      for (long y = 0; y <= 10; ++y) {
        QVec p = QVec::from_ints({x, y});
        if (!cones::member(cone, p)) continue;
        auto mult = cones::decompose(hb, cone, p);
        if (!mult) return "no decomposition of " + to_string(p);
        QVec sum(2);
        for (std::size_t i = 0; i < mult->size(); ++i) sum += Rat((*mult)[i]) * hb.elements[i];
        if (!(sum == p)) return "decomposition of " + to_string(p) + " does not sum back";
      }
  }
  return {};
}

fingenlab::ConeSplit reference_split() { return fingenlab::ConeSplit(QVec::from_ints({1, 1}), make_rat(1, 2), make_rat(1, 2)); }

std::string width_suite(const Options& o) {
  const auto s = reference_split();
  const auto w = fingenlab::width_threshold(s, o.exec);
  if (w.threshold != 5) return "width threshold " + std::to_string(w.threshold) + " != 5";
  if (!w.witness || (*w.witness)[0] + (*w.witness)[1] != 4) return "missing minimality witness at x+y = 4";
  const auto chain = fingenlab::zigzag_descend(s, w.threshold, QVec::from_ints({30, 20}));
  if (chain.size() != 46) return "zig-zag from (30,20) took " + std::to_string(chain.size() - 1) + " steps";
  return {};
}

std::string adjoint_suite(const Options& o) {
  const std::size_t count = o.quick ? 40 : 250;
  for (const auto& m : {models::blp2(), models::blp2x2()}) {
    auto inputs = batch::random_adjoint_inputs(m, count, o.seed);
    if (auto s = summarize(batch::adjoint_trials(inputs, o.exec), "adjoint traces on " + m->name()); !s.empty()) return s;
  }
  return {};
}

std::string canonical_suite(const Options&) {
  for (long m = 1; m <= 50; ++m) {
    const auto e = fingenlab::canonical_example(m);
    BigInt want;
    mpz_bin_uiui(want.get_mpz_t(), static_cast<unsigned long>(m + 2), 3);
    if (e.deficit != want || e.surjective) return "deficit mismatch at m = " + std::to_string(m);
  }
  return {};
}

std::string cutkosky_suite(const Options&) {
  for (long k = 2; k <= 12; ++k)
    for (long d = 1; d < k; ++d)
      if (fingenlab::elliptic_support({k, d, 0}).span_closed)
        return "span closed for k = " + std::to_string(k) + ", d = " + std::to_string(d);
  if (!fingenlab::elliptic_support({2, 1, 1}).span_closed) return "ample control span not closed";
  return {};
}

std::string parallel_suite(const Options& o) {
  const auto s = reference_split();
  auto a = fingenlab::width_threshold(s, Execution::Serial);
  auto b = fingenlab::width_threshold(s, Execution::Parallel);
  if (a.per_subcone != b.per_subcone || !(a.witness == b.witness)) return "width scan differs between serial and parallel";
  auto cone = cones::convert(cones::RationalCone::from_generators(3, {QVec::from_ints({1, 0, 0}), QVec::from_ints({1, 3, 0}), QVec::from_ints({1, 1, 4})}));
  if (cones::hilbert_basis(cone, Execution::Serial).elements != cones::hilbert_basis(cone, Execution::Parallel).elements)
    return "Hilbert basis differs between serial and parallel";
  auto p = cones::RationalPolytope::from_vertices(2, {QVec::from_ints({0, 0}), QVec::from_ints({3, 0}), QVec::from_ints({0, 3})});
  auto cert = dioph::polytope_certificate(p);
  auto f1 = batch::fuzz_criterion(p, cert, 3000, o.seed, Execution::Serial);
  auto f2 = batch::fuzz_criterion(p, cert, 3000, o.seed, Execution::Parallel);
  if (f1.confirmed != f2.confirmed || f1.inapplicable != f2.inapplicable) return "fuzz counts differ between serial and parallel";
  return {};
}

// --- round trip and corruption ---------------------------------------------

struct Target {
  std::string doc;
  std::string pointer;
};

const std::map<std::string, Target>& targets() {
  static const std::map<std::string, Target> t = {
      {"zariski.positive", {"zariski", "/positive/H"}},
      {"zariski.negative", {"zariski", "/negative/E"}},
      {"zariski.multiplicity", {"zariski", "/support/0/multiplicity"}},
      {"zariski.nef_pairings", {"zariski", "/certificate/nef_pairings/0"}},
      {"zariski.orthogonality", {"zariski", "/certificate/orthogonality/0"}},
      {"zariski.gram_minors", {"zariski", "/certificate/gram_minors/0"}},
      {"sigma.value", {"sigma", "/values/0/sigma"}},
      {"dioph.weight", {"dioph", "/points/0/weight"}},
      {"dioph.k_i", {"dioph", "/points/0/k_i"}},
      {"dioph.point", {"dioph", "/points/0/point/0"}},
      {"polytope.eps", {"polytope-cert", "/eps"}},
      {"polytope.psi", {"polytope-cert", "/halfspaces/0/psi/0"}},
      {"hilbert.basis", {"hilbert", "/basis/0/0"}},
      {"width.threshold", {"width", "/threshold"}},
      {"width.witness", {"width", "/witness/0"}},
      {"zigzag.chain", {"zigzag", "/chain/1/0"}},
      {"adjoint.lambda", {"adjoint-trace", "/trace/lambda"}},
      {"adjoint.round_up", {"adjoint-trace", "/trace/round_up/E"}},
      {"adjoint.b_next", {"adjoint-trace", "/trace/b_next/F"}},
      {"canonical.deficit", {"example-canonical", "/deficit"}},
      {"cutkosky.verdict", {"example-cutkosky", "/verdict"}},
  };
  return t;
}

void perturb(Json& j) {
  if (j.is_string()) {
    try {
      j = to_string(parse_rat(j.get<std::string>()) + 1);
    } catch (const UsageError&) {
      j = j.get<std::string>() + "!";
    }
  } else if (j.is_number_integer()) {
    j = j.get<long long>() + 1;
  } else if (j.is_boolean()) {
    j = !j.get<bool>();
  } else if (j.is_null()) {
    j = 0;
  } else if (!j.empty()) {
    perturb(j.is_array() ? j.front() : j.begin().value());
  }
}

std::vector<std::pair<std::string, Json>> sample_documents() {
  std::vector<std::pair<std::string, Json>> out;
  auto blp2 = models::blp2();
  {
    auto d = lit(blp2, "H + 2*E");
    out.emplace_back("zariski", docs::zariski_doc(d, zariski::decompose(d)));
    out.emplace_back("sigma", docs::sigma_doc(d, zariski::default_ample(blp2), {}));
  }
  {
    dioph::ApproxRequest req{QVec{make_rat(1, 2), make_rat(1, 3)}, 6, make_rat(1, 2), dioph::Norm::Euclidean};
    out.emplace_back("dioph", docs::dioph_doc(req, dioph::approximate(req)));
  }
  {
    auto p = cones::RationalPolytope::from_vertices(2, {QVec::from_ints({0, 0}), QVec::from_ints({3, 0}), QVec::from_ints({0, 3})});
    out.emplace_back("polytope-cert", docs::polytope_cert_doc(p, dioph::polytope_certificate(p)));
  }
  {
    auto cone = cones::convert(cones::RationalCone::from_generators(2, {QVec::from_ints({1, 0}), QVec::from_ints({1, 3})}));
    out.emplace_back("hilbert", docs::hilbert_doc(cone, cones::hilbert_basis(cone)));
  }
  {
    auto s = reference_split();
    auto w = fingenlab::width_threshold(s);
    out.emplace_back("width", docs::width_doc(s, w));
    out.emplace_back("zigzag", docs::zigzag_doc(s, w.threshold, fingenlab::zigzag_descend(s, w.threshold, QVec::from_ints({9, 7}))));
  }
  {
    auto a = lit(blp2, "7/2*H - E");
    auto b = lit(blp2, "1/2*E");
    out.emplace_back("adjoint-trace", docs::adjoint_doc(a, b, fingenlab::adjoint_trace(a, b)));
  }
  out.emplace_back("example-canonical", docs::canonical_doc(fingenlab::canonical_example(3)));
  out.emplace_back("example-cutkosky", docs::cutkosky_doc(fingenlab::elliptic_support({2, 1, 0})));
  return out;
}

std::string round_trip_suite(const Options& o) {
  const Target* target = nullptr;
  if (o.corrupt) target = &targets().at(*o.corrupt);
  for (auto& [kind, doc] : sample_documents()) {
    Json j = Json::parse(doc.dump());
    if (target && target->doc == kind) perturb(j.at(Json::json_pointer(target->pointer)));
    auto bad = docs::verify_document(j);
    if (!bad.empty()) return kind + " document failed re-verification: " + bad.front();
  }
  return {};
}

}  // namespace

std::vector<std::string> corruption_targets() {
  std::vector<std::string> out;
  for (const auto& [name, t] : targets()) out.push_back(name);
  return out;
}

std::vector<SuiteResult> run(const Options& opts) {
  if (opts.corrupt && !targets().count(*opts.corrupt))
    throw UsageError("unknown corruption target '" + *opts.corrupt + "'");
  const std::vector<std::pair<std::string, Suite>> suites = {
      {"zariski-oracle", zariski_oracle}, {"zariski-golden", zariski_golden}, {"sigma", sigma_suite},
      {"dioph", dioph_suite},             {"hilbert", hilbert_suite},         {"width-zigzag", width_suite},
      {"adjoint-trace", adjoint_suite},   {"example-canonical", canonical_suite},
      {"example-cutkosky", cutkosky_suite}, {"serial-parallel", parallel_suite},
      {"round-trip", round_trip_suite}};
  std::vector<SuiteResult> out;
  for (const auto& [name, suite] : suites) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult r{name, false, {}, 0};
    try {
      r.detail = suite(opts);
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace zdlab::selftest
