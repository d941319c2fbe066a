#include "zdlab/documents.hpp"

#include "zdlab/errors.hpp"

namespace zdlab::docs {

using io::divisor_from;
using io::divisor_json;
using io::int_from;
using io::int_json;
using io::int_vec_json;
using io::rat_from;
using io::rat_json;
using io::vec_from;
using io::vec_json;

namespace {

Json rat_list(const std::vector<Rat>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(rat_json(x));
  return out;
}

std::vector<Rat> rats_from(const Json& j) {
  std::vector<Rat> out;
  for (const auto& x : j) out.push_back(rat_from(x));
  return out;
}

Json opt_rat(const std::optional<Rat>& r) { return r ? rat_json(*r) : Json(nullptr); }

// Fields of `fresh` missing from or different in `doc`.
void compare(const Json& doc, const Json& fresh, std::vector<std::string>& bad) {
  for (const auto& [key, value] : fresh.items())
    if (!doc.contains(key) || doc.at(key) != value) bad.push_back("field '" + key + "' differs from recomputation");
}

}  // namespace

// --- zariski ---------------------------------------------------------------

Json zariski_doc(const Divisor& d, const zariski::ZariskiResult& r) {
  Json sup = Json::array();
  for (const auto& s : r.support) sup.push_back({{"curve", s.name}, {"multiplicity", rat_json(s.multiplicity)}});
  return Json{{"kind", "zariski"},
              {"model", io::model_json(d.model())},
              {"divisor", divisor_json(d)},
              {"positive", divisor_json(r.positive)},
              {"negative", divisor_json(r.negative)},
              {"support", sup},
              {"certificate",
               {{"nef_pairings", rat_list(r.certificate.nef_pairings)},
                {"orthogonality", rat_list(r.certificate.orthogonality)},
                {"gram_minors", rat_list(r.certificate.gram_minors)}}}};
}

ZariskiDoc parse_zariski(const Json& doc) {
  auto model = io::model_from_json(doc.at("model"));
  ZariskiDoc out{divisor_from(model, doc.at("divisor")),
                 {divisor_from(model, doc.at("positive")), divisor_from(model, doc.at("negative")), {}, {}}};
  for (const auto& s : doc.at("support")) {
    const auto name = s.at("curve").get<std::string>();
    auto j = model->generator_index(name);
    if (!j) throw UsageError("unknown support curve '" + name + "'");
    out.result.support.push_back({*j, name, rat_from(s.at("multiplicity"))});
  }
  const auto& c = doc.at("certificate");
  out.result.certificate.nef_pairings = rats_from(c.at("nef_pairings"));
  out.result.certificate.orthogonality = rats_from(c.at("orthogonality"));
  out.result.certificate.gram_minors = rats_from(c.at("gram_minors"));
  return out;
}

// --- sigma -----------------------------------------------------------------

Json sigma_doc(const Divisor& d, const Divisor& ample, const std::vector<std::string>& gammas) {
  std::vector<std::string> names = gammas.empty() ? d.model().generator_names() : gammas;
  Json values = Json::array();
  bool all_defined = true;
  Divisor negative = Divisor::zero(d.model_ptr());
  for (const auto& g : names) {
    auto sp = zariski::sigma_prime(d, g);
    auto s = zariski::sigma(d, g, ample);
    values.push_back({{"gamma", g}, {"sigma_prime", opt_rat(sp.value)}, {"sigma", opt_rat(s.value)}});
    if (!s.value) all_defined = false;
    else if (auto j = d.model().generator_index(g)) negative += *s.value * Divisor::generator(d.model_ptr(), *j);
  }
  Json out{{"kind", "sigma"},
           {"model", io::model_json(d.model())},
           {"divisor", divisor_json(d)},
           {"ample", divisor_json(ample)},
           {"gammas", gammas},
           {"pseudo_effective", all_defined},
           {"values", values}};
  if (gammas.empty() && all_defined) {
    out["negative"] = divisor_json(negative);
    out["positive"] = divisor_json(d - negative);
  }
  return out;
}

// --- dioph -----------------------------------------------------------------

Json dioph_doc(const dioph::ApproxRequest& req, const dioph::ApproxResult& res) {
  Json pts = Json::array();
  for (const auto& p : res.points)
    pts.push_back({{"point", vec_json(p.point)}, {"k_i", int_json(p.denominator)}, {"weight", rat_json(p.weight)}});
  return Json{{"kind", "dioph"},
              {"x", vec_json(req.x)},
              {"k", int_json(req.k)},
              {"eps", rat_json(req.eps)},
              {"norm", req.norm == dioph::Norm::Max ? "max" : "euclidean"},
              {"points", pts}};
}

dioph::ApproxRequest parse_dioph_request(const Json& doc) {
  dioph::ApproxRequest r;
  r.x = vec_from(doc.at("x"));
  r.k = int_from(doc.at("k"));
  r.eps = rat_from(doc.at("eps"));
  const auto norm = doc.value("norm", std::string("euclidean"));
  if (norm == "max") r.norm = dioph::Norm::Max;
  else if (norm == "euclidean") r.norm = dioph::Norm::Euclidean;
  else throw UsageError("unknown norm '" + norm + "'");
  return r;
}

dioph::ApproxResult parse_dioph_result(const Json& doc) {
  dioph::ApproxResult r;
  for (const auto& p : doc.at("points"))
    r.points.push_back({vec_from(p.at("point")), int_from(p.at("k_i")), rat_from(p.at("weight"))});
  return r;
}

// --- polytope certificates -------------------------------------------------

namespace {

Json certificate_json(const dioph::PolytopeCertificate& cert) {
  Json hs = Json::array();
  for (const auto& h : cert.halfspaces) hs.push_back({{"psi", int_vec_json(h.psi)}, {"c", int_json(h.c)}});
  return Json{{"eps", rat_json(cert.eps)}, {"k", int_json(cert.k)}, {"halfspaces", hs}};
}

}  // namespace

dioph::PolytopeCertificate parse_certificate(const Json& doc) {
  dioph::PolytopeCertificate c;
  c.eps = rat_from(doc.at("eps"));
  c.k = int_from(doc.at("k"));
  for (const auto& h : doc.at("halfspaces")) c.halfspaces.push_back({vec_from(h.at("psi")), int_from(h.at("c"))});
  return c;
}

Json polytope_cert_doc(const cones::RationalPolytope& p, const dioph::PolytopeCertificate& cert) {
  Json out{{"kind", "polytope-cert"}, {"polytope", io::polytope_json(p)}};
  out.update(certificate_json(cert));
  return out;
}

Json polytope_verify_doc(const cones::RationalPolytope& p, const dioph::PolytopeCertificate& cert,
                         const QVec& v, const QVec& w, const BigInt& l, dioph::Verdict verdict) {
  return Json{{"kind", "polytope-verify"},
              {"polytope", io::polytope_json(p)},
              {"certificate", certificate_json(cert)},
              {"v", vec_json(v)},
              {"w", vec_json(w)},
              {"l", int_json(l)},
              {"verdict", dioph::to_string(verdict)}};
}

// --- cones -----------------------------------------------------------------

Json hilbert_doc(const cones::RationalCone& cone, const cones::HilbertBasis& basis) {
  Json els = Json::array();
  for (const auto& e : basis.elements) els.push_back(int_vec_json(e));
  return Json{{"kind", "hilbert"}, {"cone", io::cone_json(cone)}, {"size", basis.elements.size()}, {"basis", els}};
}

// --- fingenlab -------------------------------------------------------------

Json split_json(const fingenlab::ConeSplit& s) {
  return Json{{"d", vec_json(s.d())}, {"b1", rat_json(s.b(1))}, {"b2", rat_json(s.b(2))}};
}

fingenlab::ConeSplit split_from(const Json& j) {
  return fingenlab::ConeSplit(vec_from(j.at("d")), rat_from(j.at("b1")), rat_from(j.at("b2")));
}

Json width_doc(const fingenlab::ConeSplit& s, const fingenlab::WidthReport& r) {
  return Json{{"kind", "width"},
              {"split", split_json(s)},
              {"threshold", r.threshold},
              {"per_subcone", {r.per_subcone[0], r.per_subcone[1]}},
              {"witness", r.witness ? int_vec_json(*r.witness) : Json(nullptr)},
              {"witness_subcone", r.witness_subcone},
              {"scanned_to", r.scanned_to}};
}

Json zigzag_doc(const fingenlab::ConeSplit& s, long m, const std::vector<QVec>& chain) {
  Json pts = Json::array();
  Json picks = Json::array();
  for (std::size_t t = 0; t < chain.size(); ++t) {
    pts.push_back(int_vec_json(chain[t]));
    if (t + 1 < chain.size()) picks.push_back(chain[t][0] != chain[t + 1][0] ? 1 : 2);
  }
  return Json{{"kind", "zigzag"},
              {"split", split_json(s)},
              {"M", m},
              {"start", int_vec_json(chain.front())},
              {"steps", chain.size() - 1},
              {"subcones", picks},
              {"chain", pts}};
}

namespace {

Json trace_json(const fingenlab::AdjointTrace& t) {
  return Json{{"a", divisor_json(t.a)},
              {"b", divisor_json(t.b)},
              {"adjoint", divisor_json(t.adjoint)},
              {"positive", divisor_json(t.positive)},
              {"negative", divisor_json(t.negative)},
              {"lambda", t.lambda ? rat_json(*t.lambda) : Json("inf")},
              {"boundary", divisor_json(t.boundary)},
              {"round_up", divisor_json(t.round_up)},
              {"b_next", divisor_json(t.b_next)}};
}

}  // namespace

Json adjoint_doc(const Divisor& a, const Divisor& b, const fingenlab::AdjointTrace& t) {
  return Json{{"kind", "adjoint-trace"},
              {"model", io::model_json(a.model())},
              {"a", divisor_json(a)},
              {"b", divisor_json(b)},
              {"trace", trace_json(t)}};
}

Json canonical_doc(const fingenlab::CanonicalExample& e) {
  return Json{{"kind", "example-canonical"},
              {"m", e.m},
              {"h0_X", int_json(e.h0_x)},
              {"h0_X_minus_S", int_json(e.h0_x_minus_s)},
              {"h0_S", int_json(e.h0_s)},
              {"surjective", e.surjective},
              {"deficit", int_json(e.deficit)}};
}

Json cutkosky_doc(const fingenlab::EllipticAnalysis& a) {
  Json sup = Json::array();
  for (const auto& [m1, m2] : a.support) sup.push_back({m1, m2});
  Json samples = Json::array();
  for (const auto& s : a.samples)
    samples.push_back({{"bound", s.bound}, {"lower_ray", int_vec_json(s.lower_ray)}, {"upper_ray", int_vec_json(s.upper_ray)}});
  Json rays = Json::array();
  for (const auto& r : a.unattained_limit_rays) rays.push_back(int_vec_json(r));
  return Json{{"kind", "example-cutkosky"},
              {"k", a.rule.k},
              {"d_times_k", a.rule.d_num},
              {"ample_degree", a.rule.ample_degree},
              {"bound", a.bound},
              {"support_description", a.description},
              {"support", sup},
              {"samples", samples},
              {"span_closed", a.span_closed},
              {"unattained_limit_rays", rays},
              {"verdict", a.verdict}};
}

// --- verification ----------------------------------------------------------

namespace {

std::vector<std::string> verify_zariski(const Json& doc) {
  auto z = parse_zariski(doc);
  return zariski::verify(z.divisor, z.result).failures;
}

std::vector<std::string> verify_sigma(const Json& doc) {
  auto model = io::model_from_json(doc.at("model"));
  auto d = divisor_from(model, doc.at("divisor"));
  auto a = divisor_from(model, doc.at("ample"));
  std::vector<std::string> bad;
  compare(doc, sigma_doc(d, a, doc.at("gammas").get<std::vector<std::string>>()), bad);
  return bad;
}

std::vector<std::string> verify_dioph(const Json& doc) {
  return dioph::check(parse_dioph_request(doc), parse_dioph_result(doc));
}

std::vector<std::string> verify_polytope_cert(const Json& doc) {
  const auto p = cones::convert(io::polytope_from(doc.at("polytope")));
  const auto cert = parse_certificate(doc);
  std::vector<std::string> bad;
  if (!dioph::certificate_well_formed(cert)) bad.push_back("certificate violates ‖psi_i‖ < 1/eps or k >= 1");
  for (const auto& h : cert.halfspaces)
    for (const auto& v : p.vertices())
      if (dot(h.psi, v) < Rat(h.c)) {
        bad.push_back("halfspace " + to_string(h.psi) + " cuts off vertex " + to_string(v));
        break;
      }
  compare(doc, polytope_cert_doc(io::polytope_from(doc.at("polytope")), dioph::polytope_certificate(p)), bad);
  return bad;
}

std::vector<std::string> verify_polytope_verify(const Json& doc) {
  const auto p = cones::convert(io::polytope_from(doc.at("polytope")));
  const auto cert = parse_certificate(doc.at("certificate"));
  const auto verdict = dioph::criterion_verify(p, cert, vec_from(doc.at("v")), vec_from(doc.at("w")), int_from(doc.at("l")));
  std::vector<std::string> bad;
  if (doc.at("verdict") != dioph::to_string(verdict)) bad.push_back("recorded verdict differs from recomputation");
  return bad;
}

std::vector<std::string> verify_hilbert(const Json& doc) {
  const auto cone = cones::convert(io::cone_from(doc.at("cone")));
  std::vector<std::string> bad;
  for (const auto& e : doc.at("basis")) {
    QVec v = vec_from(e);
    if (!v.is_integral() || !cones::member(cone, v)) bad.push_back("basis element " + to_string(v) + " is not a lattice point of the cone");
  }
  compare(doc, hilbert_doc(io::cone_from(doc.at("cone")), cones::hilbert_basis(cone, Execution::Serial)), bad);
  return bad;
}

std::vector<std::string> verify_width(const Json& doc) {
  const auto s = split_from(doc.at("split"));
  std::vector<std::string> bad;
  const long m = doc.at("threshold").get<long>();
  const int i = doc.at("witness_subcone").get<int>();
  if (!doc.at("witness").is_null()) {
    QVec w = vec_from(doc.at("witness"));
    if (i < 1 || i > 2 || !cones::member(s.subcone(i), w) || cones::member(s.cone(), w - fingenlab::ConeSplit::step(i)) ||
        w[0] + w[1] != m - 1)
      bad.push_back("witness " + to_string(w) + " does not fail the width condition at x+y = M-1");
  }
  compare(doc, width_doc(s, fingenlab::width_threshold(s, Execution::Serial)), bad);
  return bad;
}

std::vector<std::string> verify_zigzag(const Json& doc) {
  const auto s = split_from(doc.at("split"));
  const long m = doc.at("M").get<long>();
  std::vector<QVec> chain;
  for (const auto& p : doc.at("chain")) chain.push_back(vec_from(p));
  std::vector<std::string> bad;
  if (chain.empty()) return {"empty chain"};
  if (!(chain.front() == vec_from(doc.at("start")))) bad.push_back("chain does not begin at the start point");
  if (doc.at("steps").get<std::size_t>() + 1 != chain.size()) bad.push_back("step count does not match the chain");
  const auto& picks = doc.at("subcones");
  if (picks.size() + 1 != chain.size()) bad.push_back("subcone list does not match the chain");
  for (std::size_t t = 0; t < chain.size(); ++t) {
    const QVec& g = chain[t];
    if (!g.is_integral() || !cones::member(s.cone(), g)) bad.push_back("chain point " + to_string(g) + " is not an integral point of C");
    const bool last = t + 1 == chain.size();
    if (last != (g[0] + g[1] <= m)) bad.push_back("chain stops at the wrong place (point " + to_string(g) + ")");
    if (last) break;
    const int i = cones::member(s.subcone(1), g) ? 1 : 2;
    if (!(chain[t + 1] == g - fingenlab::ConeSplit::step(i))) bad.push_back("step from " + to_string(g) + " is not G - S_" + std::to_string(i));
    if (t < picks.size() && picks[t] != i) bad.push_back("recorded subcone at " + to_string(g) + " is wrong");
  }
  return bad;
}

std::vector<std::string> verify_adjoint(const Json& doc) {
  auto model = io::model_from_json(doc.at("model"));
  const auto a = divisor_from(model, doc.at("a"));
  const auto b = divisor_from(model, doc.at("b"));
  const surface::PrimeCoordinates pc(model);
  const auto& primes = pc.primes();
  const auto& tr = doc.at("trace");
  auto part = [&](const char* key) { return divisor_from(primes, tr.at(key)); };
  std::optional<Rat> lambda;
  if (tr.at("lambda") != "inf") lambda = rat_from(tr.at("lambda"));
  fingenlab::AdjointTrace recorded{primes, part("a"), part("b"), part("adjoint"), part("positive"),
                                   part("negative"), lambda, part("boundary"), part("round_up"), part("b_next")};
  std::vector<std::string> bad = fingenlab::check_trace(recorded);
  Json fresh = trace_json(fingenlab::adjoint_trace(a, b));
  for (const auto& [key, value] : fresh.items())
    if (tr.at(key) != value) bad.push_back("trace field '" + key + "' differs from recomputation");
  return bad;
}

std::vector<std::string> verify_canonical(const Json& doc) {
  std::vector<std::string> bad;
  compare(doc, canonical_doc(fingenlab::canonical_example(doc.at("m").get<long>())), bad);
  return bad;
}

std::vector<std::string> verify_cutkosky(const Json& doc) {
  fingenlab::EllipticRule rule{doc.at("k").get<long>(), doc.at("d_times_k").get<long>(), doc.at("ample_degree").get<long>()};
  std::vector<std::string> bad;
  compare(doc, cutkosky_doc(fingenlab::elliptic_support(rule, doc.at("bound").get<long>())), bad);
  return bad;
}

}  // namespace

std::vector<std::string> verify_document(const Json& doc) {
  if (!doc.is_object()) throw UsageError("document must be a JSON object");
  const std::string kind = doc.value("kind", std::string());
  try {
    if (kind == "zariski") return verify_zariski(doc);
    if (kind == "sigma") return verify_sigma(doc);
    if (kind == "dioph") return verify_dioph(doc);
    if (kind == "polytope-cert") return verify_polytope_cert(doc);
    if (kind == "polytope-verify") return verify_polytope_verify(doc);
    if (kind == "hilbert") return verify_hilbert(doc);
    if (kind == "width") return verify_width(doc);
    if (kind == "zigzag") return verify_zigzag(doc);
    if (kind == "adjoint-trace") return verify_adjoint(doc);
    if (kind == "example-canonical") return verify_canonical(doc);
    if (kind == "example-cutkosky") return verify_cutkosky(doc);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed " + kind + " document: " + e.what());
  } catch (const MathError& e) {
    return {std::string("recomputation failed: ") + e.what()};
  } catch (const InvariantViolation& e) {
    return {std::string("recomputation failed: ") + e.what()};
  }
  throw UsageError("unknown document kind '" + kind + "'");
}

}  // namespace zdlab::docs
