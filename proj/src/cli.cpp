#include "zdlab/cli.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "zdlab/documents.hpp"
#include "zdlab/errors.hpp"
#include "zdlab/models.hpp"
#include "zdlab/selftest.hpp"

namespace zdlab::cli {

namespace {

using docs::Json;
using surface::Divisor;

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

/// "1/2, 1/3"
QVec parse_vec(const std::string& s) {
  std::vector<Rat> xs;
  for (const auto& p : split(s, ',')) xs.push_back(parse_rat(p));
  if (xs.empty()) throw UsageError("empty vector '" + s + "'");
  return QVec(std::move(xs));
}

/// "0,0; 3,0; 0,3"
std::vector<QVec> parse_points(const std::string& s) {
  std::vector<QVec> out;
  for (const auto& p : split(s, ';'))
    if (!p.empty()) out.push_back(parse_vec(p));
  if (out.empty()) throw UsageError("no points in '" + s + "'");
  for (const auto& v : out)
    if (v.size() != out.front().size()) throw DimensionError("points of different dimensions in '" + s + "'");
  return out;
}

std::string list(const std::vector<Rat>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + to_string(xs[i]);
  return s + "]";
}


struct Context {
  std::ostream& out;
  std::ostream& err;
  bool structured = false;
  bool verify = true;
};

// Re-verifies the document (unless disabled), then prints it.
int emit(Context& c, const Json& doc, const std::function<void(std::ostream&, bool)>& human) {
  bool checked = false;
  if (c.verify) {
    auto bad = docs::verify_document(Json::parse(doc.dump()));
    if (!bad.empty()) {
      c.err << "certificate re-check failed:\n";
      for (const auto& b : bad) c.err << "  " << b << "\n";
      return kInvariant;
    }
    checked = true;
  }
  if (c.structured) c.out << doc.dump(2) << "\n";
  else human(c.out, checked);
  return kOk;
}

struct PolytopeArgs {
  std::string vertices, file;
  cones::RationalPolytope load() const {
    if (!vertices.empty() && !file.empty()) throw UsageError("give either --vertices or --file, not both");
    if (!file.empty()) {
      Json j = io::read_json_file(file);
      return io::polytope_from(j.contains("polytope") ? j.at("polytope") : j);
    }
    if (vertices.empty()) throw UsageError("a polytope is required (--vertices or --file)");
    auto pts = parse_points(vertices);
    const std::size_t dim = pts.front().size();
    return cones::RationalPolytope::from_vertices(dim, std::move(pts));
  }
};

struct SplitArgs {
  std::string d = "1,1", b1 = "1/2", b2 = "1/2";
  fingenlab::ConeSplit make() const { return fingenlab::ConeSplit(parse_vec(d), parse_rat(b1), parse_rat(b2)); }
};

void add_split(CLI::App* cmd, SplitArgs& s) {
  cmd->add_option("--d", s.d, "D in (S1,S2) coordinates")->capture_default_str();
  cmd->add_option("--b1", s.b1, "boundary fraction b1 in [0,1)")->capture_default_str();
  cmd->add_option("--b2", s.b2, "boundary fraction b2 in [0,1)")->capture_default_str();
}

void print_split(std::ostream& o, const fingenlab::ConeSplit& s) {
  o << "D = " << to_string(s.d()) << ", b1 = " << to_string(s.b(1)) << ", b2 = " << to_string(s.b(2)) << "\n";
  const auto rays = cones::extreme_rays(s.cone());
  o << "C = cone{";
  for (std::size_t i = 0; i < rays.size(); ++i) o << (i ? ", " : "") << to_string(rays[i]);
  o << "}\n";
}

void print_cert(std::ostream& o, const dioph::PolytopeCertificate& cert) {
  o << "eps = " << to_string(cert.eps) << ", k = " << to_string(cert.k) << "\n";
  for (const auto& h : cert.halfspaces) o << "  " << to_string(h.psi) << " . w >= " << to_string(h.c) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Zariski decompositions, Diophantine certificates and finite-generation experiments", "zdlab"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "human";
  bool no_verify = false;
  app.add_option("--format", format, "human or structured")->check(CLI::IsMember({"human", "structured"}))->capture_default_str();
  app.add_flag("--no-verify", no_verify, "skip re-checking the structured output");

  std::string model_name, divisor_text;
  auto add_model = [&](CLI::App* cmd) {
    cmd->add_option("--model", model_name, "bundled model name or model file")->required();
  };

  auto* zar = app.add_subcommand("zariski", "Zariski decomposition with certificate");
  bool use_oracle = false;
  add_model(zar);
  zar->add_option("--divisor", divisor_text, "divisor, e.g. \"1*H + 2*E\"")->required();
  zar->add_flag("--oracle", use_oracle, "use the exhaustive subset search");

  auto* sig = app.add_subcommand("sigma", "sigma', sigma, N_sigma and P_sigma");
  std::vector<std::string> gammas;
  std::string ample_text;
  add_model(sig);
  sig->add_option("--divisor", divisor_text)->required();
  sig->add_option("--gamma", gammas, "prime (generator or class name); repeatable; default all generators");
  sig->add_option("--ample", ample_text, "ample class A for the limit (default: sum of nef generators)");

  auto* dio = app.add_subcommand("dioph", "approximate x by nearby points with controlled denominators");
  std::string x_text, eps_text, norm = "euclidean";
  long k_val = 1;
  dio->add_option("--x", x_text, "point, e.g. \"1/2,1/3\"")->required();
  dio->add_option("--k", k_val, "positive integer k")->capture_default_str();
  dio->add_option("--eps", eps_text, "positive rational eps")->required();
  dio->add_option("--norm", norm)->check(CLI::IsMember({"euclidean", "max"}))->capture_default_str();

  PolytopeArgs poly;
  auto* pc = app.add_subcommand("polytope-cert", "certificate (eps, k, integral halfspaces) for a rational polytope");
  pc->add_option("--vertices", poly.vertices, "vertices, e.g. \"0,0; 3,0; 0,3\"");
  pc->add_option("--file", poly.file, "polytope JSON {dim, vertices|halfspaces}");

  auto* pv = app.add_subcommand("polytope-verify", "check the integrality-gap criterion on one instance");
  std::string cert_file, v_text, w_text;
  long l_val = 1;
  pv->add_option("--vertices", poly.vertices);
  pv->add_option("--file", poly.file);
  pv->add_option("--cert", cert_file, "polytope-cert document (includes the polytope)");
  pv->add_option("--v", v_text)->required();
  pv->add_option("--w", w_text)->required();
  pv->add_option("--l", l_val)->required();

  auto* hil = app.add_subcommand("hilbert", "Hilbert basis of a pointed rational cone (dim <= 4)");
  std::string gens_text, halfs_text;
  bool serial = false;
  hil->add_option("--generators", gens_text, "generators, e.g. \"1,0; 1,3\"");
  hil->add_option("--halfspaces", halfs_text, "inward normals psi with psi . x >= 0");
  hil->add_flag("--serial", serial, "use the serial reference kernel");

  SplitArgs split_args;
  long scan = 100;
  auto* wid = app.add_subcommand("width", "width threshold M of a cone split");
  add_split(wid, split_args);
  wid->add_option("--scan", scan, "minimum exhaustive scan bound on x+y")->capture_default_str();
  wid->add_flag("--serial", serial);

  auto* zig = app.add_subcommand("zigzag", "zig-zag descent to the region x+y <= M");
  std::string start_text;
  std::optional<long> m_opt;
  add_split(zig, split_args);
  zig->add_option("--start", start_text, "integral point of the cone, e.g. \"30,20\"")->required();
  zig->add_option("--M", m_opt, "threshold (default: width threshold)");

  auto* adj = app.add_subcommand("adjoint-trace", "one step of the adjoint construction with its identities");
  std::string a_text, b_text;
  add_model(adj);
  adj->add_option("--a", a_text, "ample divisor A")->required();
  adj->add_option("--b", b_text, "boundary B with floor(B) = 0")->required();

  auto* ex = app.add_subcommand("example", "the two counterexamples");
  ex->require_subcommand(1);
  auto* can = ex->add_subcommand("canonical", "restriction deficit of the canonical-ring example");
  long m_val = 1;
  can->add_option("--m", m_val)->capture_default_str();
  auto* cut = ex->add_subcommand("cutkosky", "graded support on an elliptic curve");
  long ek = 2, enumr = 1, edeg = 0, ebound = 40;
  cut->add_option("--k", ek)->capture_default_str();
  cut->add_option("--num", enumr, "d_times_k: B2 = (num/k) p")->capture_default_str();
  cut->add_option("--ample-degree", edeg, "degree of A (0: non-torsion degree 0)")->capture_default_str();
  cut->add_option("--bound", ebound, "sample bound on m1+m2")->capture_default_str();

  auto* st = app.add_subcommand("selftest", "run the property suite");
  selftest::Options st_opts;
  std::string corrupt;
  bool list_targets = false;
  st->add_flag("--quick", st_opts.quick, "smaller instance counts");
  st->add_option("--corrupt", corrupt, "perturb one certificate field (see --list-targets)");
  st->add_flag("--list-targets", list_targets);
  st->add_option("--seed", st_opts.seed)->capture_default_str();
  st->add_flag("--serial", serial);

  auto* ver = app.add_subcommand("verify", "re-check a structured document (or an array of them)");
  std::string doc_file;
  ver->add_option("file", doc_file)->required();

  auto* mod = app.add_subcommand("model", "print a model in file format");
  add_model(mod);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  Context ctx{out, err, format == "structured", !no_verify};
  const Execution exec = serial ? Execution::Serial : Execution::Parallel;

  try {
    if (*zar) {
      auto model = io::load_model(model_name);
      auto d = surface::parse_divisor(model, divisor_text);
      auto r = use_oracle ? zariski::oracle(d) : zariski::decompose(d);
      return emit(ctx, docs::zariski_doc(d, r), [&](std::ostream& o, bool checked) {
        o << "D = " << surface::format_divisor(d) << "\n";
        o << "P = " << surface::format_divisor(r.positive) << "\n";
        o << "N = " << surface::format_divisor(r.negative) << "\n";
        o << "support:";
        if (r.support.empty()) o << " none";
        for (const auto& s : r.support) o << " " << s.name << " (" << to_string(s.multiplicity) << ")";
        o << "\nnef pairings: " << list(r.certificate.nef_pairings) << "\n";
        o << "orthogonality: " << list(r.certificate.orthogonality) << "\n";
        o << "Gram minors: " << list(r.certificate.gram_minors) << "\n";
        o << (checked ? "certificate OK" : "certificate not re-checked") << "\n";
      });
    }
    if (*sig) {
      auto model = io::load_model(model_name);
      auto d = surface::parse_divisor(model, divisor_text);
      auto a = ample_text.empty() ? zariski::default_ample(model) : surface::parse_divisor(model, ample_text);
      Json doc = docs::sigma_doc(d, a, gammas);
      int rc = emit(ctx, doc, [&](std::ostream& o, bool) {
        o << "D = " << surface::format_divisor(d) << ", A = " << surface::format_divisor(a) << "\n";
        for (const auto& v : doc.at("values")) {
          auto show = [](const Json& j) { return j.is_null() ? std::string("undefined") : j.get<std::string>(); };
          o << "sigma'_" << v.at("gamma").get<std::string>() << " = " << show(v.at("sigma_prime")) << ", sigma_"
            << v.at("gamma").get<std::string>() << " = " << show(v.at("sigma")) << "\n";
        }
        if (!doc.at("pseudo_effective").get<bool>()) o << "not pseudo-effective\n";
        if (doc.contains("negative")) {
          o << "N_sigma = " << surface::format_divisor(io::divisor_from(model, doc.at("negative"))) << "\n";
          o << "P_sigma = " << surface::format_divisor(io::divisor_from(model, doc.at("positive"))) << "\n";
        }
      });
      if (rc != kOk) return rc;
      return doc.at("pseudo_effective").get<bool>() ? kOk : kMath;
    }
    if (*dio) {
      dioph::ApproxRequest req{parse_vec(x_text), k_val, parse_rat(eps_text),
                               norm == "max" ? dioph::Norm::Max : dioph::Norm::Euclidean};
      auto res = dioph::approximate(req);
      return emit(ctx, docs::dioph_doc(req, res), [&](std::ostream& o, bool checked) {
        o << "x = " << to_string(req.x) << ", k = " << to_string(req.k) << ", eps = " << to_string(req.eps) << "\n";
        for (const auto& p : res.points)
          o << "  x_i = " << to_string(p.point) << ", k_i = " << to_string(p.denominator) << ", weight = " << to_string(p.weight) << "\n";
        o << (checked ? "all clauses verified" : "not re-checked") << "\n";
      });
    }
    if (*pc) {
      auto p = poly.load();
      auto cert = dioph::polytope_certificate(p);
      return emit(ctx, docs::polytope_cert_doc(p, cert), [&](std::ostream& o, bool) { print_cert(o, cert); });
    }
    if (*pv) {
      cones::RationalPolytope p;
      dioph::PolytopeCertificate cert;
      if (!cert_file.empty()) {
        Json j = io::read_json_file(cert_file);
        p = poly.vertices.empty() && poly.file.empty() ? io::polytope_from(j.at("polytope")) : poly.load();
        cert = docs::parse_certificate(j);
      } else {
        p = poly.load();
        cert = dioph::polytope_certificate(p);
      }
      p = cones::convert(p);
      const QVec v = parse_vec(v_text), w = parse_vec(w_text);
      const auto verdict = dioph::criterion_verify(p, cert, v, w, l_val);
      int rc = emit(ctx, docs::polytope_verify_doc(p, cert, v, w, l_val, verdict), [&](std::ostream& o, bool) {
        print_cert(o, cert);
        o << "v = " << to_string(v) << ", w = " << to_string(w) << ", l = " << l_val << "\n";
        o << "verdict: " << dioph::to_string(verdict) << "\n";
      });
      if (rc != kOk) return rc;
      return verdict == dioph::Verdict::Violation ? kInvariant : kOk;
    }
    if (*hil) {
      if (gens_text.empty() == halfs_text.empty()) throw UsageError("give exactly one of --generators and --halfspaces");
      auto pts = parse_points(gens_text.empty() ? halfs_text : gens_text);
      const std::size_t dim = pts.front().size();
      auto cone = cones::convert(gens_text.empty() ? cones::RationalCone::from_halfspaces(dim, std::move(pts))
                                                   : cones::RationalCone::from_generators(dim, std::move(pts)));
      auto hb = cones::hilbert_basis(cone, exec);
      return emit(ctx, docs::hilbert_doc(cone, hb), [&](std::ostream& o, bool) {
        o << hb.elements.size() << " Hilbert basis elements:\n";
        for (const auto& e : hb.elements) o << "  " << to_string(e) << "\n";
      });
    }
    if (*wid) {
      auto s = split_args.make();
      auto r = fingenlab::width_threshold(s, exec, scan);
      return emit(ctx, docs::width_doc(s, r), [&](std::ostream& o, bool) {
        print_split(o, s);
        o << "M_1 = " << r.per_subcone[0] << ", M_2 = " << r.per_subcone[1] << "\n";
        o << "M = " << r.threshold << "\n";
        if (r.witness)
          o << "minimality witness: " << to_string(*r.witness) << " in C_" << r.witness_subcone << " (x+y = "
            << to_string((*r.witness)[0] + (*r.witness)[1]) << ")\n";
        o << "exhaustive scan to x+y = " << r.scanned_to << "\n";
      });
    }
    if (*zig) {
      auto s = split_args.make();
      const long m = m_opt ? *m_opt : fingenlab::width_threshold(s, exec).threshold;
      auto chain = fingenlab::zigzag_descend(s, m, parse_vec(start_text));
      return emit(ctx, docs::zigzag_doc(s, m, chain), [&](std::ostream& o, bool) {
        o << "M = " << m << "\n";
        for (std::size_t t = 0; t < chain.size(); ++t) o << (t ? " -> " : "") << to_string(chain[t]);
        o << "\nsteps: " << chain.size() - 1 << "\n";
      });
    }
    if (*adj) {
      auto model = io::load_model(model_name);
      auto a = surface::parse_divisor(model, a_text);
      auto b = surface::parse_divisor(model, b_text);
      auto t = fingenlab::adjoint_trace(a, b);
      return emit(ctx, docs::adjoint_doc(a, b, t), [&](std::ostream& o, bool checked) {
        o << "prime coordinates: " << t.primes->class_names().size() << " curves\n";
        o << "K + A + B = " << surface::format_divisor(t.adjoint) << "\n";
        o << "P = " << surface::format_divisor(t.positive) << "\n";
        o << "N = " << surface::format_divisor(t.negative) << "\n";
        o << "lambda = " << (t.lambda ? to_string(*t.lambda) : std::string("inf")) << "\n";
        o << "Sigma = " << surface::format_divisor(t.boundary) << "\n";
        o << "R = " << surface::format_divisor(t.round_up) << "\n";
        o << "B' = " << surface::format_divisor(t.b_next) << "\n";
        o << "0 <= R <= ceil(N): ok\nB' coefficients in (0,1]: ok\nfloor(B') = Sigma: ok\n";
        if (!checked) o << "document not re-checked\n";
      });
    }
    if (*can) {
      auto e = fingenlab::canonical_example(m_val);
      return emit(ctx, docs::canonical_doc(e), [&](std::ostream& o, bool) {
        o << "m = " << e.m << "\n";
        o << "h0 triple: (" << to_string(e.h0_x) << ", " << to_string(e.h0_x_minus_s) << ", " << to_string(e.h0_s) << ")\n";
        o << "h0_X = " << to_string(e.h0_x) << "\nh0_X_minus_S = " << to_string(e.h0_x_minus_s)
          << "\nh0_S = " << to_string(e.h0_s) << "\n";
        o << "surjective: " << (e.surjective ? "true" : "false") << "\n";
        o << "deficit: " << to_string(e.deficit) << "\n";
      });
    }
    if (*cut) {
      auto an = fingenlab::elliptic_support({ek, enumr, edeg}, ebound);
      return emit(ctx, docs::cutkosky_doc(an), [&](std::ostream& o, bool) {
        o << "k = " << ek << ", d_times_k = " << enumr << ", deg A = " << edeg << "\n";
        o << "support: " << an.description << "\n";
        for (const auto& s : an.samples)
          o << "  bound " << s.bound << ": extreme rays " << to_string(s.lower_ray) << ", " << to_string(s.upper_ray) << "\n";
        o << "span closed: " << (an.span_closed ? "yes" : "no");
        for (const auto& r : an.unattained_limit_rays) o << " (limit ray " << to_string(r) << " approached, not attained)";
        o << "\n" << an.verdict << "\n";
      });
    }
    if (*st) {
      if (list_targets) {
        for (const auto& t : selftest::corruption_targets()) out << t << "\n";
        return kOk;
      }
      if (!corrupt.empty()) st_opts.corrupt = corrupt;
      st_opts.exec = exec;
      auto results = selftest::run(st_opts);
      bool all = true;
      Json arr = Json::array();
      for (const auto& r : results) {
        all = all && r.passed;
        arr.push_back({{"suite", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        if (!ctx.structured) {
          out << (r.passed ? "PASS " : "FAIL ") << r.name;
          if (!r.passed) out << ": " << r.detail;
          out << "\n";
        }
      }
      if (ctx.structured) out << arr.dump(2) << "\n";
      return all ? kOk : kInvariant;
    }
    if (*ver) {
      Json j = io::read_json_file(doc_file);
      std::vector<Json> items = j.is_array() ? j.get<std::vector<Json>>() : std::vector<Json>{j};
      bool all = true;
      for (const auto& d : items) {
        auto bad = docs::verify_document(d);
        const std::string kind = d.value("kind", std::string("?"));
        if (bad.empty()) out << kind << ": OK\n";
        for (const auto& b : bad) out << kind << ": FAILED " << b << "\n";
        all = all && bad.empty();
      }
      return all ? kOk : kInvariant;
    }
    if (*mod) {
      out << io::model_json(*io::load_model(model_name)).dump(2) << "\n";
      return kOk;
    }
  } catch (const MathError& e) {
    err << "zdlab: " << e.what() << "\n";
    return kMath;
  } catch (const UsageError& e) {
    err << "zdlab: " << e.what() << "\n";
    return kUsage;
  } catch (const InvariantViolation& e) {
    err << "zdlab: internal invariant violated: " << e.what() << "\n";
    return kInvariant;
  }
  return kUsage;
}

}  // namespace zdlab::cli
