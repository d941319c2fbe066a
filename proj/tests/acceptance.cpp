// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "zdlab/batch.hpp"
#include "zdlab/cones.hpp"
#include "zdlab/dioph.hpp"
#include "zdlab/fingenlab.hpp"
#include "zdlab/models.hpp"
#include "zdlab/zariski.hpp"

using namespace zdlab;
using surface::Divisor;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

QVec iv(std::initializer_list<long> xs) { return QVec::from_ints(xs); }

void merge(Outcome& o, const batch::Report& r, const std::string& label) {
  o.require(r.failures == 0, label + ": " + (r.problems.empty() ? std::string("?") : r.problems.front()));
  o.note << label << " " << r.checked << " checked, " << r.failures << " failed; ";
}

void zariski_oracle_equivalence(Outcome& o) {
  const auto t0 = Clock::now();
  const auto values = batch::small_rationals();
  std::size_t total = 0;
  for (const auto& model : {models::blp2(), models::blp2x2()}) {
    auto ds = batch::grid_divisors(model, values);
    total += ds.size();
    merge(o, batch::oracle_equivalence(ds, Execution::Parallel), model->name());
  }
  const double secs = seconds_since(t0);
  o.require(total >= 2000, "fewer than 2000 instances");
  o.require(secs < 60, "runtime over 60 s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f s", secs);
  o.note << buf;
}

void zariski_golden(Outcome& o) {
  struct Case {
    surface::ModelPtr model;
    std::string d, p, n;
  };
  const std::vector<Case> cases = {
      {models::blp2(), "H + 2*E", "H", "2*E"},
      {models::blp2x2(), "H + 2*E1 + 3*E2", "H", "2*E1 + 3*E2"},
      {models::blp2x2(), "2*H - 2*E1 - 2*E2", "0", "2*H - 2*E1 - 2*E2"},
  };
  for (const auto& c : cases) {
    auto d = surface::parse_divisor(c.model, c.d);
    auto r = zariski::decompose(d);
    const bool ok = r.positive == surface::parse_divisor(c.model, c.p) &&
                    r.negative == surface::parse_divisor(c.model, c.n) &&
                    zariski::same_decomposition(r, zariski::oracle(d)) && zariski::verify(d, r).ok();
    o.require(ok, c.d);
    o.note << c.d << " -> (" << surface::format_divisor(r.positive) << ", " << surface::format_divisor(r.negative)
           << "); ";
  }
}

void sigma_consistency(Outcome& o) {
  for (const auto& model : {models::blp2(), models::blp2x2()}) {
    const auto ample = zariski::default_ample(model);
    auto ds = batch::random_pseudoeffective(model, 100, 2024);
    merge(o, batch::sigma_agreement(ds, ample, Execution::Parallel), model->name());
    std::size_t spots = 0;
    for (std::size_t i = 0; i + 1 < 20; i += 2) {
      const auto& a = ds[i];
      const auto& b = ds[i + 1];
      const auto na = zariski::n_sigma(a, ample);
      for (const Rat t : {Rat(2), make_rat(1, 3), make_rat(7, 4)})
        o.require(zariski::n_sigma(t * a, ample) == t * na, "homogeneity");
      // Convexity per prime: sigma_G(a + b) <= sigma_G(a) + sigma_G(b).
      const auto sa = zariski::sigma_decompose(a, ample).values;
      const auto sb = zariski::sigma_decompose(b, ample).values;
      const auto sab = zariski::sigma_decompose(a + b, ample).values;
      const auto mid = zariski::sigma_decompose(make_rat(1, 2) * (a + b), ample).values;
      for (std::size_t g = 0; g < sab.size(); ++g) {
        o.require(*sab[g].value <= *sa[g].value + *sb[g].value, "convexity at " + sab[g].gamma);
        o.require(2 * *mid[g].value <= *sa[g].value + *sb[g].value, "midpoint convexity at " + sab[g].gamma);
      }
      ++spots;
    }
    o.note << spots << " homogeneity/convexity spot checks; ";
  }
}

void diophantine_invariants(Outcome& o) {
  merge(o, batch::dioph_trials(1000, 77, Execution::Parallel), "approximations");
  const std::vector<std::pair<std::string, cones::RationalPolytope>> polys = {
      {"interval", cones::RationalPolytope::from_vertices(1, {iv({0}), iv({1})})},
      {"square", cones::RationalPolytope::from_vertices(2, {iv({0, 0}), iv({1, 0}), iv({0, 1}), iv({1, 1})})},
      {"triangle", cones::RationalPolytope::from_vertices(2, {iv({0, 0}), iv({3, 0}), iv({0, 3})})},
      {"simplex", cones::RationalPolytope::from_vertices(
                      3, {iv({0, 0, 0}), iv({2, 0, 0}), iv({0, 2, 0}), iv({0, 0, 2})})},
  };
  for (const auto& [name, p] : polys) {
    auto full = cones::convert(p);
    auto cert = dioph::polytope_certificate(full);
    o.require(dioph::certificate_well_formed(cert), name + " certificate");
    auto f = batch::fuzz_criterion(full, cert, 100000, 99, Execution::Parallel);
    o.require(f.instances == 100000 && f.violations == 0, name + ": " + f.first_violation.value_or("?"));
    o.note << name << " " << f.violations << " violations / " << f.instances << " (" << f.confirmed
           << " confirmed); ";
  }
}

// Irreducible points among the nonzero cone points of [0, hi]^2, by a direct sieve.
std::vector<QVec> sieve(const cones::RationalCone& c, long hi) {
  std::vector<QVec> pts;
  for (long x = 0; x <= hi; ++x)
    for (long y = 0; y <= hi; ++y)
      if ((x || y) && cones::member(c, iv({x, y}))) pts.push_back(iv({x, y}));
  std::set<QVec> in(pts.begin(), pts.end());
  std::vector<QVec> out;
  for (const auto& p : pts) {
    bool reducible = false;
    for (const auto& q : pts) reducible = reducible || (q != p && in.count(p - q));
    if (!reducible) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void hilbert_bases(Outcome& o) {
  std::size_t decomposed = 0;
  for (long k = 1; k <= 6; ++k) {
    auto cone = cones::convert(cones::RationalCone::from_generators(2, {iv({1, 0}), iv({1, k})}));
    auto hb = cones::hilbert_basis(cone);
    auto ser = cones::hilbert_basis(cone, Execution::Serial);
    o.require(hb.elements.size() == static_cast<std::size_t>(k + 1), "k+1 elements for k=" + std::to_string(k));
    o.require(hb.elements == sieve(cone, k + 1), "brute force for k=" + std::to_string(k));
    o.require(ser.elements == hb.elements, "serial kernel for k=" + std::to_string(k));
    for (long x = 0; x <= 10; ++x)
      for (long y = 0; y <= 10; ++y) {
        const QVec p = iv({x, y});
        if (!cones::member(cone, p)) continue;
        auto mult = cones::decompose(hb, cone, p);
        bool ok = mult.has_value();
        if (ok) {
          QVec sum(2);
          for (std::size_t i = 0; i < mult->size(); ++i) {
            ok = ok && (*mult)[i] >= 0;
            sum += Rat((*mult)[i]) * hb.elements[i];
          }
          ok = ok && sum == p;
        }
        o.require(ok, "decomposition of (" + std::to_string(x) + "," + std::to_string(y) + ")");
        ++decomposed;
      }
  }
  o.note << "k = 1..6 match brute force; " << decomposed << " cone points decomposed";
}

Rat cross(const QVec& a, const QVec& b) { return a[0] * b[1] - a[1] * b[0]; }

void width_zigzag(Outcome& o) {
  fingenlab::ConeSplit s(iv({1, 1}), make_rat(1, 2), make_rat(1, 2));
  auto w = fingenlab::width_threshold(s);
  o.require(w.threshold == 5, "threshold");
  o.require(w.witness && (*w.witness)[0] + (*w.witness)[1] == 4, "witness on x+y = 4");
  if (w.witness) {
    o.require(cones::member(s.subcone(w.witness_subcone), *w.witness) &&
                  !cones::member(s.cone(), *w.witness - fingenlab::ConeSplit::step(w.witness_subcone)),
              "witness leaves the cone");
  }
  // The cone over the rectangle, as the sector between (3/2, 1) and (1, 3/2).
  const QVec low{make_rat(3, 2), Rat(1)}, high{Rat(1), make_rat(3, 2)};
  auto chain = fingenlab::zigzag_descend(s, w.threshold, iv({30, 20}));
  bool inside = true;
  for (const auto& p : chain) inside = inside && cross(low, p) >= 0 && cross(p, high) >= 0;
  o.require(inside, "zig-zag left the cone");
  o.require(chain.size() == 46, "45 steps");
  o.require(chain.back()[0] + chain.back()[1] <= w.threshold, "terminal point above M");
  o.note << "M = " << w.threshold << ", witness " << (w.witness ? to_string(*w.witness) : "none") << ", "
         << chain.size() - 1 << " steps from (30, 20) to " << to_string(chain.back());
}

void adjoint_identities(Outcome& o) {
  std::size_t total = 0;
  for (const auto& model : {models::blp2(), models::blp2x2()}) {
    auto inputs = batch::random_adjoint_inputs(model, 300, 5);
    merge(o, batch::adjoint_trials(inputs, Execution::Parallel), model->name());
    // The three identities again, straight from the recorded trace.
    for (const auto& [a, b] : inputs) {
      auto t = fingenlab::adjoint_trace(a, b);
      for (std::size_t i = 0; i < t.b_next.size(); ++i) {
        const Rat& r = t.round_up[i];
        const Rat& bn = t.b_next[i];
        o.require(r >= 0 && r <= ceil_of(t.negative[i]), "0 <= R <= ceil N");
        o.require(bn == 0 || (bn > 0 && bn <= 1), "B' in (0,1]");
        o.require(floor_of(bn) == t.boundary[i], "floor B' = Sigma");
      }
      ++total;
    }
  }
  o.require(total >= 500, "fewer than 500 inputs");
  o.note << total << " inputs rechecked";
}

BigInt binom(long n, long k) {
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void canonical(Outcome& o) {
  const auto t0 = Clock::now();
  for (long m = 1; m <= 50; ++m) {
    auto e = fingenlab::canonical_example(m);
    o.require(e.deficit == binom(m + 2, 3), "deficit at m=" + std::to_string(m));
    o.require(!e.surjective, "surjective at m=" + std::to_string(m));
  }
  auto one = fingenlab::canonical_example(1);
  o.require(one.h0_x == 15 && one.h0_x_minus_s == 6 && one.h0_s == 10, "(15, 6, 10) at m=1");
  const double secs = seconds_since(t0);
  o.require(secs < 1, "runtime over 1 s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "m = 1..50 deficits match, (15, 6, 10) at m = 1, %.4f s", secs);
  o.note << buf;
}

void cutkosky(Outcome& o) {
  std::size_t pairs = 0;
  for (long k = 2; k <= 40; ++k)
    for (long d = 1; d < k; ++d) {
      auto a = fingenlab::elliptic_support({k, d, 0});
      o.require(!a.span_closed && a.verdict == "NOT finitely generated",
                "k=" + std::to_string(k) + " d=" + std::to_string(d));
      ++pairs;
    }
  auto control = fingenlab::elliptic_support({2, 1, 1});
  o.require(control.span_closed && control.description == "N^2", "ample control");
  o.note << pairs << " pairs (k <= 40) not finitely generated; control: " << control.description;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"zariski oracle equivalence", zariski_oracle_equivalence},
      {"zariski golden values", zariski_golden},
      {"sigma consistency", sigma_consistency},
      {"diophantine invariants", diophantine_invariants},
      {"hilbert bases", hilbert_bases},
      {"width and zig-zag", width_zigzag},
      {"adjoint trace", adjoint_identities},
      {"canonical example", canonical},
      {"elliptic example", cutkosky},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << ++n << " " << name << ": " << o.note.str() << std::endl;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << (9 - failed) << "/9" << std::endl;
  return failed ? 1 : 0;
}
