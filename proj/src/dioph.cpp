#include "zdlab/dioph.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "zdlab/errors.hpp"

namespace zdlab::dioph {

std::size_t default_budget() {
  if (const char* env = std::getenv("ZDLAB_SEARCH_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1'000'000;
}

bool closer_than(const QVec& a, const QVec& b, const Rat& bound, Norm norm) {
  if (bound <= 0) return false;
  QVec diff = a - b;
  if (norm == Norm::Max) return max_norm(diff) < bound;
  return norm_squared(diff) < bound * bound;
}

namespace {

// Weights of x as a convex combination of pts, if any.
std::optional<QVec> convex_weights(const std::vector<QVec>& pts, const QVec& x) {
  const std::size_t n = pts.size();
  std::vector<Constraint> cons;
  for (std::size_t i = 0; i < x.size(); ++i) {
    QVec row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = pts[j][i];
    cons.push_back({std::move(row), Relation::Eq, x[i]});
  }
  QVec ones(n);
  for (std::size_t j = 0; j < n; ++j) ones[j] = 1;
  cons.push_back({std::move(ones), Relation::Eq, Rat(1)});
  auto res = lp_min(QVec(n), cons, std::vector<bool>(n, true));
  if (!res.optimal()) return std::nullopt;
  return res.point;
}

}  // namespace

ApproxResult approximate(const ApproxRequest& req, std::size_t budget) {
  if (req.k < 1) throw PreconditionError("approximate: k must be a positive integer");
  if (req.eps <= 0) throw PreconditionError("approximate: eps must be positive");
  if (req.x.size() == 0) throw PreconditionError("approximate: empty point");
  const std::size_t n = req.x.size();
  // ‖x - z/m‖ < eps/(k m)  <=>  ‖m x - z‖ < eps/k.
  const Rat radius = req.eps / Rat(req.k);

  std::vector<QVec> accepted;
  std::vector<BigInt> denominators;
  std::set<QVec> seen;
  std::size_t spent = 0;
  for (BigInt m = 1;; ++m) {
    // Each denominator costs one unit even when its box is empty.
    if (++spent > budget) throw BudgetExceeded("approximate: search budget exhausted");
    const QVec center = Rat(m) * req.x;
    std::vector<BigInt> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = floor_of(center[i] - radius) + 1;
      hi[i] = ceil_of(center[i] + radius) - 1;
    }
    bool added = false;
    std::vector<BigInt> z = lo;
    bool empty = false;
    for (std::size_t i = 0; i < n; ++i)
      if (lo[i] > hi[i]) empty = true;
    while (!empty) {
      if (++spent > budget) throw BudgetExceeded("approximate: search budget exhausted");
      QVec zq(n);
      for (std::size_t i = 0; i < n; ++i) zq[i] = Rat(z[i]);
      if (closer_than(center, zq, radius, req.norm)) {
        QVec xi = make_rat(1, m) * zq;
        if (seen.insert(xi).second) {
          accepted.push_back(std::move(xi));
          denominators.push_back(req.k * m);
          added = true;
        }
      }
      std::size_t i = 0;
      while (i < n) {
        if (z[i] < hi[i]) {
          ++z[i];
          break;
        }
        z[i] = lo[i];
        ++i;
      }
      if (i == n) break;
    }
    if (!added) continue;
    if (auto w = convex_weights(accepted, req.x)) {
      ApproxResult out;
      for (std::size_t j = 0; j < accepted.size(); ++j)
        if ((*w)[j] != 0) out.points.push_back({accepted[j], denominators[j], (*w)[j]});
      return out;
    }
  }
}

std::vector<std::string> check(const ApproxRequest& req, const ApproxResult& result) {
  std::vector<std::string> bad;
  if (result.points.empty()) {
    bad.push_back("no points");
    return bad;
  }
  Rat total = 0;
  QVec combo(req.x.size());
  for (const auto& p : result.points) {
    const std::string tag = "point " + to_string(p.point);
    if (p.point.size() != req.x.size()) {
      bad.push_back(tag + ": wrong dimension");
      continue;
    }
    if (p.weight < 0) bad.push_back(tag + ": negative weight");
    if (p.denominator < 1 || p.denominator % req.k != 0) bad.push_back(tag + ": k does not divide k_i");
    if (!(make_rat(p.denominator, req.k) * p.point).is_integral()) bad.push_back(tag + ": k_i x_i / k not integral");
    if (p.denominator >= 1 && !closer_than(req.x, p.point, req.eps / Rat(p.denominator), req.norm))
      bad.push_back(tag + ": not within eps/k_i");
    total += p.weight;
    combo += p.weight * p.point;
  }
  if (total != 1) bad.push_back("weights sum to " + zdlab::to_string(total));
  if (!(combo == req.x)) bad.push_back("weighted sum " + zdlab::to_string(combo) + " != x");
  return bad;
}

// ---------------------------------------------------------------------------

PolytopeCertificate polytope_certificate(const cones::RationalPolytope& polytope) {
  // convert() rejects empty and unbounded H-descriptions.
  const auto full = cones::convert(polytope);
  PolytopeCertificate cert;
  cert.k = 1;
  BigInt widest = 0;
  for (const auto& h : full.halfspaces()) {
    BigInt l = lcm(common_denominator(h.normal), BigInt(h.offset.get_den()));
    BigInt g = 0;
    for (const auto& x : h.normal) g = gcd(g, BigInt(x * l));
    g = gcd(g, BigInt(h.offset * l));
    if (g == 0) continue;
    IntegralHalfSpace ih;
    ih.psi = make_rat(l, g) * h.normal;
    ih.c = BigInt(h.offset * make_rat(l, g));
    widest = std::max(widest, isqrt_ceil(BigInt(norm_squared(ih.psi))));
    cert.halfspaces.push_back(std::move(ih));
  }
  cert.eps = make_rat(1, widest + 1);
  return cert;
}

bool certificate_well_formed(const PolytopeCertificate& cert) {
  if (cert.eps <= 0 || cert.k < 1) return false;
  const Rat bound = 1 / cert.eps;
  return std::all_of(cert.halfspaces.begin(), cert.halfspaces.end(), [&](const IntegralHalfSpace& h) {
    return h.psi.is_integral() && norm_squared(h.psi) < bound * bound;
  });
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Confirmed: return "confirmed";
    case Verdict::Inapplicable: return "inapplicable";
    case Verdict::Violation: return "VIOLATION";
  }
  return "?";
}

Verdict criterion_verify(const cones::RationalPolytope& polytope, const PolytopeCertificate& cert,
                         const QVec& v, const QVec& w, const BigInt& l) {
  if (l < 1) return Verdict::Inapplicable;
  if (!(Rat(l) * v).is_integral()) return Verdict::Inapplicable;
  if (!cones::member(polytope, w)) return Verdict::Inapplicable;
  if (!closer_than(v, w, cert.eps / Rat(l * cert.k), Norm::Euclidean)) return Verdict::Inapplicable;
  return cones::member(polytope, v) ? Verdict::Confirmed : Verdict::Violation;
}

}  // namespace zdlab::dioph
