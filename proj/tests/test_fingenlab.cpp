#include <doctest.h>

#include <random>

#include "zdlab/batch.hpp"
#include "zdlab/errors.hpp"
#include "zdlab/fingenlab.hpp"
#include "zdlab/models.hpp"

using namespace zdlab;
using namespace zdlab::fingenlab;
using surface::Divisor;

namespace {

QVec iv(std::initializer_list<long> xs) { return QVec::from_ints(xs); }

Rat cross(const QVec& a, const QVec& b) { return a[0] * b[1] - a[1] * b[0]; }

// The cone over the rectangle and its two halves, as angular sectors.
struct Sectors {
  QVec low, mid, high;  // D + (1-b1) e1, far corner, D + (1-b2) e2
  explicit Sectors(const QVec& d, const Rat& b1, const Rat& b2)
      : low{d[0] + 1 - b1, d[1]}, mid{d[0] + 1 - b1, d[1] + 1 - b2}, high{d[0], d[1] + 1 - b2} {}
  bool in(const QVec& p, const QVec& a, const QVec& b) const { return cross(a, p) >= 0 && cross(p, b) >= 0; }
  bool in_cone(const QVec& p) const { return in(p, low, high); }
  bool in_sub(int i, const QVec& p) const { return i == 1 ? in(p, low, mid) : in(p, mid, high); }
};

// Per-subcone minimal M from a scan of x + y <= limit.
std::array<long, 2> brute_width(const Sectors& s, long limit) {
  std::array<long, 2> out{1, 1};
  for (int i = 1; i <= 2; ++i)
    for (long sum = 0; sum <= limit; ++sum)
      for (long x = 0; x <= sum; ++x) {
        QVec p = iv({x, sum - x});
        QVec q = p - ConeSplit::step(i);
        if (s.in_sub(i, p) && !s.in_cone(q)) out[static_cast<std::size_t>(i - 1)] = sum + 1;
      }
  return out;
}

BigInt binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Identities of one adjoint step, recomputed from the recorded P, N, B.
std::vector<std::string> recheck(const AdjointTrace& t) {
  std::vector<std::string> bad;
  const std::size_t n = t.b.size();
  if (!(t.positive + t.negative == t.adjoint)) bad.push_back("P + N != K + A + B");
  std::optional<Rat> lambda;
  for (std::size_t i = 0; i < n; ++i)
    if (t.positive[i] > 0) {
      Rat v = (1 - t.b[i] + t.negative[i]) / t.positive[i];
      if (!lambda || v < *lambda) lambda = v;
    }
  if (lambda != t.lambda) bad.push_back("lambda");
  for (std::size_t i = 0; i < n; ++i) {
    Rat level = t.b[i] - t.negative[i] + (lambda ? *lambda * t.positive[i] : Rat(0));
    Rat r = ceil_of(-level) > 0 ? Rat(ceil_of(-level)) : Rat(0);
    Rat bn = level + r;
    if (t.round_up[i] != r) bad.push_back("R");
    if (r < 0 || r > ceil_of(t.negative[i])) bad.push_back("0 <= R <= ceil N");
    if (t.b_next[i] != bn) bad.push_back("B'");
    if (bn != 0 && (bn <= 0 || bn > 1)) bad.push_back("B' outside (0,1]");
    if (t.boundary[i] != (level == 1 ? 1 : 0)) bad.push_back("Sigma");
    if (floor_of(bn) != t.boundary[i]) bad.push_back("floor B' != Sigma");
  }
  return bad;
}

}  // namespace

TEST_CASE("the split of the cone over the rectangle") {
  ConeSplit s(iv({1, 1}), make_rat(1, 2), make_rat(1, 2));
  auto rays = cones::extreme_rays(s.cone());
  CHECK(rays == std::vector<QVec>{iv({2, 3}), iv({3, 2})});
  CHECK(cones::member(s.subcone(1), iv({1, 1})));
  CHECK(cones::member(s.subcone(1), iv({3, 2})));
  CHECK_FALSE(cones::member(s.subcone(1), iv({2, 3})));

  for (auto [d, b1, b2] : {std::tuple{iv({1, 1}), make_rat(1, 2), make_rat(1, 2)},
                           std::tuple{iv({1, 1}), make_rat(3, 4), make_rat(3, 4)},
                           std::tuple{iv({2, 1}), make_rat(1, 2), make_rat(1, 3)},
                           std::tuple{iv({1, 3}), Rat(0), make_rat(2, 5)}}) {
    ConeSplit sp(d, b1, b2);
    // C = C_1 ∪ C_2 on generators, both directions.
    for (const auto& g : cones::extreme_rays(sp.cone()))
      CHECK((cones::member(sp.subcone(1), g) || cones::member(sp.subcone(2), g)));
    for (int i = 1; i <= 2; ++i)
      for (const auto& g : cones::extreme_rays(sp.subcone(i))) CHECK(cones::member(sp.cone(), g));
    // C_1 ∩ C_2 is the ray through the far corner.
    const QVec far = sp.rectangle()[3];
    CHECK(cones::member(sp.subcone(1), far));
    CHECK(cones::member(sp.subcone(2), far));
    Sectors sec(d, b1, b2);
    for (long x = 0; x <= 12; ++x)
      for (long y = 0; y <= 12; ++y) {
        QVec p = iv({x, y});
        CHECK(cones::member(sp.cone(), p) == sec.in_cone(p));
        bool both = cones::member(sp.subcone(1), p) && cones::member(sp.subcone(2), p);
        CHECK(both == (cross(far, p) == 0 && sec.in_cone(p)));
      }
  }
  CHECK_THROWS_AS(ConeSplit(iv({0, 1}), Rat(0), Rat(0)), PreconditionError);
  CHECK_THROWS_AS(ConeSplit(iv({1, 1}), Rat(1), Rat(0)), PreconditionError);
  CHECK_THROWS_AS(ConeSplit(iv({1, 1, 1}), Rat(0), Rat(0)), DimensionError);
}

TEST_CASE("width threshold of the balanced split") {
  ConeSplit s(iv({1, 1}), make_rat(1, 2), make_rat(1, 2));
  auto r = width_threshold(s);
  CHECK(r.threshold == 5);
  REQUIRE(r.witness);
  CHECK((*r.witness)[0] + (*r.witness)[1] == 4);
  CHECK(*r.witness == iv({2, 2}));
  CHECK(cones::member(s.subcone(r.witness_subcone), *r.witness));
  CHECK_FALSE(cones::member(s.cone(), *r.witness - ConeSplit::step(r.witness_subcone)));
  CHECK(r.scanned_to >= 100);
}

TEST_CASE("width threshold agrees with a scan to 200") {
  for (auto [d, b1, b2] : {std::tuple{iv({1, 1}), make_rat(1, 2), make_rat(1, 2)},
                           std::tuple{iv({1, 1}), make_rat(3, 4), make_rat(3, 4)},
                           std::tuple{iv({1, 1}), Rat(0), Rat(0)},
                           std::tuple{iv({2, 1}), make_rat(1, 2), make_rat(1, 3)},
                           std::tuple{iv({1, 1}), Rat(0), make_rat(1, 2)},
                           std::tuple{iv({3, 2}), make_rat(2, 3), make_rat(1, 5)}}) {
    ConeSplit s(d, b1, b2);
    auto r = width_threshold(s);
    auto brute = brute_width(Sectors(d, b1, b2), 200);
    CHECK(r.per_subcone == brute);
    CHECK(r.threshold == std::max(brute[0], brute[1]));
    CHECK(width_threshold(s, Execution::Serial).threshold == r.threshold);
    if (r.threshold > 1) {
      REQUIRE(r.witness);
      const auto& w = *r.witness;
      CHECK(w[0] + w[1] == r.threshold - 1);
      CHECK(cones::member(s.subcone(r.witness_subcone), w));
      CHECK_FALSE(cones::member(s.cone(), w - ConeSplit::step(r.witness_subcone)));
    }
  }
}

TEST_CASE("zig-zag descent") {
  ConeSplit s(iv({1, 1}), make_rat(1, 2), make_rat(1, 2));
  CHECK(zigzag_descend(s, 5, iv({4, 3})) == std::vector<QVec>{iv({4, 3}), iv({3, 3}), iv({2, 3})});
  CHECK(zigzag_descend(s, 5, iv({3, 2})) == std::vector<QVec>{iv({3, 2})});

  Sectors sec(iv({1, 1}), make_rat(1, 2), make_rat(1, 2));
  auto chain = zigzag_descend(s, 5, iv({30, 20}));
  CHECK(chain.size() == 46);
  for (std::size_t t = 0; t < chain.size(); ++t) {
    const auto& p = chain[t];
    CHECK(sec.in_cone(p));
    if (t + 1 < chain.size()) {
      CHECK(p[0] + p[1] > 5);
      CHECK(chain[t + 1] == p - ConeSplit::step(sec.in_sub(1, p) ? 1 : 2));
    }
  }
  CHECK(chain.back()[0] + chain.back()[1] <= 5);
  CHECK(static_cast<long>(chain.size()) - 1 == 50 - (chain.back()[0] + chain.back()[1]));

  CHECK_THROWS_AS(zigzag_descend(s, 5, iv({5, 1})), PreconditionError);
  CHECK_THROWS_AS(zigzag_descend(s, 5, QVec{make_rat(5, 2), Rat(2)}), PreconditionError);
}

TEST_CASE("zig-zag from every lattice point of the cone stays inside") {
  for (auto [d, b1, b2] : {std::tuple{iv({1, 1}), make_rat(3, 4), make_rat(3, 4)},
                           std::tuple{iv({2, 1}), make_rat(1, 2), make_rat(1, 3)}}) {
    ConeSplit s(d, b1, b2);
    const long m = width_threshold(s).threshold;
    Sectors sec(d, b1, b2);
    for (long x = 0; x <= 40; ++x)
      for (long y = 0; y <= 40; ++y) {
        QVec g = iv({x, y});
        if (!sec.in_cone(g)) continue;
        auto chain = zigzag_descend(s, m, g);
        for (const auto& p : chain) CHECK(sec.in_cone(p));
        CHECK(chain.back()[0] + chain.back()[1] <= std::max<long>(m, x + y));
      }
  }
}

TEST_CASE("adjoint step on the one-point blow-up") {
  auto m = models::blp2();
  auto a = surface::parse_divisor(m, "7/2*H - E");
  auto b = surface::parse_divisor(m, "1/2*E");
  auto t = adjoint_trace(a, b);
  CHECK(recheck(t).empty());
  CHECK(check_trace(t).empty());
  CHECK(t.negative == surface::parse_divisor(t.primes, "1/2*E"));
  CHECK(t.lambda == Rat(2));
  CHECK(t.boundary == surface::parse_divisor(t.primes, "E + F"));
  CHECK(t.round_up.is_zero());
  CHECK(t.b_next == surface::parse_divisor(t.primes, "E + F"));

  // D = K + A nef: no negative part, B' = lambda P.
  t = adjoint_trace(surface::parse_divisor(m, "4*H - E"), Divisor::zero(m));
  CHECK(recheck(t).empty());
  CHECK(t.negative.is_zero());
  CHECK(t.round_up.is_zero());
  CHECK(t.b_next == *t.lambda * t.positive);
  CHECK(t.boundary == surface::boundary_components(t.b_next));

  CHECK_THROWS_AS(adjoint_trace(surface::parse_divisor(m, "2*H - E"), Divisor::zero(m)), NotPseudoEffective);
  CHECK_THROWS_AS(adjoint_trace(surface::parse_divisor(m, "H"), Divisor::zero(m)), PreconditionError);
  CHECK_THROWS_AS(adjoint_trace(a, surface::parse_divisor(m, "E")), PreconditionError);
  CHECK_THROWS_AS(adjoint_trace(a, surface::parse_divisor(m, "-1/2*E")), PreconditionError);
}

TEST_CASE("adjoint identities on random admissible inputs") {
  std::size_t total = 0, with_negative = 0;
  for (auto m : {models::blp2(), models::blp2x2()}) {
    for (const auto& [a, b] : batch::random_adjoint_inputs(m, 300, 41)) {
      auto t = adjoint_trace(a, b);
      auto bad = recheck(t);
      CHECK_MESSAGE(bad.empty(), surface::format_divisor(a), " / ", surface::format_divisor(b));
      ++total;
      with_negative += !t.negative.is_zero();
    }
  }
  CHECK(total >= 500);
  CHECK(with_negative > 0);
}

TEST_CASE("tampered traces are reported") {
  auto m = models::blp2();
  auto t = adjoint_trace(surface::parse_divisor(m, "7/2*H - E"), surface::parse_divisor(m, "1/2*E"));
  auto u = t;
  u.round_up = u.round_up + surface::parse_divisor(t.primes, "3*E");
  CHECK_FALSE(check_trace(u).empty());
  u = t;
  u.b_next = u.b_next + surface::parse_divisor(t.primes, "1/3*F");
  CHECK_FALSE(check_trace(u).empty());
  u = t;
  u.boundary = Divisor::zero(t.primes);
  CHECK_FALSE(check_trace(u).empty());
}

TEST_CASE("graded support on the elliptic model") {
  auto a = elliptic_support({2, 1, 0});
  CHECK(a.description == "{(0,0)} ∪ {m2 >= 2}");
  CHECK(a.verdict == "NOT finitely generated");
  CHECK_FALSE(a.span_closed);
  REQUIRE(a.unattained_limit_rays.size() == 1);
  CHECK(a.unattained_limit_rays[0] == iv({1, 0}));

  auto b = elliptic_support({5, 3, 0});
  CHECK(b.description == "{(0,0)} ∪ {m2 >= 2}");
  CHECK(b.verdict == "NOT finitely generated");

  auto control = elliptic_support({2, 1, 1});
  CHECK(control.description == "N^2");
  CHECK(control.span_closed);
  CHECK(control.verdict == "consistent with finite generation");

  for (long k = 2; k <= 12; ++k)
    for (long d = 1; d < k; ++d) {
      EllipticRule rule{k, d, 0};
      auto e = elliptic_support(rule, 24);
      CHECK_FALSE(e.span_closed);
      CHECK(e.verdict == "NOT finitely generated");
      // Support against the rule written out: origin, or floor(m2 d / k) >= 1.
      std::size_t count = 0;
      for (long m1 = 0; m1 <= 24; ++m1)
        for (long m2 = 0; m1 + m2 <= 24; ++m2) {
          const bool expect = (m1 == 0 && m2 == 0) || (m2 * d) / k >= 1;
          CHECK(rule.nonzero(m1, m2) == expect);
          count += expect;
        }
      CHECK(e.support.size() == count);
      const long first = (k + d - 1) / d;
      CHECK(e.description == "{(0,0)} ∪ {m2 >= " + std::to_string(first) + "}");
    }

  CHECK_THROWS_AS(elliptic_support({1, 1, 0}), PreconditionError);
  CHECK_THROWS_AS(elliptic_support({3, 0, 0}), PreconditionError);
  CHECK_THROWS_AS(elliptic_support({3, 1, -1}), PreconditionError);
  CHECK_THROWS_AS(elliptic_support({3, 1, 0}, 10), PreconditionError);
}

TEST_CASE("Riemann-Roch on curves") {
  CHECK(rr_lower_bound(1, 3) == 3);
  CHECK(rr_lower_bound(0, 2) == 3);
  CHECK(rr_lower_bound(2, 5) == 4);
  CHECK(rr_lower_bound(3, -4) == 0);
  CHECK(rr_exact(2, 3));
  CHECK_FALSE(rr_exact(2, 2));
  for (long g = 0; g <= 5; ++g)
    for (long d = -3; d <= 15; ++d) CHECK(rr_lower_bound(g, d) == std::max<long>(d - g + 1, 0));
}

TEST_CASE("dimension counts of the canonical extension example") {
  for (long m = 1; m <= 50; ++m) {
    BigInt x = 0, xs = 0;
    for (long j = m; j <= 2 * m; ++j) x += binom(j + 2, 2) * (j - m + 1);
    for (long j = m + 1; j <= 2 * m; ++j) xs += binom(j + 2, 2) * (j - m);
    auto e = canonical_example(m);
    CHECK(e.h0_x == x);
    CHECK(e.h0_x_minus_s == xs);
    CHECK(e.h0_s == binom(2 * m + 3, 3));
    CHECK(e.image == x - xs);
    CHECK(e.deficit == binom(m + 2, 3));
    CHECK_FALSE(e.surjective);
  }
  auto one = canonical_example(1);
  CHECK(one.h0_x == 15);
  CHECK(one.h0_x_minus_s == 6);
  CHECK(one.h0_s == 10);
  CHECK(one.deficit == 1);
  CHECK(canonical_example(2).deficit == 4);
  CHECK(canonical_example(3).deficit == 10);
  CHECK_THROWS_AS(canonical_example(0), PreconditionError);
}
