#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "zdlab/cones.hpp"
#include "zdlab/errors.hpp"

using namespace zdlab;
using namespace zdlab::cones;

namespace {

QVec iv(std::initializer_list<long> xs) { return QVec::from_ints(xs); }

// Membership by LP over the generators, independent of the halfspace form.
bool in_generated(const std::vector<QVec>& gens, const QVec& v) {
  return nonnegative_combination(gens, v).has_value();
}

// Lattice points of a box lying in the cone spanned by gens.
std::vector<QVec> box_points(const std::vector<QVec>& gens, long lo, long hi) {
  const std::size_t d = gens.front().size();
  std::vector<QVec> out;
  std::vector<long> cur(d, lo);
  while (true) {
    QVec p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = cur[i];
    if (!p.is_zero() && in_generated(gens, p)) out.push_back(p);
    std::size_t i = 0;
    while (i < d && ++cur[i] > hi) cur[i++] = lo;
    if (i == d) break;
  }
  return out;
}

// Irreducible monoid elements among the cone points of a box that contains
// every irreducible (the zonotope of the rays is inside it).
std::vector<QVec> brute_hilbert(const std::vector<QVec>& gens, long lo, long hi) {
  auto pts = box_points(gens, lo, hi);
  std::set<QVec> in(pts.begin(), pts.end());
  std::vector<QVec> out;
  for (const auto& p : pts) {
    bool reducible = false;
    for (const auto& q : pts)
      if (q != p && in.count(p - q)) {
        reducible = true;
        break;
      }
    if (!reducible) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QVec> sorted(std::vector<QVec> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("convert turns generators into facet normals") {
  auto quadrant = convert(RationalCone::from_generators(2, {iv({1, 0}), iv({0, 1})}));
  CHECK(sorted(quadrant.halfspaces()) == sorted({iv({1, 0}), iv({0, 1})}));

  auto c = convert(RationalCone::from_generators(2, {iv({3, 2}), iv({2, 3})}));
  CHECK(sorted(c.halfspaces()) == sorted({iv({3, -2}), iv({-2, 3})}));

  auto back = convert(RationalCone::from_halfspaces(2, {iv({3, -2}), iv({-2, 3})}));
  CHECK(sorted(back.generators()) == sorted({iv({3, 2}), iv({2, 3})}));

  auto square = convert(RationalPolytope::from_vertices(2, {iv({0, 0}), iv({1, 0}), iv({0, 1}), iv({1, 1})}));
  CHECK(square.halfspaces().size() == 4);
}

TEST_CASE("membership in the cone spanned by (3,2) and (2,3)") {
  auto c = RationalCone::from_generators(2, {iv({3, 2}), iv({2, 3})});
  CHECK(member(c, iv({1, 1})));
  CHECK_FALSE(member(c, iv({1, 2})));
  CHECK(member(c, iv({0, 0})));
  CHECK(member(convert(c), iv({5, 5})));
}

TEST_CASE("forms are checked for consistency") {
  CHECK_NOTHROW(RationalCone::from_both(2, {iv({3, 2}), iv({2, 3})}, {iv({3, -2}), iv({-2, 3})}));
  CHECK_THROWS_AS(RationalCone::from_both(2, {iv({1, 0}), iv({0, 1})}, {iv({3, -2}), iv({-2, 3})}), UsageError);
  CHECK_THROWS_AS(convert(RationalCone::from_generators(5, {QVec::unit(5, 0)})), DimensionError);
  CHECK_THROWS_AS(hilbert_basis(RationalCone::from_generators(5, {QVec::unit(5, 0)})), DimensionError);
  CHECK_THROWS_AS(RationalCone::from_generators(2, {iv({1, 0, 0})}), DimensionError);
  CHECK_THROWS_AS(convert(RationalPolytope::from_halfspaces(1, {{iv({1}), Rat(0)}})), UsageError);
  CHECK_THROWS_AS(convert(RationalPolytope::from_halfspaces(1, {{iv({1}), Rat(1)}, {iv({-1}), Rat(0)}})),
                  UsageError);
}

TEST_CASE("double conversion describes the same cone") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = 2 + static_cast<std::size_t>(trial % 2);
    std::vector<QVec> gens;
    for (int g = 0; g < 4; ++g) {
      QVec v(dim);
      for (auto i = 0u; i < dim; ++i) v[i] = d(rng);
      if (!v.is_zero()) gens.push_back(v);
    }
    if (gens.empty()) continue;
    auto h = convert(RationalCone::from_generators(dim, gens));
    auto v = convert(RationalCone::from_halfspaces(dim, h.halfspaces()));
    for (const auto& g : gens) CHECK(member(v, g));
    for (const auto& r : v.generators()) CHECK(in_generated(gens, r));
    for (const auto& n : h.halfspaces())
      for (const auto& g : gens) CHECK(dot(n, g) >= 0);
  }
}

TEST_CASE("extreme points are not midpoints and span the polytope") {
  auto square = RationalPolytope::from_vertices(2, {iv({0, 0}), iv({1, 0}), iv({0, 1}), iv({1, 1}),
                                                    QVec{make_rat(1, 2), make_rat(1, 2)}});
  CHECK(extreme_points(square) == sorted({iv({0, 0}), iv({0, 1}), iv({1, 0}), iv({1, 1})}));

  std::mt19937 rng(23);
  std::uniform_int_distribution<int> d(0, 4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<QVec> pts;
    for (int i = 0; i < 7; ++i) pts.push_back(iv({d(rng), d(rng)}));
    std::set<QVec> distinct(pts.begin(), pts.end());
    if (distinct.size() < 3) continue;
    RationalPolytope p = convert(RationalPolytope::from_vertices(2, pts));
    auto ext = extreme_points(p);
    // Grid points of P at denominator 2.
    std::vector<QVec> grid;
    for (int x = 0; x <= 8; ++x)
      for (int y = 0; y <= 8; ++y) {
        QVec q{make_rat(x, 2), make_rat(y, 2)};
        if (member(p, q)) grid.push_back(q);
      }
    for (const auto& e : ext)
      for (const auto& a : grid)
        if (a != e) CHECK_FALSE(member(p, Rat(2) * e - a));
    // Every input point is a convex combination of the extreme points.
    std::vector<QVec> lifted;
    for (const auto& e : ext) lifted.push_back(QVec{e[0], e[1], Rat(1)});
    for (const auto& q : pts) CHECK(in_generated(lifted, QVec{q[0], q[1], Rat(1)}));
  }
}

TEST_CASE("Hilbert bases of the cones spanned by (1,0) and (1,k)") {
  for (long k = 1; k <= 6; ++k) {
    std::vector<QVec> gens = {iv({1, 0}), iv({1, k})};
    auto hb = hilbert_basis(RationalCone::from_generators(2, gens));
    std::vector<QVec> expect;
    for (long j = 0; j <= k; ++j) expect.push_back(iv({1, j}));
    CHECK(hb.elements == expect);
    CHECK(hb.elements == brute_hilbert(gens, 0, k + 1));
  }
  auto quadrant = hilbert_basis(RationalCone::from_generators(2, {iv({1, 0}), iv({0, 1})}));
  CHECK(quadrant.elements == sorted({iv({1, 0}), iv({0, 1})}));
}

TEST_CASE("Hilbert bases match the brute-force sieve on assorted cones") {
  const std::vector<std::vector<QVec>> cases = {
      {iv({3, 2}), iv({2, 3})},
      {iv({1, 0}), iv({2, 5})},
      {iv({-1, 2}), iv({3, 1})},
      {iv({1, 4}), iv({4, 1}), iv({2, 2})},
      {iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 2})},
      {iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, 0, 1}), iv({0, -1, 1})},
  };
  for (const auto& gens : cases) {
    long s = 0;
    for (const auto& g : gens)
      for (const auto& x : g) s += std::abs(x.get_num().get_si());
    auto cone = RationalCone::from_generators(gens.front().size(), gens);
    auto hb = hilbert_basis(cone);
    CHECK(hb.elements == brute_hilbert(gens, -s, s));
    CHECK(hilbert_basis(cone, Execution::Serial).elements == hb.elements);
  }
}

TEST_CASE("every lattice point up to 10 decomposes over the Hilbert basis") {
  const std::vector<std::vector<QVec>> cases = {
      {iv({1, 0}), iv({1, 3})}, {iv({3, 2}), iv({2, 3})}, {iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 2})}};
  for (const auto& gens : cases) {
    auto cone = RationalCone::from_generators(gens.front().size(), gens);
    auto hb = hilbert_basis(cone);
    for (const auto& p : box_points(gens, 0, 10)) {
      auto mult = decompose(hb, cone, p);
      REQUIRE(mult);
      QVec sum(p.size());
      for (std::size_t i = 0; i < mult->size(); ++i) {
        CHECK((*mult)[i] >= 0);
        sum += Rat((*mult)[i]) * hb.elements[i];
      }
      CHECK(sum == p);
    }
    CHECK(decompose(hb, cone, QVec(gens.front().size())).has_value());
  }
}

TEST_CASE("non-pointed cones are rejected") {
  auto half_plane = RationalCone::from_halfspaces(2, {iv({1, 0})});
  CHECK_FALSE(is_pointed(half_plane));
  CHECK_THROWS_AS(hilbert_basis(half_plane), UsageError);
  CHECK(is_pointed(RationalCone::from_generators(2, {iv({1, 0}), iv({0, 1})})));
}

TEST_CASE("Veronese restrictions to sublattices and subcones") {
  auto quadrant = RationalCone::from_generators(2, {iv({1, 0}), iv({0, 1})});
  QMat even{{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}};
  CHECK(veronese_restrict(quadrant, even).elements == sorted({iv({2, 0}), iv({1, 1}), iv({0, 2})}));
  CHECK(veronese_restrict(quadrant, QMat::identity(2)).elements == hilbert_basis(quadrant).elements);

  // cone V{(1,0),(1,2)} on the even lattice, against a brute-force sieve of
  // the even points up to degree 10.
  std::vector<QVec> gens = {iv({1, 0}), iv({1, 2})};
  auto cone = RationalCone::from_generators(2, gens);
  auto hb = veronese_restrict(cone, even);
  std::vector<QVec> pts;
  for (const auto& p : box_points(gens, 0, 10))
    if (Rat(p[0] + p[1]).get_num() % 2 == 0) pts.push_back(p);
  std::set<QVec> in(pts.begin(), pts.end());
  std::vector<QVec> irreducible;
  for (const auto& p : pts) {
    bool red = false;
    for (const auto& q : pts)
      if (q != p && in.count(p - q)) red = true;
    if (!red) irreducible.push_back(p);
  }
  CHECK(hb.elements == sorted(irreducible));

  auto sub = RationalCone::from_generators(2, {iv({1, 1}), iv({1, 2})});
  auto hs = veronese_restrict(cone, sub);
  CHECK(hs.elements == sorted({iv({1, 1}), iv({1, 2})}));
}
