#include <doctest.h>

#include <random>

#include "zdlab/errors.hpp"
#include "zdlab/qlinalg.hpp"

using namespace zdlab;

namespace {

// Cofactor expansion; independent of the elimination code.
Rat cofactor_det(const std::vector<std::vector<Rat>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Rat total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Rat>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Rat> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    Rat term = m[0][j] * cofactor_det(minor);
    total += (j % 2 == 0) ? term : Rat(-term);
  }
  return total;
}

std::vector<std::vector<Rat>> as_rows(const QMat& a) {
  std::vector<std::vector<Rat>> out(a.rows(), std::vector<Rat>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i][j] = a(i, j);
  return out;
}

QMat random_matrix(std::mt19937& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  QMat a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = make_rat(d(rng), 1 + std::abs(d(rng)) % 3);
  return a;
}

// Minimum of c.x over the polygon cut out by the constraints, found by
// enumerating pairwise intersections of boundary lines.
std::optional<Rat> vertex_min(const QVec& c, const std::vector<Constraint>& cons) {
  std::optional<Rat> best;
  for (std::size_t i = 0; i < cons.size(); ++i)
    for (std::size_t j = i + 1; j < cons.size(); ++j) {
      const auto &a = cons[i].coeffs, &b = cons[j].coeffs;
      Rat det = a[0] * b[1] - a[1] * b[0];
      if (det == 0) continue;
      QVec p{(cons[i].rhs * b[1] - cons[j].rhs * a[1]) / det, (a[0] * cons[j].rhs - b[0] * cons[i].rhs) / det};
      bool ok = true;
      for (const auto& k : cons) {
        Rat lhs = dot(k.coeffs, p);
        if ((k.rel == Relation::Ge && lhs < k.rhs) || (k.rel == Relation::Le && lhs > k.rhs) ||
            (k.rel == Relation::Eq && lhs != k.rhs))
          ok = false;
      }
      if (ok && (!best || dot(c, p) < *best)) best = dot(c, p);
    }
  return best;
}

}  // namespace

TEST_CASE("rationals format as p/q in lowest terms") {
  CHECK(to_string(parse_rat("3/6")) == "1/2");
  CHECK(to_string(parse_rat("-4/2")) == "-2");
  CHECK(to_string(parse_rat(" 7 ")) == "7");
  CHECK(to_string(make_rat(3, -9)) == "-1/3");
  CHECK_THROWS_AS(parse_rat("1/0"), UsageError);
  CHECK_THROWS_AS(parse_rat("abc"), UsageError);
}

TEST_CASE("floor and ceiling follow the mathematical convention") {
  CHECK(floor_of(make_rat(-1, 2)) == -1);
  CHECK(ceil_of(make_rat(-1, 2)) == 0);
  CHECK(floor_of(make_rat(7, 2)) == 3);
  CHECK(ceil_of(make_rat(7, 2)) == 4);
  CHECK(floor_of(Rat(-3)) == -3);
  CHECK(isqrt_ceil(2) == 2);
  CHECK(isqrt_ceil(4) == 2);
  CHECK(isqrt_ceil(5) == 3);
}

TEST_CASE("primitive scales to the unique integral generator of the ray") {
  CHECK(primitive(QVec{make_rat(3, 2), Rat(1)}) == QVec::from_ints({3, 2}));
  CHECK(primitive(QVec::from_ints({-4, 6})) == QVec::from_ints({-2, 3}));
  CHECK(primitive(QVec(2)).is_zero());
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
    QMat a = random_matrix(rng, n, -4, 4);
    CHECK(determinant(a) == cofactor_det(as_rows(a)));
  }
}

TEST_CASE("solve, inverse, rank and nullspace are consistent") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
    QMat a = random_matrix(rng, n, -3, 3);
    QVec b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<long>(i) - 1;
    const bool singular = cofactor_det(as_rows(a)) == 0;
    auto x = solve_linear(a, b);
    auto inv = inverse(a);
    CHECK(x.has_value() == !singular);
    CHECK(inv.has_value() == !singular);
    if (x) CHECK(a * *x == b);
    if (inv) CHECK(*inv * a == QMat::identity(n));
    std::vector<QVec> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(a.row(i));
    auto ns = nullspace(rows, n);
    CHECK(ns.size() + rank(a) == n);
    for (const auto& v : ns) CHECK((a * v).is_zero());
  }
  QMat rect(2, 3);
  CHECK_THROWS_AS(solve_linear(rect, QVec(2)), DimensionError);
}

TEST_CASE("negative definiteness by Sylvester matches a direct minor computation") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-3, 3);
  int negative_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
    QMat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = d(rng) - (i == j ? 2 : 0);
    auto w = is_negative_definite(a);
    bool expect = true;
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<std::vector<Rat>> lead(k, std::vector<Rat>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) lead[i][j] = -a(i, j);
      const Rat m = cofactor_det(lead);
      CHECK(w.minors[k - 1] == m);
      if (m <= 0) expect = false;
    }
    CHECK(w.negative_definite == expect);
    if (expect) {
      ++negative_seen;
      // Necessary condition: x^T A x < 0 on a grid of nonzero integer vectors.
      for (int x0 = -2; x0 <= 2; ++x0)
        for (int x1 = -2; x1 <= 2; ++x1) {
          QVec x(n);
          x[0] = x0;
          if (n > 1) x[1] = x1;
          if (n > 2) x[2] = x0 - x1;
          if (!x.is_zero()) CHECK(a.bilinear(x, x) < 0);
        }
    }
  }
  CHECK(negative_seen > 10);
  CHECK_THROWS_AS(is_negative_definite(QMat{{Rat(1), Rat(2)}, {Rat(0), Rat(1)}}), UsageError);
}

TEST_CASE("simplex optimum equals the best feasible vertex on boxed planar programs") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-5, 5);
  int infeasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Constraint> cons = {{QVec::from_ints({1, 0}), Relation::Le, Rat(10)},
                                    {QVec::from_ints({1, 0}), Relation::Ge, Rat(-10)},
                                    {QVec::from_ints({0, 1}), Relation::Le, Rat(10)},
                                    {QVec::from_ints({0, 1}), Relation::Ge, Rat(-10)}};
    for (int k = 0; k < 3; ++k) {
      QVec row = QVec::from_ints({d(rng), d(rng)});
      if (row.is_zero()) continue;
      cons.push_back({row, k == 2 ? Relation::Le : Relation::Ge, make_rat(d(rng), 1 + std::abs(d(rng)))});
    }
    QVec c = QVec::from_ints({d(rng), d(rng)});
    auto res = lp_min(c, cons);
    auto oracle = vertex_min(c, cons);
    if (!oracle) {
      CHECK(res.status == LpStatus::Infeasible);
      ++infeasible;
      continue;
    }
    REQUIRE(res.optimal());
    CHECK(res.value == *oracle);
    CHECK(dot(c, res.point) == res.value);
  }
  CHECK(infeasible > 0);
}

TEST_CASE("unbounded and sign-constrained programs") {
  std::vector<Constraint> cons = {{QVec::from_ints({1, 1}), Relation::Ge, Rat(1)}};
  CHECK(lp_min(QVec::from_ints({-1, 0}), cons).status == LpStatus::Unbounded);
  auto r = lp_min(QVec::from_ints({1, 1}), cons, {true, true});
  REQUIRE(r.optimal());
  CHECK(r.value == 1);

  std::vector<QVec> cols = {QVec::from_ints({1, 0}), QVec::from_ints({1, 2})};
  auto w = nonnegative_combination(cols, QVec::from_ints({2, 1}));
  REQUIRE(w);
  CHECK((*w)[0] * cols[0] + (*w)[1] * cols[1] == QVec::from_ints({2, 1}));
  CHECK_FALSE(nonnegative_combination(cols, QVec::from_ints({0, 1})));
}
