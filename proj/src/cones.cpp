#include "zdlab/cones.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "zdlab/errors.hpp"

namespace zdlab::cones {

namespace {

void require_dim(std::size_t dim) {
  if (dim == 0) throw DimensionError("dimension must be positive");
  if (dim > kMaxDimension)
    throw DimensionError("dimension " + std::to_string(dim) + " exceeds cap " +
                         std::to_string(kMaxDimension));
}

void check_lengths(const std::vector<QVec>& vs, std::size_t dim) {
  for (const auto& v : vs)
    if (v.size() != dim) throw DimensionError("vector length does not match cone dimension");
}

std::vector<QVec> normalize_set(std::vector<QVec> vs) {
  std::vector<QVec> out;
  out.reserve(vs.size());
  for (auto& v : vs)
    if (!v.is_zero()) out.push_back(primitive(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Calls f on every k-subset of {0..n-1} (lexicographic).
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool satisfies_all(const std::vector<QVec>& halfspaces, const QVec& v) {
  return std::all_of(halfspaces.begin(), halfspaces.end(),
                     [&](const QVec& psi) { return dot(psi, v) >= 0; });
}

bool in_span_cone(const std::vector<QVec>& generators, const QVec& v) {
  if (v.is_zero()) return true;
  return nonnegative_combination(generators, v).has_value();
}

}  // namespace

// ---------------------------------------------------------------------------

RationalCone RationalCone::from_generators(std::size_t dim, std::vector<QVec> generators) {
  check_lengths(generators, dim);
  RationalCone c;
  c.dim_ = dim;
  c.generators_ = normalize_set(std::move(generators));
  return c;
}

RationalCone RationalCone::from_halfspaces(std::size_t dim, std::vector<QVec> halfspaces) {
  check_lengths(halfspaces, dim);
  RationalCone c;
  c.dim_ = dim;
  c.halfspaces_ = normalize_set(std::move(halfspaces));
  return c;
}

RationalCone RationalCone::from_both(std::size_t dim, std::vector<QVec> generators,
                                     std::vector<QVec> halfspaces) {
  RationalCone c = from_generators(dim, std::move(generators));
  c.halfspaces_ = from_halfspaces(dim, std::move(halfspaces)).halfspaces();
  for (const auto& g : *c.generators_)
    if (!satisfies_all(*c.halfspaces_, g))
      throw UsageError("cone forms disagree: generator " + to_string(g) + " violates a halfspace");
  for (const auto& r : dual_generators(*c.halfspaces_, dim))
    if (!in_span_cone(*c.generators_, r))
      throw UsageError("cone forms disagree: ray " + to_string(r) + " not generated");
  return c;
}

const std::vector<QVec>& RationalCone::generators() const {
  if (!generators_) throw UsageError("cone has no generator form; call convert()");
  return *generators_;
}

const std::vector<QVec>& RationalCone::halfspaces() const {
  if (!halfspaces_) throw UsageError("cone has no halfspace form; call convert()");
  return *halfspaces_;
}

RationalPolytope RationalPolytope::from_vertices(std::size_t dim, std::vector<QVec> vertices) {
  check_lengths(vertices, dim);
  if (vertices.empty()) throw UsageError("empty polytope");
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  RationalPolytope p;
  p.dim_ = dim;
  p.vertices_ = std::move(vertices);
  return p;
}

RationalPolytope RationalPolytope::from_halfspaces(std::size_t dim, std::vector<HalfSpace> halfspaces) {
  for (const auto& h : halfspaces)
    if (h.normal.size() != dim) throw DimensionError("halfspace length does not match dimension");
  std::sort(halfspaces.begin(), halfspaces.end());
  halfspaces.erase(std::unique(halfspaces.begin(), halfspaces.end()), halfspaces.end());
  RationalPolytope p;
  p.dim_ = dim;
  p.halfspaces_ = std::move(halfspaces);
  return p;
}

RationalPolytope RationalPolytope::from_both(std::size_t dim, std::vector<QVec> vertices,
                                            std::vector<HalfSpace> halfspaces) {
  auto v = from_vertices(dim, std::move(vertices));
  auto h = from_halfspaces(dim, std::move(halfspaces));
  if (extreme_points(v) != extreme_points(h)) throw UsageError("polytope forms disagree");
  v.halfspaces_ = std::move(h.halfspaces_);
  return v;
}

const std::vector<QVec>& RationalPolytope::vertices() const {
  if (!vertices_) throw UsageError("polytope has no vertex form; call convert()");
  return *vertices_;
}

const std::vector<HalfSpace>& RationalPolytope::halfspaces() const {
  if (!halfspaces_) throw UsageError("polytope has no halfspace form; call convert()");
  return *halfspaces_;
}

// ---------------------------------------------------------------------------

std::vector<QVec> dual_generators(const std::vector<QVec>& constraints, std::size_t dim) {
  check_lengths(constraints, dim);
  const auto lineality = nullspace(constraints, dim);
  std::vector<QVec> out;
  const std::size_t r = dim - lineality.size();
  if (r > 0) {
    std::set<QVec> rays;
    for_each_subset(constraints.size(), r - 1, [&](const std::vector<std::size_t>& subset) {
      std::vector<QVec> system = lineality;
      for (auto i : subset) system.push_back(constraints[i]);
      auto ns = nullspace(system, dim);
      if (ns.size() != 1) return;
      QVec x = ns.front();
      bool all_ge = true;
      bool all_le = true;
      for (const auto& a : constraints) {
        Rat s = dot(a, x);
        if (s < 0) all_ge = false;
        if (s > 0) all_le = false;
      }
      if (all_ge) rays.insert(primitive(x));
      else if (all_le) rays.insert(primitive(-x));
    });
    out.assign(rays.begin(), rays.end());
  }
  for (const auto& l : lineality) {
    out.push_back(primitive(l));
    out.push_back(primitive(-l));
  }
  return normalize_set(std::move(out));
}

RationalCone convert(const RationalCone& cone) {
  require_dim(cone.dim());
  if (cone.has_generators() && cone.has_halfspaces()) return cone;
  if (cone.has_generators()) {
    auto hs = dual_generators(cone.generators(), cone.dim());
    RationalCone out = RationalCone::from_generators(cone.dim(), cone.generators());
    return RationalCone::from_both(cone.dim(), out.generators(), std::move(hs));
  }
  auto gens = dual_generators(cone.halfspaces(), cone.dim());
  return RationalCone::from_both(cone.dim(), std::move(gens), cone.halfspaces());
}

namespace {

std::vector<QVec> homogenize_vertices(const std::vector<QVec>& vs) {
  std::vector<QVec> out;
  for (const auto& v : vs) {
    QVec h(v.size() + 1);
    for (std::size_t i = 0; i < v.size(); ++i) h[i] = v[i];
    h[v.size()] = 1;
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<QVec> homogenize_halfspaces(const std::vector<HalfSpace>& hs, std::size_t dim) {
  std::vector<QVec> out;
  for (const auto& h : hs) {
    QVec a(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) a[i] = h.normal[i];
    a[dim] = -h.offset;
    out.push_back(std::move(a));
  }
  out.push_back(QVec::unit(dim + 1, dim));  // t >= 0
  return out;
}

std::vector<HalfSpace> halfspaces_from_vertices(const std::vector<QVec>& vs, std::size_t dim) {
  std::vector<HalfSpace> out;
  for (const auto& a : dual_generators(homogenize_vertices(vs), dim + 1)) {
    QVec normal(dim);
    for (std::size_t i = 0; i < dim; ++i) normal[i] = a[i];
    if (normal.is_zero()) continue;  // t >= 0
    out.push_back({std::move(normal), -a[dim]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QVec> vertices_from_halfspaces(const std::vector<HalfSpace>& hs, std::size_t dim) {
  std::vector<QVec> out;
  for (const auto& g : dual_generators(homogenize_halfspaces(hs, dim), dim + 1)) {
    const Rat& t = g[dim];
    if (t == 0) throw UsageError("polytope is unbounded");
    QVec v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = g[i] / t;
    out.push_back(std::move(v));
  }
  if (out.empty()) throw UsageError("polytope is empty");
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RationalPolytope convert(const RationalPolytope& polytope) {
  require_dim(polytope.dim());
  RationalPolytope out = polytope;
  if (!out.vertices_) out.vertices_ = vertices_from_halfspaces(*out.halfspaces_, out.dim_);
  if (!out.halfspaces_) out.halfspaces_ = halfspaces_from_vertices(*out.vertices_, out.dim_);
  return out;
}

bool member(const RationalCone& cone, const QVec& v) {
  if (v.size() != cone.dim()) throw DimensionError("member: vector length mismatch");
  if (cone.has_halfspaces()) return satisfies_all(cone.halfspaces(), v);
  return in_span_cone(cone.generators(), v);
}

bool member(const RationalPolytope& polytope, const QVec& v) {
  if (v.size() != polytope.dim()) throw DimensionError("member: vector length mismatch");
  auto hs = polytope.has_halfspaces() ? polytope.halfspaces() : convert(polytope).halfspaces();
  return std::all_of(hs.begin(), hs.end(),
                     [&](const HalfSpace& h) { return dot(h.normal, v) >= h.offset; });
}

bool is_pointed(const RationalCone& cone) {
  auto hs = cone.has_halfspaces() ? cone.halfspaces() : convert(cone).halfspaces();
  return nullspace(hs, cone.dim()).empty();
}

std::vector<QVec> extreme_points(const RationalPolytope& polytope) {
  if (polytope.has_halfspaces()) return convert(RationalPolytope::from_halfspaces(polytope.dim(), polytope.halfspaces())).vertices();
  auto hs = convert(polytope).halfspaces();
  return convert(RationalPolytope::from_halfspaces(polytope.dim(), std::move(hs))).vertices();
}

std::vector<QVec> extreme_rays(const RationalCone& cone) {
  require_dim(cone.dim());
  auto hs = cone.has_halfspaces() ? cone.halfspaces() : convert(cone).halfspaces();
  if (!nullspace(hs, cone.dim()).empty()) throw UsageError("cone is not pointed");
  return dual_generators(hs, cone.dim());
}

// ---------------------------------------------------------------------------
// Hilbert bases

namespace {

struct Box {
  std::vector<BigInt> lo, hi;
  std::size_t count = 1;
};

Box zonotope_box(const std::vector<QVec>& rays, std::size_t dim) {
  Box b;
  b.lo.assign(dim, BigInt(0));
  b.hi.assign(dim, BigInt(0));
  for (const auto& r : rays)
    for (std::size_t i = 0; i < dim; ++i) {
      BigInt z(r[i]);
      if (z < 0) b.lo[i] += z;
      else b.hi[i] += z;
    }
  for (std::size_t i = 0; i < dim; ++i) {
    BigInt width = b.hi[i] - b.lo[i] + 1;
    if (!width.fits_ulong_p() || width.get_ui() > 1'000'000)
      throw DimensionError("zonotope box too large for exhaustive enumeration");
    b.count *= width.get_ui();
    if (b.count > 50'000'000) throw DimensionError("zonotope box too large for exhaustive enumeration");
  }
  return b;
}

QVec box_point(const Box& b, std::size_t index) {
  QVec p(b.lo.size());
  for (std::size_t i = 0; i < b.lo.size(); ++i) {
    std::size_t width = BigInt(b.hi[i] - b.lo[i] + 1).get_ui();
    p[i] = Rat(b.lo[i] + static_cast<unsigned long>(index % width));
    index /= width;
  }
  return p;
}

}  // namespace

HilbertBasis hilbert_basis(const RationalCone& input, Execution exec) {
  require_dim(input.dim());
  const RationalCone cone = convert(input);
  const auto& hs = cone.halfspaces();
  if (!nullspace(hs, cone.dim()).empty()) throw UsageError("hilbert_basis: cone is not pointed");
  const auto rays = dual_generators(hs, cone.dim());
  const Box box = zonotope_box(rays, cone.dim());

  // Lattice points of the box inside the cone, minus the origin.
  std::vector<char> in_cone(box.count, 0);
  const long n = static_cast<long>(box.count);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
      QVec p = box_point(box, static_cast<std::size_t>(i));
      in_cone[static_cast<std::size_t>(i)] = !p.is_zero() && satisfies_all(hs, p);
    }
  } else {
    for (long i = 0; i < n; ++i) {
      QVec p = box_point(box, static_cast<std::size_t>(i));
      in_cone[static_cast<std::size_t>(i)] = !p.is_zero() && satisfies_all(hs, p);
    }
  }
  std::vector<QVec> candidates;
  for (std::size_t i = 0; i < box.count; ++i)
    if (in_cone[i]) candidates.push_back(box_point(box, i));

  // Every Hilbert basis element lies in the box, so p is reducible iff
  // p - q stays in the cone for some other candidate q.
  const long m = static_cast<long>(candidates.size());
  std::vector<char> irreducible(candidates.size(), 1);
  auto sieve = [&](long i) {
    const QVec& p = candidates[static_cast<std::size_t>(i)];
    for (long j = 0; j < m; ++j) {
      if (j == i) continue;
      if (satisfies_all(hs, p - candidates[static_cast<std::size_t>(j)])) {
        irreducible[static_cast<std::size_t>(i)] = 0;
        return;
      }
    }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < m; ++i) sieve(i);
  } else {
    for (long i = 0; i < m; ++i) sieve(i);
  }

  HilbertBasis hb;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (irreducible[i]) hb.elements.push_back(candidates[i]);
  std::sort(hb.elements.begin(), hb.elements.end());
  return hb;
}

HilbertBasis veronese_restrict(const RationalCone& cone, const QMat& lattice_basis) {
  const std::size_t d = cone.dim();
  if (!lattice_basis.is_square() || lattice_basis.rows() != d)
    throw DimensionError("lattice basis must be a square matrix of the cone's dimension");
  for (std::size_t i = 0; i < d; ++i)
    if (!lattice_basis.row(i).is_integral()) throw UsageError("lattice basis must be integral");
  // x = B^T y; the monoid in y-coordinates is (B^T)^{-1} cone ∩ Z^d.
  const QMat bt = lattice_basis.transposed();
  auto inv = inverse(bt);
  if (!inv) throw UsageError("lattice basis is singular");
  const auto rays = extreme_rays(cone);
  std::vector<QVec> ygens;
  for (const auto& r : rays) ygens.push_back((*inv) * r);
  auto ybasis = hilbert_basis(RationalCone::from_generators(d, std::move(ygens)));
  HilbertBasis hb;
  for (const auto& y : ybasis.elements) hb.elements.push_back(bt * y);
  std::sort(hb.elements.begin(), hb.elements.end());
  return hb;
}

HilbertBasis veronese_restrict(const RationalCone& cone, const RationalCone& subcone) {
  if (cone.dim() != subcone.dim()) throw DimensionError("cone dimensions differ");
  auto a = convert(cone).halfspaces();
  auto b = convert(subcone).halfspaces();
  a.insert(a.end(), b.begin(), b.end());
  return hilbert_basis(RationalCone::from_halfspaces(cone.dim(), std::move(a)));
}

std::optional<std::vector<BigInt>> decompose(const HilbertBasis& basis, const RationalCone& input,
                                             const QVec& point) {
  const RationalCone cone = convert(input);
  if (!point.is_integral() || !member(cone, point)) return std::nullopt;
  std::set<QVec> dead;
  std::vector<BigInt> counts(basis.elements.size(), BigInt(0));
  std::function<bool(const QVec&)> go = [&](const QVec& p) -> bool {
    if (p.is_zero()) return true;
    if (dead.count(p)) return false;
    for (std::size_t i = 0; i < basis.elements.size(); ++i) {
      QVec rest = p - basis.elements[i];
      if (!member(cone, rest)) continue;
      counts[i] += 1;
      if (go(rest)) return true;
      counts[i] -= 1;
    }
    dead.insert(p);
    return false;
  };
  if (!go(point)) return std::nullopt;
  return counts;
}

}  // namespace zdlab::cones
