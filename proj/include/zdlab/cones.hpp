#pragma once

// Rational polyhedral cones and polytopes in dimension <= 4: V/H conversion,
// membership, extreme points and Hilbert bases of the lattice-point monoids.

#include <cstddef>
#include <optional>
#include <vector>

#include "zdlab/execution.hpp"
#include "zdlab/qlinalg.hpp"

namespace zdlab::cones {

inline constexpr std::size_t kMaxDimension = 4;

/// Cone given by generators (x = sum of nonnegative multiples) and/or
/// halfspaces psi (meaning psi . x >= 0). Generators and normals are stored
/// primitive, deduplicated and lexicographically sorted.
class RationalCone {
 public:
  static RationalCone from_generators(std::size_t dim, std::vector<QVec> generators);
  static RationalCone from_halfspaces(std::size_t dim, std::vector<QVec> halfspaces);
  /// Both forms; throws UsageError unless they describe the same set.
  static RationalCone from_both(std::size_t dim, std::vector<QVec> generators,
                                std::vector<QVec> halfspaces);

  std::size_t dim() const { return dim_; }
  bool has_generators() const { return generators_.has_value(); }
  bool has_halfspaces() const { return halfspaces_.has_value(); }
  /// Throw UsageError when the requested form is absent; see convert().
  const std::vector<QVec>& generators() const;
  const std::vector<QVec>& halfspaces() const;

 private:
  std::size_t dim_ = 0;
  std::optional<std::vector<QVec>> generators_;
  std::optional<std::vector<QVec>> halfspaces_;
};

struct HalfSpace {
  QVec normal;  // normal . x >= offset
  Rat offset;

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
  friend bool operator<(const HalfSpace& a, const HalfSpace& b) {
    if (a.normal == b.normal) return a.offset < b.offset;
    return a.normal < b.normal;
  }
};

class RationalPolytope {
 public:
  static RationalPolytope from_vertices(std::size_t dim, std::vector<QVec> vertices);
  static RationalPolytope from_halfspaces(std::size_t dim, std::vector<HalfSpace> halfspaces);
  /// Both forms; throws UsageError unless they have the same extreme points.
  static RationalPolytope from_both(std::size_t dim, std::vector<QVec> vertices,
                                    std::vector<HalfSpace> halfspaces);

  std::size_t dim() const { return dim_; }
  bool has_vertices() const { return vertices_.has_value(); }
  bool has_halfspaces() const { return halfspaces_.has_value(); }
  const std::vector<QVec>& vertices() const;
  const std::vector<HalfSpace>& halfspaces() const;

 private:
  friend RationalPolytope convert(const RationalPolytope&);
  std::size_t dim_ = 0;
  std::optional<std::vector<QVec>> vertices_;
  std::optional<std::vector<HalfSpace>> halfspaces_;
};

/// Generators of {x : a_i . x >= 0} in any dimension (rays plus both signs
/// of a lineality basis). No dimension cap; the building block of convert().
std::vector<QVec> dual_generators(const std::vector<QVec>& constraints, std::size_t dim);

/// Fills in the missing representation. Dimension <= 4.
RationalCone convert(const RationalCone& cone);
/// Fills in the missing representation. Throws UsageError for empty or
/// unbounded input. Dimension <= 4.
RationalPolytope convert(const RationalPolytope& polytope);

bool member(const RationalCone& cone, const QVec& v);
bool member(const RationalPolytope& polytope, const QVec& v);

/// True when the cone contains no line.
bool is_pointed(const RationalCone& cone);

/// Vertices after redundancy elimination, lexicographically sorted.
std::vector<QVec> extreme_points(const RationalPolytope& polytope);

/// Primitive extreme rays of a pointed cone, sorted.
std::vector<QVec> extreme_rays(const RationalCone& cone);

struct HilbertBasis {
  std::vector<QVec> elements;  // integral, sorted
};

/// Minimal generating set of cone ∩ Z^d for a pointed cone, d <= 4.
/// Candidates are the lattice points of the box around the zonotope spanned
/// by the primitive extreme rays; the sieve keeps the irreducible ones.
HilbertBasis hilbert_basis(const RationalCone& cone, Execution exec = Execution::Parallel);

/// Hilbert basis of (cone ∩ Z^d) ∩ L where L is the lattice spanned by the
/// rows of `lattice_basis` (full rank, integral).
HilbertBasis veronese_restrict(const RationalCone& cone, const QMat& lattice_basis);

/// Hilbert basis of (cone ∩ subcone) ∩ Z^d.
HilbertBasis veronese_restrict(const RationalCone& cone, const RationalCone& subcone);

/// Writes an integral point of the cone as an N-combination of basis
/// elements (multiplicities in basis order). Depth-first with memoized dead ends.
std::optional<std::vector<BigInt>> decompose(const HilbertBasis& basis, const RationalCone& cone,
                                             const QVec& point);

}  // namespace zdlab::cones
