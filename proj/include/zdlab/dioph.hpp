#pragma once

// Diophantine approximation of rational points by convex combinations of
// nearby points with controlled denominators, and the integrality-gap
// criterion characterizing rational polytopes.

#include <cstddef>
#include <string>
#include <vector>

#include "zdlab/cones.hpp"
#include "zdlab/qlinalg.hpp"

namespace zdlab::dioph {

enum class Norm { Euclidean, Max };

struct ApproxRequest {
  QVec x;
  BigInt k = 1;
  Rat eps = 1;
  Norm norm = Norm::Euclidean;
};

struct ApproxPoint {
  QVec point;
  BigInt denominator;  // k_i, a multiple of k with k_i * point / k integral
  Rat weight;
};

struct ApproxResult {
  std::vector<ApproxPoint> points;
};

/// Candidate-evaluation budget: $ZDLAB_SEARCH_BUDGET, default 10^6.
std::size_t default_budget();

/// ‖a - b‖ < bound in the given norm, compared exactly (squares for Euclidean).
bool closer_than(const QVec& a, const QVec& b, const Rat& bound, Norm norm);

/// Searches k_i = k*m for m = 1, 2, ...: accepts every x_i = z/m (z integral)
/// with ‖x - x_i‖ < eps/k_i and stops once x is in their convex hull.
/// Throws PreconditionError for k < 1 or eps <= 0, BudgetExceeded when the
/// budget runs out.
ApproxResult approximate(const ApproxRequest& req, std::size_t budget = default_budget());

/// One message per violated clause (weights sum to one and are nonnegative,
/// k | k_i, k_i x_i / k integral, distance bound, exact convex combination).
std::vector<std::string> check(const ApproxRequest& req, const ApproxResult& result);

struct IntegralHalfSpace {
  QVec psi;  // integral
  BigInt c;  // psi . w >= c
};

struct PolytopeCertificate {
  Rat eps;
  BigInt k = 1;
  std::vector<IntegralHalfSpace> halfspaces;
};

/// Clears denominators of an H-representation and picks
/// eps = 1 / (max_i ceil ‖psi_i‖ + 1), k = 1. Throws UsageError for empty or
/// unbounded polytopes.
PolytopeCertificate polytope_certificate(const cones::RationalPolytope& polytope);

/// ‖psi_i‖ < 1/eps for every halfspace (squared comparison) and k >= 1.
bool certificate_well_formed(const PolytopeCertificate& cert);

enum class Verdict { Confirmed, Inapplicable, Violation };

std::string to_string(Verdict v);

/// Inapplicable unless l v is integral, w lies in P and ‖v - w‖ < eps/(l k);
/// then Confirmed if v lies in P and Violation otherwise. The polytope should
/// carry its halfspace form (see cones::convert) to avoid reconverting.
Verdict criterion_verify(const cones::RationalPolytope& polytope, const PolytopeCertificate& cert,
                         const QVec& v, const QVec& w, const BigInt& l);

}  // namespace zdlab::dioph
