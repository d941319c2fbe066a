#pragma once

// Constructions around finite generation of divisorial rings: the cone split
// and width threshold behind the zig-zag descent, the iterative adjoint
// construction, graded supports on an elliptic-curve model, and the
// integer-valued bookkeeping of the canonical extension example.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zdlab/cones.hpp"
#include "zdlab/execution.hpp"
#include "zdlab/surface.hpp"
#include "zdlab/zariski.hpp"

namespace zdlab::fingenlab {

/// Cone spanned by the unit rectangle {D + a1 (1-b1) e1 + a2 (1-b2) e2 : a in [0,1]^2}
/// over an integral D in the open positive quadrant, with boundary fractions
/// 0 <= b_i < 1. The subcone C_i is spanned by D + (1-b_i) e_i and the far
/// corner; C_1 ∪ C_2 = C.
class ConeSplit {
 public:
  ConeSplit(QVec d, Rat b1, Rat b2);

  const QVec& d() const { return d_; }
  const Rat& b(int i) const { return i == 1 ? b1_ : b2_; }
  /// D, D + (1-b1) e1, D + (1-b2) e2, D + (1-b1) e1 + (1-b2) e2.
  const std::array<QVec, 4>& rectangle() const { return rect_; }
  const cones::RationalCone& cone() const { return cone_; }
  const cones::RationalCone& subcone(int i) const { return i == 1 ? sub1_ : sub2_; }
  /// The step S_i = e_i.
  static QVec step(int i);

 private:
  QVec d_;
  Rat b1_, b2_;
  std::array<QVec, 4> rect_;
  cones::RationalCone cone_, sub1_, sub2_;
};

struct WidthReport {
  long threshold = 0;                 // max of the per-subcone thresholds
  std::array<long, 2> per_subcone{};  // M_1, M_2
  /// Integral p in C_i with x+y = M-1 and p - S_i outside C (minimality).
  std::optional<QVec> witness;
  int witness_subcone = 0;
  long scanned_to = 0;  // exhaustive scan bound on x+y
};

/// Least M with: every integral p in C_i with x+y >= M has p - S_i in C.
/// Scans x+y <= max(min_scan, tail bound) exhaustively, where the tail bound
/// is the LP maximum of x+y over the rational violation region; throws
/// MathError when that region is unbounded or the bound exceeds 10^6.
WidthReport width_threshold(const ConeSplit& split, Execution exec = Execution::Parallel,
                            long min_scan = 100);

/// Subtracts S_i (i = 1 if G in C_1, else 2) while x+y > M. Throws
/// PreconditionError unless G is integral and in C; InvariantViolation if a
/// step leaves C.
std::vector<QVec> zigzag_descend(const ConeSplit& split, long m, const QVec& g);

// ---------------------------------------------------------------------------

struct AdjointTrace {
  surface::ModelPtr primes;  // model in prime coordinates
  surface::Divisor a, b, adjoint, positive, negative;
  std::optional<Rat> lambda;  // nullopt: +infinity, lambda P taken as 0
  surface::Divisor boundary;  // Sigma
  surface::Divisor round_up;  // R
  surface::Divisor b_next;    // B'
};

/// One step of the adjoint iteration: Zariski-decompose K + A + B, raise B by
/// lambda P up to the first coefficient-one component, round up the rest of N.
/// Requires the effective generators to be a basis, A ample and, in prime
/// coordinates, 0 <= B with floor(B) = 0. Throws InvariantViolation when a
/// postcondition on R or B' fails.
AdjointTrace adjoint_trace(const surface::Divisor& a, const surface::Divisor& b);

/// Postcondition failures of a trace (empty when it checks out).
std::vector<std::string> check_trace(const AdjointTrace& t);

// ---------------------------------------------------------------------------

/// Riemann-Roch lower bound on a curve of genus g: max(deg - g + 1, 0);
/// exact when deg > 2g - 2.
BigInt rr_lower_bound(long genus, const BigInt& degree);
bool rr_exact(long genus, const BigInt& degree);

/// On an elliptic curve with a degree-`ample_degree` class A (0: non-torsion),
/// a point p and D = (d_num/k) p, the bi-graded piece (m1, m2) is
/// (m1 + m2) A + floor(m2 D).
struct EllipticRule {
  long k = 1;
  long d_num = 0;
  long ample_degree = 0;

  BigInt degree(long m1, long m2) const;
  bool nonzero(long m1, long m2) const;
};

struct SpanSample {
  long bound = 0;
  QVec lower_ray;  // primitive extreme rays of the sampled span
  QVec upper_ray;
};

struct EllipticAnalysis {
  EllipticRule rule;
  long bound = 0;
  std::vector<std::pair<long, long>> support;  // within m1 + m2 <= bound
  std::vector<SpanSample> samples;             // bounds bound, 2 bound, 4 bound
  bool span_closed = true;
  std::vector<QVec> unattained_limit_rays;
  std::string description;
  std::string verdict;
};

/// Samples the support for m1 + m2 <= bound and detects limit rays of its
/// span that are approached but never attained (2D only). Throws
/// PreconditionError unless 1 <= d_num < k, ample_degree >= 0 and bound >= 20.
EllipticAnalysis elliptic_support(const EllipticRule& rule, long bound = 40);

struct CanonicalExample {
  long m = 0;
  BigInt h0_x;          // h^0(X, mL)
  BigInt h0_x_minus_s;  // h^0(X, mL - S)
  BigInt h0_s;          // h^0(S, (mL)|_S)
  BigInt image;         // h0_x - h0_x_minus_s
  BigInt deficit;       // h0_s - image
  bool surjective = false;
};

CanonicalExample canonical_example(long m);

}  // namespace zdlab::fingenlab
