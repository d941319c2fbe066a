#include "zdlab/fingenlab.hpp"

#include <algorithm>
#include <limits>

#include "zdlab/errors.hpp"

namespace zdlab::fingenlab {

using surface::Divisor;

ConeSplit::ConeSplit(QVec d, Rat b1, Rat b2) : d_(std::move(d)), b1_(std::move(b1)), b2_(std::move(b2)) {
  if (d_.size() != 2) throw DimensionError("cone split: D must have two coordinates");
  if (d_[0] <= 0 || d_[1] <= 0) throw PreconditionError("cone split: D must have positive entries");
  for (const Rat* b : {&b1_, &b2_})
    if (*b < 0 || *b >= 1) throw PreconditionError("cone split: b_i must lie in [0,1)");
  const QVec u1 = (1 - b1_) * step(1);
  const QVec u2 = (1 - b2_) * step(2);
  rect_ = {d_, d_ + u1, d_ + u2, d_ + u1 + u2};
  cone_ = cones::convert(cones::RationalCone::from_generators(2, {rect_.begin(), rect_.end()}));
  sub1_ = cones::convert(cones::RationalCone::from_generators(2, {rect_[1], rect_[3]}));
  sub2_ = cones::convert(cones::RationalCone::from_generators(2, {rect_[2], rect_[3]}));
}

QVec ConeSplit::step(int i) { return QVec::unit(2, i == 1 ? 0 : 1); }

namespace {

constexpr long kWidthCap = 1'000'000;

bool fails(const ConeSplit& s, int i, const QVec& p) {
  return cones::member(s.subcone(i), p) && !cones::member(s.cone(), p - ConeSplit::step(i));
}

// Largest x + y over the rational points of C_i with psi . (p - S_i) <= -1 for
// some facet psi of C; nullopt when every such region is empty.
std::optional<BigInt> tail_bound(const ConeSplit& s, int i) {
  std::optional<BigInt> best;
  const QVec si = ConeSplit::step(i);
  for (const auto& psi : s.cone().halfspaces()) {
    std::vector<Constraint> cons;
    for (const auto& h : s.subcone(i).halfspaces()) cons.push_back({h, Relation::Ge, Rat(0)});
    cons.push_back({psi, Relation::Le, dot(psi, si) - 1});
    auto res = lp_min(QVec{Rat(-1), Rat(-1)}, cons, {true, true});
    if (res.status == LpStatus::Infeasible) continue;
    if (res.status == LpStatus::Unbounded)
      throw MathError("width: violations of the width condition are unbounded (malformed split)");
    BigInt t = floor_of(-res.value);
    if (!best || t > *best) best = t;
  }
  return best;
}

// first_fail[s] = smallest x with (x, s - x) failing in C_i, or -1.
std::vector<long> scan(const ConeSplit& s, int i, long limit, Execution exec) {
  std::vector<long> first_fail(static_cast<std::size_t>(limit) + 1, -1);
  auto row = [&](long sum) {
    for (long x = 0; x <= sum; ++x)
      if (fails(s, i, QVec::from_ints({x, sum - x}))) {
        first_fail[static_cast<std::size_t>(sum)] = x;
        return;
      }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long sum = 0; sum <= limit; ++sum) row(sum);
  } else {
    for (long sum = 0; sum <= limit; ++sum) row(sum);
  }
  return first_fail;
}

}  // namespace

WidthReport width_threshold(const ConeSplit& split, Execution exec, long min_scan) {
  WidthReport rep;
  long limit = std::max(min_scan, 0L);
  for (int i = 1; i <= 2; ++i)
    if (auto t = tail_bound(split, i)) {
      if (*t > kWidthCap) throw MathError("width: no threshold M <= 10^6 (malformed split)");
      limit = std::max(limit, t->get_si());
    }
  rep.scanned_to = limit;
  long best_sum = -1;
  for (int i = 1; i <= 2; ++i) {
    const auto ff = scan(split, i, limit, exec);
    long last = -1;
    for (long sum = limit; sum >= 0; --sum)
      if (ff[static_cast<std::size_t>(sum)] >= 0) {
        last = sum;
        break;
      }
    rep.per_subcone[static_cast<std::size_t>(i - 1)] = last + 1;
    if (last > best_sum) {
      best_sum = last;
      rep.witness = QVec::from_ints({ff[static_cast<std::size_t>(last)], last - ff[static_cast<std::size_t>(last)]});
      rep.witness_subcone = i;
    }
  }
  rep.threshold = std::max(rep.per_subcone[0], rep.per_subcone[1]);
  return rep;
}

std::vector<QVec> zigzag_descend(const ConeSplit& split, long m, const QVec& g) {
  if (g.size() != 2 || !g.is_integral()) throw PreconditionError("zigzag: G must be an integral point of the plane");
  if (!cones::member(split.cone(), g)) throw PreconditionError("zigzag: G = " + to_string(g) + " is not in the cone");
  std::vector<QVec> chain{g};
  QVec cur = g;
  while (cur[0] + cur[1] > m) {
    int i = 0;
    if (cones::member(split.subcone(1), cur)) i = 1;
    else if (cones::member(split.subcone(2), cur)) i = 2;
    else throw InvariantViolation("zigzag: " + to_string(cur) + " lies in neither subcone");
    cur -= ConeSplit::step(i);
    if (!cones::member(split.cone(), cur))
      throw InvariantViolation("zigzag: step to " + to_string(cur) + " left the cone");
    chain.push_back(cur);
  }
  return chain;
}

// ---------------------------------------------------------------------------

AdjointTrace adjoint_trace(const Divisor& a, const Divisor& b) {
  surface::require_same_model(a, b);
  const surface::PrimeCoordinates pc(a.model_ptr());
  if (!zariski::is_ample(a))
    throw PreconditionError("adjoint trace: " + surface::format_divisor(a) + " is not ample");
  const Divisor bp = pc.to_primes(b);
  for (std::size_t i = 0; i < bp.size(); ++i)
    if (bp[i] < 0 || bp[i] >= 1)
      throw PreconditionError("adjoint trace: B must satisfy 0 <= B and floor(B) = 0 along every prime");
  const auto& primes = pc.primes();
  const Divisor ap = pc.to_primes(a);
  const Divisor adjoint = Divisor::canonical(primes) + ap + bp;
  const auto z = zariski::decompose(adjoint);  // NotPseudoEffective propagates

  AdjointTrace t{primes, ap, bp, adjoint, z.positive, z.negative, std::nullopt,
                 Divisor::zero(primes), Divisor::zero(primes), Divisor::zero(primes)};
  if (!z.positive.is_effective())
    throw InvariantViolation("adjoint trace: positive part is not effective in prime coordinates");
  t.lambda = surface::lambda_threshold(bp, z.positive, z.negative);
  const Divisor raised = t.lambda ? *t.lambda * z.positive : Divisor::zero(primes);
  const Divisor level = bp + raised - z.negative;
  t.boundary = surface::boundary_components(level);
  QVec r(level.size());
  for (std::size_t i = 0; i < level.size(); ++i)
    if (-level[i] > 0) r[i] = Rat(ceil_of(-level[i]));
  t.round_up = Divisor(primes, std::move(r));
  t.b_next = level + t.round_up;

  const auto bad = check_trace(t);
  if (!bad.empty()) throw InvariantViolation("adjoint trace: " + bad.front());
  return t;
}

std::vector<std::string> check_trace(const AdjointTrace& t) {
  std::vector<std::string> bad;
  const Divisor zero = Divisor::zero(t.primes);
  if (!surface::leq(zero, t.round_up) || !surface::leq(t.round_up, surface::round_up(t.negative)))
    bad.push_back("0 <= R <= ceil(N) fails");
  for (std::size_t i = 0; i < t.b_next.size(); ++i)
    if (t.b_next[i] < 0 || t.b_next[i] > 1) {
      bad.push_back("B' coefficient " + zdlab::to_string(t.b_next[i]) + " outside (0,1]");
      break;
    }
  if (!(surface::round_down(t.b_next) == t.boundary)) bad.push_back("floor(B') != Sigma");
  return bad;
}

// ---------------------------------------------------------------------------

BigInt rr_lower_bound(long genus, const BigInt& degree) {
  BigInt v = degree - genus + 1;
  return v > 0 ? v : BigInt(0);
}

bool rr_exact(long genus, const BigInt& degree) { return degree > 2 * genus - 2; }

BigInt EllipticRule::degree(long m1, long m2) const {
  return BigInt(m1 + m2) * ample_degree + floor_of(make_rat(BigInt(m2) * d_num, k));
}

bool EllipticRule::nonzero(long m1, long m2) const {
  if (m1 == 0 && m2 == 0) return true;
  // deg >= 1 gives h0 = deg; deg 0 here is a non-torsion class with no sections.
  return rr_lower_bound(1, degree(m1, m2)) > 0;
}

namespace {

// Orders directions in the closed positive quadrant by angle from e1.
bool below(const QVec& a, const QVec& b) { return a[1] * b[0] < b[1] * a[0]; }

SpanSample sample_span(const EllipticRule& rule, long bound) {
  SpanSample s{bound, {}, {}};
  for (long total = 1; total <= bound; ++total)
    for (long m1 = 0; m1 <= total; ++m1) {
      const long m2 = total - m1;
      if (!rule.nonzero(m1, m2)) continue;
      QVec p = QVec::from_ints({m1, m2});
      if (s.lower_ray.size() == 0 || below(p, s.lower_ray)) s.lower_ray = primitive(p);
      if (s.upper_ray.size() == 0 || below(s.upper_ray, p)) s.upper_ray = primitive(p);
    }
  return s;
}

}  // namespace

EllipticAnalysis elliptic_support(const EllipticRule& rule, long bound) {
  if (rule.k < 1 || rule.d_num < 1 || rule.d_num >= rule.k)
    throw PreconditionError("elliptic support: need 1 <= d_times_k < k (floor of the boundary is 0)");
  if (rule.ample_degree < 0) throw PreconditionError("elliptic support: ample degree must be >= 0");
  if (bound < 20) throw PreconditionError("elliptic support: sample bound must be at least 20");
  EllipticAnalysis out;
  out.rule = rule;
  out.bound = bound;
  for (long total = 0; total <= bound; ++total)
    for (long m1 = total; m1 >= 0; --m1)
      if (rule.nonzero(m1, total - m1)) out.support.emplace_back(m1, total - m1);
  for (long b : {bound, 2 * bound, 4 * bound}) out.samples.push_back(sample_span(rule, b));

  // A side of the span that keeps rotating as the bound grows approaches the
  // adjacent axis without reaching it; a side that stays put is attained.
  auto rotating = [&](auto pick, auto toward) {
    for (std::size_t i = 1; i < out.samples.size(); ++i)
      if (!toward(pick(out.samples[i]), pick(out.samples[i - 1]))) return false;
    return true;
  };
  const bool lower_moves = rotating([](const SpanSample& s) { return s.lower_ray; }, below);
  const bool upper_moves = rotating([](const SpanSample& s) { return s.upper_ray; },
                                    [](const QVec& a, const QVec& b) { return below(b, a); });
  if (lower_moves) out.unattained_limit_rays.push_back(QVec::from_ints({1, 0}));
  if (upper_moves) out.unattained_limit_rays.push_back(QVec::from_ints({0, 1}));
  out.span_closed = out.unattained_limit_rays.empty();

  long first_row = std::numeric_limits<long>::max();
  for (const auto& [m1, m2] : out.support)
    if (m1 + m2 > 0) first_row = std::min(first_row, m2);
  bool rows = first_row != std::numeric_limits<long>::max();
  for (long total = 1; rows && total <= bound; ++total)
    for (long m1 = 0; m1 <= total; ++m1)
      if (rule.nonzero(m1, total - m1) != (total - m1 >= first_row)) {
        rows = false;
        break;
      }
  if (rows && first_row == 0) out.description = "N^2";
  else if (rows) out.description = "{(0,0)} ∪ {m2 >= " + std::to_string(first_row) + "}";
  else out.description = std::to_string(out.support.size()) + " points with m1+m2 <= " + std::to_string(bound);
  out.verdict = out.span_closed ? "consistent with finite generation" : "NOT finitely generated";
  return out;
}

// ---------------------------------------------------------------------------

namespace {

BigInt binom(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

CanonicalExample canonical_example(long m) {
  if (m < 1) throw PreconditionError("canonical example: m must be a positive integer");
  CanonicalExample e;
  e.m = m;
  const auto um = static_cast<unsigned long>(m);
  for (unsigned long j = um; j <= 2 * um; ++j) e.h0_x += binom(j + 2, 2) * (j - um + 1);
  for (unsigned long j = um + 1; j <= 2 * um; ++j) e.h0_x_minus_s += binom(j + 2, 2) * (j - um);
  e.h0_s = binom(2 * um + 3, 3);
  e.image = e.h0_x - e.h0_x_minus_s;
  e.deficit = e.h0_s - e.image;
  e.surjective = e.image >= e.h0_s;
  return e;
}

}  // namespace zdlab::fingenlab
