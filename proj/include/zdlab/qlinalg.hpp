#pragma once

// Exact rational linear algebra: scalars, dense vectors and matrices,
// Gaussian elimination, Sylvester's criterion and a two-phase simplex.
// Nothing in here ever rounds.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zdlab {

using BigInt = mpz_class;
using Rat = mpq_class;

/// Builds num/den in lowest terms (den may be negative, must be nonzero).
Rat make_rat(const BigInt& num, const BigInt& den = 1);

/// "p/q", with "/q" omitted when q == 1.
std::string to_string(const Rat& r);
std::string to_string(const BigInt& z);

/// Accepts "p", "p/q", "-p/q" (optional surrounding whitespace).
Rat parse_rat(std::string_view text);

BigInt floor_of(const Rat& r);
BigInt ceil_of(const Rat& r);
bool is_integer(const Rat& r);

/// Smallest integer s with s*s >= n (n >= 0).
BigInt isqrt_ceil(const BigInt& n);

class QVec {
 public:
  QVec() = default;
  explicit QVec(std::size_t n) : entries_(n, Rat(0)) {}
  QVec(std::initializer_list<Rat> xs) : entries_(xs) {}
  explicit QVec(std::vector<Rat> xs) : entries_(std::move(xs)) {}

  static QVec from_ints(std::initializer_list<long> xs);
  static QVec unit(std::size_t n, std::size_t i);

  std::size_t size() const { return entries_.size(); }
  const Rat& operator[](std::size_t i) const { return entries_[i]; }
  Rat& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Rat>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool is_zero() const;
  bool is_integral() const;

  QVec& operator+=(const QVec& o);
  QVec& operator-=(const QVec& o);
  QVec& operator*=(const Rat& s);

  friend bool operator==(const QVec& a, const QVec& b) { return a.entries_ == b.entries_; }
  friend bool operator<(const QVec& a, const QVec& b) { return a.entries_ < b.entries_; }

 private:
  std::vector<Rat> entries_;
};

QVec operator+(QVec a, const QVec& b);
QVec operator-(QVec a, const QVec& b);
QVec operator-(QVec a);
QVec operator*(const Rat& s, QVec v);
Rat dot(const QVec& a, const QVec& b);
Rat norm_squared(const QVec& v);
Rat max_norm(const QVec& v);

/// Componentwise a <= b.
bool leq(const QVec& a, const QVec& b);

/// Least common multiple of all denominators.
BigInt common_denominator(const QVec& v);

/// Scales to the unique primitive integral vector on the same ray; zero stays zero.
QVec primitive(const QVec& v);

std::string to_string(const QVec& v);

class QMat {
 public:
  QMat() = default;
  QMat(std::size_t rows, std::size_t cols);
  explicit QMat(std::vector<QVec> rows);
  QMat(std::initializer_list<std::initializer_list<Rat>> rows);

  static QMat identity(std::size_t n);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows() == cols_; }
  bool is_symmetric() const;

  const QVec& row(std::size_t i) const { return rows_[i]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  Rat& operator()(std::size_t i, std::size_t j) { return rows_[i][j]; }

  QVec operator*(const QVec& x) const;
  QMat operator*(const QMat& o) const;
  QMat transposed() const;

  /// x^T A y.
  Rat bilinear(const QVec& x, const QVec& y) const;

  friend bool operator==(const QMat& a, const QMat& b) = default;

 private:
  std::vector<QVec> rows_;
  std::size_t cols_ = 0;
};

/// Exact solve of A x = b. Empty optional when A is singular.
/// Throws DimensionError when A is not square or b has the wrong length.
std::optional<QVec> solve_linear(const QMat& a, const QVec& b);

std::size_t rank(const QMat& a);
Rat determinant(const QMat& a);

/// Basis of {x : A x = 0}; `cols` is the ambient dimension (needed when A has no rows).
std::vector<QVec> nullspace(const std::vector<QVec>& rows, std::size_t cols);

/// Inverse of a square nonsingular matrix.
std::optional<QMat> inverse(const QMat& a);

struct DefinitenessWitness {
  bool negative_definite = false;
  /// Leading principal minors of -A, in order of size.
  std::vector<Rat> minors;
};

/// Sylvester's criterion applied to -A. Throws UsageError on non-symmetric input.
DefinitenessWitness is_negative_definite(const QMat& a);

// ---------------------------------------------------------------------------
// Linear programming

enum class Relation { Le, Eq, Ge };

struct Constraint {
  QVec coeffs;
  Relation rel = Relation::Ge;
  Rat rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  QVec point;

  bool optimal() const { return status == LpStatus::Optimal; }
};

/// Minimizes c.x subject to the constraints. Variables are free unless
/// flagged in `nonnegative` (which, if nonempty, must have c.size() entries).
/// Exact two-phase simplex with Bland's rule.
LpResult lp_min(const QVec& c, std::span<const Constraint> constraints,
                const std::vector<bool>& nonnegative = {});

/// Convenience: is some x >= 0 with sum x_j columns_j == target?
/// Returns the weights when feasible.
std::optional<QVec> nonnegative_combination(std::span<const QVec> columns, const QVec& target);

}  // namespace zdlab
