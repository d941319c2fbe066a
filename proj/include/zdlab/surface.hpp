#pragma once

// Finite combinatorial stand-ins for smooth projective surfaces: named
// classes, a symmetric intersection form and a declared list of effective
// generators (trusted to generate the effective cone), plus exact divisor
// arithmetic on top of them.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zdlab/qlinalg.hpp"

namespace zdlab::surface {

struct ModelSpec {
  std::string name;
  std::vector<std::string> class_names;
  QMat intersection;
  std::vector<QVec> effective_generators;
  /// Optional display names for the generators (identifiers). Defaults to the
  /// class name for unit generators, "G<i>" otherwise.
  std::vector<std::string> generator_names;
  QVec canonical;
  std::map<std::string, long> genus;
  /// Classes declared linearly equivalent to zero.
  std::vector<QVec> relations;
  /// Optional; computed as the dual of the effective cone when absent.
  std::vector<QVec> nef_generators;
};

class SurfaceModel {
 public:
  static std::shared_ptr<const SurfaceModel> create(ModelSpec spec);

  const std::string& name() const { return spec_.name; }
  std::size_t rank() const { return spec_.class_names.size(); }
  const std::vector<std::string>& class_names() const { return spec_.class_names; }
  const QMat& intersection() const { return spec_.intersection; }
  const std::vector<QVec>& effective_generators() const { return spec_.effective_generators; }
  const std::vector<std::string>& generator_names() const { return spec_.generator_names; }
  const QVec& canonical() const { return spec_.canonical; }
  const std::map<std::string, long>& genus() const { return spec_.genus; }
  const std::vector<QVec>& relations() const { return spec_.relations; }
  const std::vector<QVec>& nef_generators() const { return spec_.nef_generators; }
  const ModelSpec& spec() const { return spec_; }

  std::optional<std::size_t> class_index(std::string_view name) const;
  std::optional<std::size_t> generator_index(std::string_view name) const;

 private:
  explicit SurfaceModel(ModelSpec spec) : spec_(std::move(spec)) {}
  ModelSpec spec_;
};

using ModelPtr = std::shared_ptr<const SurfaceModel>;

class Divisor {
 public:
  Divisor(ModelPtr model, QVec coeffs);

  static Divisor zero(ModelPtr model);
  /// The named class with coefficient one.
  static Divisor prime(ModelPtr model, std::string_view class_name);
  static Divisor generator(ModelPtr model, std::size_t index);
  static Divisor canonical(ModelPtr model);

  const SurfaceModel& model() const { return *model_; }
  const ModelPtr& model_ptr() const { return model_; }
  const QVec& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  const Rat& operator[](std::size_t i) const { return coeffs_[i]; }
  /// mult along a named class.
  const Rat& coeff(std::string_view class_name) const;

  bool is_zero() const { return coeffs_.is_zero(); }
  bool is_effective() const;  // every coefficient >= 0

  Divisor& operator+=(const Divisor& o);
  Divisor& operator-=(const Divisor& o);
  Divisor& operator*=(const Rat& s);

  friend bool operator==(const Divisor& a, const Divisor& b);

 private:
  ModelPtr model_;
  QVec coeffs_;
};

Divisor operator+(Divisor a, const Divisor& b);
Divisor operator-(Divisor a, const Divisor& b);
Divisor operator-(Divisor a);
Divisor operator*(const Rat& s, Divisor d);

/// Throws ModelMismatch unless both divisors live on the same model.
void require_same_model(const Divisor& a, const Divisor& b);

Divisor round_down(const Divisor& d);
Divisor round_up(const Divisor& d);
/// Coefficientwise minimum.
Divisor wedge(const Divisor& a, const Divisor& b);
/// Componentwise a <= b.
bool leq(const Divisor& a, const Divisor& b);

/// Intersection number coeffs(d) . Q . coeffs(e).
Rat pair(const Divisor& d, const Divisor& e);

struct NefCheck {
  bool nef = true;
  std::optional<std::size_t> violator;  // first generator with negative pairing
  std::vector<Rat> pairings;            // pair(D, G_j) for every generator
};

NefCheck is_nef(const Divisor& d);

/// Weights t_j >= 0 with D = sum t_j G_j (modulo declared relations), or
/// nullopt when D is not pseudo-effective.
std::optional<QVec> is_pseudoeffective(const Divisor& d);

/// sup{t >= 0 : floor(B + tP - N) <= 0}; nullopt means +infinity (P <= 0).
/// Requires floor(B - N) <= 0.
std::optional<Rat> lambda_threshold(const Divisor& b, const Divisor& p, const Divisor& n);

/// Reduced divisor of the classes whose coefficient is exactly 1.
Divisor boundary_components(const Divisor& d);

/// Divisor literal syntax: "3/2*H - 1*E", "H + 2*E", "0".
Divisor parse_divisor(const ModelPtr& model, std::string_view text);
std::string format_divisor(const Divisor& d);

/// Rewrites a model whose effective generators form a basis of the class
/// group so that the generators themselves (prime curves) are the classes.
/// Coefficientwise operations then read multiplicities along primes.
class PrimeCoordinates {
 public:
  explicit PrimeCoordinates(const ModelPtr& model);

  const ModelPtr& primes() const { return primes_; }
  const ModelPtr& original() const { return original_; }
  Divisor to_primes(const Divisor& d) const;
  Divisor from_primes(const Divisor& d) const;

 private:
  ModelPtr original_;
  ModelPtr primes_;
  QMat basis_t_;      // columns are the generators
  QMat basis_t_inv_;
};

}  // namespace zdlab::surface
