#include "zdlab/surface.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "zdlab/cones.hpp"
#include "zdlab/errors.hpp"

namespace zdlab::surface {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
  });
}

std::string default_generator_name(const ModelSpec& spec, std::size_t j) {
  const QVec& g = spec.effective_generators[j];
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g == QVec::unit(g.size(), i)) return spec.class_names[i];
  return "G" + std::to_string(j + 1);
}

}  // namespace

std::shared_ptr<const SurfaceModel> SurfaceModel::create(ModelSpec spec) {
  const std::size_t n = spec.class_names.size();
  if (n == 0) throw UsageError("model needs at least one class");
  std::set<std::string> seen;
  for (const auto& c : spec.class_names) {
    if (!is_identifier(c)) throw UsageError("class name '" + c + "' is not an identifier");
    if (!seen.insert(c).second) throw UsageError("duplicate class name '" + c + "'");
  }
  if (spec.intersection.rows() != n || spec.intersection.cols() != n)
    throw DimensionError("intersection matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  if (!spec.intersection.is_symmetric()) throw UsageError("intersection matrix is not symmetric");
  if (spec.effective_generators.empty()) throw UsageError("model needs effective generators");
  for (const auto& g : spec.effective_generators) {
    if (g.size() != n) throw DimensionError("effective generator has wrong length");
    if (g.is_zero()) throw UsageError("effective generator is zero");
  }
  if (spec.canonical.size() == 0) spec.canonical = QVec(n);
  if (spec.canonical.size() != n) throw DimensionError("canonical class has wrong length");
  for (const auto& r : spec.relations)
    if (r.size() != n) throw DimensionError("relation has wrong length");
  for (const auto& [cls, g] : spec.genus) {
    if (std::find(spec.class_names.begin(), spec.class_names.end(), cls) == spec.class_names.end() &&
        std::find(spec.generator_names.begin(), spec.generator_names.end(), cls) == spec.generator_names.end())
      throw UsageError("genus entry for unknown curve '" + cls + "'");
    if (g < 0) throw UsageError("negative genus for '" + cls + "'");
  }
  if (spec.generator_names.empty()) {
    for (std::size_t j = 0; j < spec.effective_generators.size(); ++j)
      spec.generator_names.push_back(default_generator_name(spec, j));
  }
  if (spec.generator_names.size() != spec.effective_generators.size())
    throw UsageError("generator_names length does not match effective_generators");
  std::set<std::string> gseen;
  for (const auto& g : spec.generator_names) {
    if (!is_identifier(g)) throw UsageError("generator name '" + g + "' is not an identifier");
    if (!gseen.insert(g).second) throw UsageError("duplicate generator name '" + g + "'");
  }
  if (spec.nef_generators.empty()) {
    // Nef cone = dual of the effective cone under the intersection form.
    std::vector<QVec> normals;
    for (const auto& g : spec.effective_generators) normals.push_back(spec.intersection * g);
    spec.nef_generators = cones::dual_generators(normals, n);
  }
  for (const auto& g : spec.nef_generators)
    if (g.size() != n) throw DimensionError("nef generator has wrong length");
  return std::shared_ptr<const SurfaceModel>(new SurfaceModel(std::move(spec)));
}

std::optional<std::size_t> SurfaceModel::class_index(std::string_view name) const {
  for (std::size_t i = 0; i < spec_.class_names.size(); ++i)
    if (spec_.class_names[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> SurfaceModel::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < spec_.generator_names.size(); ++i)
    if (spec_.generator_names[i] == name) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Divisor::Divisor(ModelPtr model, QVec coeffs) : model_(std::move(model)), coeffs_(std::move(coeffs)) {
  if (!model_) throw UsageError("divisor without model");
  if (coeffs_.size() != model_->rank()) throw DimensionError("divisor length does not match model");
}

Divisor Divisor::zero(ModelPtr model) {
  const std::size_t n = model->rank();
  return Divisor(std::move(model), QVec(n));
}

Divisor Divisor::prime(ModelPtr model, std::string_view class_name) {
  auto i = model->class_index(class_name);
  if (!i) throw UsageError("unknown class '" + std::string(class_name) + "'");
  const std::size_t n = model->rank();
  return Divisor(std::move(model), QVec::unit(n, *i));
}

Divisor Divisor::generator(ModelPtr model, std::size_t index) {
  if (index >= model->effective_generators().size()) throw UsageError("generator index out of range");
  QVec g = model->effective_generators()[index];
  return Divisor(std::move(model), std::move(g));
}

Divisor Divisor::canonical(ModelPtr model) {
  QVec k = model->canonical();
  return Divisor(std::move(model), std::move(k));
}

const Rat& Divisor::coeff(std::string_view class_name) const {
  auto i = model_->class_index(class_name);
  if (!i) throw UsageError("unknown class '" + std::string(class_name) + "'");
  return coeffs_[*i];
}

bool Divisor::is_effective() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& x) { return x >= 0; });
}

void require_same_model(const Divisor& a, const Divisor& b) {
  if (a.model_ptr() != b.model_ptr() && a.model().name() != b.model().name())
    throw ModelMismatch("divisors live on different models: '" + a.model().name() + "' vs '" +
                        b.model().name() + "'");
}

Divisor& Divisor::operator+=(const Divisor& o) {
  require_same_model(*this, o);
  coeffs_ += o.coeffs_;
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& o) {
  require_same_model(*this, o);
  coeffs_ -= o.coeffs_;
  return *this;
}

Divisor& Divisor::operator*=(const Rat& s) {
  coeffs_ *= s;
  return *this;
}

bool operator==(const Divisor& a, const Divisor& b) {
  return a.model().name() == b.model().name() && a.coeffs_ == b.coeffs_;
}

Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
Divisor operator-(Divisor a) { return a *= Rat(-1); }
Divisor operator*(const Rat& s, Divisor d) { return d *= s; }

// ---------------------------------------------------------------------------

Divisor round_down(const Divisor& d) {
  QVec c(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) c[i] = Rat(floor_of(d[i]));
  return Divisor(d.model_ptr(), std::move(c));
}

Divisor round_up(const Divisor& d) {
  QVec c(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) c[i] = Rat(ceil_of(d[i]));
  return Divisor(d.model_ptr(), std::move(c));
}

Divisor wedge(const Divisor& a, const Divisor& b) {
  require_same_model(a, b);
  QVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = std::min<Rat>(a[i], b[i]);
  return Divisor(a.model_ptr(), std::move(c));
}

bool leq(const Divisor& a, const Divisor& b) {
  require_same_model(a, b);
  return zdlab::leq(a.coeffs(), b.coeffs());
}

Rat pair(const Divisor& d, const Divisor& e) {
  require_same_model(d, e);
  return d.model().intersection().bilinear(d.coeffs(), e.coeffs());
}

NefCheck is_nef(const Divisor& d) {
  NefCheck out;
  const auto& m = d.model();
  const QVec qd = m.intersection() * d.coeffs();
  for (std::size_t j = 0; j < m.effective_generators().size(); ++j) {
    Rat v = dot(qd, m.effective_generators()[j]);
    if (v < 0 && out.nef) {
      out.nef = false;
      out.violator = j;
    }
    out.pairings.push_back(std::move(v));
  }
  return out;
}

std::optional<QVec> is_pseudoeffective(const Divisor& d) {
  const auto& m = d.model();
  const auto& gens = m.effective_generators();
  const auto& rels = m.relations();
  const std::size_t k = gens.size();
  const std::size_t nvars = k + rels.size();
  if (d.is_zero()) return QVec(k);
  std::vector<Constraint> cons;
  for (std::size_t i = 0; i < m.rank(); ++i) {
    QVec row(nvars);
    for (std::size_t j = 0; j < k; ++j) row[j] = gens[j][i];
    for (std::size_t r = 0; r < rels.size(); ++r) row[k + r] = rels[r][i];
    cons.push_back({std::move(row), Relation::Eq, d[i]});
  }
  std::vector<bool> sign(nvars, false);
  for (std::size_t j = 0; j < k; ++j) sign[j] = true;
  auto res = lp_min(QVec(nvars), cons, sign);
  if (!res.optimal()) return std::nullopt;
  QVec t(k);
  for (std::size_t j = 0; j < k; ++j) t[j] = res.point[j];
  return t;
}

std::optional<Rat> lambda_threshold(const Divisor& b, const Divisor& p, const Divisor& n) {
  require_same_model(b, p);
  require_same_model(b, n);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (floor_of(b[i] - n[i]) > 0)
      throw PreconditionError("lambda_threshold: floor(B - N) has a positive coefficient");
  std::optional<Rat> best;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (p[i] <= 0) continue;
    Rat t = (1 - b[i] + n[i]) / p[i];
    if (!best || t < *best) best = t;
  }
  return best;
}

Divisor boundary_components(const Divisor& d) {
  QVec c(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] == 1) c[i] = 1;
  return Divisor(d.model_ptr(), std::move(c));
}

// ---------------------------------------------------------------------------

Divisor parse_divisor(const ModelPtr& model, std::string_view text) {
  QVec c(model->rank());
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) -> UsageError {
    return UsageError("bad divisor literal '" + std::string(text) + "': " + why);
  };
  skip_ws();
  if (i == text.size()) throw fail("empty");
  bool first = true;
  while (i < text.size()) {
    skip_ws();
    int sign = 1;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      if (text[i] == '-') sign = -1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    first = false;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '+' &&
           !(text[i] == '-' && i > start))
      ++i;
    std::string term(text.substr(start, i - start));
    if (term.empty()) throw fail("dangling sign");
    Rat coef = 1;
    std::string name = term;
    if (auto star = term.find('*'); star != std::string::npos) {
      coef = parse_rat(term.substr(0, star));
      name = term.substr(star + 1);
    } else if (std::isdigit(static_cast<unsigned char>(term[0]))) {
      Rat v = parse_rat(term);
      if (v != 0) throw fail("constant term '" + term + "'");
      continue;
    }
    auto idx = model->class_index(name);
    if (!idx) throw fail("unknown class '" + name + "'");
    c[*idx] += sign * coef;
    skip_ws();
  }
  return Divisor(model, std::move(c));
}

std::string format_divisor(const Divisor& d) {
  std::string out;
  const auto& names = d.model().class_names();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    Rat c = d[i];
    if (out.empty()) {
      out = to_string(c) + "*" + names[i];
    } else {
      out += c < 0 ? " - " : " + ";
      out += to_string(Rat(abs(c))) + "*" + names[i];
    }
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

PrimeCoordinates::PrimeCoordinates(const ModelPtr& model) : original_(model) {
  const auto& gens = model->effective_generators();
  const std::size_t n = model->rank();
  if (gens.size() != n)
    throw PreconditionError("model '" + model->name() +
                            "': effective generators do not form a basis of the class group");
  QMat g(gens);
  basis_t_ = g.transposed();
  auto inv = inverse(basis_t_);
  if (!inv)
    throw PreconditionError("model '" + model->name() + "': effective generators are linearly dependent");
  basis_t_inv_ = *inv;

  ModelSpec spec;
  spec.name = model->name() + "#primes";
  spec.class_names = model->generator_names();
  spec.intersection = g * model->intersection() * basis_t_;
  for (std::size_t j = 0; j < n; ++j) spec.effective_generators.push_back(QVec::unit(n, j));
  spec.generator_names = model->generator_names();
  spec.canonical = basis_t_inv_ * model->canonical();
  for (const auto& [curve, genus] : model->genus())
    if (model->generator_index(curve)) spec.genus[curve] = genus;
  for (const auto& r : model->relations()) spec.relations.push_back(basis_t_inv_ * r);
  for (const auto& v : model->nef_generators()) spec.nef_generators.push_back(basis_t_inv_ * v);
  primes_ = SurfaceModel::create(std::move(spec));
}

Divisor PrimeCoordinates::to_primes(const Divisor& d) const {
  if (d.model().name() != original_->name()) throw ModelMismatch("to_primes: divisor from another model");
  return Divisor(primes_, basis_t_inv_ * d.coeffs());
}

Divisor PrimeCoordinates::from_primes(const Divisor& d) const {
  if (d.model().name() != primes_->name()) throw ModelMismatch("from_primes: divisor from another model");
  return Divisor(original_, basis_t_ * d.coeffs());
}

}  // namespace zdlab::surface
