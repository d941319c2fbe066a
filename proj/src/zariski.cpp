#include "zdlab/zariski.hpp"

#include <algorithm>
#include <set>

namespace zdlab::zariski {

using surface::is_nef;
using surface::pair;

namespace {

QMat gram(const surface::SurfaceModel& m, const std::vector<std::size_t>& support) {
  const auto& gens = m.effective_generators();
  QMat g(support.size(), support.size());
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t b = 0; b < support.size(); ++b)
      g(a, b) = m.intersection().bilinear(gens[support[a]], gens[support[b]]);
  return g;
}

// Solves pair(D - sum nu_i G_i, G_j) = 0 for j in the support.
std::optional<QVec> solve_orthogonality(const Divisor& d, const std::vector<std::size_t>& support,
                                        const QMat& g) {
  const auto& m = d.model();
  QVec rhs(support.size());
  for (std::size_t a = 0; a < support.size(); ++a)
    rhs[a] = m.intersection().bilinear(d.coeffs(), m.effective_generators()[support[a]]);
  return solve_linear(g, rhs);
}

Divisor assemble(const Divisor& d, const std::vector<std::size_t>& support, const QVec& nu) {
  QVec n(d.size());
  for (std::size_t a = 0; a < support.size(); ++a)
    n += nu[a] * d.model().effective_generators()[support[a]];
  return Divisor(d.model_ptr(), std::move(n));
}

ZariskiResult finish(const Divisor& d, const std::vector<std::size_t>& support, const QVec& nu,
                     const QMat& g) {
  Divisor n = assemble(d, support, nu);
  Divisor p = d - n;
  ZariskiResult r{p, n, {}, {}};
  r.certificate.nef_pairings = is_nef(p).pairings;
  for (std::size_t a = 0; a < support.size(); ++a) {
    if (nu[a] == 0) continue;
    const std::size_t j = support[a];
    r.support.push_back({j, d.model().generator_names()[j], nu[a]});
    r.certificate.orthogonality.push_back(pair(p, Divisor::generator(d.model_ptr(), j)));
  }
  std::vector<std::size_t> kept;
  for (const auto& s : r.support) kept.push_back(s.generator);
  r.certificate.gram_minors = is_negative_definite(kept.size() == support.size() ? g : gram(d.model(), kept)).minors;
  return r;
}

}  // namespace

ZariskiResult decompose(const Divisor& d) {
  if (!surface::is_pseudoeffective(d))
    throw NotPseudoEffective("divisor " + surface::format_divisor(d) + " is not pseudo-effective");
  const auto& m = d.model();
  const std::size_t k = m.effective_generators().size();
  std::vector<std::size_t> support;
  QVec nu;
  QMat g;
  for (std::size_t round = 0; round <= k; ++round) {
    if (support.empty()) {
      nu = QVec();
      g = QMat();
    } else {
      g = gram(m, support);
      if (!is_negative_definite(g).negative_definite)
        throw ModelInconsistency("Gram matrix of the negative support is not negative definite");
      auto solved = solve_orthogonality(d, support, g);
      if (!solved) throw ModelInconsistency("orthogonality system is singular");
      nu = *solved;
      for (const auto& x : nu)
        if (x < 0) throw ModelInconsistency("negative part has a negative coefficient");
    }
    Divisor p = d - assemble(d, support, nu);
    const auto check = is_nef(p);
    if (check.nef) return finish(d, support, nu, g);
    for (std::size_t j = 0; j < k; ++j)
      if (check.pairings[j] < 0) support.push_back(j);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
  }
  throw ModelInconsistency("support growth did not terminate");
}

ZariskiResult oracle(const Divisor& d) {
  if (!surface::is_pseudoeffective(d))
    throw NotPseudoEffective("divisor " + surface::format_divisor(d) + " is not pseudo-effective");
  const auto& m = d.model();
  const std::size_t k = m.effective_generators().size();
  if (k > kOracleMaxGenerators) throw UsageError("oracle: too many effective generators");
  std::vector<ZariskiResult> passing;
  for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < k; ++j)
      if (mask & (1UL << j)) support.push_back(j);
    QVec nu;
    QMat g;
    if (!support.empty()) {
      g = gram(m, support);
      if (!is_negative_definite(g).negative_definite) continue;
      auto solved = solve_orthogonality(d, support, g);
      if (!solved) continue;
      nu = *solved;
      if (std::any_of(nu.begin(), nu.end(), [](const Rat& x) { return x <= 0; })) continue;
    }
    Divisor p = d - assemble(d, support, nu);
    if (!is_nef(p).nef) continue;
    passing.push_back(finish(d, support, nu, g));
  }
  if (passing.size() != 1)
    throw InvariantViolation("oracle: " + std::to_string(passing.size()) +
                             " candidate supports satisfy the Zariski conditions for " +
                             surface::format_divisor(d));
  return passing.front();
}

VerifyReport verify(const Divisor& d, const ZariskiResult& r) {
  VerifyReport rep;
  auto fail = [&](std::string s) { rep.failures.push_back(std::move(s)); };
  const auto& m = d.model();
  if (!(r.positive + r.negative == d)) fail("D != P + N");

  QVec n(d.size());
  std::vector<std::size_t> support;
  for (const auto& s : r.support) {
    if (s.generator >= m.effective_generators().size()) {
      fail("support index out of range");
      return rep;
    }
    if (s.multiplicity <= 0) fail("support multiplicity of " + s.name + " is not positive");
    n += s.multiplicity * m.effective_generators()[s.generator];
    support.push_back(s.generator);
  }
  if (!(Divisor(d.model_ptr(), n) == r.negative)) fail("N is not the stated combination of support curves");

  const auto nef = is_nef(r.positive);
  if (!nef.nef) fail("P is not nef");
  if (nef.pairings != r.certificate.nef_pairings) fail("nef pairings do not match");

  std::vector<Rat> ortho;
  for (auto j : support) ortho.push_back(pair(r.positive, Divisor::generator(d.model_ptr(), j)));
  if (std::any_of(ortho.begin(), ortho.end(), [](const Rat& x) { return x != 0; }))
    fail("P is not orthogonal to the support");
  if (ortho != r.certificate.orthogonality) fail("orthogonality products do not match");

  const auto nd = is_negative_definite(gram(m, support));
  if (!nd.negative_definite) fail("support Gram matrix is not negative definite");
  if (nd.minors != r.certificate.gram_minors) fail("Gram minors do not match");
  return rep;
}

bool same_decomposition(const ZariskiResult& a, const ZariskiResult& b) {
  if (!(a.positive == b.positive) || !(a.negative == b.negative)) return false;
  if (a.support.size() != b.support.size()) return false;
  for (std::size_t i = 0; i < a.support.size(); ++i)
    if (a.support[i].generator != b.support[i].generator ||
        a.support[i].multiplicity != b.support[i].multiplicity)
      return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

// Generator whose multiplicity sigma' minimizes; nullopt when gamma is a
// class that no generator represents (its multiplicity is then always 0).
std::optional<std::size_t> resolve_gamma(const surface::SurfaceModel& m, std::string_view gamma) {
  if (auto j = m.generator_index(gamma)) return j;
  auto i = m.class_index(gamma);
  if (!i) throw UsageError("unknown prime '" + std::string(gamma) + "'");
  const QVec unit = QVec::unit(m.rank(), *i);
  const auto& gens = m.effective_generators();
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (gens[j] == unit) return j;
  return std::nullopt;
}

std::optional<Rat> sigma_prime_value(const Divisor& d, std::optional<std::size_t> gamma) {
  const auto& m = d.model();
  const auto& gens = m.effective_generators();
  const auto& nef = m.nef_generators();
  const auto& rels = m.relations();
  const std::size_t k = gens.size();
  const std::size_t nvars = k + nef.size() + rels.size();
  std::vector<Constraint> cons;
  for (std::size_t i = 0; i < m.rank(); ++i) {
    QVec row(nvars);
    for (std::size_t j = 0; j < k; ++j) row[j] = gens[j][i];
    for (std::size_t j = 0; j < nef.size(); ++j) row[k + j] = nef[j][i];
    for (std::size_t r = 0; r < rels.size(); ++r) row[k + nef.size() + r] = rels[r][i];
    cons.push_back({std::move(row), Relation::Eq, d[i]});
  }
  std::vector<bool> sign(nvars, false);
  for (std::size_t j = 0; j < k + nef.size(); ++j) sign[j] = true;
  QVec c(nvars);
  if (gamma) c[*gamma] = 1;
  auto res = lp_min(c, cons, sign);
  if (res.status == LpStatus::Infeasible) return std::nullopt;
  if (res.status == LpStatus::Unbounded) throw InvariantViolation("sigma' LP unbounded");
  return res.value;
}

}  // namespace

SigmaValue sigma_prime(const Divisor& d, std::string_view gamma) {
  auto j = resolve_gamma(d.model(), gamma);
  return {std::string(gamma), sigma_prime_value(d, j)};
}

bool is_ample(const Divisor& a) {
  const auto check = is_nef(a);
  return std::all_of(check.pairings.begin(), check.pairings.end(), [](const Rat& x) { return x > 0; });
}

Divisor default_ample(const surface::ModelPtr& model) {
  Divisor a = Divisor::zero(model);
  for (const auto& v : model->nef_generators()) a += Divisor(model, v);
  if (!is_ample(a)) throw ModelInconsistency("model '" + model->name() + "': nef generators do not sum to an ample class");
  return a;
}

SigmaValue sigma(const Divisor& d, std::string_view gamma, const Divisor& ample,
                 const SigmaSchedule& schedule) {
  surface::require_same_model(d, ample);
  if (!is_ample(ample))
    throw PreconditionError("sigma: " + surface::format_divisor(ample) + " is not ample in the model");
  auto j = resolve_gamma(d.model(), gamma);
  SigmaValue out{std::string(gamma), std::nullopt};

  auto eps = [](int k) { return make_rat(1, BigInt(1) << k); };
  auto f = [&](int k) { return sigma_prime_value(d + eps(k) * ample, j); };

  std::vector<Rat> extrapolated;
  auto prev = f(schedule.first_k);
  if (!prev) return out;
  for (int k = schedule.first_k; k < schedule.max_k; ++k) {
    auto next = f(k + 1);
    if (!next) return out;
    extrapolated.push_back(2 * *next - *prev);
    prev = next;
    const auto w = static_cast<std::size_t>(schedule.window);
    if (extrapolated.size() >= w &&
        std::all_of(extrapolated.end() - static_cast<long>(w), extrapolated.end(),
                    [&](const Rat& x) { return x == extrapolated.back(); })) {
      out.value = extrapolated.back();
      return out;
    }
  }
  throw NoStabilization("sigma: extrapolation did not stabilize by k = " + std::to_string(schedule.max_k));
}

SigmaDecomposition sigma_decompose(const Divisor& d, const Divisor& ample) {
  const auto& m = d.model();
  SigmaDecomposition out{{}, Divisor::zero(d.model_ptr()), d};
  for (std::size_t j = 0; j < m.effective_generators().size(); ++j) {
    auto v = sigma(d, m.generator_names()[j], ample);
    if (!v.value)
      throw NotPseudoEffective("divisor " + surface::format_divisor(d) + " is not pseudo-effective");
    out.negative += *v.value * Divisor::generator(d.model_ptr(), j);
    out.values.push_back(std::move(v));
  }
  out.positive = d - out.negative;
  return out;
}

Divisor n_sigma(const Divisor& d, const Divisor& ample) { return sigma_decompose(d, ample).negative; }
Divisor p_sigma(const Divisor& d, const Divisor& ample) { return sigma_decompose(d, ample).positive; }

}  // namespace zdlab::zariski
