#include "zdlab/batch.hpp"

#include <algorithm>
#include <set>

#include "zdlab/errors.hpp"
#include "zdlab/fingenlab.hpp"
#include "zdlab/zariski.hpp"

namespace zdlab::batch {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

constexpr std::size_t kKeptProblems = 5;

// Runs f(i) for every instance; f returns a problem description or nullopt.
template <class F>
Report run(std::size_t n, Execution exec, F f) {
  std::vector<std::optional<std::string>> out(n);
  auto body = [&](std::size_t i) {
    try {
      out[i] = f(i);
    } catch (const std::exception& e) {
      out[i] = std::string("exception: ") + e.what();
    }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i) body(i);
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
  Report r;
  r.checked = n;
  for (std::size_t i = 0; i < n; ++i)
    if (out[i]) {
      ++r.failures;
      if (r.problems.size() < kKeptProblems) r.problems.push_back("#" + std::to_string(i) + ": " + *out[i]);
    }
  return r;
}

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : "; ") + x;
  return s;
}

}  // namespace

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ index));
}

Rat random_rat(std::mt19937_64& rng, long lo, long hi, long max_den) {
  return make_rat(uniform(rng, lo, hi), uniform(rng, 1, max_den));
}

std::vector<Rat> small_rationals() {
  std::set<Rat> s;
  for (long d = 1; d <= 4; ++d)
    for (long a = -3; a <= 3; ++a) s.insert(make_rat(a, d));
  return {s.begin(), s.end()};
}

std::vector<Divisor> grid_divisors(const ModelPtr& model, const std::vector<Rat>& values) {
  const std::size_t n = model->rank();
  std::vector<Divisor> out;
  if (values.empty()) return out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    QVec c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = values[idx[i]];
    Divisor d(model, std::move(c));
    if (surface::is_pseudoeffective(d)) out.push_back(std::move(d));
    std::size_t i = n;
    while (i > 0 && ++idx[i - 1] == values.size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

std::vector<Divisor> random_pseudoeffective(const ModelPtr& model, std::size_t count, std::uint64_t seed) {
  std::vector<Divisor> out;
  const auto& gens = model->effective_generators();
  for (std::size_t i = 0; i < count; ++i) {
    auto rng = instance_rng(seed, i);
    QVec c(model->rank());
    for (const auto& g : gens)
      if (uniform(rng, 0, 2) != 0) c += random_rat(rng, 0, 5, 3) * g;
    out.emplace_back(model, std::move(c));
  }
  return out;
}

Divisor random_ample(const ModelPtr& model, std::mt19937_64& rng) {
  Divisor a = Divisor::zero(model);
  for (const auto& v : model->nef_generators()) a += random_rat(rng, 1, 6, 3) * Divisor(model, v);
  return a;
}

Report oracle_equivalence(const std::vector<Divisor>& divisors, Execution exec) {
  return run(divisors.size(), exec, [&](std::size_t i) -> std::optional<std::string> {
    const Divisor& d = divisors[i];
    const auto fast = zariski::decompose(d);
    const auto slow = zariski::oracle(d);
    std::vector<std::string> bad;
    if (!zariski::same_decomposition(fast, slow)) bad.push_back("decompose and oracle disagree");
    for (const auto& f : zariski::verify(d, fast).failures) bad.push_back("decompose: " + f);
    for (const auto& f : zariski::verify(d, slow).failures) bad.push_back("oracle: " + f);
    if (bad.empty()) return std::nullopt;
    return surface::format_divisor(d) + ": " + join(bad);
  });
}

Report sigma_agreement(const std::vector<Divisor>& divisors, const Divisor& ample, Execution exec) {
  return run(divisors.size(), exec, [&](std::size_t i) -> std::optional<std::string> {
    const Divisor& d = divisors[i];
    const auto n_sigma = zariski::n_sigma(d, ample);
    const auto z = zariski::decompose(d);
    if (n_sigma == z.negative) return std::nullopt;
    return surface::format_divisor(d) + ": N_sigma = " + surface::format_divisor(n_sigma) +
           ", Zariski N = " + surface::format_divisor(z.negative);
  });
}

std::vector<std::pair<Divisor, Divisor>> random_adjoint_inputs(const ModelPtr& model, std::size_t count,
                                                               std::uint64_t seed) {
  const surface::PrimeCoordinates pc(model);
  const Divisor k = Divisor::canonical(model);
  std::vector<std::pair<Divisor, Divisor>> out;
  const std::size_t max_attempts = 200 * count + 100;
  for (std::size_t attempt = 0; out.size() < count; ++attempt) {
    if (attempt >= max_attempts) throw MathError("could not sample enough admissible adjoint inputs");
    auto rng = instance_rng(seed, attempt);
    Divisor a = random_ample(model, rng);
    QVec bp(model->rank());
    for (std::size_t j = 0; j < bp.size(); ++j)
      if (uniform(rng, 0, 2) != 0) {
        const long den = uniform(rng, 2, 6);
        bp[j] = make_rat(uniform(rng, 1, den - 1), den);
      }
    Divisor b = pc.from_primes(Divisor(pc.primes(), std::move(bp)));
    if (!surface::is_pseudoeffective(k + a + b)) continue;
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

Report adjoint_trials(const std::vector<std::pair<Divisor, Divisor>>& inputs, Execution exec) {
  return run(inputs.size(), exec, [&](std::size_t i) -> std::optional<std::string> {
    const auto& [a, b] = inputs[i];
    const auto t = fingenlab::adjoint_trace(a, b);
    auto bad = fingenlab::check_trace(t);
    if (bad.empty()) return std::nullopt;
    return "A = " + surface::format_divisor(a) + ", B = " + surface::format_divisor(b) + ": " + join(bad);
  });
}

Report dioph_trials(std::size_t count, std::uint64_t seed, Execution exec) {
  return run(count, exec, [&](std::size_t i) -> std::optional<std::string> {
    auto rng = instance_rng(seed, i);
    dioph::ApproxRequest req;
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 3));
    req.x = QVec(n);
    for (std::size_t j = 0; j < n; ++j) req.x[j] = random_rat(rng, -6, 6, 7);
    req.k = uniform(rng, 1, 4);
    req.eps = make_rat(uniform(rng, 1, 4), 4);
    req.norm = uniform(rng, 0, 1) ? dioph::Norm::Max : dioph::Norm::Euclidean;
    const auto res = dioph::approximate(req);
    auto bad = dioph::check(req, res);
    if (bad.empty()) return std::nullopt;
    return "x = " + to_string(req.x) + ": " + join(bad);
  });
}

FuzzReport fuzz_criterion(const cones::RationalPolytope& polytope, const dioph::PolytopeCertificate& cert,
                          std::size_t count, std::uint64_t seed, Execution exec) {
  const auto p = cones::convert(polytope);
  const auto& verts = p.vertices();
  const std::size_t n = p.dim();
  QVec lo = verts.front(), hi = verts.front();
  for (const auto& v : verts)
    for (std::size_t j = 0; j < n; ++j) {
      lo[j] = std::min(lo[j], v[j]);
      hi[j] = std::max(hi[j], v[j]);
    }

  std::vector<dioph::Verdict> verdicts(count);
  std::vector<std::string> notes(count);
  auto body = [&](std::size_t i) {
    auto rng = instance_rng(seed, i);
    const long l = uniform(rng, 1, 24);
    QVec v(n), w(n);
    if (uniform(rng, 0, 1) == 0) {
      const Rat radius = cert.eps / Rat(l * cert.k);
      for (std::size_t j = 0; j < n; ++j) {
        const long zlo = floor_of(Rat(l) * lo[j]).get_si() - 1;
        const long zhi = ceil_of(Rat(l) * hi[j]).get_si() + 1;
        v[j] = make_rat(uniform(rng, zlo, zhi), l);
        // |u_j| < radius / n keeps the Euclidean offset below radius.
        w[j] = v[j] + make_rat(uniform(rng, -999, 999), 1000) * radius / Rat(static_cast<long>(n));
      }
    } else {
      Rat total = 0;
      for (const auto& vert : verts) {
        const Rat t = uniform(rng, 0, 10);
        w += t * vert;
        total += t;
      }
      w = total == 0 ? verts.front() : (1 / total) * w;
      for (std::size_t j = 0; j < n; ++j)
        v[j] = make_rat(floor_of(Rat(l) * w[j] + make_rat(1, 2)) + uniform(rng, -1, 1), l);
    }
    verdicts[i] = dioph::criterion_verify(p, cert, v, w, l);
    if (verdicts[i] == dioph::Verdict::Violation)
      notes[i] = "v = " + to_string(v) + ", w = " + to_string(w) + ", l = " + std::to_string(l);
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < count; ++i) body(i);
  } else {
    for (std::size_t i = 0; i < count; ++i) body(i);
  }
  FuzzReport r;
  r.instances = count;
  for (std::size_t i = 0; i < count; ++i) switch (verdicts[i]) {
      case dioph::Verdict::Confirmed: ++r.confirmed; break;
      case dioph::Verdict::Inapplicable: ++r.inapplicable; break;
      case dioph::Verdict::Violation:
        ++r.violations;
        if (!r.first_violation) r.first_violation = notes[i];
        break;
    }
  return r;
}

}  // namespace zdlab::batch
