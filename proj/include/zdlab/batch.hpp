#pragma once

// Batch drivers over many independent instances. Each runs as an OpenMP loop
// or as a plain serial loop; both produce identical reports because every
// instance draws from its own index-seeded generator.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "zdlab/cones.hpp"
#include "zdlab/dioph.hpp"
#include "zdlab/execution.hpp"
#include "zdlab/surface.hpp"

namespace zdlab::batch {

using surface::Divisor;
using surface::ModelPtr;

/// Generator for instance `index` of a run seeded with `seed`.
std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index);

/// a/b with a uniform in [lo, hi] and b uniform in [1, max_den].
Rat random_rat(std::mt19937_64& rng, long lo, long hi, long max_den);

/// Every divisor with all coefficients drawn from `values` that is
/// pseudo-effective, in lexicographic order of coefficient indices.
std::vector<Divisor> grid_divisors(const ModelPtr& model, const std::vector<Rat>& values);

/// {a/d : -3 <= a <= 3, 1 <= d <= 4}, sorted and deduplicated.
std::vector<Rat> small_rationals();

/// Nonnegative rational combinations of the effective generators.
std::vector<Divisor> random_pseudoeffective(const ModelPtr& model, std::size_t count, std::uint64_t seed);

/// Positive combination of the nef generators (ample in the zariski sense).
Divisor random_ample(const ModelPtr& model, std::mt19937_64& rng);

struct Report {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<std::string> problems;  // first few, in instance order
};

/// decompose == oracle and both certificates re-verify.
Report oracle_equivalence(const std::vector<Divisor>& divisors, Execution exec);

/// N_sigma (epsilon limit) equals the Zariski negative part.
Report sigma_agreement(const std::vector<Divisor>& divisors, const Divisor& ample, Execution exec);

/// (A, B) pairs meeting the adjoint-trace preconditions: A ample, B a
/// fractional boundary along the prime curves, K + A + B pseudo-effective.
std::vector<std::pair<Divisor, Divisor>> random_adjoint_inputs(const ModelPtr& model, std::size_t count,
                                                               std::uint64_t seed);

/// Runs adjoint_trace on each input; any exception or failed identity counts.
Report adjoint_trials(const std::vector<std::pair<Divisor, Divisor>>& inputs, Execution exec);

/// Random requests checked against all five approximation clauses.
Report dioph_trials(std::size_t count, std::uint64_t seed, Execution exec);

struct FuzzReport {
  std::size_t instances = 0;
  std::size_t confirmed = 0;
  std::size_t inapplicable = 0;
  std::size_t violations = 0;
  std::optional<std::string> first_violation;
};

/// Random (v, w, l) triples, half with v a lattice point of (1/l)Z^n and w
/// within eps/(l k) of it, half with w drawn from the polytope.
FuzzReport fuzz_criterion(const cones::RationalPolytope& polytope, const dioph::PolytopeCertificate& cert,
                          std::size_t count, std::uint64_t seed, Execution exec);

}  // namespace zdlab::batch
