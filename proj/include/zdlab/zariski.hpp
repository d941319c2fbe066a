#pragma once

// Zariski decomposition D = P + N with a machine-checkable certificate, the
// exhaustive-search oracle licensed by uniqueness, and the asymptotic
// multiplicity functions sigma', sigma, N_sigma and P_sigma.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zdlab/errors.hpp"
#include "zdlab/surface.hpp"

namespace zdlab::zariski {

using surface::Divisor;

struct SupportCurve {
  std::size_t generator = 0;
  std::string name;
  Rat multiplicity;  // strictly positive
};

struct Certificate {
  std::vector<Rat> nef_pairings;   // pair(P, G_j) for every effective generator
  std::vector<Rat> orthogonality;  // pair(P, N_i) for every support curve
  std::vector<Rat> gram_minors;    // leading principal minors of -Gram(support)
};

struct ZariskiResult {
  Divisor positive;
  Divisor negative;
  std::vector<SupportCurve> support;
  Certificate certificate;
};

/// Grows the support from the empty set by adding every generator that P
/// pairs negatively with, re-solving the orthogonality system each round.
/// Throws NotPseudoEffective, or ModelInconsistency when the solved negative
/// part has a negative coefficient or its Gram matrix is not negative definite.
ZariskiResult decompose(const Divisor& d);

/// Tries every subset of the effective generators (at most 12) and returns the
/// unique one satisfying all four conditions. Throws InvariantViolation if no
/// subset or several subsets pass.
ZariskiResult oracle(const Divisor& d);

inline constexpr std::size_t kOracleMaxGenerators = 12;

struct VerifyReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Recomputes every certificate entry from scratch and compares.
VerifyReport verify(const Divisor& d, const ZariskiResult& result);

bool same_decomposition(const ZariskiResult& a, const ZariskiResult& b);

// ---------------------------------------------------------------------------

struct SigmaValue {
  std::string gamma;
  std::optional<Rat> value;  // nullopt: D not pseudo-effective
};

class NoStabilization : public MathError {
 public:
  using MathError::MathError;
};

/// inf of mult_gamma D' over effective D' = sum t_j G_j + (nef part) equal to D.
/// gamma names an effective generator or a class.
SigmaValue sigma_prime(const Divisor& d, std::string_view gamma);

struct SigmaSchedule {
  int first_k = 4;
  int window = 3;
  int max_k = 40;
};

/// lim sigma'(D + eps A) as eps -> 0, sampled at eps = 2^-k and 2^-(k+1) and
/// extrapolated affinely until the extrapolation repeats `window` times.
/// A must be nef and pair strictly positively with every generator.
SigmaValue sigma(const Divisor& d, std::string_view gamma, const Divisor& ample,
                 const SigmaSchedule& schedule = {});

struct SigmaDecomposition {
  std::vector<SigmaValue> values;  // one per effective generator
  Divisor negative;
  Divisor positive;
};

/// Throws NotPseudoEffective when some sigma is undefined.
SigmaDecomposition sigma_decompose(const Divisor& d, const Divisor& ample);
Divisor n_sigma(const Divisor& d, const Divisor& ample);
Divisor p_sigma(const Divisor& d, const Divisor& ample);

/// The ampleness proxy used by sigma: nef and strictly positive on every generator.
bool is_ample(const Divisor& a);

/// Sum of the model's nef generators, which is ample in the above sense.
Divisor default_ample(const surface::ModelPtr& model);

}  // namespace zdlab::zariski
