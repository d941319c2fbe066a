#pragma once

// Structured output documents, one "kind" per command, each carrying enough
// input to be re-verified without the producing process.

#include <optional>
#include <string>
#include <vector>

#include "zdlab/cones.hpp"
#include "zdlab/dioph.hpp"
#include "zdlab/fingenlab.hpp"
#include "zdlab/serialize.hpp"
#include "zdlab/zariski.hpp"

namespace zdlab::docs {

using io::Json;
using surface::Divisor;

Json zariski_doc(const Divisor& d, const zariski::ZariskiResult& r);

struct ZariskiDoc {
  Divisor divisor;
  zariski::ZariskiResult result;
};
ZariskiDoc parse_zariski(const Json& doc);

/// sigma' and sigma for each gamma (all generators when empty); the
/// N_sigma/P_sigma split is included when every generator is requested and
/// D is pseudo-effective.
Json sigma_doc(const Divisor& d, const Divisor& ample, const std::vector<std::string>& gammas);

Json dioph_doc(const dioph::ApproxRequest& req, const dioph::ApproxResult& res);
dioph::ApproxRequest parse_dioph_request(const Json& doc);
dioph::ApproxResult parse_dioph_result(const Json& doc);

Json polytope_cert_doc(const cones::RationalPolytope& p, const dioph::PolytopeCertificate& cert);
dioph::PolytopeCertificate parse_certificate(const Json& doc);
Json polytope_verify_doc(const cones::RationalPolytope& p, const dioph::PolytopeCertificate& cert,
                         const QVec& v, const QVec& w, const BigInt& l, dioph::Verdict verdict);

Json hilbert_doc(const cones::RationalCone& cone, const cones::HilbertBasis& basis);

Json split_json(const fingenlab::ConeSplit& s);
fingenlab::ConeSplit split_from(const Json& j);
Json width_doc(const fingenlab::ConeSplit& s, const fingenlab::WidthReport& r);
Json zigzag_doc(const fingenlab::ConeSplit& s, long m, const std::vector<QVec>& chain);

Json adjoint_doc(const Divisor& a, const Divisor& b, const fingenlab::AdjointTrace& t);

Json canonical_doc(const fingenlab::CanonicalExample& e);
Json cutkosky_doc(const fingenlab::EllipticAnalysis& a);

/// Re-checks a document from its recorded inputs; returns one message per
/// failed check. Throws UsageError for unknown kinds or malformed documents.
std::vector<std::string> verify_document(const Json& doc);

}  // namespace zdlab::docs
