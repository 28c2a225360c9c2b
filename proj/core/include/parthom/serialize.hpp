#pragma once

// JSON and CSV records for homology summaries, spectral pages, polynomials and
// f-vectors. Integers that fit in a signed 64-bit word are JSON numbers,
// larger ones are decimal strings.

#include <string>

#include <json.hpp>

#include "parthom/complexes.hpp"
#include "parthom/homology.hpp"
#include "parthom/polynomial.hpp"
#include "parthom/spectral.hpp"

namespace parthom {

using Json = nlohmann::ordered_json;

Json to_json(const BigInt& value);
BigInt bigint_from_json(const Json& j);

/// {coefficients, reduced, dimensions: [{dim, betti, torsion?}]}; torsion is
/// present only for integer coefficients.
Json to_json(const HomologySummary& h);
/// "dim,betti,torsion" with torsion factors joined by ';'.
std::string betti_csv(const HomologySummary& h);

/// {N, m, page, verified, cells: [{p, q, rank}]} with cells sorted by (p, q).
Json to_json(const SpectralPage& page);
SpectralPage page_from_json(const Json& j);

/// [{exponent, coefficient}] by increasing exponent.
Json to_json(const IntPolynomial& poly);
IntPolynomial polynomial_from_json(const Json& j);

/// {dimension, f: [f_0, f_1, ...]}
Json to_json(const FVector& f);

}  // namespace parthom
