#pragma once

// Rank tables of the spectral sequence for the twisted homology of the
// resolved discriminant, the twisted Poincare polynomial, and the
// Goresky-MacPherson consistency identity for configuration spaces.
//
// Nothing topological is constructed: every page is an integer table and every
// identity is a comparison of exact polynomials.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "parthom/homology.hpp"
#include "parthom/polynomial.hpp"

namespace parthom {

enum class PageTag { e1 = 1, e2 = 2, infinity = 3 };
std::string to_string(PageTag tag);

struct SpectralPage {
  unsigned n = 0;
  unsigned m = 0;
  PageTag page = PageTag::e1;
  /// False when produced with the m > N/2 - 1 hypothesis overridden.
  bool verified = true;
  /// (p, q) -> rank, nonzero entries only.
  std::map<std::pair<int, int>, BigInt> cells;

  BigInt rank(int p, int q) const;
  void set(int p, int q, const BigInt& rank);
  bool operator==(const SpectralPage&) const = default;
};

/// (1 + t^m)^(k-1): Poincare polynomial of a product of k-1 copies of
/// odd-dimensional real projective space over Q.
IntPolynomial projective_power_poincare(unsigned k, unsigned m);

/// E^1 from the block-type formula: the cell (p, q = a*m) holds
/// binom(N-p-2, a) * sum of prod (a_j - 1)! over 2-divisible partitions into
/// N-p-1 blocks.
SpectralPage e1_page_closed_form(unsigned n, unsigned m);

/// E^1 assembled from relative homology ranks of (Delta_A, link of Delta_A)
/// for every 2-divisible A, tensored with projective_power_poincare.
SpectralPage e1_page_computed(unsigned n, unsigned m, const HomologyOptions& options = {});

struct E2Options {
  /// Accept m <= N/2 - 1; the result is marked unverified.
  bool override_lemma_bound = false;
};

/// Each row q = a*m is acyclic except at its top cell p = N-2-a, whose rank is
/// the absolute alternating sum of the row.
SpectralPage e2_page(const SpectralPage& e1, const E2Options& options = {});

struct SupportViolation {
  int p = 0;
  int q = 0;
  std::string reason;
};

struct SupportReport {
  bool ok = true;
  std::vector<SupportViolation> violations;
};

/// Triangle constraints on nonzero cells; E^2 and E^infinity pages must also
/// satisfy p + q/m = N - 2.
SupportReport support_check(const SpectralPage& page);

/// (N-1)!! t^{(N/2)(m-1)} prod_{j=1}^{N/2-1} (1 + (2j-1) t^{m-1}).
IntPolynomial twisted_poincare_closed(unsigned n, unsigned m);

/// Cell (p, q) of rank r contributes r t^{m(N-1) - (p+q) - 1}.
IntPolynomial twisted_poincare_from_page(const SpectralPage& e2);

struct GmIdentityResult {
  bool holds = false;
  /// prod_{j=1}^{N-1} (1 + j t^{m-1})
  IntPolynomial configuration_side;
  /// Sum over partitions A of rank(A) t^{i(A)} via the arrangement formula.
  IntPolynomial arrangement_side;
  BigInt top_coefficient;
};

GmIdentityResult gm_identity_check(unsigned n, unsigned m);

/// Text grid in the style of a printed spectral sequence page: rows are the
/// multiples of m from the top down, columns are p = 0..N-2.
std::string render_page(const SpectralPage& page);

}  // namespace parthom
