#pragma once

// Exact simplicial homology over Q and Z.

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "parthom/complexes.hpp"
#include "parthom/elimination.hpp"
#include "parthom/sparse_matrix.hpp"

namespace parthom {

enum class Coefficients { rationals, integers };
std::string_view to_string(Coefficients c);

struct HomologyGroup {
  int dim = 0;
  std::uint64_t betti = 0;
  /// Invariant factors > 1; always empty over Q.
  std::vector<BigInt> torsion;
  bool operator==(const HomologyGroup&) const = default;
};

struct HomologySummary {
  Coefficients coefficients = Coefficients::rationals;
  bool reduced = false;
  /// Consecutive dimensions, lowest first. Reduced summaries of nonempty
  /// complexes start at 0; the empty complex reports dimension -1.
  std::vector<HomologyGroup> groups;

  std::uint64_t betti(int d) const;
  const std::vector<BigInt>& torsion(int d) const;
  /// Betti numbers from dimension 0 upward (reduced entry -1 excluded).
  std::vector<std::uint64_t> betti_vector() const;
  /// sum (-1)^d betti_d over all listed dimensions.
  std::int64_t alternating_sum() const;
  bool has_torsion() const;
};

struct HomologyOptions {
  RankOptions rank;
  SnfOptions snf;
  /// Called after each boundary rank with (d, rank) for progress reporting.
  std::function<void(int, std::size_t)> progress;
};

/// Boundary from d-faces to (d-1)-faces. Column j is the boundary of the j-th
/// d-face; deleting its i-th vertex carries sign (-1)^i. For d = 0 this is the
/// augmentation onto the empty face (a single row of ones).
SparseBoundaryMatrix boundary_matrix(const SimplicialComplex& c, int d);
inline SparseBoundaryMatrix boundary_matrix(const OrderComplex& c, int d) {
  return boundary_matrix(c.simplicial(), d);
}
/// The same operator between two explicit face lists.
SparseBoundaryMatrix boundary_between(const FaceList& lower, const FaceList& upper);

/// Rational Betti numbers, b_d = f_d - rank d_d - rank d_{d+1}.
HomologySummary betti_numbers(const SimplicialComplex& c, bool reduced,
                              const HomologyOptions& options = {});
inline HomologySummary betti_numbers(const OrderComplex& c, bool reduced,
                                     const HomologyOptions& options = {}) {
  return betti_numbers(c.simplicial(), reduced, options);
}

/// Free ranks and torsion from the Smith normal forms of consecutive boundaries.
HomologySummary integral_homology(const SimplicialComplex& c, bool reduced = false,
                                  const HomologyOptions& options = {});
inline HomologySummary integral_homology(const OrderComplex& c, bool reduced = false,
                                         const HomologyOptions& options = {}) {
  return integral_homology(c.simplicial(), reduced, options);
}

/// Homology of the quotient chain complex C(total) / C(sub).
/// sub_to_total maps sub's vertices increasingly into total's.
HomologySummary relative_homology(const SimplicialComplex& total, const SimplicialComplex& sub,
                                  std::span<const VertexId> sub_to_total,
                                  Coefficients coefficients = Coefficients::rationals,
                                  const HomologyOptions& options = {});
HomologySummary relative_homology(const OrderComplex& total, const OrderComplex& sub,
                                  Coefficients coefficients = Coefficients::rationals,
                                  const HomologyOptions& options = {});

}  // namespace parthom
