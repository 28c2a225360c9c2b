#pragma once

// Exact rank and Smith normal form of sparse integer matrices.
//
// All routines share one sparse elimination driver: repeatedly take the
// shortest live column, pivot on the entry whose row is shared with the fewest
// other columns, and clear that row from every other column. Only the
// arithmetic differs between the modular, fraction-free and unimodular modes.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "parthom/errors.hpp"
#include "parthom/partitions.hpp"
#include "parthom/sparse_matrix.hpp"

namespace parthom {

struct EliminationLimits {
  /// Upper bound on live matrix entries during elimination; 0 = unlimited.
  /// Exceeding it throws ResourceAbort.
  std::size_t max_entries = 0;
};

/// Word-size primes used by the modular fast path.
inline constexpr std::uint32_t kRankPrimes[] = {2147483629u, 2147483587u};

/// Rank over Z/p. p must be an odd prime below 2^31.
std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p,
                       const EliminationLimits& limits = {});

/// Rank over Q by fraction-free integer elimination (unit pivots preferred,
/// rows kept primitive). This is the certified path.
std::size_t rank_certified(const SparseIntMatrix& m, const EliminationLimits& limits = {});

enum class RankMethod { automatic, certified, modular };
std::string_view to_string(RankMethod method);

struct RankOptions {
  RankMethod method = RankMethod::automatic;
  /// `automatic` goes straight to certified elimination at or below this size.
  std::size_t certified_max_nonzeros = 250'000;
  /// Columns in the random certified spot check of a modular result.
  std::size_t spot_check_columns = 40;
  std::uint64_t seed = 0x70617274686f6dULL;
  /// Run the two modular eliminations on separate threads.
  bool parallel_primes = false;
  EliminationLimits limits;
};

struct RankReport {
  std::size_t rank = 0;
  /// certified or modular; which path produced the final answer.
  RankMethod method = RankMethod::certified;
  std::vector<std::size_t> modular_ranks;
  bool spot_check_passed = true;
  /// The modular path disagreed with itself or with the spot check.
  bool escalated = false;
};

RankReport rank_exact_report(const SparseIntMatrix& m, const RankOptions& options = {});
inline std::size_t rank_exact(const SparseIntMatrix& m, const RankOptions& options = {}) {
  return rank_exact_report(m, options).rank;
}

struct SnfOptions {
  EliminationLimits limits;
  /// Largest residual (rows * cols) handed to the dense stage.
  std::size_t max_dense_cells = 16'000'000;
};

struct SnfResult {
  /// d_1 | d_2 | ... | d_r, all positive; r is the rank.
  std::vector<BigInt> invariant_factors;
  /// Pivots removed by the sparse unimodular stage (each contributes a 1).
  std::size_t unit_pivots = 0;
  std::size_t dense_rows = 0;
  std::size_t dense_cols = 0;
  /// Largest bit length of any entry seen in the dense stage.
  std::size_t max_entry_bits = 0;
};

SnfResult smith_normal_form_report(const SparseIntMatrix& m, const SnfOptions& options = {});
inline std::vector<BigInt> smith_normal_form(const SparseIntMatrix& m,
                                             const SnfOptions& options = {}) {
  return smith_normal_form_report(m, options).invariant_factors;
}

/// Dense Smith normal form of an arbitrary integer matrix.
std::vector<BigInt> smith_normal_form_dense(std::vector<std::vector<BigInt>> a,
                                            std::size_t* max_entry_bits = nullptr);

}  // namespace parthom
