#pragma once

// Set partitions of {1..n}, the refinement order, divisibility predicates and
// the exact counting formulas built on top of them.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace parthom {

using BigInt = mpz_class;

/// Restricted growth string: digit i is the block index of element i+1.
/// The first digit is 0 and every digit exceeds the running maximum by at
/// most one.
class RgsCode {
 public:
  RgsCode() = default;
  explicit RgsCode(std::vector<std::uint8_t> digits);

  /// Parses "001022"-style text. Block indices past 9 use lowercase letters.
  static RgsCode parse(std::string_view text);

  std::span<const std::uint8_t> digits() const { return digits_; }
  std::size_t size() const { return digits_.size(); }
  std::string to_string() const;

  auto operator<=>(const RgsCode&) const = default;
  bool operator==(const RgsCode&) const = default;

 private:
  std::vector<std::uint8_t> digits_;
};

/// A partition of {1..n} into nonempty blocks, stored canonically: blocks
/// ordered by smallest element, elements ascending inside each block.
/// Equality, ordering and hashing all go through the RGS code.
class SetPartition {
 public:
  static constexpr std::size_t kMaxGroundSize = 36;

  SetPartition() = default;
  explicit SetPartition(RgsCode code);

  /// Blocks hold 1-based elements in any order; the result is canonical.
  static SetPartition from_blocks(std::size_t n,
                                  const std::vector<std::vector<unsigned>>& blocks);
  static SetPartition parse(std::string_view rgs_text) {
    return SetPartition(RgsCode::parse(rgs_text));
  }
  static SetPartition one_block(std::size_t n);
  static SetPartition singletons(std::size_t n);

  std::size_t ground_size() const { return code_.size(); }
  std::size_t block_count() const { return masks_.size(); }
  const RgsCode& rgs() const { return code_; }

  /// Sizes a_1..a_k in canonical block order.
  std::vector<std::size_t> block_sizes() const;
  std::vector<std::vector<unsigned>> blocks() const;
  /// Bit i set <=> element i+1 in the block.
  std::span<const std::uint64_t> block_masks() const { return masks_; }
  std::size_t largest_block() const;

  std::string to_string() const { return code_.to_string(); }
  /// Human-readable "12|34" form (elements past 9 are comma-separated).
  std::string to_block_string() const;

  std::strong_ordering operator<=>(const SetPartition& other) const {
    return code_ <=> other.code_;
  }
  bool operator==(const SetPartition& other) const { return code_ == other.code_; }

 private:
  RgsCode code_;
  std::vector<std::uint64_t> masks_;
};

using PartitionPredicate = std::function<bool(const SetPartition&)>;

/// Calls visit for every partition of {1..n} (optionally with exactly k
/// blocks, optionally passing pred) in lexicographic RGS order.
void for_each_partition(std::size_t n, std::optional<std::size_t> k,
                        const PartitionPredicate& pred,
                        const std::function<void(const SetPartition&)>& visit);

std::vector<SetPartition> enumerate_partitions(std::size_t n,
                                               std::optional<std::size_t> k = std::nullopt,
                                               const PartitionPredicate& pred = {});

/// Every block of a lies inside a block of b.
bool refines(const SetPartition& a, const SetPartition& b);
bool refines_strictly(const SetPartition& a, const SetPartition& b);

bool is_k_divisible(const SetPartition& a, std::size_t d);
bool is_two_divisible(const SetPartition& a);
bool has_part_odd(const SetPartition& a);

BigInt factorial(unsigned n);
/// n!! with the convention (-1)!! = 0!! = 1.
BigInt double_factorial(int n);

/// (N-1)!! (N-3)!! for even N >= 4.
BigInt double_factorial_formula(unsigned n);

/// Sum over 2-divisible partitions A of {1..N} of (-1)^{k(A)+1} prod (a_j - 1)!.
BigInt signed_euler_sum(unsigned n);

/// Permutations of {1..N} starting with 1 such that no alpha_r with odd r > 1
/// is smaller than every later entry. Exhaustive search, 4 <= N <= 12.
BigInt count_admissible_permutations(unsigned n);
inline constexpr unsigned kMaxPermutationN = 12;

/// Sum over partitions of {1..N} into exactly k blocks (only 2-divisible ones
/// when even_only) of prod (a_j - 1)!. With even_only = false this is the
/// unsigned Stirling number of the first kind c(N, k).
BigInt sum_factorial_products(unsigned n, unsigned k, bool even_only);

/// prod (a_j - 1)! over the blocks of a.
BigInt factorial_weight(const SetPartition& a);

}  // namespace parthom

template <>
struct std::hash<parthom::SetPartition> {
  std::size_t operator()(const parthom::SetPartition& p) const noexcept;
};
