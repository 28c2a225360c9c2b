#include "parthom/partitions.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace parthom {

namespace {

constexpr std::string_view kDigitAlphabet = "0123456789abcdefghijklmnopqrstuvwxyz";

void validate_rgs(std::span<const std::uint8_t> digits) {
  if (digits.empty()) throw std::invalid_argument("RGS code must be nonempty");
  if (digits.size() > SetPartition::kMaxGroundSize)
    throw std::invalid_argument("ground set larger than " +
                                std::to_string(SetPartition::kMaxGroundSize));
  if (digits[0] != 0) throw std::invalid_argument("RGS code must start with 0");
  int running_max = 0;
  for (std::size_t i = 1; i < digits.size(); ++i) {
    if (digits[i] > running_max + 1)
      throw std::invalid_argument("RGS growth condition violated at position " +
                                  std::to_string(i + 1));
    running_max = std::max<int>(running_max, digits[i]);
  }
}

void require_even_at_least_four(unsigned n, const char* what) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument(std::string(what) + ": N must be even and at least 4, got " +
                                std::to_string(n));
}

}  // namespace

RgsCode::RgsCode(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
  validate_rgs(digits_);
}

RgsCode RgsCode::parse(std::string_view text) {
  std::vector<std::uint8_t> digits;
  digits.reserve(text.size());
  for (char c : text) {
    auto pos = kDigitAlphabet.find(c);
    if (pos == std::string_view::npos)
      throw std::invalid_argument("bad RGS character '" + std::string(1, c) + "'");
    digits.push_back(static_cast<std::uint8_t>(pos));
  }
  return RgsCode(std::move(digits));
}

std::string RgsCode::to_string() const {
  std::string out;
  out.reserve(digits_.size());
  for (auto d : digits_) out.push_back(kDigitAlphabet[d]);
  return out;
}

SetPartition::SetPartition(RgsCode code) : code_(std::move(code)) {
  auto digits = code_.digits();
  std::size_t k = 0;
  for (auto d : digits) k = std::max<std::size_t>(k, d + 1u);
  masks_.assign(k, 0);
  for (std::size_t i = 0; i < digits.size(); ++i) masks_[digits[i]] |= std::uint64_t{1} << i;
}

SetPartition SetPartition::from_blocks(std::size_t n,
                                       const std::vector<std::vector<unsigned>>& blocks) {
  if (n == 0 || n > kMaxGroundSize) throw std::invalid_argument("ground set size out of range");
  std::vector<int> owner(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("empty block");
    for (unsigned e : blocks[b]) {
      if (e < 1 || e > n) throw std::invalid_argument("element outside {1..n}");
      if (owner[e - 1] != -1) throw std::invalid_argument("blocks are not disjoint");
      owner[e - 1] = static_cast<int>(b);
    }
  }
  // Relabel blocks in order of first appearance, which is the RGS convention.
  std::vector<int> relabel(blocks.size(), -1);
  std::vector<std::uint8_t> digits(n);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (owner[i] == -1) throw std::invalid_argument("blocks do not cover {1..n}");
    if (relabel[owner[i]] == -1) relabel[owner[i]] = next++;
    digits[i] = static_cast<std::uint8_t>(relabel[owner[i]]);
  }
  return SetPartition(RgsCode(std::move(digits)));
}

SetPartition SetPartition::one_block(std::size_t n) {
  return SetPartition(RgsCode(std::vector<std::uint8_t>(n, 0)));
}

SetPartition SetPartition::singletons(std::size_t n) {
  std::vector<std::uint8_t> digits(n);
  for (std::size_t i = 0; i < n; ++i) digits[i] = static_cast<std::uint8_t>(i);
  return SetPartition(RgsCode(std::move(digits)));
}

std::vector<std::size_t> SetPartition::block_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(masks_.size());
  for (auto m : masks_) sizes.push_back(static_cast<std::size_t>(std::popcount(m)));
  return sizes;
}

std::vector<std::vector<unsigned>> SetPartition::blocks() const {
  std::vector<std::vector<unsigned>> out(masks_.size());
  auto digits = code_.digits();
  for (std::size_t i = 0; i < digits.size(); ++i) out[digits[i]].push_back(static_cast<unsigned>(i + 1));
  return out;
}

std::size_t SetPartition::largest_block() const {
  std::size_t best = 0;
  for (auto m : masks_) best = std::max<std::size_t>(best, std::popcount(m));
  return best;
}

std::string SetPartition::to_block_string() const {
  const bool wide = ground_size() > 9;
  std::string out;
  for (const auto& block : blocks()) {
    if (!out.empty()) out.push_back('|');
    for (std::size_t j = 0; j < block.size(); ++j) {
      if (wide && j > 0) out.push_back(',');
      out += std::to_string(block[j]);
    }
  }
  return out;
}

void for_each_partition(std::size_t n, std::optional<std::size_t> k,
                        const PartitionPredicate& pred,
                        const std::function<void(const SetPartition&)>& visit) {
  if (n == 0) throw std::invalid_argument("ground set size must be positive");
  if (n > SetPartition::kMaxGroundSize) throw std::invalid_argument("ground set too large");
  if (k && (*k < 1 || *k > n))
    throw std::invalid_argument("block count " + std::to_string(*k) + " outside [1, " +
                                std::to_string(n) + "]");

  std::vector<std::uint8_t> digits(n, 0);
  // Depth-first over positions; `used` is the number of blocks opened so far.
  auto rec = [&](auto&& self, std::size_t pos, std::size_t used) -> void {
    if (pos == n) {
      if (k && used != *k) return;
      SetPartition p{RgsCode(digits)};
      if (!pred || pred(p)) visit(p);
      return;
    }
    std::size_t remaining = n - pos;
    for (std::size_t d = 0; d <= used; ++d) {
      std::size_t opened = used + (d == used ? 1 : 0);
      if (k && (opened > *k || opened + (remaining - 1) < *k)) continue;
      digits[pos] = static_cast<std::uint8_t>(d);
      self(self, pos + 1, opened);
    }
  };
  rec(rec, 1, 1);
}

std::vector<SetPartition> enumerate_partitions(std::size_t n, std::optional<std::size_t> k,
                                               const PartitionPredicate& pred) {
  std::vector<SetPartition> out;
  for_each_partition(n, k, pred, [&](const SetPartition& p) { out.push_back(p); });
  return out;
}

bool refines(const SetPartition& a, const SetPartition& b) {
  if (a.ground_size() != b.ground_size())
    throw std::invalid_argument("refines: partitions of different ground sets");
  auto b_digits = b.rgs().digits();
  auto b_masks = b.block_masks();
  for (auto mask : a.block_masks()) {
    auto smallest = static_cast<std::size_t>(std::countr_zero(mask));
    if ((mask & ~b_masks[b_digits[smallest]]) != 0) return false;
  }
  return true;
}

bool refines_strictly(const SetPartition& a, const SetPartition& b) {
  return refines(a, b) && a.block_count() > b.block_count();
}

bool is_k_divisible(const SetPartition& a, std::size_t d) {
  if (d == 0) throw std::invalid_argument("divisor must be positive");
  for (auto s : a.block_sizes())
    if (s % d != 0) return false;
  return true;
}

bool is_two_divisible(const SetPartition& a) { return is_k_divisible(a, 2); }

bool has_part_odd(const SetPartition& a) { return !is_two_divisible(a); }

BigInt factorial(unsigned n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigInt double_factorial(int n) {
  BigInt out = 1;
  for (int j = n; j > 1; j -= 2) out *= j;
  return out;
}

BigInt double_factorial_formula(unsigned n) {
  require_even_at_least_four(n, "double_factorial_formula");
  return double_factorial(static_cast<int>(n) - 1) * double_factorial(static_cast<int>(n) - 3);
}

BigInt factorial_weight(const SetPartition& a) {
  BigInt w = 1;
  for (auto s : a.block_sizes()) w *= factorial(static_cast<unsigned>(s - 1));
  return w;
}

BigInt signed_euler_sum(unsigned n) {
  require_even_at_least_four(n, "signed_euler_sum");
  if (n > 16) throw std::invalid_argument("signed_euler_sum: N above 16 is not enumerable");
  // Enumerate 2-divisible partitions directly: the block holding the smallest
  // unassigned element takes an odd number of further elements.
  const std::uint32_t full = (1u << n) - 1;
  BigInt total = 0;
  std::vector<BigInt> fact(n + 1);
  for (unsigned i = 0; i <= n; ++i) fact[i] = factorial(i);

  auto rec = [&](auto&& self, std::uint32_t remaining, unsigned blocks, const BigInt& weight) -> void {
    if (remaining == 0) {
      if (blocks % 2 == 1) total += weight;  // (-1)^{k+1}
      else total -= weight;
      return;
    }
    const unsigned first = static_cast<unsigned>(std::countr_zero(remaining));
    const std::uint32_t rest = remaining & ~(1u << first);
    // Iterate over subsets of `rest` with odd popcount.
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      if (std::popcount(sub) % 2 == 1) {
        self(self, rest & ~sub, blocks + 1, weight * fact[std::popcount(sub)]);
      }
      if (sub == 0) break;
    }
  };
  rec(rec, full, 0, BigInt(1));
  return total;
}

BigInt count_admissible_permutations(unsigned n) {
  require_even_at_least_four(n, "count_admissible_permutations");
  if (n > kMaxPermutationN)
    throw std::invalid_argument("count_admissible_permutations: N above " +
                                std::to_string(kMaxPermutationN));
  // Fill positions N, N-1, ..., 2 from {2..N}; alpha_1 = 1 is fixed. At odd
  // positions r >= 3 the entry may not undercut the minimum of the suffix.
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, unsigned pos, std::uint32_t available, unsigned suffix_min) -> void {
    if (pos == 1) {
      ++count;
      return;
    }
    for (std::uint32_t bits = available; bits != 0; bits &= bits - 1) {
      const unsigned value = static_cast<unsigned>(std::countr_zero(bits));
      if (pos % 2 == 1 && pos >= 3 && value < suffix_min) continue;
      self(self, pos - 1, available & ~(1u << value), std::min(value, suffix_min));
    }
  };
  std::uint32_t available = 0;
  for (unsigned v = 2; v <= n; ++v) available |= 1u << v;
  rec(rec, n, available, n + 1);
  return BigInt(static_cast<unsigned long>(count));
}

BigInt sum_factorial_products(unsigned n, unsigned k, bool even_only) {
  if (k < 1 || k > n) throw std::invalid_argument("sum_factorial_products: need 1 <= k <= N");
  BigInt total = 0;
  PartitionPredicate pred;
  if (even_only) pred = is_two_divisible;
  for_each_partition(n, k, pred, [&](const SetPartition& a) { total += factorial_weight(a); });
  return total;
}

}  // namespace parthom

std::size_t std::hash<parthom::SetPartition>::operator()(
    const parthom::SetPartition& p) const noexcept {
  auto d = p.rgs().digits();
  return std::hash<std::string_view>{}(
      std::string_view(reinterpret_cast<const char*>(d.data()), d.size()));
}
