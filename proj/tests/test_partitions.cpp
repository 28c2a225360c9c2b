#include <doctest.h>

#include <set>
#include <unordered_set>

#include "oracles.hpp"
#include "parthom/partitions.hpp"

using namespace parthom;

TEST_SUITE("partitions") {

TEST_CASE("rgs parse and print") {
  auto a = SetPartition::parse("001022");
  CHECK(a.ground_size() == 6);
  CHECK(a.block_count() == 3);
  CHECK(a.to_string() == "001022");
  CHECK(a.to_block_string() == "124|3|56");
  CHECK(a.block_sizes() == std::vector<std::size_t>{3, 1, 2});

  CHECK_THROWS_AS(RgsCode::parse("102"), std::invalid_argument);
  CHECK_THROWS_AS(RgsCode::parse("002"), std::invalid_argument);
  CHECK_THROWS_AS(RgsCode::parse(""), std::invalid_argument);
}

TEST_CASE("from_blocks canonicalises") {
  auto a = SetPartition::from_blocks(4, {{4, 3}, {2, 1}});
  CHECK(a.to_string() == "0011");
  CHECK(a.blocks() == std::vector<std::vector<unsigned>>{{1, 2}, {3, 4}});
  CHECK_THROWS(SetPartition::from_blocks(4, {{1, 2}, {2, 3, 4}}));
  CHECK_THROWS(SetPartition::from_blocks(4, {{1, 2}, {3}}));
}

TEST_CASE("digits past nine use letters") {
  std::string text = "0123456789ab";
  auto a = SetPartition::parse(text);
  CHECK(a.block_count() == 12);
  CHECK(a.to_string() == text);
  CHECK(a == SetPartition::singletons(12));
}

TEST_CASE("partition counts match the Bell triangle") {
  auto bell = oracle::bell_numbers(9);
  for (unsigned n = 1; n <= 9; ++n) {
    CAPTURE(n);
    CHECK(enumerate_partitions(n).size() == bell[n].get_ui());
  }
  CHECK(enumerate_partitions(1).size() == 1);
  CHECK(enumerate_partitions(6).size() == 203);
}

TEST_CASE("enumeration is lexicographic and duplicate free") {
  auto all = enumerate_partitions(6);
  CHECK(std::is_sorted(all.begin(), all.end()));
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
}

TEST_CASE("enumeration filters") {
  auto twos = enumerate_partitions(6, 2, is_two_divisible);
  CHECK(twos.size() == 15);
  CHECK(oracle::binomial(6, 2) == 15);
  for (const auto& a : twos) {
    auto s = a.block_sizes();
    std::sort(s.begin(), s.end());
    CHECK(s == std::vector<std::size_t>{2, 4});
  }
  for (unsigned n = 1; n <= 7; ++n)
    for (unsigned k = 1; k <= n; ++k) {
      auto parts = enumerate_partitions(n, k);
      for (const auto& a : parts) CHECK(a.block_count() == k);
    }
  CHECK_THROWS(enumerate_partitions(0));
  CHECK_THROWS(enumerate_partitions(4, 0));
  CHECK_THROWS(enumerate_partitions(4, 5));
}

TEST_CASE("rgs round trip") {
  for (unsigned n = 1; n <= 7; ++n)
    for (const auto& a : enumerate_partitions(n)) {
      CHECK(SetPartition::parse(a.to_string()) == a);
      CHECK(SetPartition::from_blocks(n, a.blocks()) == a);
    }
}

TEST_CASE("hash is consistent with equality") {
  std::unordered_set<SetPartition> seen;
  for (const auto& a : enumerate_partitions(6)) seen.insert(a);
  CHECK(seen.size() == 203);
  CHECK(seen.count(SetPartition::parse("000111")) == 1);
}

TEST_CASE("refinement examples") {
  auto p = [](const char* s) { return SetPartition::parse(s); };
  CHECK(refines(p("0012"), p("0001")));  // 12|3|4 <= 123|4
  CHECK(refines(p("0011"), p("0011")));
  CHECK_FALSE(refines(p("0011"), p("0101")));  // 12|34 vs 13|24
  CHECK_FALSE(refines_strictly(p("0011"), p("0011")));
  CHECK_THROWS(refines(p("001"), p("0011")));
}

TEST_CASE("refinement is a partial order for n <= 5") {
  for (unsigned n = 1; n <= 5; ++n) {
    auto all = enumerate_partitions(n);
    for (const auto& a : all) {
      CHECK(refines(a, a));
      CHECK(refines(SetPartition::singletons(n), a));
      CHECK(refines(a, SetPartition::one_block(n)));
      for (const auto& b : all) {
        if (refines(a, b) && refines(b, a)) CHECK(a == b);
        CHECK(refines_strictly(a, b) == (refines(a, b) && a != b));
        if (!refines(a, b)) continue;
        for (const auto& c : all)
          if (refines(b, c)) CHECK(refines(a, c));
      }
    }
  }
}

TEST_CASE("divisibility predicates") {
  auto p = [](const char* s) { return SetPartition::parse(s); };
  CHECK(is_two_divisible(p("001111")));   // 12|3456
  CHECK_FALSE(is_two_divisible(p("000111")));  // 123|456
  CHECK(is_two_divisible(SetPartition::one_block(6)));
  CHECK(has_part_odd(p("0001")));
  CHECK_FALSE(has_part_odd(p("0011")));
  CHECK(has_part_odd(SetPartition::singletons(4)));
  CHECK(is_k_divisible(p("000111"), 3));
  CHECK_FALSE(is_k_divisible(p("001111"), 3));
  for (const auto& a : enumerate_partitions(6)) CHECK(has_part_odd(a) == !is_two_divisible(a));
}

TEST_CASE("factorials") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(7) == 5040);
  CHECK(double_factorial(-1) == 1);
  CHECK(double_factorial(0) == 1);
  CHECK(double_factorial(7) == 105);
  CHECK(double_factorial(8) == 384);
}

TEST_CASE("double factorial formula") {
  CHECK(double_factorial_formula(4) == 3);
  CHECK(double_factorial_formula(6) == 45);
  CHECK(double_factorial_formula(8) == 1575);
  CHECK(double_factorial_formula(10) == 99225);
  for (unsigned n = 4; n <= 16; n += 2)
    CHECK(double_factorial_formula(n) == oracle::odd_product(n - 1) * oracle::odd_product(n - 3));
  CHECK_THROWS(double_factorial_formula(5));
  CHECK_THROWS(double_factorial_formula(2));
}

TEST_CASE("three-way Euler count for even N <= 8") {
  CHECK(signed_euler_sum(4) == 3);
  CHECK(signed_euler_sum(6) == 45);
  CHECK(count_admissible_permutations(4) == 3);
  CHECK(count_admissible_permutations(6) == 45);
  for (unsigned n = 4; n <= 8; n += 2) {
    CAPTURE(n);
    CHECK(signed_euler_sum(n) == double_factorial_formula(n));
    CHECK(count_admissible_permutations(n) == double_factorial_formula(n));
  }
  CHECK(signed_euler_sum(10) == 99225);
  CHECK_THROWS(signed_euler_sum(5));
  CHECK_THROWS(count_admissible_permutations(14));
  CHECK_THROWS(count_admissible_permutations(7));
}

TEST_CASE("admissible permutations by naive enumeration") {
  // Plain next_permutation scan for N = 6 without any pruning.
  const unsigned n = 6;
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 1u);
  unsigned count = 0;
  do {
    if (perm[0] != 1) break;
    bool ok = true;
    for (unsigned r = 3; r <= n && ok; r += 2) {
      bool smallest = true;
      for (unsigned s = r; s < n; ++s) smallest = smallest && perm[r - 1] < perm[s];
      if (smallest) ok = false;
    }
    count += ok;
  } while (std::next_permutation(perm.begin() + 1, perm.end()) || false);
  CHECK(BigInt(count) == count_admissible_permutations(n));
}

TEST_CASE("sum_factorial_products against the Stirling recurrence") {
  auto c = oracle::stirling_first(8);
  for (unsigned n = 1; n <= 8; ++n)
    for (unsigned k = 1; k <= n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(sum_factorial_products(n, k, false) == c[n][k]);
    }
  CHECK(sum_factorial_products(3, 2, false) == 3);
  CHECK(sum_factorial_products(6, 2, true) == 90);
  CHECK(sum_factorial_products(6, 1, true) == 120);
  CHECK(sum_factorial_products(6, 3, true) == 15);
  CHECK(sum_factorial_products(5, 1, true) == 0);
  CHECK_THROWS(sum_factorial_products(4, 0, false));
  CHECK_THROWS(sum_factorial_products(4, 5, false));
}

TEST_CASE("factorial weight") {
  CHECK(factorial_weight(SetPartition::parse("001111")) == 6);
  CHECK(factorial_weight(SetPartition::singletons(5)) == 1);
  CHECK(factorial_weight(SetPartition::one_block(5)) == 24);
}

}  // TEST_SUITE
