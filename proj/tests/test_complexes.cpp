#include <doctest.h>

#include <filesystem>
#include <map>
#include <set>

#include "oracles.hpp"
#include "parthom/complexes.hpp"
#include "test_support.hpp"

using namespace parthom;

namespace {

// Block containment from the block lists, independent of the bitmask code.
bool contained(const SetPartition& a, const SetPartition& b) {
  auto bb = b.blocks();
  for (const auto& block : a.blocks()) {
    bool inside = false;
    for (const auto& big : bb)
      inside = inside || std::includes(big.begin(), big.end(), block.begin(), block.end());
    if (!inside) return false;
  }
  return true;
}

// f-vector of the order complex on `vs` by brute-force chain extension.
std::vector<std::uint64_t> chain_counts(const std::vector<SetPartition>& vs) {
  std::vector<std::uint64_t> f;
  std::vector<std::vector<std::size_t>> level;
  for (std::size_t i = 0; i < vs.size(); ++i) level.push_back({i});
  while (!level.empty()) {
    f.push_back(level.size());
    std::vector<std::vector<std::size_t>> next;
    for (const auto& chain : level)
      for (std::size_t j = 0; j < vs.size(); ++j)
        if (vs[chain.back()] != vs[j] && contained(vs[chain.back()], vs[j])) {
          auto c = chain;
          c.push_back(j);
          next.push_back(std::move(c));
        }
    level = std::move(next);
  }
  return f;
}

std::vector<std::uint64_t> f_of(const OrderComplex& c) {
  std::vector<std::uint64_t> out;
  for (int d = 0; d <= c.dimension(); ++d) out.push_back(c.f_vector().f(d));
  return out;
}

}  // namespace

TEST_SUITE("complexes") {

TEST_CASE("Delta(3)") {
  auto d = build_delta(3);
  CHECK(f_of(d) == std::vector<std::uint64_t>{4, 3});
  CHECK(euler_characteristic(d) == 1);
  CHECK(d.vertices().back() == SetPartition::one_block(3));
  auto link = link_complex(d);
  CHECK(f_of(link) == std::vector<std::uint64_t>{3});
  CHECK(link.kind() == ComplexKind::boundary_delta);
}

TEST_CASE("Delta(N) vertex counts and contractibility") {
  auto bell = oracle::bell_numbers(8);
  for (unsigned n = 3; n <= 7; ++n) {
    auto d = build_delta(n);
    CAPTURE(n);
    CHECK(d.vertices().size() == bell[n].get_ui() - 1);
    CHECK(euler_characteristic(d) == 1);
  }
  CHECK(link_complex(build_delta(4)).vertices().size() == 13);
  CHECK_THROWS(build_delta(2));
  CHECK_THROWS(build_delta(9));
}

TEST_CASE("f-vectors agree with brute-force chain counting") {
  for (unsigned n = 3; n <= 5; ++n) {
    auto d = build_delta(n);
    CHECK(f_of(d) == chain_counts(d.vertices()));
  }
  for (unsigned n = 4; n <= 6; n += 2) {
    auto x = build_xi2(n);
    CHECK(f_of(x) == chain_counts(x.vertices()));
  }
  CHECK(f_of(build_delta(4)) == std::vector<std::uint64_t>{14, 31, 18});
}

TEST_CASE("Xi_2 small cases") {
  auto x4 = build_xi2(4);
  CHECK(f_of(x4) == std::vector<std::uint64_t>{10, 12});
  CHECK(euler_characteristic(x4) == -2);
  CHECK(euler_characteristic(build_xi2(6)) == -44);
  CHECK_THROWS_WITH_AS(build_xi2(5), doctest::Contains("even"), std::invalid_argument);
  CHECK_THROWS(build_xi2(2));
}

TEST_CASE("closed-support Euler characteristic") {
  CHECK(euler_characteristic(build_delta(4), build_xi2(4)) == 3);
  CHECK(euler_characteristic(build_delta(6), build_xi2(6)) == 45);
  for (unsigned n = 4; n <= 8; n += 2)
    CHECK(BigInt(static_cast<long>(euler_characteristic(build_delta(n), build_xi2(n)))) ==
          double_factorial_formula(n));
  CHECK_THROWS(euler_characteristic(build_delta(4), build_delta(5)));
}

TEST_CASE("Delta_A") {
  auto full = build_delta_A(SetPartition::one_block(5));
  auto d5 = build_delta(5);
  CHECK(full.vertices() == d5.vertices());
  CHECK(f_of(full) == f_of(d5));

  auto a = build_delta_A(SetPartition::parse("0011"));
  std::set<std::string> labels;
  for (const auto& v : a.vertices()) labels.insert(v.to_string());
  CHECK(labels == std::set<std::string>{"0011", "0012", "0122"});
  CHECK(f_of(a) == std::vector<std::uint64_t>{3, 2});
  CHECK(euler_characteristic(a) == 1);

  auto point = build_delta_A(SetPartition::parse("00123"));
  CHECK(f_of(point) == std::vector<std::uint64_t>{1});
  auto empty = link_complex(point);
  CHECK(empty.is_empty());
  CHECK(empty.dimension() == -1);

  CHECK_THROWS(build_delta_A(SetPartition::singletons(4)));
}

TEST_CASE("every face is a chain, and face lists are closed") {
  auto check = [](const OrderComplex& c) {
    const auto& vs = c.vertices();
    for (int d = 0; d <= c.dimension(); ++d) {
      auto faces = c.faces(d);
      REQUIRE(faces->size() == c.f_vector().f(d));
      for (std::size_t i = 0; i < faces->size(); ++i) {
        auto f = (*faces)[i];
        for (std::size_t t = 1; t < f.size(); ++t) REQUIRE(refines_strictly(vs[f[t - 1]], vs[f[t]]));
        if (d == 0) continue;
        auto lower = c.faces(d - 1);
        std::vector<VertexId> sub(f.size() - 1);
        for (std::size_t skip = 0; skip < f.size(); ++skip) {
          std::size_t w = 0;
          for (std::size_t t = 0; t < f.size(); ++t)
            if (t != skip) sub[w++] = f[t];
          REQUIRE(lower->find(sub).has_value());
        }
      }
    }
  };
  for (unsigned n = 3; n <= 5; ++n) check(build_delta(n));
  check(build_xi2(4));
  check(build_xi2(6));
  check(link_complex(build_delta(5)));
}

TEST_CASE("Xi_2 is the full subcomplex on vertices with an odd block") {
  for (unsigned n = 4; n <= 6; n += 2) {
    auto delta = build_delta(n);
    auto xi = build_xi2(n);
    auto map = vertex_embedding(delta, xi);
    for (int d = 0; d <= delta.dimension(); ++d) {
      auto faces = delta.faces(d);
      std::set<std::vector<VertexId>> expected;
      for (std::size_t i = 0; i < faces->size(); ++i) {
        auto f = (*faces)[i];
        bool all_odd = std::all_of(f.begin(), f.end(),
                                   [&](VertexId v) { return has_part_odd(delta.vertices()[v]); });
        if (all_odd) expected.insert({f.begin(), f.end()});
      }
      std::set<std::vector<VertexId>> got;
      if (d <= xi.dimension()) {
        auto xf = xi.faces(d);
        for (std::size_t i = 0; i < xf->size(); ++i) {
          std::vector<VertexId> f;
          for (auto v : (*xf)[i]) f.push_back(map[v]);
          got.insert(f);
        }
      }
      CHECK(got == expected);
    }
  }
}

TEST_CASE("facet export and import") {
  auto d3 = build_delta(3);
  auto text = export_facets(d3);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(text.find("001 000") != std::string::npos);

  CHECK(export_facets(OrderComplex{}).empty());
  CHECK(import_facets_text("").is_empty());

  auto x4 = build_xi2(4);
  auto back = import_facets_text(export_facets(x4));
  CHECK(f_of(back) == std::vector<std::uint64_t>{10, 12});
  CHECK(back.vertices() == x4.vertices());
  CHECK(export_facets(back) == export_facets(x4));

  auto x6 = build_xi2(6);
  CHECK(export_facets(import_facets_text(export_facets(x6))) == export_facets(x6));

  CHECK_THROWS_WITH(import_facets_text("0011 0012\n"), doctest::Contains("line 1"));
  CHECK_THROWS_WITH(import_facets_text("001 000\n000 001\n"), doctest::Contains("line 2"));
  CHECK_THROWS(import_facets_text("001 0000\n"));
}

TEST_CASE("explicit complexes support link and embedding") {
  auto d4 = import_facets_text(export_facets(build_delta(4)));
  auto link = link_complex(d4);
  CHECK(f_of(link) == f_of(link_complex(build_delta(4))));
  CHECK(vertex_embedding(d4, link).size() == 13);
}

TEST_CASE("streamed faces with a disk cache match retained faces") {
  test_support::TempDir dir;
  BuildOptions retained;
  retained.cache_dir.reset();
  BuildOptions streamed;
  streamed.materialize_max_n = 3;
  streamed.cache_dir = dir.path();

  auto a = build_xi2(6, retained);
  auto b = build_xi2(6, streamed);
  for (int d = 0; d <= a.dimension(); ++d) CHECK(a.faces(d)->data() == b.faces(d)->data());
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir.path())) files += e.is_regular_file();
  CHECK(files == static_cast<std::size_t>(a.dimension() + 1));

  // Second build reads back from disk.
  auto c = build_xi2(6, streamed);
  for (int d = 0; d <= a.dimension(); ++d) CHECK(a.faces(d)->data() == c.faces(d)->data());

  // A corrupt cache file is ignored, not trusted.
  for (const auto& e : std::filesystem::directory_iterator(dir.path()))
    std::filesystem::resize_file(e.path(), 10);
  auto d = build_xi2(6, streamed);
  for (int k = 0; k <= a.dimension(); ++k) CHECK(a.faces(k)->data() == d.faces(k)->data());
}

TEST_CASE("simplicial complex from facets") {
  auto c = SimplicialComplex::from_facets(4, {{0, 1, 2}, {2, 3}});
  CHECK(c.f_vector().f(0) == 4);
  CHECK(c.f_vector().f(1) == 4);
  CHECK(c.f_vector().f(2) == 1);
  CHECK(c.f_vector().alternating_sum() == 1);
  CHECK(maximal_faces(c) == std::vector<std::vector<VertexId>>{{0, 1, 2}, {2, 3}});
  CHECK(SimplicialComplex().is_empty());
  CHECK(SimplicialComplex().faces(-1)->size() == 1);
}

}  // TEST_SUITE
