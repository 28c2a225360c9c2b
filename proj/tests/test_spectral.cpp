#include <doctest.h>

#include "oracles.hpp"
#include "parthom/spectral.hpp"

using namespace parthom;

namespace {

using Cells = std::map<std::pair<int, int>, BigInt>;

IntPolynomial poly(std::initializer_list<std::pair<unsigned, long>> terms) {
  IntPolynomial p;
  for (auto [e, c] : terms) p.add_term(e, c);
  return p;
}

// Stirling polynomial sum_k c(n, k) x^{n-k} with x = t^{m-1}.
IntPolynomial stirling_poly(unsigned n, unsigned m) {
  auto c = oracle::stirling_first(n);
  IntPolynomial p;
  for (unsigned k = 1; k <= n; ++k) p.add_term((n - k) * (m - 1), c[n][k]);
  return p;
}

}  // namespace

TEST_SUITE("polynomials") {

TEST_CASE("arithmetic") {
  auto a = poly({{0, 1}, {3, 1}});
  CHECK((a * a) == poly({{0, 1}, {3, 2}, {6, 1}}));
  CHECK((a + poly({{3, -1}})) == IntPolynomial::constant(1));
  CHECK(IntPolynomial().to_string() == "0");
  CHECK(poly({{6, 15}, {8, 60}, {10, 45}}).to_string() == "15t^6 + 60t^8 + 45t^10");
  CHECK(poly({{0, 1}, {1, -2}}).to_string() == "1 - 2t");
  CHECK(poly({{2, 5}}).degree() == 2u);
  CHECK_FALSE(IntPolynomial().degree().has_value());
}

}  // TEST_SUITE

TEST_SUITE("spectral") {

TEST_CASE("projective power Poincare polynomial") {
  CHECK(projective_power_poincare(1, 3) == IntPolynomial::constant(1));
  CHECK(projective_power_poincare(2, 3) == poly({{0, 1}, {3, 1}}));
  CHECK(projective_power_poincare(3, 3) == poly({{0, 1}, {3, 2}, {6, 1}}));
  CHECK_THROWS(projective_power_poincare(2, 4));
  CHECK_THROWS(projective_power_poincare(0, 3));
}

TEST_CASE("E^1 closed form, N = 6, m = 3") {
  auto e1 = e1_page_closed_form(6, 3);
  CHECK(e1.cells == Cells{{{2, 0}, 15}, {{3, 0}, 90}, {{4, 0}, 120},
                          {{2, 3}, 30}, {{3, 3}, 90}, {{2, 6}, 15}});
  CHECK(e1.page == PageTag::e1);
  CHECK(support_check(e1).ok);
  for (int q = 0; q <= 8; ++q)
    if (q % 3 != 0)
      for (int p = 0; p <= 4; ++p) CHECK(e1.rank(p, q) == 0);
}

TEST_CASE("E^1 closed form, N = 4") {
  for (unsigned m : {3u, 5u, 7u}) {
    auto e1 = e1_page_closed_form(4, m);
    CHECK(e1.cells == Cells{{{1, 0}, 3}, {{2, 0}, 6}, {{1, static_cast<int>(m)}, 3}});
  }
  CHECK_THROWS(e1_page_closed_form(5, 3));
  CHECK_THROWS(e1_page_closed_form(6, 4));
  CHECK_THROWS(e1_page_closed_form(10, 3));
}

TEST_CASE("computed E^1 equals the closed form for N <= 6 and odd m in [3, 9]") {
  for (unsigned n : {4u, 6u})
    for (unsigned m = 3; m <= 9; m += 2) {
      CAPTURE(n);
      CAPTURE(m);
      CHECK(e1_page_computed(n, m) == e1_page_closed_form(n, m));
    }
}

TEST_CASE("m only changes the grid spacing") {
  auto a = e1_page_computed(6, 3);
  auto b = e1_page_computed(6, 5);
  REQUIRE(a.cells.size() == b.cells.size());
  for (const auto& [cell, rank] : a.cells) CHECK(b.rank(cell.first, cell.second / 3 * 5) == rank);
}

TEST_CASE("E^2 from the N = 6 page") {
  auto e2 = e2_page(e1_page_closed_form(6, 3));
  CHECK(e2.cells == Cells{{{4, 0}, 45}, {{3, 3}, 60}, {{2, 6}, 15}});
  CHECK(e2.page == PageTag::e2);
  CHECK(e2.verified);
  auto s = support_check(e2);
  CHECK(s.ok);
  for (const auto& [cell, rank] : e2.cells) CHECK(cell.first + cell.second / 3 == 4);
}

TEST_CASE("E^2 for N = 4") {
  auto e2 = e2_page(e1_page_closed_form(4, 5));
  CHECK(e2.cells == Cells{{{2, 0}, 3}, {{1, 5}, 3}});
}

TEST_CASE("row alternating sums match the surviving cell") {
  for (unsigned n : {4u, 6u, 8u})
    for (unsigned m : {5u, 7u}) {
      auto e1 = e1_page_closed_form(n, m);
      auto e2 = e2_page(e1);
      for (int a = 0; a <= static_cast<int>(n) / 2 - 1; ++a) {
        BigInt alt = 0;
        for (int p = 0; p <= static_cast<int>(n) - 2; ++p)
          alt += (p % 2 == 0 ? 1 : -1) * e1.rank(p, a * static_cast<int>(m));
        CHECK(abs(alt) == e2.rank(static_cast<int>(n) - 2 - a, a * static_cast<int>(m)));
      }
    }
}

TEST_CASE("single populated cell per row passes through") {
  SpectralPage e1;
  e1.n = 6;
  e1.m = 3;
  e1.set(4, 0, 7);
  e1.set(3, 3, 2);
  auto e2 = e2_page(e1);
  CHECK(e2.cells == e1.cells);
}

TEST_CASE("E^2 rejects bad input") {
  auto e1 = e1_page_closed_form(8, 3);  // 3 > 8/2 - 1 is false
  CHECK_THROWS_AS(e2_page(e1), std::invalid_argument);
  E2Options o;
  o.override_lemma_bound = true;
  auto forced = e2_page(e1, o);
  CHECK_FALSE(forced.verified);

  SpectralPage wrong_sign;
  wrong_sign.n = 6;
  wrong_sign.m = 3;
  wrong_sign.set(3, 0, 5);  // odd p at the top of row 0
  CHECK_THROWS_AS(e2_page(wrong_sign), std::domain_error);

  SpectralPage outside;
  outside.n = 6;
  outside.m = 3;
  outside.set(0, 0, 1);
  CHECK_THROWS_AS(e2_page(outside), std::invalid_argument);
  CHECK_THROWS(e2_page(e2_page(e1_page_closed_form(6, 3))));
}

TEST_CASE("support check reports violations") {
  SpectralPage page;
  page.n = 6;
  page.m = 3;
  page.set(0, 0, 1);
  page.set(2, 4, 1);
  page.set(4, 3, 1);
  auto s = support_check(page);
  CHECK_FALSE(s.ok);
  REQUIRE(s.violations.size() == 3);
  CHECK(s.violations[0].p == 0);
  CHECK(s.violations[1].q == 4);
  CHECK(s.violations[2].reason.find("(N-2)m") != std::string::npos);

  auto e1 = e1_page_closed_form(6, 3);
  e1.page = PageTag::e2;
  CHECK_FALSE(support_check(e1).ok);
}

TEST_CASE("twisted Poincare polynomial, closed form") {
  CHECK(twisted_poincare_closed(6, 3) == poly({{6, 15}, {8, 60}, {10, 45}}));
  CHECK(twisted_poincare_closed(4, 3) == poly({{4, 3}, {6, 3}}));
  CHECK(twisted_poincare_closed(4, 5) == poly({{8, 3}, {12, 3}}));
  CHECK_THROWS(twisted_poincare_closed(5, 3));
  CHECK_THROWS(twisted_poincare_closed(6, 2));
}

TEST_CASE("twisted Poincare polynomial from E^2") {
  for (unsigned n : {4u, 6u})
    for (unsigned m : {3u, 5u, 7u}) {
      if (static_cast<int>(m) <= static_cast<int>(n) / 2 - 1) continue;
      CAPTURE(n);
      CAPTURE(m);
      CHECK(twisted_poincare_from_page(e2_page(e1_page_closed_form(n, m))) ==
            twisted_poincare_closed(n, m));
    }
  SpectralPage empty;
  empty.n = 6;
  empty.m = 3;
  empty.page = PageTag::e2;
  CHECK(twisted_poincare_from_page(empty).is_zero());
  CHECK_THROWS(twisted_poincare_from_page(e1_page_closed_form(6, 3)));
}

TEST_CASE("Goresky-MacPherson identity") {
  auto small = gm_identity_check(3, 2);
  CHECK(small.holds);
  CHECK(small.configuration_side == poly({{0, 1}, {1, 3}, {2, 2}}));
  CHECK(small.arrangement_side == poly({{0, 1}, {1, 3}, {2, 2}}));

  for (unsigned n = 3; n <= 8; ++n)
    for (unsigned m : {2u, 3u, 5u}) {
      auto r = gm_identity_check(n, m);
      CAPTURE(n);
      CAPTURE(m);
      CHECK(r.holds);
      CHECK(r.configuration_side == stirling_poly(n, m));
      CHECK(r.arrangement_side == stirling_poly(n, m));
      CHECK(r.top_coefficient == factorial(n - 1));
    }
  CHECK_THROWS(gm_identity_check(9, 3));
  CHECK_THROWS(gm_identity_check(4, 1));
}

TEST_CASE("render") {
  auto text = render_page(e2_page(e1_page_closed_form(6, 3)));
  CHECK(text.find("E^2 page, N=6, m=3") == 0);
  CHECK(text.find("q=6") < text.find("q=3"));
  CHECK(text.find("45") != std::string::npos);
}

}  // TEST_SUITE
