#include "parthom/spectral.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace parthom {

namespace {

void require_odd_m(unsigned m, const char* what) {
  if (m < 3 || m % 2 == 0)
    throw std::invalid_argument(std::string(what) + ": m must be odd and at least 3, got " +
                                std::to_string(m));
}

void require_even_n(unsigned n, unsigned lo, unsigned hi, const char* what) {
  if (n % 2 != 0 || n < lo || n > hi)
    throw std::invalid_argument(std::string(what) + ": N must be even in [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + "], got " + std::to_string(n));
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

bool lemma_bound_holds(unsigned n, unsigned m) {
  return static_cast<int>(m) > static_cast<int>(n / 2) - 1;
}

}  // namespace

std::string to_string(PageTag tag) {
  switch (tag) {
    case PageTag::e1: return "1";
    case PageTag::e2: return "2";
    case PageTag::infinity: return "infinity";
  }
  return "1";
}

BigInt SpectralPage::rank(int p, int q) const {
  auto it = cells.find({p, q});
  return it == cells.end() ? BigInt(0) : it->second;
}

void SpectralPage::set(int p, int q, const BigInt& value) {
  if (sgn(value) == 0)
    cells.erase({p, q});
  else
    cells[{p, q}] = value;
}

IntPolynomial projective_power_poincare(unsigned k, unsigned m) {
  if (k < 1) throw std::invalid_argument("projective_power_poincare: k must be positive");
  require_odd_m(m, "projective_power_poincare");
  IntPolynomial factor = IntPolynomial::constant(1) + IntPolynomial::monomial(1, m);
  IntPolynomial out = IntPolynomial::constant(1);
  for (unsigned i = 1; i < k; ++i) out = out * factor;
  return out;
}

SpectralPage e1_page_closed_form(unsigned n, unsigned m) {
  require_even_n(n, 4, 8, "e1_page_closed_form");
  require_odd_m(m, "e1_page_closed_form");
  SpectralPage page;
  page.n = n;
  page.m = m;
  page.page = PageTag::e1;
  for (int p = 0; p <= static_cast<int>(n) - 2; ++p) {
    const unsigned k = n - static_cast<unsigned>(p) - 1;
    BigInt weight = sum_factorial_products(n, k, true);
    if (sgn(weight) == 0) continue;
    for (unsigned a = 0; a + 1 <= k; ++a)
      page.set(p, static_cast<int>(a * m), binomial(k - 1, a) * weight);
  }
  return page;
}

SpectralPage e1_page_computed(unsigned n, unsigned m, const HomologyOptions& options) {
  require_even_n(n, 4, 6, "e1_page_computed");
  require_odd_m(m, "e1_page_computed");
  SpectralPage page;
  page.n = n;
  page.m = m;
  page.page = PageTag::e1;
  BuildOptions build;
  build.cache_dir.reset();
  for (const auto& a : enumerate_partitions(n, std::nullopt, is_two_divisible)) {
    const unsigned k = static_cast<unsigned>(a.block_count());
    const int p = static_cast<int>(n - k - 1);
    auto delta_a = build_delta_A(a, build);
    auto link = link_complex(delta_a, build);
    auto rel = relative_homology(delta_a, link, Coefficients::rationals, options);
    auto fiber = projective_power_poincare(k, m);
    for (const auto& g : rel.groups) {
      if (g.betti == 0) continue;
      for (const auto& [j, c] : fiber.terms()) {
        const int q = g.dim + static_cast<int>(j) - p;
        page.set(p, q, page.rank(p, q) + BigInt(static_cast<unsigned long>(g.betti)) * c);
      }
    }
  }
  return page;
}

SupportReport support_check(const SpectralPage& page) {
  SupportReport report;
  const int n = static_cast<int>(page.n);
  const int m = static_cast<int>(page.m);
  auto flag = [&](int p, int q, std::string why) {
    report.ok = false;
    report.violations.push_back({p, q, std::move(why)});
  };
  for (const auto& [cell, rank] : page.cells) {
    auto [p, q] = cell;
    if (sgn(rank) < 0) flag(p, q, "negative rank");
    if (p < n / 2 - 1 || p > n - 2) flag(p, q, "p outside [N/2-1, N-2]");
    if (m <= 0 || q < 0 || q % m != 0 || q / m > n / 2 - 1) {
      flag(p, q, "q not in {0, m, ..., (N/2-1)m}");
      continue;
    }
    if (p * m + q > (n - 2) * m) flag(p, q, "pm + q exceeds (N-2)m");
    if (page.page != PageTag::e1 && p + q / m != n - 2) flag(p, q, "p + q/m differs from N-2");
  }
  return report;
}

SpectralPage e2_page(const SpectralPage& e1, const E2Options& options) {
  if (e1.page != PageTag::e1) throw std::invalid_argument("e2_page: input is not an E^1 page");
  if (e1.n % 2 != 0 || e1.n < 4) throw std::invalid_argument("e2_page: N must be even and >= 4");
  require_odd_m(e1.m, "e2_page");
  const bool bound = lemma_bound_holds(e1.n, e1.m);
  if (!bound && !options.override_lemma_bound)
    throw std::invalid_argument("e2_page: the acyclicity argument needs m > N/2 - 1 (N=" +
                                std::to_string(e1.n) + ", m=" + std::to_string(e1.m) + ")");
  auto support = support_check(e1);
  if (!support.ok) {
    const auto& v = support.violations.front();
    throw std::invalid_argument("e2_page: E^1 cell (" + std::to_string(v.p) + "," +
                                std::to_string(v.q) + ") violates the support triangle: " + v.reason);
  }

  SpectralPage out;
  out.n = e1.n;
  out.m = e1.m;
  out.page = PageTag::e2;
  out.verified = e1.verified && bound;
  const int n = static_cast<int>(e1.n);
  const int m = static_cast<int>(e1.m);
  for (int a = 0; a <= n / 2 - 1; ++a) {
    BigInt alternating = 0;
    for (const auto& [cell, rank] : e1.cells) {
      if (cell.second != a * m) continue;
      if (cell.first % 2 == 0) alternating += rank;
      else alternating -= rank;
    }
    if (sgn(alternating) == 0) continue;
    const int top = n - 2 - a;
    const int expected_sign = (top % 2 == 0) ? 1 : -1;
    if (sgn(alternating) != expected_sign)
      throw std::domain_error("e2_page: row q=" + std::to_string(a * m) +
                              " has an alternating sum of the wrong sign for a complex acyclic "
                              "below its top cell");
    out.set(top, a * m, abs(alternating));
  }
  return out;
}

IntPolynomial twisted_poincare_closed(unsigned n, unsigned m) {
  if (n % 2 != 0 || n < 4) throw std::invalid_argument("twisted_poincare_closed: N must be even and >= 4");
  require_odd_m(m, "twisted_poincare_closed");
  IntPolynomial out = IntPolynomial::monomial(double_factorial(static_cast<int>(n) - 1),
                                              (n / 2) * (m - 1));
  for (unsigned j = 1; j + 1 <= n / 2; ++j)
    out = out * (IntPolynomial::constant(1) + IntPolynomial::monomial(2 * j - 1, m - 1));
  return out;
}

IntPolynomial twisted_poincare_from_page(const SpectralPage& e2) {
  if (e2.page == PageTag::e1)
    throw std::invalid_argument("twisted_poincare_from_page: needs an E^2 or E^infinity page");
  if (!lemma_bound_holds(e2.n, e2.m))
    throw std::invalid_argument("twisted_poincare_from_page: E^2 = E^infinity needs m > N/2 - 1");
  IntPolynomial out;
  const long top = static_cast<long>(e2.m) * (static_cast<long>(e2.n) - 1) - 1;
  for (const auto& [cell, rank] : e2.cells) {
    const long exponent = top - (cell.first + cell.second);
    if (exponent < 0) throw std::invalid_argument("twisted_poincare_from_page: cell beyond top degree");
    out.add_term(static_cast<unsigned>(exponent), rank);
  }
  return out;
}

GmIdentityResult gm_identity_check(unsigned n, unsigned m) {
  if (n < 3 || n > 8) throw std::invalid_argument("gm_identity_check: N must lie in [3, 8]");
  if (m < 2) throw std::invalid_argument("gm_identity_check: m must be at least 2");
  GmIdentityResult result;

  result.configuration_side = IntPolynomial::constant(1);
  for (unsigned j = 1; j < n; ++j)
    result.configuration_side =
        result.configuration_side *
        (IntPolynomial::constant(1) + IntPolynomial::monomial(j, m - 1));

  // Reduced homology of the link of Delta_A is concentrated in dimension
  // N - k - 2 with rank prod (a_j - 1)!; the arrangement formula places it in
  // cohomological degree i = mN - mk - (N - k - 2) - 2.
  for_each_partition(n, std::nullopt, {}, [&](const SetPartition& a) {
    const long k = static_cast<long>(a.block_count());
    if (k == static_cast<long>(n)) {
      result.arrangement_side.add_term(0, 1);
      return;
    }
    const long homology_dim = static_cast<long>(n) - k - 2;
    const long degree = static_cast<long>(m) * static_cast<long>(n) - static_cast<long>(m) * k -
                        homology_dim - 2;
    result.arrangement_side.add_term(static_cast<unsigned>(degree), factorial_weight(a));
  });

  result.top_coefficient = result.arrangement_side.coefficient((n - 1) * (m - 1));
  result.holds = result.configuration_side == result.arrangement_side &&
                 result.top_coefficient == factorial(n - 1);
  return result;
}

std::string render_page(const SpectralPage& page) {
  const int n = static_cast<int>(page.n);
  const int m = static_cast<int>(page.m);
  std::size_t width = 4;
  for (const auto& [cell, rank] : page.cells) width = std::max(width, rank.get_str().size() + 2);
  auto pad = [&](const std::string& s) {
    return std::string(width > s.size() ? width - s.size() : 0, ' ') + s;
  };

  std::ostringstream out;
  out << "E^" << (page.page == PageTag::infinity ? std::string("inf") : to_string(page.page))
      << " page, N=" << n << ", m=" << m << (page.verified ? "" : " (unverified)") << '\n';
  std::vector<int> rows;
  for (int a = n / 2 - 1; a >= 0; --a) rows.push_back(a * m);
  for (const auto& [cell, rank] : page.cells)
    if (std::find(rows.begin(), rows.end(), cell.second) == rows.end()) rows.push_back(cell.second);
  std::sort(rows.rbegin(), rows.rend());
  int max_p = n - 2;
  for (const auto& [cell, rank] : page.cells) max_p = std::max(max_p, cell.first);

  for (int q : rows) {
    out << pad("q=" + std::to_string(q)) << " |";
    for (int p = 0; p <= max_p; ++p) {
      auto r = page.rank(p, q);
      out << pad(sgn(r) == 0 ? "." : r.get_str());
    }
    out << '\n';
  }
  out << std::string(width, ' ') << " +" << std::string(width * static_cast<std::size_t>(max_p + 1), '-')
      << '\n';
  out << pad("p") << "  ";
  for (int p = 0; p <= max_p; ++p) out << pad(std::to_string(p));
  out << '\n';
  return out.str();
}

}  // namespace parthom
