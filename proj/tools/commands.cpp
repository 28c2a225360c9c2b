#include "commands.hpp"

#include <fstream>
#include <iomanip>
#include <new>
#include <sstream>

#include "parthom/errors.hpp"

#ifndef PARTHOM_VERSION
#define PARTHOM_VERSION "0.0.0"
#endif

namespace parthom::cli {

namespace {

constexpr unsigned kStretchN = 8;
// Rough bytes per live elimination entry, used to turn --mem-budget-mb into
// an entry limit.
constexpr std::size_t kBytesPerEntry = 32;

Json envelope(const std::string& command, Json parameters) {
  Json j;
  j["command"] = command;
  j["version"] = version();
  j["parameters"] = std::move(parameters);
  return j;
}

HomologyOptions homology_options(std::size_t mem_budget_mb) {
  HomologyOptions o;
  if (mem_budget_mb > 0) {
    const std::size_t entries = mem_budget_mb * 1024 * 1024 / kBytesPerEntry;
    o.rank.limits.max_entries = entries;
    o.snf.limits.max_entries = entries;
  }
  return o;
}

void require_even_n(unsigned n, const std::string& what) {
  if (n % 2 != 0)
    throw UsageError(what + " is defined only for even N (got N=" + std::to_string(n) + ")");
  if (n < 4 || n > kStretchN)
    throw UsageError(what + ": N must be even in [4, 8], got " + std::to_string(n));
}

void require_stretch(unsigned n, bool stretch) {
  if (n >= kStretchN && !stretch)
    throw UsageError("N=" + std::to_string(n) + " is a stretch run; pass --stretch to attempt it");
}

BigInt expected_euler(unsigned n) { return double_factorial_formula(n); }

std::string text_table(const std::string& title, const HomologySummary& h) {
  std::ostringstream out;
  out << title << " over " << to_string(h.coefficients) << (h.reduced ? ", reduced" : "") << '\n';
  out << std::setw(5) << "dim" << std::setw(10) << "betti" << "  torsion\n";
  for (const auto& g : h.groups) {
    out << std::setw(5) << g.dim << std::setw(10) << g.betti;
    for (std::size_t i = 0; i < g.torsion.size(); ++i) out << (i ? " " : "  ") << "Z/" << g.torsion[i];
    out << '\n';
  }
  return out.str();
}

Json claim(const std::string& name, bool pass, Json detail) {
  return Json{{"claim", name}, {"status", pass ? "pass" : "fail"}, {"detail", std::move(detail)}};
}

Json skipped(const std::string& name, const std::string& why) {
  return Json{{"claim", name}, {"status", "skipped"}, {"detail", Json{{"reason", why}}}};
}

Json support_json(const SupportReport& s) {
  Json v = Json::array();
  for (const auto& x : s.violations) v.push_back(Json{{"p", x.p}, {"q", x.q}, {"reason", x.reason}});
  return Json{{"ok", s.ok}, {"violations", std::move(v)}};
}

}  // namespace

std::string version() { return PARTHOM_VERSION; }

unsigned default_m(unsigned n) {
  unsigned m = 3;
  while (static_cast<int>(m) <= static_cast<int>(n / 2) - 1) m += 2;
  return m;
}

Report guarded(const std::string& command, const std::function<Report()>& body) {
  auto fail = [&](const char* status, const std::string& message, int code) {
    Report r;
    r.json["command"] = command;
    r.json["version"] = version();
    r.json["status"] = status;
    r.json["error"] = message;
    r.exit_code = code;
    return r;
  };
  try {
    return body();
  } catch (const UsageError& e) {
    return fail("usage-error", e.what(), kUsage);
  } catch (const std::invalid_argument& e) {
    return fail("usage-error", e.what(), kUsage);
  } catch (const std::out_of_range& e) {
    return fail("usage-error", e.what(), kUsage);
  } catch (const ResourceAbort& e) {
    return fail("resource-abort", e.what(), kResourceAbort);
  } catch (const std::bad_alloc&) {
    return fail("resource-abort", "out of memory", kResourceAbort);
  }
}

Report cmd_betti(const BettiArgs& args) {
  const unsigned n = args.n;
  OrderComplex complex;
  std::string title;
  if (args.kind == "xi2") {
    require_even_n(n, "Xi_2(N)");
    require_stretch(n, args.stretch);
    complex = build_xi2(n);
    title = "Xi_2(" + std::to_string(n) + ")";
  } else if (args.kind == "delta" || args.kind == "boundary-delta") {
    if (n < 3 || n > kStretchN) throw UsageError("N must lie in [3, 8], got " + std::to_string(n));
    require_stretch(n, args.stretch);
    complex = build_delta(n);
    title = "Delta(" + std::to_string(n) + ")";
    if (args.kind == "boundary-delta") {
      complex = link_complex(complex);
      title = "link of " + title;
    }
  } else {
    throw UsageError("unknown complex kind '" + args.kind + "'");
  }
  if (args.coeff != "q" && args.coeff != "z") throw UsageError("coefficients must be q or z");

  if (args.facets_out) {
    std::ofstream out(*args.facets_out);
    if (!out) throw UsageError("cannot open " + *args.facets_out + " for writing");
    export_facets(complex, out);
  }

  const auto options = homology_options(args.mem_budget_mb);
  const auto h = args.coeff == "q" ? betti_numbers(complex, args.reduced, options)
                                   : integral_homology(complex, args.reduced, options);

  Report r;
  r.json = envelope("betti", Json{{"kind", args.kind},
                                  {"n", n},
                                  {"coefficients", args.coeff},
                                  {"reduced", args.reduced}});
  r.json["results"] = Json{{"f_vector", to_json(complex.f_vector())},
                           {"euler_characteristic", euler_characteristic(complex)},
                           {"homology", to_json(h)}};
  if (args.format == "csv") {
    r.text = betti_csv(h);
    r.text_only = true;
  } else if (args.format == "text") {
    r.text = text_table(title, h);
    r.text_only = true;
  } else if (args.format != "json") {
    throw UsageError("unknown format '" + args.format + "'");
  }
  return r;
}

Report cmd_euler(const EulerArgs& args) {
  const unsigned n = args.n;
  require_even_n(n, "the Euler identity for Xi_2(N)");
  const auto& method = args.method;
  if (method != "simplex" && method != "partition-sum" && method != "permutation" && method != "all")
    throw UsageError("unknown method '" + method + "'");

  Json values;
  std::vector<BigInt> got;
  if (method == "simplex" || method == "all") {
    // chi_c(Delta \ Xi_2) from f-vectors; both complexes share the ambient vertex order.
    auto delta = build_delta(n);
    auto xi = build_xi2(n);
    BigInt v = BigInt(static_cast<long>(euler_characteristic(delta))) -
               BigInt(static_cast<long>(euler_characteristic(xi)));
    values["simplex"] = to_json(v);
    got.push_back(v);
  }
  if (method == "partition-sum" || method == "all") {
    auto v = signed_euler_sum(n);
    values["partition-sum"] = to_json(v);
    got.push_back(v);
  }
  if (method == "permutation" || method == "all") {
    auto v = count_admissible_permutations(n);
    values["permutation"] = to_json(v);
    got.push_back(v);
  }
  const BigInt expected = expected_euler(n);
  bool agree = true;
  for (const auto& v : got) agree = agree && v == expected;

  Report r;
  r.json = envelope("euler", Json{{"n", n}, {"method", method}});
  r.json["results"] = Json{{"values", values}, {"formula", to_json(expected)}, {"agree", agree}};
  r.exit_code = agree ? kOk : kClaimFailure;
  return r;
}

Report cmd_spectral(const SpectralArgs& args) {
  const unsigned n = args.n, m = args.m;
  require_even_n(n, "the spectral sequence");
  if (m < 3 || m % 2 == 0)
    throw UsageError("m must be odd and at least 3, got " + std::to_string(m));
  if (args.page != 1 && args.page != 2) throw UsageError("page must be 1 or 2");
  if (args.computed && n > 6) throw UsageError("--computed supports N <= 6");
  if (args.page == 2 && static_cast<int>(m) <= static_cast<int>(n / 2) - 1 && !args.override_lemma)
    throw UsageError("E^2 needs m > N/2 - 1 for the row acyclicity argument (N=" +
                     std::to_string(n) + ", m=" + std::to_string(m) + "); pass --override-lemma");

  Report r;
  r.json = envelope("spectral", Json{{"n", n},
                                     {"m", m},
                                     {"page", args.page},
                                     {"computed", args.computed},
                                     {"override_lemma", args.override_lemma}});
  Json results;
  bool pass = true;
  auto e1 = e1_page_closed_form(n, m);
  if (args.computed) {
    auto computed = e1_page_computed(n, m);
    results["computed_matches_closed_form"] = computed == e1;
    pass = pass && computed == e1;
    e1 = computed;
  }
  SpectralPage page = e1;
  if (args.page == 2) {
    E2Options o;
    o.override_lemma_bound = args.override_lemma;
    try {
      page = e2_page(e1, o);
    } catch (const std::domain_error& e) {
      results["error"] = e.what();
      r.json["results"] = results;
      r.exit_code = kClaimFailure;
      return r;
    }
  }
  auto support = support_check(page);
  pass = pass && support.ok;
  results["page"] = to_json(page);
  results["support"] = support_json(support);
  r.json["results"] = std::move(results);
  if (args.render) r.text = render_page(page);
  r.exit_code = pass ? kOk : kClaimFailure;
  return r;
}

Report cmd_report(const ReportArgs& args) {
  const unsigned n = args.n;
  require_even_n(n, "the reproduction report");
  require_stretch(n, args.stretch);
  const unsigned m = args.m.value_or(default_m(n));
  if (m < 3 || m % 2 == 0) throw UsageError("m must be odd and at least 3, got " + std::to_string(m));

  const auto options = homology_options(args.mem_budget_mb);
  const BigInt expected = double_factorial_formula(n);
  const int top = static_cast<int>(n) - 3;
  Json claims = Json::array();

  // Rational homology of Xi_2(N).
  auto xi = build_xi2(n);
  auto hq = betti_numbers(xi, false, options);
  {
    bool ok = true;
    for (int d = 1; d <= xi.dimension(); ++d) {
      const BigInt want = d == top ? expected : BigInt(0);
      ok = ok && BigInt(static_cast<unsigned long>(hq.betti(d))) == want;
    }
    claims.push_back(claim("xi2-rational-homology", ok,
                           Json{{"homology", to_json(hq)}, {"expected_top", to_json(expected)},
                                {"top_dimension", top}}));
  }

  // Integral homology: free part must match; torsion is reported only.
  if (n <= 6) {
    auto hz = integral_homology(xi, false, options);
    bool ok = hz.betti_vector() == hq.betti_vector();
    claims.push_back(claim("xi2-integral-free-ranks", ok,
                           Json{{"homology", to_json(hz)}, {"has_torsion", hz.has_torsion()}}));
  } else {
    claims.push_back(skipped("xi2-integral-free-ranks", "integral homology is attempted only for N <= 6"));
  }

  // Link of Delta(N): reduced homology concentrated in N-3 with rank (N-1)!.
  if (n <= 6) {
    auto link = link_complex(build_delta(n));
    auto h = betti_numbers(link, true, options);
    bool ok = true;
    for (const auto& g : h.groups) {
      const BigInt want = g.dim == top ? factorial(n - 1) : BigInt(0);
      ok = ok && BigInt(static_cast<unsigned long>(g.betti)) == want;
    }
    claims.push_back(claim("boundary-delta-reduced-homology", ok, Json{{"homology", to_json(h)}}));
  } else {
    claims.push_back(skipped("boundary-delta-reduced-homology", "Delta(8) is not rebuilt by the report"));
  }

  // Three-way Euler identity.
  {
    auto delta = build_delta(n);
    BigInt simplex = BigInt(static_cast<long>(euler_characteristic(delta))) -
                     BigInt(static_cast<long>(euler_characteristic(xi)));
    BigInt psum = signed_euler_sum(n);
    BigInt perm = count_admissible_permutations(n);
    bool ok = simplex == expected && psum == expected && perm == expected;
    claims.push_back(claim("euler-triple", ok,
                           Json{{"simplex", to_json(simplex)}, {"partition-sum", to_json(psum)},
                                {"permutation", to_json(perm)}, {"formula", to_json(expected)}}));
  }

  // Spectral pages and the twisted Poincare polynomial.
  {
    auto e1 = e1_page_closed_form(n, m);
    Json detail{{"e1", to_json(e1)}};
    bool ok = support_check(e1).ok;
    if (n <= 6) {
      bool same = e1_page_computed(n, m, options) == e1;
      detail["computed_matches_closed_form"] = same;
      ok = ok && same;
    }
    auto e2 = e2_page(e1);
    ok = ok && support_check(e2).ok && e2.rank(static_cast<int>(n) - 2, 0) == expected;
    detail["e2"] = to_json(e2);
    claims.push_back(claim("spectral-pages", ok, std::move(detail)));

    auto from_page = twisted_poincare_from_page(e2);
    auto closed = twisted_poincare_closed(n, m);
    claims.push_back(claim("twisted-poincare", from_page == closed,
                           Json{{"from_page", to_json(from_page)}, {"closed_form", to_json(closed)}}));
  }

  {
    auto gm = gm_identity_check(n, m);
    claims.push_back(claim("gm-identity", gm.holds,
                           Json{{"configuration_side", to_json(gm.configuration_side)},
                                {"arrangement_side", to_json(gm.arrangement_side)},
                                {"top_coefficient", to_json(gm.top_coefficient)}}));
  }

  bool all = true;
  for (const auto& c : claims) all = all && c["status"] != "fail";
  Report r;
  r.json = envelope("report", Json{{"n", n}, {"m", m}, {"stretch", args.stretch}});
  r.json["claims"] = std::move(claims);
  r.json["all_pass"] = all;
  r.exit_code = all ? kOk : kClaimFailure;
  return r;
}

}  // namespace parthom::cli
