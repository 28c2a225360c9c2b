#include "parthom/serialize.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace parthom {

Json to_json(const BigInt& value) {
  if (value.fits_slong_p()) return Json(static_cast<std::int64_t>(value.get_si()));
  return Json(value.get_str());
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<std::uint64_t>()));
    return BigInt(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a decimal string");
}

Json to_json(const HomologySummary& h) {
  Json out;
  out["coefficients"] = std::string(to_string(h.coefficients));
  out["reduced"] = h.reduced;
  Json dims = Json::array();
  for (const auto& g : h.groups) {
    Json d;
    d["dim"] = g.dim;
    d["betti"] = g.betti;
    if (h.coefficients == Coefficients::integers) {
      Json t = Json::array();
      for (const auto& f : g.torsion) t.push_back(to_json(f));
      d["torsion"] = std::move(t);
    }
    dims.push_back(std::move(d));
  }
  out["dimensions"] = std::move(dims);
  return out;
}

std::string betti_csv(const HomologySummary& h) {
  std::ostringstream out;
  out << "dim,betti,torsion\n";
  for (const auto& g : h.groups) {
    out << g.dim << ',' << g.betti << ',';
    for (std::size_t i = 0; i < g.torsion.size(); ++i) out << (i ? ";" : "") << g.torsion[i].get_str();
    out << '\n';
  }
  return out.str();
}

Json to_json(const SpectralPage& page) {
  Json out;
  out["N"] = page.n;
  out["m"] = page.m;
  out["page"] = to_string(page.page);
  out["verified"] = page.verified;
  Json cells = Json::array();
  for (const auto& [cell, rank] : page.cells)
    cells.push_back(Json{{"p", cell.first}, {"q", cell.second}, {"rank", to_json(rank)}});
  out["cells"] = std::move(cells);
  return out;
}

SpectralPage page_from_json(const Json& j) {
  SpectralPage page;
  page.n = j.at("N").get<unsigned>();
  page.m = j.at("m").get<unsigned>();
  const auto tag = j.at("page").is_string() ? j.at("page").get<std::string>()
                                            : std::to_string(j.at("page").get<int>());
  if (tag == "1") page.page = PageTag::e1;
  else if (tag == "2") page.page = PageTag::e2;
  else if (tag == "infinity") page.page = PageTag::infinity;
  else throw std::invalid_argument("unknown page tag '" + tag + "'");
  page.verified = j.value("verified", true);
  for (const auto& c : j.at("cells")) {
    auto r = bigint_from_json(c.at("rank"));
    if (sgn(r) < 0) throw std::invalid_argument("negative rank in page");
    page.set(c.at("p").get<int>(), c.at("q").get<int>(), r);
  }
  return page;
}

Json to_json(const IntPolynomial& poly) {
  Json out = Json::array();
  for (const auto& [e, c] : poly.terms())
    out.push_back(Json{{"exponent", e}, {"coefficient", to_json(c)}});
  return out;
}

IntPolynomial polynomial_from_json(const Json& j) {
  IntPolynomial out;
  for (const auto& t : j) out.add_term(t.at("exponent").get<unsigned>(), bigint_from_json(t.at("coefficient")));
  return out;
}

Json to_json(const FVector& f) {
  Json out;
  out["dimension"] = f.dimension();
  Json counts = Json::array();
  for (int d = 0; d <= f.dimension(); ++d) counts.push_back(f.f(d));
  out["f"] = std::move(counts);
  return out;
}

}  // namespace parthom
