#include "parthom/homology.hpp"

#include <algorithm>
#include <stdexcept>

namespace parthom {

std::string_view to_string(Coefficients c) {
  return c == Coefficients::rationals ? "Q" : "Z";
}

std::uint64_t HomologySummary::betti(int d) const {
  for (const auto& g : groups)
    if (g.dim == d) return g.betti;
  return 0;
}

const std::vector<BigInt>& HomologySummary::torsion(int d) const {
  static const std::vector<BigInt> kNone;
  for (const auto& g : groups)
    if (g.dim == d) return g.torsion;
  return kNone;
}

std::vector<std::uint64_t> HomologySummary::betti_vector() const {
  std::vector<std::uint64_t> out;
  for (const auto& g : groups)
    if (g.dim >= 0) out.push_back(g.betti);
  return out;
}

std::int64_t HomologySummary::alternating_sum() const {
  std::int64_t s = 0;
  for (const auto& g : groups) {
    auto b = static_cast<std::int64_t>(g.betti);
    s += (g.dim % 2 == 0) ? b : -b;
  }
  return s;
}

bool HomologySummary::has_torsion() const {
  return std::any_of(groups.begin(), groups.end(), [](const auto& g) { return !g.torsion.empty(); });
}

SparseBoundaryMatrix boundary_between(const FaceList& lower, const FaceList& upper) {
  if (upper.dimension() != lower.dimension() + 1)
    throw std::invalid_argument("boundary_between: dimensions are not consecutive");
  const std::size_t width = upper.width();
  SparseIntMatrix::Builder builder(lower.size(), upper.size() * width);
  std::vector<VertexId> scratch(width - 1);
  for (std::size_t j = 0; j < upper.size(); ++j) {
    auto face = upper[j];
    for (std::size_t skip = 0; skip < width; ++skip) {
      std::copy(face.begin(), face.begin() + static_cast<std::ptrdiff_t>(skip), scratch.begin());
      std::copy(face.begin() + static_cast<std::ptrdiff_t>(skip) + 1, face.end(),
                scratch.begin() + static_cast<std::ptrdiff_t>(skip));
      auto row = lower.find(scratch);
      if (!row) throw std::logic_error("face list is not closed under taking faces");
      builder.push(static_cast<SparseIntMatrix::Index>(*row), (skip % 2 == 0) ? 1 : -1);
    }
    builder.finish_column();
  }
  return std::move(builder).build();
}

SparseBoundaryMatrix boundary_matrix(const SimplicialComplex& c, int d) {
  if (d < 0 || d > c.dimension())
    throw std::out_of_range("boundary_matrix: dimension " + std::to_string(d) + " outside [0, " +
                            std::to_string(c.dimension()) + "]");
  return boundary_between(*c.faces(d - 1), *c.faces(d));
}

namespace {

// A chain complex given by cell counts in dimensions lo..hi and a boundary
// producer called once per dimension in increasing order.
struct ChainComplexSpec {
  int lo = 0;
  int hi = -1;
  std::vector<std::uint64_t> cells;
  std::function<SparseBoundaryMatrix(int)> boundary;

  std::uint64_t count(int d) const {
    return (d < lo || d > hi) ? 0 : cells[static_cast<std::size_t>(d - lo)];
  }
};

HomologySummary compute_homology(const ChainComplexSpec& spec, Coefficients coefficients,
                                 bool reduced, const HomologyOptions& options) {
  const int span = spec.hi - spec.lo + 1;
  std::vector<std::uint64_t> rank(static_cast<std::size_t>(std::max(span, 0)) + 1, 0);
  std::vector<std::vector<BigInt>> torsion(rank.size());

  // rank[d - lo] is the rank of the boundary out of dimension d.
  for (int d = spec.lo + 1; d <= spec.hi; ++d) {
    auto m = spec.boundary(d);
    std::size_t r;
    if (coefficients == Coefficients::rationals) {
      r = rank_exact(m, options.rank);
    } else {
      auto factors = smith_normal_form(m, options.snf);
      r = factors.size();
      for (auto& f : factors)
        if (f > 1) torsion[static_cast<std::size_t>(d - 1 - spec.lo)].push_back(f);
    }
    rank[static_cast<std::size_t>(d - spec.lo)] = r;
    if (options.progress) options.progress(d, r);
  }

  HomologySummary out;
  out.coefficients = coefficients;
  out.reduced = reduced;
  for (int d = spec.lo; d <= spec.hi; ++d) {
    const auto i = static_cast<std::size_t>(d - spec.lo);
    const std::uint64_t r_out = rank[i];
    const std::uint64_t r_in = (d < spec.hi) ? rank[i + 1] : 0;
    HomologyGroup g;
    g.dim = d;
    g.betti = spec.count(d) - r_out - r_in;
    g.torsion = std::move(torsion[i]);
    if (d == -1 && g.betti == 0 && g.torsion.empty()) continue;
    out.groups.push_back(std::move(g));
  }
  return out;
}

ChainComplexSpec absolute_spec(const SimplicialComplex& c, bool reduced) {
  ChainComplexSpec spec;
  spec.lo = reduced ? -1 : 0;
  spec.hi = c.dimension();
  for (int d = spec.lo; d <= spec.hi; ++d) spec.cells.push_back(c.f_vector().f(d));
  // Keep the previous dimension's faces so each list is produced once.
  auto previous = std::make_shared<std::shared_ptr<const FaceList>>();
  spec.boundary = [&c, previous](int d) {
    auto lower = (*previous && (*previous)->dimension() == d - 1) ? *previous : c.faces(d - 1);
    auto upper = c.faces(d);
    auto m = boundary_between(*lower, *upper);
    c.release(d - 1);
    *previous = std::move(upper);
    return m;
  };
  return spec;
}

}  // namespace

HomologySummary betti_numbers(const SimplicialComplex& c, bool reduced,
                              const HomologyOptions& options) {
  return compute_homology(absolute_spec(c, reduced), Coefficients::rationals, reduced, options);
}

HomologySummary integral_homology(const SimplicialComplex& c, bool reduced,
                                  const HomologyOptions& options) {
  return compute_homology(absolute_spec(c, reduced), Coefficients::integers, reduced, options);
}

HomologySummary relative_homology(const SimplicialComplex& total, const SimplicialComplex& sub,
                                  std::span<const VertexId> sub_to_total,
                                  Coefficients coefficients, const HomologyOptions& options) {
  if (sub_to_total.size() != sub.num_vertices())
    throw std::invalid_argument("relative_homology: vertex map has the wrong size");
  if (sub.dimension() > total.dimension())
    throw std::invalid_argument("relative_homology: subcomplex has larger dimension");

  const int top = total.dimension();
  // relative_index[d][i]: position of total face i among relative d-cells, or -1.
  auto relative_index = std::make_shared<std::vector<std::vector<std::int64_t>>>();
  ChainComplexSpec spec;
  spec.lo = 0;
  spec.hi = top;
  std::vector<VertexId> mapped;
  for (int d = 0; d <= top; ++d) {
    auto faces = total.faces(d);
    std::vector<char> in_sub(faces->size(), 0);
    if (d <= sub.dimension()) {
      auto sub_faces = sub.faces(d);
      for (std::size_t i = 0; i < sub_faces->size(); ++i) {
        auto f = (*sub_faces)[i];
        mapped.assign(f.size(), 0);
        for (std::size_t t = 0; t < f.size(); ++t) {
          if (f[t] >= sub_to_total.size())
            throw std::invalid_argument("relative_homology: vertex map out of range");
          mapped[t] = sub_to_total[f[t]];
        }
        if (!std::is_sorted(mapped.begin(), mapped.end()))
          throw std::invalid_argument("relative_homology: vertex map is not order preserving");
        auto idx = faces->find(mapped);
        if (!idx) throw std::invalid_argument("relative_homology: not a subcomplex");
        in_sub[*idx] = 1;
      }
    }
    std::vector<std::int64_t> index(faces->size(), -1);
    std::int64_t next = 0;
    for (std::size_t i = 0; i < faces->size(); ++i)
      if (!in_sub[i]) index[i] = next++;
    spec.cells.push_back(static_cast<std::uint64_t>(next));
    relative_index->push_back(std::move(index));
  }

  spec.boundary = [&total, relative_index](int d) {
    auto lower = total.faces(d - 1);
    auto upper = total.faces(d);
    const auto& row_index = (*relative_index)[static_cast<std::size_t>(d - 1)];
    const auto& col_index = (*relative_index)[static_cast<std::size_t>(d)];
    const std::size_t rows = static_cast<std::size_t>(
        std::count_if(row_index.begin(), row_index.end(), [](auto v) { return v >= 0; }));
    SparseIntMatrix::Builder builder(rows);
    std::vector<VertexId> scratch(upper->width() - 1);
    for (std::size_t j = 0; j < upper->size(); ++j) {
      if (col_index[j] < 0) continue;
      auto face = (*upper)[j];
      for (std::size_t skip = 0; skip < face.size(); ++skip) {
        std::size_t w = 0;
        for (std::size_t t = 0; t < face.size(); ++t)
          if (t != skip) scratch[w++] = face[t];
        auto row = lower->find(scratch);
        if (!row) throw std::logic_error("face list is not closed under taking faces");
        if (row_index[*row] < 0) continue;
        builder.push(static_cast<SparseIntMatrix::Index>(row_index[*row]), (skip % 2 == 0) ? 1 : -1);
      }
      builder.finish_column();
    }
    return std::move(builder).build();
  };
  return compute_homology(spec, coefficients, false, options);
}

HomologySummary relative_homology(const OrderComplex& total, const OrderComplex& sub,
                                  Coefficients coefficients, const HomologyOptions& options) {
  auto map = vertex_embedding(total, sub);
  return relative_homology(total.simplicial(), sub.simplicial(), map, coefficients, options);
}

}  // namespace parthom
