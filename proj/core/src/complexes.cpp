#include "parthom/complexes.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "parthom/face_cache.hpp"

namespace parthom {

FaceList::FaceList(int dim, std::vector<VertexId> data) : dim_(dim), data_(std::move(data)) {
  if (dim < -1) throw std::invalid_argument("face dimension below -1");
  if (dim >= 0 && data_.size() % width() != 0)
    throw std::invalid_argument("face data is not a multiple of the face width");
}

std::optional<std::size_t> FaceList::find(std::span<const VertexId> face) const {
  if (dim_ < 0) return face.empty() ? std::optional<std::size_t>(0) : std::nullopt;
  if (face.size() != width()) return std::nullopt;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    auto cand = (*this)[mid];
    if (std::lexicographical_compare(cand.begin(), cand.end(), face.begin(), face.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && std::equal(face.begin(), face.end(), (*this)[lo].begin())) return lo;
  return std::nullopt;
}

std::int64_t FVector::alternating_sum() const {
  std::int64_t chi = 0;
  for (int d = 0; d <= dimension(); ++d) {
    auto f = static_cast<std::int64_t>(this->f(d));
    chi += (d % 2 == 0) ? f : -f;
  }
  return chi;
}

std::string_view to_string(ComplexKind kind) {
  switch (kind) {
    case ComplexKind::delta: return "delta";
    case ComplexKind::boundary_delta: return "boundary_delta";
    case ComplexKind::delta_A: return "delta_A";
    case ComplexKind::boundary_delta_A: return "boundary_delta_A";
    case ComplexKind::xi2: return "xi2";
    case ComplexKind::custom: return "custom";
  }
  return "custom";
}

BuildOptions default_build_options() {
  BuildOptions options;
  const char* env = std::getenv("PARTHOM_CACHE_DIR");
  if (env == nullptr) {
    options.cache_dir = std::filesystem::path(".parthom-cache");
  } else if (*env != '\0') {
    options.cache_dir = std::filesystem::path(env);
  }
  return options;
}

// ---------------------------------------------------------------------------
// SimplicialComplex

struct SimplicialComplex::State {
  std::size_t num_vertices = 0;
  FVector fvec;
  FaceGenerator generate;
  bool retain = true;
  std::optional<std::filesystem::path> cache_stem;
  std::mutex mutex;
  std::vector<std::shared_ptr<const FaceList>> retained;
};

SimplicialComplex::SimplicialComplex() : state_(std::make_shared<State>()) {}

SimplicialComplex::SimplicialComplex(std::size_t num_vertices, FVector fvec,
                                     FaceGenerator generate, bool retain,
                                     std::optional<std::filesystem::path> cache_file_stem)
    : state_(std::make_shared<State>()) {
  state_->num_vertices = num_vertices;
  state_->fvec = std::move(fvec);
  state_->generate = std::move(generate);
  state_->retain = retain;
  state_->cache_stem = std::move(cache_file_stem);
  state_->retained.resize(state_->fvec.counts.size());
}

std::size_t SimplicialComplex::num_vertices() const { return state_->num_vertices; }

const FVector& SimplicialComplex::f_vector() const { return state_->fvec; }

std::shared_ptr<const FaceList> SimplicialComplex::faces(int d) const {
  if (d < -1 || d > dimension())
    throw std::out_of_range("face dimension " + std::to_string(d) + " outside [-1, " +
                            std::to_string(dimension()) + "]");
  if (d == -1) return std::make_shared<const FaceList>(-1, std::vector<VertexId>{});

  auto& st = *state_;
  std::lock_guard lock(st.mutex);
  if (auto& slot = st.retained[d + 1]) return slot;

  const auto expected = st.fvec.f(d);
  std::optional<std::vector<VertexId>> data;
  if (st.cache_stem) data = detail::read_face_cache(*st.cache_stem, d, expected);
  if (!data) {
    data = st.generate(d);
    if (data->size() != expected * static_cast<std::uint64_t>(d + 1))
      throw std::logic_error("face generator disagrees with the f-vector in dimension " +
                             std::to_string(d));
    if (st.cache_stem) detail::write_face_cache(*st.cache_stem, d, *data);
  }
  auto list = std::make_shared<const FaceList>(d, std::move(*data));
  if (st.retain) st.retained[d + 1] = list;
  return list;
}

void SimplicialComplex::release(int d) const {
  if (d < -1 || d > dimension()) return;
  std::lock_guard lock(state_->mutex);
  if (!state_->retain) state_->retained[d + 1].reset();
}

SimplicialComplex SimplicialComplex::from_facets(
    std::size_t num_vertices, const std::vector<std::vector<VertexId>>& facets) {
  std::vector<std::vector<VertexId>> by_dim;
  for (auto facet : facets) {
    std::sort(facet.begin(), facet.end());
    facet.erase(std::unique(facet.begin(), facet.end()), facet.end());
    if (facet.empty()) continue;
    if (facet.back() >= num_vertices) throw std::invalid_argument("facet vertex out of range");
    if (facet.size() > 24) throw std::invalid_argument("facet too large to close under subsets");
    if (by_dim.size() < facet.size()) by_dim.resize(facet.size());
    const std::uint32_t subsets = 1u << facet.size();
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
      auto& bucket = by_dim[std::popcount(mask) - 1];
      for (std::size_t i = 0; i < facet.size(); ++i)
        if (mask & (1u << i)) bucket.push_back(facet[i]);
    }
  }
  FVector fvec;
  std::vector<std::vector<VertexId>> sorted(by_dim.size());
  for (std::size_t w = 1; w <= by_dim.size(); ++w) {
    auto& flat = by_dim[w - 1];
    std::vector<std::span<const VertexId>> rows;
    for (std::size_t i = 0; i < flat.size(); i += w) rows.emplace_back(flat.data() + i, w);
    std::sort(rows.begin(), rows.end(), [](auto a, auto b) {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](auto a, auto b) { return std::equal(a.begin(), a.end(), b.begin()); }),
               rows.end());
    for (auto r : rows) sorted[w - 1].insert(sorted[w - 1].end(), r.begin(), r.end());
    fvec.counts.push_back(rows.size());
  }
  auto shared = std::make_shared<const std::vector<std::vector<VertexId>>>(std::move(sorted));
  return SimplicialComplex(num_vertices, std::move(fvec),
                           [shared](int d) { return (*shared)[d]; }, true);
}

std::vector<std::vector<VertexId>> maximal_faces(const SimplicialComplex& c) {
  std::vector<std::vector<VertexId>> out;
  const int top = c.dimension();
  std::vector<VertexId> scratch;
  std::shared_ptr<const FaceList> upper;
  for (int d = top; d >= 0; --d) {
    auto current = c.faces(d);
    std::vector<bool> covered(current->size(), false);
    if (upper) {
      for (std::size_t j = 0; j < upper->size(); ++j) {
        auto face = (*upper)[j];
        for (std::size_t skip = 0; skip < face.size(); ++skip) {
          scratch.clear();
          for (std::size_t i = 0; i < face.size(); ++i)
            if (i != skip) scratch.push_back(face[i]);
          if (auto idx = current->find(scratch)) covered[*idx] = true;
        }
      }
    }
    for (std::size_t i = 0; i < current->size(); ++i) {
      if (covered[i]) continue;
      auto face = (*current)[i];
      out.emplace_back(face.begin(), face.end());
    }
    upper = std::move(current);
  }
  return out;
}

// ---------------------------------------------------------------------------
// OrderComplex

bool vertex_order_less(const SetPartition& a, const SetPartition& b) {
  if (a.block_count() != b.block_count()) return a.block_count() > b.block_count();
  return a < b;
}

namespace {

std::vector<SetPartition> canonical_vertices(std::size_t n, std::vector<SetPartition> vertices) {
  for (const auto& v : vertices)
    if (v.ground_size() != n) throw std::invalid_argument("vertex from a different ground set");
  std::sort(vertices.begin(), vertices.end(), vertex_order_less);
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

// chains[v][l] = number of chains of l+1 vertices starting at v.
std::vector<std::vector<std::uint64_t>> chain_counts(
    const std::vector<std::vector<VertexId>>& up, std::size_t max_len) {
  std::vector<std::vector<std::uint64_t>> chains(up.size(), std::vector<std::uint64_t>(max_len, 0));
  for (std::size_t v = up.size(); v-- > 0;) {
    chains[v][0] = 1;
    for (auto w : up[v])
      for (std::size_t l = 1; l < max_len; ++l) chains[v][l] += chains[w][l - 1];
  }
  return chains;
}

void check_n(std::size_t n, std::size_t lo, const BuildOptions& options, const char* what) {
  if (n < lo || n > options.max_n)
    throw std::invalid_argument(std::string(what) + ": N=" + std::to_string(n) +
                                " outside supported range [" + std::to_string(lo) + ", " +
                                std::to_string(options.max_n) + "]");
}

}  // namespace

OrderComplex OrderComplex::from_poset(ComplexKind kind, std::size_t n,
                                      std::vector<SetPartition> vertices,
                                      const BuildOptions& options, std::string cache_key) {
  OrderComplex c;
  c.kind_ = kind;
  c.n_ = n;
  auto sorted = canonical_vertices(n, std::move(vertices));
  const std::size_t count = sorted.size();

  std::vector<std::vector<VertexId>> up(count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      if (refines_strictly(sorted[i], sorted[j])) up[i].push_back(static_cast<VertexId>(j));

  const std::size_t max_len = std::max<std::size_t>(n, 1);
  auto chains = chain_counts(up, max_len);
  FVector fvec;
  for (std::size_t l = 0; l < max_len; ++l) {
    std::uint64_t total = 0;
    for (const auto& row : chains) total += row[l];
    if (total == 0) break;
    fvec.counts.push_back(total);
  }

  auto shared_up = std::make_shared<const std::vector<std::vector<VertexId>>>(up);
  auto shared_chains =
      std::make_shared<const std::vector<std::vector<std::uint64_t>>>(std::move(chains));
  auto generate = [shared_up, shared_chains](int dim) {
    const auto& adj = *shared_up;
    const auto& cnt = *shared_chains;
    const std::size_t width = static_cast<std::size_t>(dim + 1);
    std::uint64_t total = 0;
    for (const auto& row : cnt) total += row[dim];
    std::vector<VertexId> out;
    out.reserve(total * width);
    std::vector<VertexId> chain(width);
    auto extend = [&](auto&& self, std::size_t depth) -> void {
      if (depth == width) {
        out.insert(out.end(), chain.begin(), chain.end());
        return;
      }
      const std::size_t remaining = width - depth - 1;
      for (auto w : adj[chain[depth - 1]])
        if (cnt[w][remaining] > 0) {
          chain[depth] = w;
          self(self, depth + 1);
        }
    };
    for (std::size_t v = 0; v < adj.size(); ++v) {
      if (cnt[v][width - 1] == 0) continue;
      chain[0] = static_cast<VertexId>(v);
      extend(extend, 1);
    }
    return out;
  };

  const bool retain = n <= options.materialize_max_n;
  std::optional<std::filesystem::path> stem;
  if (!retain && options.cache_dir && !cache_key.empty()) stem = *options.cache_dir / cache_key;

  c.vertices_ = std::make_shared<const std::vector<SetPartition>>(std::move(sorted));
  c.up_ = std::move(up);
  c.poset_ = true;
  c.complex_ = SimplicialComplex(count, std::move(fvec), std::move(generate), retain, stem);
  c.cache_key_ = std::move(cache_key);
  return c;
}

OrderComplex OrderComplex::from_chains(std::size_t n, std::vector<SetPartition> vertices,
                                       const std::vector<std::vector<VertexId>>& facets,
                                       ComplexKind kind) {
  OrderComplex c;
  c.kind_ = kind;
  c.n_ = n;
  auto sorted = canonical_vertices(n, vertices);
  std::vector<VertexId> remap(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), vertices[i], vertex_order_less);
    remap[i] = static_cast<VertexId>(it - sorted.begin());
  }
  std::vector<std::vector<VertexId>> mapped;
  mapped.reserve(facets.size());
  for (const auto& facet : facets) {
    std::vector<VertexId> chain;
    for (auto v : facet) {
      if (v >= remap.size()) throw std::invalid_argument("chain vertex out of range");
      chain.push_back(remap[v]);
    }
    std::sort(chain.begin(), chain.end());
    for (std::size_t i = 1; i < chain.size(); ++i)
      if (!refines_strictly(sorted[chain[i - 1]], sorted[chain[i]]))
        throw std::invalid_argument("face is not a chain under refinement: " +
                                    sorted[chain[i - 1]].to_string() + " vs " +
                                    sorted[chain[i]].to_string());
    mapped.push_back(std::move(chain));
  }
  c.complex_ = SimplicialComplex::from_facets(sorted.size(), mapped);
  c.vertices_ = std::make_shared<const std::vector<SetPartition>>(std::move(sorted));
  return c;
}

std::optional<VertexId> OrderComplex::index_of(const SetPartition& p) const {
  const auto& vs = *vertices_;
  auto it = std::lower_bound(vs.begin(), vs.end(), p, vertex_order_less);
  if (it == vs.end() || !(*it == p)) return std::nullopt;
  return static_cast<VertexId>(it - vs.begin());
}

OrderComplex build_delta(std::size_t n, const BuildOptions& options) {
  check_n(n, 3, options, "build_delta");
  auto vertices = enumerate_partitions(n, std::nullopt,
                                       [](const SetPartition& p) { return p.largest_block() >= 2; });
  return OrderComplex::from_poset(ComplexKind::delta, n, std::move(vertices), options,
                                  "delta-n" + std::to_string(n));
}

OrderComplex build_delta_A(const SetPartition& a, const BuildOptions& options) {
  const std::size_t n = a.ground_size();
  check_n(n, 1, options, "build_delta_A");
  if (a.largest_block() < 2)
    throw std::invalid_argument("build_delta_A: partition has only singleton blocks");
  auto vertices = enumerate_partitions(n, std::nullopt, [&](const SetPartition& p) {
    return p.largest_block() >= 2 && refines(p, a);
  });
  return OrderComplex::from_poset(ComplexKind::delta_A, n, std::move(vertices), options,
                                  "deltaA-n" + std::to_string(n) + "-" + a.to_string());
}

OrderComplex build_xi2(std::size_t n, const BuildOptions& options) {
  if (n % 2 != 0)
    throw std::invalid_argument("build_xi2: Xi_2(N) is defined only for even N, got N=" +
                                std::to_string(n));
  check_n(n, 4, options, "build_xi2");
  auto vertices = enumerate_partitions(n, std::nullopt, [](const SetPartition& p) {
    return p.largest_block() >= 2 && has_part_odd(p);
  });
  return OrderComplex::from_poset(ComplexKind::xi2, n, std::move(vertices), options,
                                  "xi2-n" + std::to_string(n));
}

OrderComplex link_complex(const OrderComplex& c, const BuildOptions& options) {
  const auto& vs = c.vertices();
  if (vs.empty()) throw std::invalid_argument("link_complex: empty complex has no maximal vertex");
  const auto& top = vs.back();
  for (const auto& v : vs)
    if (!refines(v, top))
      throw std::invalid_argument("link_complex: no unique maximal vertex");

  ComplexKind kind = ComplexKind::custom;
  if (c.kind() == ComplexKind::delta) kind = ComplexKind::boundary_delta;
  if (c.kind() == ComplexKind::delta_A) kind = ComplexKind::boundary_delta_A;

  std::vector<SetPartition> rest(vs.begin(), vs.end() - 1);
  if (c.poset_generated()) {
    std::string key = c.cache_key().empty() ? std::string() : "link-" + c.cache_key();
    return OrderComplex::from_poset(kind, c.ground_size(), std::move(rest), options, key);
  }
  const auto apex = static_cast<VertexId>(vs.size() - 1);
  std::vector<std::vector<VertexId>> kept;
  for (const auto& face : maximal_faces(c.simplicial())) {
    std::vector<VertexId> f;
    for (auto v : face)
      if (v != apex) f.push_back(v);
    if (!f.empty()) kept.push_back(std::move(f));
  }
  return OrderComplex::from_chains(c.ground_size(), std::move(rest), kept, kind);
}

std::vector<VertexId> vertex_embedding(const OrderComplex& c, const OrderComplex& sub) {
  if (!sub.vertices().empty() && sub.ground_size() != c.ground_size())
    throw std::invalid_argument("complexes live on different ground sets");
  std::vector<VertexId> map;
  map.reserve(sub.vertices().size());
  for (const auto& v : sub.vertices()) {
    auto idx = c.index_of(v);
    if (!idx) throw std::invalid_argument("vertex " + v.to_string() + " missing from the ambient complex");
    if (!map.empty() && *idx <= map.back())
      throw std::invalid_argument("vertex indexing is not order preserving");
    map.push_back(*idx);
  }
  return map;
}

std::int64_t euler_characteristic(const OrderComplex& c) {
  return c.f_vector().alternating_sum();
}

std::int64_t euler_characteristic(const OrderComplex& c, const OrderComplex& sub) {
  vertex_embedding(c, sub);
  return euler_characteristic(c) - euler_characteristic(sub);
}

void export_facets(const OrderComplex& c, std::ostream& out) {
  const auto& vs = c.vertices();
  for (const auto& face : maximal_faces(c.simplicial())) {
    for (std::size_t i = 0; i < face.size(); ++i) {
      if (i) out << ' ';
      out << vs[face[i]].to_string();
    }
    out << '\n';
  }
}

std::string export_facets(const OrderComplex& c) {
  std::ostringstream out;
  export_facets(c, out);
  return out.str();
}

OrderComplex import_facets(std::istream& in) {
  std::vector<SetPartition> vertices;
  std::vector<std::vector<VertexId>> facets;
  std::unordered_map<SetPartition, VertexId> index;
  std::size_t n = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string token;
    std::vector<VertexId> facet;
    std::optional<SetPartition> previous;
    while (tokens >> token) {
      SetPartition p = SetPartition::parse(token);
      if (n == 0) n = p.ground_size();
      if (p.ground_size() != n)
        throw std::invalid_argument("line " + std::to_string(line_no) + ": mixed ground sets");
      if (previous && !refines_strictly(*previous, p))
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": not a strictly increasing chain");
      auto [it, inserted] = index.try_emplace(p, static_cast<VertexId>(vertices.size()));
      if (inserted) vertices.push_back(p);
      facet.push_back(it->second);
      previous = p;
    }
    if (!facet.empty()) facets.push_back(std::move(facet));
  }
  if (vertices.empty()) return OrderComplex{};
  return OrderComplex::from_chains(n, std::move(vertices), facets);
}

OrderComplex import_facets_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return import_facets(in);
}

}  // namespace parthom
