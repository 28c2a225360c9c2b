#pragma once

// Order complexes of partition posets: Delta(N), its link, Delta_A, the link of
// Delta_A and the complex Xi_2(N) of partitions with an odd block.
//
// Vertices are ordered by block count descending, then by RGS code, so that a
// chain listed from finest to coarsest partition is an increasing tuple of
// vertex indices. Faces of each dimension are kept sorted lexicographically.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parthom/partitions.hpp"

namespace parthom {

using VertexId = std::uint32_t;

/// All faces of one dimension, flat and lexicographically sorted.
class FaceList {
 public:
  FaceList() = default;
  FaceList(int dim, std::vector<VertexId> data);

  int dimension() const { return dim_; }
  std::size_t width() const { return static_cast<std::size_t>(dim_ + 1); }
  std::size_t size() const { return dim_ < 0 ? 1 : data_.size() / width(); }
  bool empty() const { return size() == 0; }

  std::span<const VertexId> operator[](std::size_t i) const {
    return {data_.data() + i * width(), width()};
  }
  /// Index of the face, if present. Expects an increasing tuple.
  std::optional<std::size_t> find(std::span<const VertexId> face) const;
  const std::vector<VertexId>& data() const { return data_; }

 private:
  int dim_ = -1;
  std::vector<VertexId> data_;
};

/// Face counts; entry 0 is f_{-1} = 1 for the empty face.
struct FVector {
  std::vector<std::uint64_t> counts{1};

  int dimension() const { return static_cast<int>(counts.size()) - 2; }
  std::uint64_t f(int d) const {
    auto i = d + 1;
    return (i < 0 || i >= static_cast<int>(counts.size())) ? 0 : counts[i];
  }
  /// sum_{d>=0} (-1)^d f_d
  std::int64_t alternating_sum() const;
  bool operator==(const FVector&) const = default;
};

enum class ComplexKind { delta, boundary_delta, delta_A, boundary_delta_A, xi2, custom };

std::string_view to_string(ComplexKind kind);

/// Where and when faces get materialized.
struct BuildOptions {
  std::size_t max_n = 8;
  /// Above this N faces are regenerated (or read from the disk cache) on each
  /// request instead of being retained.
  std::size_t materialize_max_n = 6;
  /// Disk cache for streamed complexes; empty disables it.
  std::optional<std::filesystem::path> cache_dir;
};

/// Defaults with the cache directory taken from PARTHOM_CACHE_DIR
/// (".parthom-cache" when unset, disabled when set to the empty string).
BuildOptions default_build_options();

/// A finite simplicial complex on vertices 0..n-1 with lazily produced faces.
class SimplicialComplex {
 public:
  using FaceGenerator = std::function<std::vector<VertexId>(int dim)>;

  /// The empty complex.
  SimplicialComplex();
  SimplicialComplex(std::size_t num_vertices, FVector fvec, FaceGenerator generate, bool retain,
                    std::optional<std::filesystem::path> cache_file_stem = std::nullopt);

  /// Closure of the given facets. Vertices inside a facet may come in any order.
  static SimplicialComplex from_facets(std::size_t num_vertices,
                                       const std::vector<std::vector<VertexId>>& facets);

  std::size_t num_vertices() const;
  int dimension() const { return f_vector().dimension(); }
  const FVector& f_vector() const;
  bool is_empty() const { return f_vector().f(0) == 0; }

  /// Faces of dimension d in [-1, dimension()]; shared, immutable.
  std::shared_ptr<const FaceList> faces(int d) const;
  /// Drops a retained face list (no-op for streamed complexes).
  void release(int d) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Simplicial complex whose vertices are set partitions of {1..N}.
class OrderComplex {
 public:
  OrderComplex() = default;

  /// Order complex of the refinement order restricted to `vertices`.
  static OrderComplex from_poset(ComplexKind kind, std::size_t n,
                                 std::vector<SetPartition> vertices,
                                 const BuildOptions& options = default_build_options(),
                                 std::string cache_key = {});
  /// Explicit faces (labels must all be partitions of the same N).
  static OrderComplex from_chains(std::size_t n, std::vector<SetPartition> vertices,
                                  const std::vector<std::vector<VertexId>>& facets,
                                  ComplexKind kind = ComplexKind::custom);

  ComplexKind kind() const { return kind_; }
  std::size_t ground_size() const { return n_; }
  const std::vector<SetPartition>& vertices() const { return *vertices_; }
  std::optional<VertexId> index_of(const SetPartition& p) const;
  bool poset_generated() const { return poset_; }
  const std::string& cache_key() const { return cache_key_; }

  const SimplicialComplex& simplicial() const { return complex_; }
  int dimension() const { return complex_.dimension(); }
  const FVector& f_vector() const { return complex_.f_vector(); }
  std::shared_ptr<const FaceList> faces(int d) const { return complex_.faces(d); }
  bool is_empty() const { return complex_.is_empty(); }

  /// Vertices strictly above each vertex (poset-generated only).
  const std::vector<std::vector<VertexId>>& up_sets() const { return up_; }

 private:
  ComplexKind kind_ = ComplexKind::custom;
  std::size_t n_ = 0;
  std::shared_ptr<const std::vector<SetPartition>> vertices_ =
      std::make_shared<const std::vector<SetPartition>>();
  std::vector<std::vector<VertexId>> up_;
  bool poset_ = false;
  std::string cache_key_;
  SimplicialComplex complex_;
};

/// Vertex order used everywhere: more blocks first, then RGS lexicographic.
bool vertex_order_less(const SetPartition& a, const SetPartition& b);

OrderComplex build_delta(std::size_t n, const BuildOptions& options = default_build_options());
OrderComplex build_delta_A(const SetPartition& a,
                           const BuildOptions& options = default_build_options());
OrderComplex build_xi2(std::size_t n, const BuildOptions& options = default_build_options());

/// Subcomplex of faces avoiding the unique maximal vertex.
OrderComplex link_complex(const OrderComplex& c,
                          const BuildOptions& options = default_build_options());

/// Map from sub's vertex indices to c's; throws if a label is missing or the
/// map is not increasing.
std::vector<VertexId> vertex_embedding(const OrderComplex& c, const OrderComplex& sub);

std::int64_t euler_characteristic(const OrderComplex& c);
/// chi(c) - chi(sub): Euler characteristic with closed supports of c \ sub.
std::int64_t euler_characteristic(const OrderComplex& c, const OrderComplex& sub);

/// Maximal faces, one per line, as RGS codes in chain order.
void export_facets(const OrderComplex& c, std::ostream& out);
std::string export_facets(const OrderComplex& c);
OrderComplex import_facets(std::istream& in);
OrderComplex import_facets_text(std::string_view text);

/// Maximal faces as vertex tuples, largest dimension first.
std::vector<std::vector<VertexId>> maximal_faces(const SimplicialComplex& c);

}  // namespace parthom
