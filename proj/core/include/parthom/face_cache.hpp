#pragma once

// Binary on-disk store for the faces of one dimension of a streamed complex.

#include <filesystem>
#include <optional>
#include <vector>

#include "parthom/complexes.hpp"

namespace parthom::detail {

std::filesystem::path face_cache_file(const std::filesystem::path& stem, int dim);

/// Returns nothing when the file is absent, truncated or from another format.
std::optional<std::vector<VertexId>> read_face_cache(const std::filesystem::path& stem, int dim,
                                                     std::uint64_t expected_faces);

/// Best effort: failures to write leave the cache empty and are not errors.
void write_face_cache(const std::filesystem::path& stem, int dim,
                      const std::vector<VertexId>& data);

}  // namespace parthom::detail
