#include "parthom/face_cache.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <system_error>

namespace parthom::detail {

namespace {

constexpr std::array<char, 4> kMagic{'P', 'H', 'F', '1'};

struct Header {
  std::array<char, 4> magic;
  std::int32_t dim;
  std::uint64_t faces;
};

}  // namespace

std::filesystem::path face_cache_file(const std::filesystem::path& stem, int dim) {
  auto file = stem;
  file += "-d" + std::to_string(dim) + ".faces";
  return file;
}

std::optional<std::vector<VertexId>> read_face_cache(const std::filesystem::path& stem, int dim,
                                                     std::uint64_t expected_faces) {
  std::ifstream in(face_cache_file(stem, dim), std::ios::binary);
  if (!in) return std::nullopt;
  Header header{};
  if (!in.read(reinterpret_cast<char*>(&header), sizeof header)) return std::nullopt;
  if (header.magic != kMagic || header.dim != dim || header.faces != expected_faces)
    return std::nullopt;
  std::vector<VertexId> data(expected_faces * static_cast<std::uint64_t>(dim + 1));
  if (!in.read(reinterpret_cast<char*>(data.data()),
               static_cast<std::streamsize>(data.size() * sizeof(VertexId))))
    return std::nullopt;
  return data;
}

void write_face_cache(const std::filesystem::path& stem, int dim,
                      const std::vector<VertexId>& data) {
  std::error_code ec;
  std::filesystem::create_directories(stem.parent_path(), ec);
  if (ec) return;
  auto target = face_cache_file(stem, dim);
  auto temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    Header header{kMagic, dim, data.size() / static_cast<std::uint64_t>(dim + 1)};
    out.write(reinterpret_cast<const char*>(&header), sizeof header);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(VertexId)));
    if (!out) {
      out.close();
      std::filesystem::remove(temp, ec);
      return;
    }
  }
  std::filesystem::rename(temp, target, ec);
}

}  // namespace parthom::detail
