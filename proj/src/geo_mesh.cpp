#include "sand/geo_mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "sand/error.hpp"

namespace sand {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

std::string_view terrain_name(Terrain t) {
  switch (t) {
    case Terrain::OutsideArea: return "outside";
    case Terrain::Open: return "open";
    case Terrain::Water: return "water";
    case Terrain::Neighborhood: return "neighborhood";
    case Terrain::Hill: return "hill";
    case Terrain::Commercial: return "commercial";
  }
  return "unknown";
}

std::optional<Terrain> terrain_from_code(int code) {
  if (code < -1 || code > 4) return std::nullopt;
  return static_cast<Terrain>(code);
}

bool is_valid(const GeoPoint& p) {
  return std::isfinite(p.lon) && std::isfinite(p.lat) && p.lon >= -180.0 &&
         p.lon <= 180.0 && p.lat >= -90.0 && p.lat <= 90.0;
}

PlanePoint project(const GeoPoint& p, const GeoPoint& origin) {
  const double scale = kEarthRadiusKm * kDegToRad;
  return {scale * (p.lon - origin.lon) * std::cos(origin.lat * kDegToRad),
          scale * (p.lat - origin.lat)};
}

GeoPoint unproject(const PlanePoint& p, const GeoPoint& origin) {
  const double scale = kEarthRadiusKm * kDegToRad;
  return {origin.lon + p.x / (scale * std::cos(origin.lat * kDegToRad)),
          origin.lat + p.y / scale};
}

double distance(const PlanePoint& a, const PlanePoint& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

TerrainGrid TerrainGrid::filled(std::size_t rows, std::size_t cols, Terrain t) {
  return {rows, cols, std::vector<Terrain>(rows * cols, t)};
}

TerrainGrid parse_terrain_csv(std::string_view text) {
  TerrainGrid grid;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    std::size_t cols = 0;
    std::size_t cpos = 0;
    while (cpos <= line.size()) {
      std::size_t comma = line.find(',', cpos);
      if (comma == std::string_view::npos) comma = line.size();
      std::string_view cell = line.substr(cpos, comma - cpos);
      while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
      while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
      int code = 0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), code);
      if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty()) {
        throw Error(ErrorCode::ParseError, "terrain grid line " + std::to_string(line_no) +
                                               ": bad cell '" + std::string(cell) + "'");
      }
      const auto terrain = terrain_from_code(code);
      if (!terrain) {
        throw Error(ErrorCode::ParseError, "terrain grid line " + std::to_string(line_no) +
                                               ": unknown terrain code " + std::to_string(code));
      }
      grid.cells.push_back(*terrain);
      ++cols;
      cpos = comma + 1;
      if (comma == line.size()) break;
    }
    if (grid.rows == 0) {
      grid.cols = cols;
    } else if (cols != grid.cols) {
      throw Error(ErrorCode::ParseError, "terrain grid line " + std::to_string(line_no) +
                                             ": expected " + std::to_string(grid.cols) +
                                             " columns, got " + std::to_string(cols));
    }
    ++grid.rows;
    if (end == text.size()) break;
  }
  if (grid.rows == 0) throw Error(ErrorCode::ParseError, "terrain grid is empty");
  return grid;
}

TerrainGrid load_terrain_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open terrain grid " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_terrain_csv(buf.str());
}

std::string terrain_csv(const TerrainGrid& grid) {
  std::string out;
  for (std::size_t r = 0; r < grid.rows; ++r) {
    for (std::size_t c = 0; c < grid.cols; ++c) {
      if (c != 0) out += ',';
      out += std::to_string(static_cast<int>(grid.at(r, c)));
    }
    out += '\n';
  }
  return out;
}

std::size_t blocks_along(double extent_km, double block_km) {
  const double ratio = extent_km / block_km;
  const double snapped = std::ceil(ratio - 1e-6);
  return static_cast<std::size_t>(std::max(1.0, snapped));
}

std::array<std::uint32_t, 4> AreaMesh::block_corners(std::size_t z) const {
  const std::size_t j = block_row(z);
  const std::size_t k = block_col(z);
  const auto sw = static_cast<std::uint32_t>(j * n_a_ + k);
  const auto nw = static_cast<std::uint32_t>((j + 1) * n_a_ + k);
  return {sw, sw + 1, nw, nw + 1};
}

PlanePoint AreaMesh::block_center(std::size_t z) const {
  const double k = static_cast<double>(block_col(z));
  const double j = static_cast<double>(block_row(z));
  return {x0_ + (k + 0.5) * block_km_, y0_ + (j + 0.5) * block_km_};
}

double AreaMesh::diagonal_km() const {
  const double w = static_cast<double>(blocks_x()) * block_km_;
  const double h = static_cast<double>(blocks_y()) * block_km_;
  return std::sqrt(w * w + h * h);
}

void AreaMesh::finish(const TerrainGrid& grid) {
  xs_.resize(point_count());
  ys_.resize(point_count());
  for (std::size_t j = 0; j < n_b_; ++j) {
    for (std::size_t k = 0; k < n_a_; ++k) {
      xs_[j * n_a_ + k] = x0_ + static_cast<double>(k) * block_km_;
      ys_[j * n_a_ + k] = y0_ + static_cast<double>(j) * block_km_;
    }
  }
  terrain_ = grid.cells;
  for (std::size_t z = 0; z < terrain_.size(); ++z) {
    if (terrain_[z] == Terrain::OutsideArea) {
      ++removed_;
      continue;
    }
    in_area_.push_back(static_cast<std::uint32_t>(z));
    if (terrain_[z] != Terrain::Water) sites_.push_back(static_cast<std::uint32_t>(z));
  }
}

AreaMesh build_mesh(const std::array<GeoPoint, 4>& corners, double block_km,
                    const TerrainGrid& terrain, double min_range_km) {
  for (const auto& c : corners) {
    if (!is_valid(c)) {
      throw Error(ErrorCode::InvalidArgument, "corner coordinates out of range");
    }
  }
  if (!(block_km > 0.0) || !std::isfinite(block_km)) {
    throw Error(ErrorCode::InvalidArgument, "block side must be positive");
  }
  const double half_diagonal = block_km / std::numbers::sqrt2;
  if (!(min_range_km >= half_diagonal - 1e-12)) {
    throw Error(ErrorCode::RangeTooSmall,
                "minimum sensor range " + std::to_string(min_range_km) +
                    " km is below L/sqrt(2) = " + std::to_string(half_diagonal) + " km");
  }

  AreaMesh mesh;
  mesh.corners_ = corners;
  mesh.block_km_ = block_km;
  double min_lon = corners[0].lon, max_lon = corners[0].lon;
  double min_lat = corners[0].lat, max_lat = corners[0].lat;
  for (const auto& c : corners) {
    min_lon = std::min(min_lon, c.lon);
    max_lon = std::max(max_lon, c.lon);
    min_lat = std::min(min_lat, c.lat);
    max_lat = std::max(max_lat, c.lat);
  }
  mesh.origin_ = {0.5 * (min_lon + max_lon), 0.5 * (min_lat + max_lat)};

  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const PlanePoint p = project(corners[i], mesh.origin_);
    if (i == 0 || p.x < min_x) min_x = p.x;
    if (i == 0 || p.x > max_x) max_x = p.x;
    if (i == 0 || p.y < min_y) min_y = p.y;
    if (i == 0 || p.y > max_y) max_y = p.y;
  }
  mesh.extent_x_ = max_x - min_x;
  mesh.extent_y_ = max_y - min_y;
  mesh.x0_ = min_x;
  mesh.y0_ = min_y;
  mesh.n_a_ = blocks_along(mesh.extent_x_, block_km) + 1;
  mesh.n_b_ = blocks_along(mesh.extent_y_, block_km) + 1;

  if (terrain.rows != mesh.blocks_y() || terrain.cols != mesh.blocks_x()) {
    throw Error(ErrorCode::DimensionMismatch,
                "terrain grid is " + std::to_string(terrain.rows) + "x" +
                    std::to_string(terrain.cols) + " but the mesh has " +
                    std::to_string(mesh.blocks_y()) + "x" + std::to_string(mesh.blocks_x()) +
                    " blocks (rows x cols)");
  }
  mesh.finish(terrain);
  return mesh;
}

std::array<GeoPoint, 4> rectangle_corners(const GeoPoint& center, double width_km,
                                          double height_km) {
  const double hw = 0.5 * width_km;
  const double hh = 0.5 * height_km;
  return {unproject({-hw, -hh}, center), unproject({hw, -hh}, center),
          unproject({hw, hh}, center), unproject({-hw, hh}, center)};
}

AreaMesh build_mesh_from_grid(const GeoPoint& center, double block_km,
                              const TerrainGrid& terrain, double min_range_km) {
  const auto corners =
      rectangle_corners(center, static_cast<double>(terrain.cols) * block_km,
                        static_cast<double>(terrain.rows) * block_km);
  return build_mesh(corners, block_km, terrain, min_range_km);
}

std::string mesh_geojson(const AreaMesh& mesh) {
  using nlohmann::json;
  json features = json::array();
  for (std::size_t z = 0; z < mesh.block_count(); ++z) {
    const auto c = mesh.block_corners(z);
    json ring = json::array();
    // Counter-clockwise exterior ring: SW, SE, NE, NW, SW.
    for (const std::uint32_t i : {c[0], c[1], c[3], c[2], c[0]}) {
      const GeoPoint g = unproject(mesh.point(i), mesh.origin());
      ring.push_back(json::array({g.lon, g.lat}));
    }
    features.push_back({
        {"type", "Feature"},
        {"geometry", {{"type", "Polygon"}, {"coordinates", json::array({ring})}}},
        {"properties",
         {{"block", z},
          {"terrain", std::string(terrain_name(mesh.terrain(z)))},
          {"in_area", mesh.in_area(z)}}},
    });
  }
  json doc = {{"type", "FeatureCollection"}, {"features", std::move(features)}};
  return doc.dump() + "\n";
}

}  // namespace sand
