#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sand {

inline constexpr double kEarthRadiusKm = 6371.0088;

struct GeoPoint {
  double lon = 0.0;  // degrees
  double lat = 0.0;  // degrees
};

struct PlanePoint {
  double x = 0.0;  // km east
  double y = 0.0;  // km north
};

// Integer values are the terrain grid file codes.
enum class Terrain : std::int8_t {
  OutsideArea = -1,
  Open = 0,
  Water = 1,
  Neighborhood = 2,
  Hill = 3,
  Commercial = 4,
};

inline constexpr std::array<Terrain, 5> kAreaTerrains = {
    Terrain::Open, Terrain::Water, Terrain::Neighborhood, Terrain::Hill,
    Terrain::Commercial};

std::string_view terrain_name(Terrain t);
std::optional<Terrain> terrain_from_code(int code);

bool is_valid(const GeoPoint& p);

// Local equirectangular projection about `origin`.
PlanePoint project(const GeoPoint& p, const GeoPoint& origin);
GeoPoint unproject(const PlanePoint& p, const GeoPoint& origin);

double distance(const PlanePoint& a, const PlanePoint& b);

// Row-major block codes; row 0 is the southernmost block row.
struct TerrainGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Terrain> cells;

  Terrain at(std::size_t row, std::size_t col) const { return cells[row * cols + col]; }
  static TerrainGrid filled(std::size_t rows, std::size_t cols, Terrain t);
};

TerrainGrid parse_terrain_csv(std::string_view text);
TerrainGrid load_terrain_csv(const std::filesystem::path& path);
std::string terrain_csv(const TerrainGrid& grid);

// Rectangular mesh of points and L x L blocks laid over the area's projected
// bounding box. Points and blocks are 0-based and row-major from the south-west
// corner: point (j, k) has index j * n_a + k, block (j, k) has index
// j * (n_a - 1) + k. A built mesh is immutable.
class AreaMesh {
 public:
  std::size_t points_x() const { return n_a_; }
  std::size_t points_y() const { return n_b_; }
  std::size_t blocks_x() const { return n_a_ - 1; }
  std::size_t blocks_y() const { return n_b_ - 1; }
  std::size_t point_count() const { return n_a_ * n_b_; }
  std::size_t block_count() const { return blocks_x() * blocks_y(); }

  double block_km() const { return block_km_; }
  double extent_x_km() const { return extent_x_; }
  double extent_y_km() const { return extent_y_; }
  const GeoPoint& origin() const { return origin_; }
  const std::array<GeoPoint, 4>& corners() const { return corners_; }

  PlanePoint point(std::size_t i) const { return {xs_[i], ys_[i]}; }
  const std::vector<double>& point_xs() const { return xs_; }
  const std::vector<double>& point_ys() const { return ys_; }

  // Corner point indices in order SW, SE, NW, NE.
  std::array<std::uint32_t, 4> block_corners(std::size_t z) const;
  PlanePoint block_center(std::size_t z) const;
  std::size_t block_row(std::size_t z) const { return z / blocks_x(); }
  std::size_t block_col(std::size_t z) const { return z % blocks_x(); }

  Terrain terrain(std::size_t z) const { return terrain_[z]; }
  bool in_area(std::size_t z) const { return terrain_[z] != Terrain::OutsideArea; }
  std::size_t removed_count() const { return removed_; }
  const std::vector<std::uint32_t>& in_area_blocks() const { return in_area_; }

  // Candidate sites, identified by block index: in-area, non-water blocks.
  const std::vector<std::uint32_t>& sites() const { return sites_; }

  double diagonal_km() const;

 private:
  friend AreaMesh build_mesh(const std::array<GeoPoint, 4>&, double,
                             const TerrainGrid&, double);
  void finish(const TerrainGrid& grid);

  std::array<GeoPoint, 4> corners_{};
  GeoPoint origin_{};
  double block_km_ = 0.0;
  double extent_x_ = 0.0;
  double extent_y_ = 0.0;
  double x0_ = 0.0;
  double y0_ = 0.0;
  std::size_t n_a_ = 0;
  std::size_t n_b_ = 0;
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<Terrain> terrain_;
  std::vector<std::uint32_t> in_area_;
  std::vector<std::uint32_t> sites_;
  std::size_t removed_ = 0;
};

// Blocks per axis for an extent, ceil(extent / L) with round-off snapping.
std::size_t blocks_along(double extent_km, double block_km);

// Throws RangeTooSmall if min_range_km < L / sqrt(2) and DimensionMismatch if
// the terrain grid is not blocks_y x blocks_x.
AreaMesh build_mesh(const std::array<GeoPoint, 4>& corners, double block_km,
                    const TerrainGrid& terrain, double min_range_km);

// Mesh whose block grid is exactly the terrain grid, centred on `center`.
// Used for synthetic areas.
AreaMesh build_mesh_from_grid(const GeoPoint& center, double block_km,
                              const TerrainGrid& terrain, double min_range_km);

// Corners of a lon/lat rectangle whose projection spans width x height km,
// centred on `center`.
std::array<GeoPoint, 4> rectangle_corners(const GeoPoint& center, double width_km,
                                          double height_km);

// GeoJSON FeatureCollection of block polygons with {block, terrain, in_area}.
std::string mesh_geojson(const AreaMesh& mesh);

}  // namespace sand
