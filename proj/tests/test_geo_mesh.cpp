#include <cmath>
#include <random>

#include "doctest.h"
#include "json.hpp"

#include "sand/error.hpp"
#include "sand/geo_mesh.hpp"

using namespace sand;

namespace {

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
  const double d2r = M_PI / 180.0;
  const double dphi = (b.lat - a.lat) * d2r, dl = (b.lon - a.lon) * d2r;
  const double h = std::sin(dphi / 2) * std::sin(dphi / 2) +
                   std::cos(a.lat * d2r) * std::cos(b.lat * d2r) * std::sin(dl / 2) * std::sin(dl / 2);
  return 2 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("projection examples") {
  const GeoPoint o{-84.19, 39.76};
  const auto z = project(o, o);
  CHECK(z.x == 0.0);
  CHECK(z.y == 0.0);

  const auto north = project({o.lon, o.lat + 0.01}, o);
  CHECK(north.x == doctest::Approx(0.0));
  CHECK(north.y == doctest::Approx(1.1120).epsilon(1e-4));
  CHECK(north.y == doctest::Approx(haversine_km(o, {o.lon, o.lat + 0.01})).epsilon(1e-3));

  const GeoPoint o60{10.0, 60.0};
  const auto east = project({o60.lon + 0.01, o60.lat}, o60);
  CHECK(east.x == doctest::Approx(0.5560).epsilon(1e-4));
  CHECK(east.y == 0.0);
}

TEST_CASE("projection round trip at city scale") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lon(-170, 170), lat(-70, 70), off(-0.25, 0.25);
  for (int i = 0; i < 1000; ++i) {
    const GeoPoint o{lon(rng), lat(rng)};
    const GeoPoint p{o.lon + off(rng), o.lat + off(rng)};
    const auto q = project(p, o);
    const auto back = project(unproject(q, o), o);
    CHECK(std::hypot(back.x - q.x, back.y - q.y) < 1e-9);
  }
}

TEST_CASE("distance examples") {
  CHECK(distance({0, 0}, {3, 4}) == 5.0);
  CHECK(distance({1.5, 2.5}, {1.5, 2.5}) == 0.0);
  CHECK(distance({0.15, 0.15}, {0, 0}) == doctest::Approx(0.2121).epsilon(1e-4));
}

TEST_CASE("mesh sizing 16.2 x 18.0 km at L=0.3 gives 54 x 60 blocks") {
  const GeoPoint c{-84.19, 39.76};
  const auto corners = rectangle_corners(c, 16.2, 18.0);
  const auto grid = TerrainGrid::filled(60, 54, Terrain::Neighborhood);
  const AreaMesh m = build_mesh(corners, 0.3, grid, 0.5);
  CHECK(m.blocks_x() == 54);
  CHECK(m.blocks_y() == 60);
  CHECK(m.block_count() == 3240);
  CHECK(m.point_count() == 55 * 61);
  CHECK(m.removed_count() == 0);
  CHECK(m.sites().size() == 3240);
}

TEST_CASE("blocks along an axis") {
  CHECK(blocks_along(16.2, 0.3) == 54);
  CHECK(blocks_along(18.0, 0.3) == 60);
  CHECK(blocks_along(0.3, 0.3) == 1);
  CHECK(blocks_along(0.31, 0.3) == 2);
}

TEST_CASE("single block mesh") {
  const auto corners = rectangle_corners({0.0, 0.0}, 0.3, 0.3);
  const AreaMesh m = build_mesh(corners, 0.3, TerrainGrid::filled(1, 1, Terrain::Open), 0.3 / std::sqrt(2.0));
  CHECK(m.block_count() == 1);
  CHECK(m.point_count() == 4);
  const auto bc = m.block_corners(0);
  const auto ctr = m.block_center(0);
  for (const auto p : bc) {
    CHECK(distance(ctr, m.point(p)) == doctest::Approx(0.3 / std::sqrt(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("all outside area") {
  const AreaMesh m = build_mesh_from_grid({5, 5}, 0.3, TerrainGrid::filled(4, 3, Terrain::OutsideArea), 1.0);
  CHECK(m.removed_count() == m.block_count());
  CHECK(m.sites().empty());
  CHECK(m.in_area_blocks().empty());
}

TEST_CASE("range and dimension errors") {
  const auto corners = rectangle_corners({0.0, 0.0}, 0.9, 0.6);
  const auto grid = TerrainGrid::filled(2, 3, Terrain::Open);
  CHECK(code_of([&] { build_mesh(corners, 0.3, grid, 0.2); }) == ErrorCode::RangeTooSmall);
  CHECK_NOTHROW(build_mesh(corners, 0.3, grid, 0.3 / std::sqrt(2.0)));
  CHECK(code_of([&] { build_mesh(corners, 0.3, TerrainGrid::filled(3, 2, Terrain::Open), 1.0); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("terrain csv parsing") {
  const auto g = parse_terrain_csv("0,1,2\n3,4,-1\n");
  CHECK(g.rows == 2);
  CHECK(g.cols == 3);
  CHECK(g.at(0, 1) == Terrain::Water);
  CHECK(g.at(1, 2) == Terrain::OutsideArea);
  CHECK(parse_terrain_csv(terrain_csv(g)).cells == g.cells);
  CHECK(code_of([] { parse_terrain_csv("0,7\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_terrain_csv("0,1\n0\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_terrain_csv("0,x\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("mesh invariants on random grids") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 12;
    TerrainGrid g = TerrainGrid::filled(rows, cols, Terrain::Open);
    for (auto& c : g.cells) c = *terrain_from_code(static_cast<int>(rng() % 6) - 1);
    const AreaMesh m = build_mesh_from_grid({-81.5, 41.1}, 0.3, g, 0.3);
    REQUIRE(m.blocks_x() == cols);
    REQUIRE(m.blocks_y() == rows);
    CHECK(m.in_area_blocks().size() + m.removed_count() == m.block_count());
    std::size_t expected_sites = 0;
    for (std::size_t z = 0; z < m.block_count(); ++z) {
      CHECK(m.terrain(z) == g.at(m.block_row(z), m.block_col(z)));
      if (m.in_area(z) && m.terrain(z) != Terrain::Water) ++expected_sites;
      const auto c = m.block_corners(z);
      const auto sw = m.point(c[0]), ne = m.point(c[3]);
      CHECK(ne.x - sw.x == doctest::Approx(0.3).epsilon(1e-9));
      CHECK(ne.y - sw.y == doctest::Approx(0.3).epsilon(1e-9));
    }
    CHECK(m.sites().size() == expected_sites);
    for (const auto s : m.sites()) {
      CHECK(m.in_area(s));
      CHECK(m.terrain(s) != Terrain::Water);
    }
  }
}

TEST_CASE("mesh geojson is a valid feature collection") {
  TerrainGrid g = TerrainGrid::filled(2, 3, Terrain::Hill);
  g.cells[0] = Terrain::OutsideArea;
  const AreaMesh m = build_mesh_from_grid({-81.5, 41.1}, 0.3, g, 0.3);
  const auto doc = nlohmann::json::parse(mesh_geojson(m));
  CHECK(doc["type"] == "FeatureCollection");
  REQUIRE(doc["features"].size() == 6);
  for (std::size_t z = 0; z < 6; ++z) {
    const auto& f = doc["features"][z];
    CHECK(f["type"] == "Feature");
    CHECK(f["geometry"]["type"] == "Polygon");
    const auto& ring = f["geometry"]["coordinates"][0];
    REQUIRE(ring.size() == 5);
    CHECK(ring[0] == ring[4]);
    double area2 = 0.0;  // shoelace; positive means counter-clockwise
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
      area2 += ring[i][0].get<double>() * ring[i + 1][1].get<double>() -
               ring[i + 1][0].get<double>() * ring[i][1].get<double>();
    }
    CHECK(area2 > 0.0);
    CHECK(f["properties"]["block"] == z);
    CHECK(f["properties"]["in_area"] == (z != 0));
  }
  CHECK(doc["features"][1]["properties"]["terrain"] == "hill");
}
