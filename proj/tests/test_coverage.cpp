#include <cmath>
#include <random>

#include "doctest.h"

#include "sand/coverage.hpp"
#include "sand/error.hpp"

using namespace sand;

namespace {

SensorSpec sensor(const char* name, double range, double price = 100.0, int delta = 1,
                  std::array<double, 5> detect = {0.9, 0.8, 0.7, 0.6, 0.5}) {
  return {name, range, price, delta, true, detect};
}

AreaMesh grid_mesh(std::size_t rows, std::size_t cols, Terrain t, double min_range = 1.0) {
  return build_mesh_from_grid({-81.5, 41.1}, 0.3, TerrainGrid::filled(rows, cols, t), min_range);
}

// Independent oracle: every corner within range by direct distance.
std::vector<std::uint32_t> oracle_cover(const AreaMesh& m, double range, std::uint32_t site) {
  std::vector<std::uint32_t> out;
  const auto c = m.block_center(site);
  for (std::uint32_t z = 0; z < m.block_count(); ++z) {
    if (!m.in_area(z)) continue;
    bool all = true;
    for (const auto p : m.block_corners(z)) {
      const auto q = m.point(p);
      if (std::hypot(q.x - c.x, q.y - c.y) > range + kRangeSlackKm) all = false;
    }
    if (all) out.push_back(z);
  }
  return out;
}

int linear_scan_units(double zeta, double r) {
  int k = 1;
  while (1.0 - std::pow(1.0 - zeta, k) < r) ++k;
  return k;
}

}  // namespace

TEST_CASE("redundancy examples") {
  CHECK(redundancy(0.8, 0.96, 1) == 2);
  CHECK(1.0 - (1.0 - 0.8) * (1.0 - 0.8) == doctest::Approx(0.96).epsilon(1e-12));
  CHECK(redundancy(0.85, 0.98, 1) == 3);
  CHECK(redundancy(0.85, 0.98, 3) == 9);
  CHECK(redundancy(0.5, 0.9, 1, RoundingMode::Nearest) == 3);  // raw 3.32
  CHECK(redundancy(0.5, 0.9, 1, RoundingMode::Floor) == 3);
  CHECK(redundancy(0.99, 0.5, 2, RoundingMode::Floor) == 2);  // clamped to one unit
  CHECK_THROWS_AS(redundancy(1.0, 0.9, 1), Error);
  try {
    redundancy(1.0, 0.9, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateDetection);
  }
}

TEST_CASE("redundancy ceil matches the smallest sufficient count") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> z(0.05, 0.99), rr(0.5, 0.999);
  for (int i = 0; i < 5000; ++i) {
    const double zeta = z(rng), r = rr(rng);
    const int k = redundancy(zeta, r, 1);
    // Allow the oracle to differ only where the ratio is integral to 1e-9.
    const double raw = std::log(1 - r) / std::log(1 - zeta);
    if (std::abs(raw - std::round(raw)) < 1e-8) continue;
    CHECK(k == linear_scan_units(zeta, r));
  }
}

TEST_CASE("redundancy is nondecreasing in r") {
  for (double zeta = 0.05; zeta < 0.99; zeta += 0.01) {
    int prev = 0;
    for (double r : {0.9, 0.96, 0.97, 0.98, 0.99}) {
      const int k = redundancy(zeta, r, 3);
      CHECK(k >= prev);
      CHECK(k % 3 == 0);
      prev = k;
    }
  }
}

TEST_CASE("block detection") {
  TerrainGrid g = TerrainGrid::filled(1, 3, Terrain::Hill);
  g.cells[1] = Terrain::OutsideArea;
  g.cells[2] = Terrain::Water;
  const AreaMesh m = build_mesh_from_grid({0, 0}, 0.3, g, 0.3);
  const auto table = block_detection(m, default_catalog());
  const auto& cat = default_catalog();
  for (std::size_t s = 0; s < cat.size(); ++s) {
    CHECK(table[s][1] == 0.0);
    CHECK(table[s][0] == cat.specs()[s].detection(Terrain::Hill));
  }
  const auto radar = static_cast<std::size_t>(cat.find("Radar") - cat.specs().data());
  const auto adsb = static_cast<std::size_t>(cat.find("ADS-B") - cat.specs().data());
  CHECK(table[radar][0] == 0.75);
  CHECK(table[adsb][2] == 0.99);
}

TEST_CASE("covered blocks examples") {
  // Far corners of a side block sit at 0.15*sqrt(10), of a diagonal block at 0.45*sqrt(2).
  const AreaMesh m3 = grid_mesh(3, 3, Terrain::Open, 0.3);
  CHECK(covered_blocks(m3, sensor("S", 0.47), 4).indices() == std::vector<std::uint32_t>{4});
  CHECK(covered_blocks(m3, sensor("S", 0.48), 4).indices() == std::vector<std::uint32_t>{1, 3, 4, 5, 7});
  CHECK(covered_blocks(m3, sensor("S", 0.64), 4).count() == 9);

  const double edge = 0.3 / std::sqrt(2.0);
  const AreaMesh m = grid_mesh(4, 4, Terrain::Open, edge);
  for (std::uint32_t z = 0; z < 16; ++z) {
    CHECK(covered_blocks(m, sensor("S", edge), z).indices() == std::vector<std::uint32_t>{z});
  }
  const auto all = covered_blocks(m, sensor("S", m.diagonal_km()), 5);
  CHECK(all.count() == 16);
}

TEST_CASE("covered blocks match the direct-distance oracle") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> range(0.22, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 15, cols = 1 + rng() % 15;
    TerrainGrid g = TerrainGrid::filled(rows, cols, Terrain::Open);
    for (auto& c : g.cells) c = *terrain_from_code(static_cast<int>(rng() % 6) - 1);
    const double r = trial % 5 == 0 ? 0.3 / std::sqrt(2.0) * (1 + trial % 3) : range(rng);
    const AreaMesh m = build_mesh_from_grid({-81.5, 41.1}, 0.3, g, 0.3);
    for (const auto site : m.sites()) {
      CHECK(covered_blocks(m, sensor("S", r), site).indices() == oracle_cover(m, r, site));
    }
  }
}

TEST_CASE("coverage is symmetric under rotation on uniform square meshes") {
  const std::size_t n = 9;
  const AreaMesh m = grid_mesh(n, n, Terrain::Neighborhood, 0.3);
  const SensorSpec s = sensor("S", 0.8);
  auto rot = [&](std::uint32_t z) {  // 90 degrees: (row, col) -> (col, n-1-row)
    const std::size_t row = z / n, col = z % n;
    return static_cast<std::uint32_t>(col * n + (n - 1 - row));
  };
  for (std::uint32_t e = 0; e < n * n; ++e) {
    const auto base = covered_blocks(m, s, e).indices();
    std::vector<std::uint32_t> turned;
    for (const auto z : base) turned.push_back(rot(z));
    std::sort(turned.begin(), turned.end());
    CHECK(covered_blocks(m, s, rot(e)).indices() == turned);
  }
}

TEST_CASE("single block mesh yields one entry per sensor") {
  const AreaMesh m = grid_mesh(1, 1, Terrain::Open, 0.4);
  const auto t = build_coverage(m, default_catalog(), {});
  CHECK(t.entries.size() == default_catalog().size());
  for (const auto& e : t.entries) {
    CHECK(e.covered.indices() == std::vector<std::uint32_t>{0});
    CHECK(e.n_blocks == 1);
  }
  CHECK(t.feasible());
}

TEST_CASE("water blocks need coverage but host no sites") {
  // Island ringed by water; an optical camera only reaches its own block.
  TerrainGrid g = TerrainGrid::filled(5, 5, Terrain::Open);
  for (std::size_t j = 1; j <= 3; ++j) {
    for (std::size_t k = 1; k <= 3; ++k) {
      if (j != 2 || k != 2) g.cells[j * 5 + k] = Terrain::Water;
    }
  }
  const AreaMesh m = build_mesh_from_grid({0, 0}, 0.3, g, 0.4);
  const SensorCatalog cat({*default_catalog().find("OpticalCamera")});
  try {
    build_coverage(m, cat, {});
    FAIL("expected InfeasibleCoverage");
  } catch (const InfeasibleCoverageError& e) {
    CHECK(e.code() == ErrorCode::InfeasibleCoverage);
    CHECK(e.blocks() == std::vector<std::uint32_t>{6, 7, 8, 11, 13, 16, 17, 18});
  }
  CoverageOptions opts;
  opts.allow_infeasible = true;
  const auto t = build_coverage(m, cat, opts);
  CHECK_FALSE(t.feasible());
  CHECK(t.uncovered.size() == 8);
  for (const auto& e : t.entries) CHECK(m.terrain(e.site) != Terrain::Water);
}

TEST_CASE("coverage entries satisfy their invariants") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 2 + rng() % 10, cols = 2 + rng() % 10;
    TerrainGrid g = TerrainGrid::filled(rows, cols, Terrain::Open);
    for (auto& c : g.cells) c = *terrain_from_code(static_cast<int>(rng() % 6) - 1);
    const AreaMesh m = build_mesh_from_grid({-81.5, 41.1}, 0.3, g, 0.4);
    CoverageOptions opts;
    opts.allow_infeasible = true;
    opts.r = 0.9 + 0.01 * static_cast<double>(rng() % 9);
    const auto t = build_coverage(m, default_catalog(), opts);
    const auto omega = block_detection(m, default_catalog());
    for (const auto& e : t.entries) {
      const auto& spec = default_catalog().specs()[e.sensor_index];
      CHECK(spec.name == e.sensor);
      REQUIRE(e.n_blocks > 0);
      CHECK(e.covered.count() == e.n_blocks);
      double sum = 0.0;
      for (const auto z : e.covered.indices()) sum += omega[e.sensor_index][z];
      CHECK(e.zeta == doctest::Approx(sum / static_cast<double>(e.n_blocks)).epsilon(1e-14));
      CHECK(e.tau == 1.0 - e.zeta);
      CHECK(e.kappa % spec.fov_multiplier == 0);
      CHECK(1.0 - std::pow(e.tau, e.kappa / spec.fov_multiplier) >= opts.r - 1e-12);
      CHECK(e.install_cost_usd == e.kappa * spec.unit_price_usd);
    }
    for (std::size_t i = 1; i < t.entries.size(); ++i) {
      const auto& a = t.entries[i - 1];
      const auto& b = t.entries[i];
      CHECK((a.sensor < b.sensor || (a.sensor == b.sensor && a.site < b.site)));
    }
  }
}

TEST_CASE("coverage is independent of the thread count") {
  TerrainGrid g = TerrainGrid::filled(20, 20, Terrain::Neighborhood);
  for (std::size_t i = 0; i < g.cells.size(); i += 7) g.cells[i] = Terrain::Hill;
  const AreaMesh m = build_mesh_from_grid({-81.5, 41.1}, 0.3, g, 0.4);
  CoverageOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = build_coverage(m, default_catalog(), one);
  const auto b = build_coverage(m, default_catalog(), many);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].covered == b.entries[i].covered);
    CHECK(a.entries[i].kappa == b.entries[i].kappa);
    CHECK(a.entries[i].zeta == b.entries[i].zeta);
  }
  CHECK(coverage_csv(a) == coverage_csv(b));
}

TEST_CASE("higher r never lowers kappa") {
  const AreaMesh m = grid_mesh(6, 6, Terrain::Commercial, 0.4);
  const auto lo = build_coverage(m, default_catalog(), {0.98});
  const auto hi = build_coverage(m, default_catalog(), {0.99});
  REQUIRE(lo.entries.size() == hi.entries.size());
  for (std::size_t i = 0; i < lo.entries.size(); ++i) CHECK(hi.entries[i].kappa >= lo.entries[i].kappa);
}

TEST_CASE("coverage csv header") {
  const AreaMesh m = grid_mesh(1, 1, Terrain::Open, 0.4);
  const auto csv = coverage_csv(build_coverage(m, default_catalog(), {}));
  CHECK(csv.rfind("sensor,site_index,n_blocks,zeta,tau,kappa,install_cost_usd\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}
