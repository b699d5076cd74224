#include "sand/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <fmt/format.h>

namespace sand {

std::string_view rounding_name(RoundingMode mode) {
  switch (mode) {
    case RoundingMode::Ceil: return "ceil";
    case RoundingMode::Nearest: return "nearest";
    case RoundingMode::Floor: return "floor";
  }
  return "ceil";
}

RoundingMode rounding_from_name(std::string_view name) {
  if (name == "ceil") return RoundingMode::Ceil;
  if (name == "nearest") return RoundingMode::Nearest;
  if (name == "floor") return RoundingMode::Floor;
  throw Error(ErrorCode::InvalidArgument, "unknown rounding mode '" + std::string(name) + "'");
}

DetectionTable block_detection(const AreaMesh& mesh, const SensorCatalog& catalog) {
  DetectionTable table(catalog.size(), std::vector<double>(mesh.block_count(), 0.0));
  for (std::size_t s = 0; s < catalog.size(); ++s) {
    const SensorSpec& spec = catalog.specs()[s];
    for (std::size_t z = 0; z < mesh.block_count(); ++z) {
      table[s][z] = spec.detection(mesh.terrain(z));
    }
  }
  return table;
}

namespace {

// Reusable per-worker buffer for the point mask of one site window.
struct Scratch {
  std::vector<std::uint8_t> mask;
};

Bitset covered_blocks_impl(const AreaMesh& mesh, double range_km, std::uint32_t site,
                           Scratch& scratch) {
  Bitset out(mesh.block_count());
  const PlanePoint c = mesh.block_center(site);
  const double reach = range_km + kRangeSlackKm;
  const double r2 = reach * reach;
  const double L = mesh.block_km();
  const double x0 = mesh.point_xs()[0];
  const double y0 = mesh.point_ys()[0];
  const auto nx = static_cast<long>(mesh.points_x());
  const auto ny = static_cast<long>(mesh.points_y());

  // Index window of points that can possibly be in range; the mask is exact.
  const long k0 = std::clamp(static_cast<long>(std::floor((c.x - reach - x0) / L)) - 1, 0L, nx - 1);
  const long k1 = std::clamp(static_cast<long>(std::ceil((c.x + reach - x0) / L)) + 1, 0L, nx - 1);
  const long j0 = std::clamp(static_cast<long>(std::floor((c.y - reach - y0) / L)) - 1, 0L, ny - 1);
  const long j1 = std::clamp(static_cast<long>(std::ceil((c.y + reach - y0) / L)) + 1, 0L, ny - 1);
  const auto width = static_cast<std::size_t>(k1 - k0 + 1);
  const auto height = static_cast<std::size_t>(j1 - j0 + 1);

  scratch.mask.resize(width * height);
  const auto& kern = kernels::active();
  for (std::size_t row = 0; row < height; ++row) {
    const std::size_t first = (static_cast<std::size_t>(j0) + row) * mesh.points_x() +
                              static_cast<std::size_t>(k0);
    kern.range_mask(mesh.point_xs().data() + first, mesh.point_ys().data() + first, width,
                    c.x, c.y, r2, scratch.mask.data() + row * width);
  }

  const std::size_t bx = mesh.blocks_x();
  for (std::size_t row = 0; row + 1 < height; ++row) {
    const std::uint8_t* lower = scratch.mask.data() + row * width;
    const std::uint8_t* upper = lower + width;
    const std::size_t j = static_cast<std::size_t>(j0) + row;
    for (std::size_t col = 0; col + 1 < width; ++col) {
      if ((lower[col] & lower[col + 1] & upper[col] & upper[col + 1]) == 0) continue;
      const std::size_t z = j * bx + static_cast<std::size_t>(k0) + col;
      if (mesh.in_area(z)) out.set(z);
    }
  }
  return out;
}

}  // namespace

Bitset covered_blocks(const AreaMesh& mesh, const SensorSpec& sensor, std::uint32_t site) {
  Scratch scratch;
  return covered_blocks_impl(mesh, sensor.range_km, site, scratch);
}

int redundancy(double zeta, double r, int delta, RoundingMode mode) {
  if (!(zeta < 1.0)) {
    throw Error(ErrorCode::DegenerateDetection,
                "mean detection " + std::to_string(zeta) + " leaves no misdetection");
  }
  if (!(zeta > 0.0)) {
    throw Error(ErrorCode::DegenerateDetection, "mean detection must be > 0");
  }
  if (!(r > 0.0 && r < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "required detection r must lie in (0, 1)");
  }
  if (delta < 1) throw Error(ErrorCode::InvalidArgument, "fov multiplier must be >= 1");

  // Snap so that mathematically integral ratios survive log round-off.
  constexpr double kSnap = 1e-9;
  const double raw = std::log(1.0 - r) / std::log(1.0 - zeta);
  double units = 0.0;
  switch (mode) {
    case RoundingMode::Ceil: units = std::ceil(raw - kSnap); break;
    case RoundingMode::Nearest: units = std::round(raw); break;
    case RoundingMode::Floor: units = std::floor(raw + kSnap); break;
  }
  units = std::max(units, 1.0);
  return static_cast<int>(units) * delta;
}

InfeasibleCoverageError::InfeasibleCoverageError(std::vector<std::uint32_t> blocks)
    : Error(ErrorCode::InfeasibleCoverage,
            [&] {
              std::string msg = std::to_string(blocks.size()) +
                                " in-area block(s) cannot be covered by any sensor:";
              for (std::size_t i = 0; i < blocks.size() && i < 20; ++i) {
                msg += ' ' + std::to_string(blocks[i]);
              }
              if (blocks.size() > 20) msg += " ...";
              return msg;
            }()),
      blocks_(std::move(blocks)) {}

unsigned resolve_threads(unsigned requested) {
  if (requested == 0) {
    if (const char* env = std::getenv("SAND_THREADS")) {
      requested = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    }
  }
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

CoverageTable build_coverage(const AreaMesh& mesh, const SensorCatalog& catalog,
                             const CoverageOptions& options) {
  if (!(options.r > 0.0 && options.r < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "required detection r must lie in (0, 1)");
  }
  CoverageTable table{catalog, options.r, options.rounding, mesh.block_count(),
                      mesh.in_area_blocks(), {}, {}};
  const DetectionTable omega = block_detection(mesh, catalog);
  const auto& sites = mesh.sites();
  const std::size_t n_sites = sites.size();
  const std::size_t n_pairs = catalog.size() * n_sites;

  // One slot per (sensor, site); catalog and sites are both sorted, so slot
  // order is the (sensor name, site) order regardless of scheduling.
  std::vector<CoverageEntry> slots(n_pairs);
  std::vector<char> keep(n_pairs, 0);
  auto work = [&](std::size_t begin, std::size_t end) {
    Scratch scratch;
    for (std::size_t p = begin; p < end; ++p) {
      const std::size_t s = p / n_sites;
      const SensorSpec& spec = catalog.specs()[s];
      const std::uint32_t site = sites[p % n_sites];
      CoverageEntry e;
      e.covered = covered_blocks_impl(mesh, spec.range_km, site, scratch);
      e.n_blocks = e.covered.count();
      if (e.n_blocks == 0) continue;
      double sum = 0.0;
      e.covered.for_each([&](std::size_t z) { sum += omega[s][z]; });
      e.sensor = spec.name;
      e.sensor_index = static_cast<std::uint32_t>(s);
      e.site = site;
      e.zeta = sum / static_cast<double>(e.n_blocks);
      e.tau = 1.0 - e.zeta;
      e.kappa = redundancy(e.zeta, options.r, spec.fov_multiplier, options.rounding);
      e.install_cost_usd = static_cast<double>(e.kappa) * spec.unit_price_usd;
      slots[p] = std::move(e);
      keep[p] = 1;
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(options.threads), std::max<std::size_t>(1, n_pairs / 64)));
  if (threads <= 1) {
    work(0, n_pairs);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n_pairs + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = std::min(n_pairs, t * chunk);
      const std::size_t e = std::min(n_pairs, b + chunk);
      pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }

  Bitset any(mesh.block_count());
  for (std::size_t p = 0; p < n_pairs; ++p) {
    if (!keep[p]) continue;
    any |= slots[p].covered;
    table.entries.push_back(std::move(slots[p]));
  }
  for (const std::uint32_t z : table.universe) {
    if (!any.test(z)) table.uncovered.push_back(z);
  }
  if (!table.uncovered.empty() && !options.allow_infeasible) {
    throw InfeasibleCoverageError(table.uncovered);
  }
  return table;
}

std::string coverage_csv(const CoverageTable& table) {
  std::string out = "sensor,site_index,n_blocks,zeta,tau,kappa,install_cost_usd\n";
  for (const auto& e : table.entries) {
    out += fmt::format("{},{},{},{:.10f},{:.10f},{},{:.2f}\n", e.sensor, e.site, e.n_blocks,
                       e.zeta, e.tau, e.kappa, e.install_cost_usd);
  }
  return out;
}

}  // namespace sand
