#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sand/bitset.hpp"
#include "sand/error.hpp"
#include "sand/geo_mesh.hpp"
#include "sand/sensor_catalog.hpp"

namespace sand {

// Slack on the range test, in km. Keeps corners that sit exactly on the
// sensor's range circle inside it despite round-off.
inline constexpr double kRangeSlackKm = 1e-9;

enum class RoundingMode { Ceil, Nearest, Floor };

std::string_view rounding_name(RoundingMode mode);
RoundingMode rounding_from_name(std::string_view name);

// [sensor index in catalog][block] -> probability; 0 outside the area.
using DetectionTable = std::vector<std::vector<double>>;

DetectionTable block_detection(const AreaMesh& mesh, const SensorCatalog& catalog);

// In-area blocks whose four corners all lie within `sensor.range_km` of the
// centre of block `site`.
Bitset covered_blocks(const AreaMesh& mesh, const SensorSpec& sensor, std::uint32_t site);

// Co-located units needed so at least one detects with probability >= r:
// round(log(1-r)/log(1-zeta)) * delta. Throws DegenerateDetection if zeta >= 1.
int redundancy(double zeta, double r, int delta, RoundingMode mode = RoundingMode::Ceil);

struct CoverageEntry {
  std::string sensor;
  std::uint32_t sensor_index = 0;  // position in the catalog
  std::uint32_t site = 0;          // block index
  Bitset covered;                  // over mesh blocks
  std::size_t n_blocks = 0;
  double zeta = 0.0;
  double tau = 0.0;
  int kappa = 0;
  double install_cost_usd = 0.0;
};

struct CoverageOptions {
  double r = 0.98;
  RoundingMode rounding = RoundingMode::Ceil;
  unsigned threads = 0;  // 0: SAND_THREADS or hardware concurrency
  bool allow_infeasible = false;
};

class InfeasibleCoverageError : public Error {
 public:
  explicit InfeasibleCoverageError(std::vector<std::uint32_t> blocks);
  const std::vector<std::uint32_t>& blocks() const { return blocks_; }

 private:
  std::vector<std::uint32_t> blocks_;
};

struct CoverageTable {
  SensorCatalog catalog;
  double r = 0.0;
  RoundingMode rounding = RoundingMode::Ceil;
  std::size_t block_count = 0;
  std::vector<std::uint32_t> universe;   // in-area blocks
  std::vector<CoverageEntry> entries;    // sorted by (sensor name, site)
  std::vector<std::uint32_t> uncovered;  // in-area blocks no entry covers

  bool feasible() const { return uncovered.empty(); }
};

// Throws InfeasibleCoverageError unless options.allow_infeasible.
CoverageTable build_coverage(const AreaMesh& mesh, const SensorCatalog& catalog,
                             const CoverageOptions& options = {});

// Columns: sensor,site_index,n_blocks,zeta,tau,kappa,install_cost_usd
std::string coverage_csv(const CoverageTable& table);

// Worker count from SAND_THREADS (0 or unset: hardware concurrency).
unsigned resolve_threads(unsigned requested);

}  // namespace sand
