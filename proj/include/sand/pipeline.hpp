#pragma once

// Scenario files and the plan/econ/sweep runs the CLI drives.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sand/coverage.hpp"
#include "sand/econ.hpp"
#include "sand/geo_mesh.hpp"
#include "sand/placement.hpp"
#include "sand/sensor_catalog.hpp"

namespace sand {

enum class SolverMode { Exact, Greedy, Brute };
std::string_view solver_mode_name(SolverMode m);
SolverMode solver_mode_from_name(std::string_view name);

struct EconConfig {
  econ::EconParams params;
  std::filesystem::path pricing;
  std::filesystem::path traffic;
};

struct Scenario {
  std::string city = "scenario";
  // Either explicit corners or a centre; with a centre the block grid is the
  // terrain grid.
  std::optional<std::array<GeoPoint, 4>> corners;
  GeoPoint center{};
  std::filesystem::path terrain;
  double block_km = 0.3;
  std::optional<std::filesystem::path> catalog;  // default: bundled catalog
  SensorFilter filter;
  double r = 0.98;
  RoundingMode rounding = RoundingMode::Ceil;
  double detection_scale = 1.0;
  std::string heatmap_sensor;  // any catalog sensor; default: first admitted
  SolverMode solver = SolverMode::Exact;
  SolverOptions solver_options;
  bool dominance = false;
  bool write_coverage = false;
  std::optional<EconConfig> econ;
  std::filesystem::path output = "out";

  // r in (0, 1), detection_scale > 0, block_km > 0.
  void validate() const;
};

// Relative paths inside the file resolve against `base_dir`.
Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

struct PlanRun {
  AreaMesh mesh;
  SensorCatalog catalog;       // admitted sensors, detection already scaled
  SensorCatalog full_catalog;  // every sensor, detection already scaled
  CoverageTable coverage;
  PlacementInstance instance;
  PlacementPlan plan;
};

// Mesh, coverage, instance. No solve.
PlanRun prepare(const Scenario& scenario);
PlanRun run_plan(const Scenario& scenario);

econ::ScenarioCashFlow run_econ(const Scenario& scenario, double capex_usd);

// Reads total_cost_usd from a plan.json written by write_plan_artifacts.
double load_plan_capex(const std::filesystem::path& plan_json);

struct Artifacts {
  std::filesystem::path plan_geojson, plan_json, summary_csv, heatmap_csv, mesh_geojson;
  std::optional<std::filesystem::path> coverage_csv;
};

// GeoJSON of chosen sites: Point features with {sensor, site, count, install_cost_usd}.
std::string plan_geojson(const PlanRun& run);
std::string plan_json(const PlanRun& run, const Scenario& scenario);
// Header: city,sensor_filter,n_sites,n_sensor_units,total_cost_usd,proven_optimal
std::string summary_csv(const PlanRun& run, const Scenario& scenario);
// Header: block,row,col,lon,lat,terrain,omega
std::string heatmap_csv(const PlanRun& run, std::string_view sensor);

Artifacts write_plan_artifacts(const PlanRun& run, const Scenario& scenario,
                               const std::filesystem::path& out_dir);

enum class SweepParameter { Fee, N0, DetectionScale, R };
SweepParameter sweep_parameter_from_name(std::string_view name);
std::string_view sweep_parameter_name(SweepParameter p);

struct SweepRow {
  double value = 0.0;
  std::size_t n_sites = 0;
  long long n_sensor_units = 0;
  double total_cost_usd = 0.0;
  bool proven_optimal = false;
  std::optional<double> final_cum_npv_low, final_cum_npv_high;
  std::optional<int> break_even_low, break_even_high;
};

// Rows follow the order of `values`. Fee and n0 need an econ block.
std::vector<SweepRow> run_sweep(const Scenario& scenario, SweepParameter parameter,
                                const std::vector<double>& values);

// Header: parameter,value,n_sites,n_sensor_units,total_cost_usd,proven_optimal,
// final_cum_npv_low,final_cum_npv_high,break_even_low,break_even_high
std::string sweep_csv(SweepParameter parameter, const std::vector<SweepRow>& rows);

void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace sand
