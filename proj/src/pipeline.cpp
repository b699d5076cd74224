#include "sand/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

#include "sand/error.hpp"

namespace sand {
namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string_view solver_mode_name(SolverMode m) {
  switch (m) {
    case SolverMode::Exact: return "exact";
    case SolverMode::Greedy: return "greedy";
    case SolverMode::Brute: return "brute";
  }
  return "exact";
}

SolverMode solver_mode_from_name(std::string_view name) {
  if (name == "exact") return SolverMode::Exact;
  if (name == "greedy") return SolverMode::Greedy;
  if (name == "brute") return SolverMode::Brute;
  throw Error(ErrorCode::InvalidArgument, "unknown solver mode '" + std::string(name) + "'");
}

void Scenario::validate() const {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidArgument, "r must lie in (0, 1)");
  if (!(block_km > 0.0)) throw Error(ErrorCode::InvalidArgument, "block_km must be > 0");
  if (!(detection_scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "detection_scale must be > 0");
  if (econ) econ->params.validate();
}

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

GeoPoint read_point(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorCode::ParseError, "coordinates must be [lon, lat]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Scenario parse_scenario(std::string_view json_text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("scenario: ") + e.what());
  }
  Scenario s;
  try {
    s.city = doc.value("city", s.city);
    const auto& area = doc.at("area");
    if (area.contains("corners")) {
      const auto& c = area["corners"];
      if (!c.is_array() || c.size() != 4) {
        throw Error(ErrorCode::ParseError, "area.corners needs four [lon, lat] pairs");
      }
      std::array<GeoPoint, 4> corners{};
      for (std::size_t i = 0; i < 4; ++i) corners[i] = read_point(c[i]);
      s.corners = corners;
    } else {
      s.center = read_point(area.at("center"));
    }
    s.terrain = resolve(base_dir, area.at("terrain").get<std::string>());
    s.block_km = area.value("block_km", s.block_km);

    if (doc.contains("catalog")) s.catalog = resolve(base_dir, doc["catalog"].get<std::string>());
    if (doc.contains("sensor_filter")) {
      const auto& f = doc["sensor_filter"];
      if (f.is_array()) {
        s.filter = SensorFilter::of(f.get<std::vector<std::string>>());
      } else {
        const auto name = f.get<std::string>();
        if (name == "all") {
          s.filter = SensorFilter::all();
        } else if (name == "noncooperative_capable") {
          s.filter = SensorFilter::noncooperative();
        } else {
          s.filter = SensorFilter::of({name});
        }
      }
    }
    s.r = doc.value("r", s.r);
    if (doc.contains("rounding")) s.rounding = rounding_from_name(doc["rounding"].get<std::string>());
    s.detection_scale = doc.value("detection_scale", s.detection_scale);
    s.heatmap_sensor = doc.value("heatmap_sensor", s.heatmap_sensor);
    s.write_coverage = doc.value("write_coverage", s.write_coverage);

    if (doc.contains("solver")) {
      const auto& sv = doc["solver"];
      if (sv.contains("mode")) s.solver = solver_mode_from_name(sv["mode"].get<std::string>());
      s.solver_options.node_budget = sv.value("node_budget", s.solver_options.node_budget);
      s.solver_options.max_open_nodes = sv.value("max_open_nodes", s.solver_options.max_open_nodes);
      s.solver_options.time_limit_s = sv.value("time_limit_s", s.solver_options.time_limit_s);
      s.dominance = sv.value("dominance", s.dominance);
    }

    if (doc.contains("econ")) {
      const auto& e = doc["econ"];
      EconConfig ec;
      auto& p = ec.params;
      p.n0 = e.value("n0", p.n0);
      p.monthly_fee = e.value("fee", p.monthly_fee);
      p.growth_low = e.value("growth_low", p.growth_low);
      p.growth_high = e.value("growth_high", p.growth_high);
      p.discount = e.value("discount", p.discount);
      p.horizon = e.value("horizon", p.horizon);
      p.start_year = e.value("start_year", p.start_year);
      p.growth_delay = e.value("growth_delay", p.growth_delay);
      if (e.contains("subscriber_rounding")) {
        p.rounding = econ::subscriber_rounding_from_name(e["subscriber_rounding"].get<std::string>());
      }
      ec.pricing = resolve(base_dir, e.at("pricing").get<std::string>());
      ec.traffic = resolve(base_dir, e.at("traffic").get<std::string>());
      s.econ = ec;
    }
    if (doc.contains("output")) s.output = resolve(base_dir, doc["output"].get<std::string>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("scenario: ") + e.what());
  }
  s.validate();
  return s;
}

Scenario load_scenario(const fs::path& path) {
  Scenario s = parse_scenario(read_file(path), path.parent_path());
  if (!fs::exists(s.terrain)) throw Error(ErrorCode::Io, "terrain file not found: " + s.terrain.string());
  if (s.catalog && !fs::exists(*s.catalog)) {
    throw Error(ErrorCode::Io, "catalog file not found: " + s.catalog->string());
  }
  if (s.econ) {
    for (const auto& p : {s.econ->pricing, s.econ->traffic}) {
      if (!fs::exists(p)) throw Error(ErrorCode::Io, "econ input not found: " + p.string());
    }
  }
  return s;
}

PlanRun prepare(const Scenario& scenario) {
  scenario.validate();
  PlanRun run;
  SensorCatalog full = scenario.catalog ? load_catalog(*scenario.catalog) : default_catalog();
  if (scenario.detection_scale != 1.0) full = scale_detection(full, scenario.detection_scale);
  const SensorCatalog catalog = filter_catalog(full, scenario.filter);
  if (catalog.size() == 0) throw Error(ErrorCode::InvalidArgument, "sensor filter admits no sensors");
  run.catalog = catalog;
  run.full_catalog = std::move(full);

  const TerrainGrid grid = load_terrain_csv(scenario.terrain);
  run.mesh = scenario.corners
                 ? build_mesh(*scenario.corners, scenario.block_km, grid, catalog.min_range_km())
                 : build_mesh_from_grid(scenario.center, scenario.block_km, grid, catalog.min_range_km());

  CoverageOptions opts;
  opts.r = scenario.r;
  opts.rounding = scenario.rounding;
  run.coverage = build_coverage(run.mesh, run.catalog, opts);
  run.instance = make_instance(run.coverage, SensorFilter::all());
  if (scenario.dominance) run.instance = dominance_filter(run.instance, run.catalog);
  return run;
}

PlanRun run_plan(const Scenario& scenario) {
  PlanRun run = prepare(scenario);
  switch (scenario.solver) {
    case SolverMode::Exact: run.plan = solve_exact(run.instance, scenario.solver_options); break;
    case SolverMode::Greedy: run.plan = solve_greedy(run.instance); break;
    case SolverMode::Brute: run.plan = solve_brute(run.instance); break;
  }
  return run;
}

econ::ScenarioCashFlow run_econ(const Scenario& scenario, double capex_usd) {
  if (!scenario.econ) throw Error(ErrorCode::InvalidArgument, "scenario has no econ block");
  const auto traffic = econ::load_traffic(scenario.econ->traffic);
  const auto pricing = econ::load_pricing(scenario.econ->pricing);
  return econ::scenario_npv(capex_usd, traffic, pricing, scenario.econ->params);
}

double load_plan_capex(const fs::path& plan_path) {
  json doc;
  try {
    doc = json::parse(read_file(plan_path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaMismatch, std::string("plan: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("total_cost_usd") || !doc["total_cost_usd"].is_number() ||
      !doc.contains("sites") || !doc["sites"].is_array()) {
    throw Error(ErrorCode::SchemaMismatch, "plan file needs total_cost_usd and sites");
  }
  const double capex = doc["total_cost_usd"].get<double>();
  if (!(capex >= 0.0)) throw Error(ErrorCode::SchemaMismatch, "plan total_cost_usd must be >= 0");
  return capex;
}

std::string plan_geojson(const PlanRun& run) {
  ordered_json features = ordered_json::array();
  for (const auto& c : run.plan.chosen) {
    const GeoPoint g = unproject(run.mesh.block_center(c.site), run.mesh.origin());
    ordered_json f;
    f["type"] = "Feature";
    f["geometry"] = {{"type", "Point"}, {"coordinates", {g.lon, g.lat}}};
    f["properties"] = {{"sensor", c.sensor},
                       {"site", c.site},
                       {"count", c.count},
                       {"install_cost_usd", c.cost}};
    features.push_back(std::move(f));
  }
  ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = std::move(features);
  return doc.dump() + "\n";
}

std::string plan_json(const PlanRun& run, const Scenario& scenario) {
  ordered_json doc;
  doc["city"] = scenario.city;
  doc["sensor_filter"] = scenario.filter.describe();
  doc["r"] = scenario.r;
  doc["rounding"] = rounding_name(scenario.rounding);
  doc["solver"] = run.plan.stats.mode;
  doc["proven_optimal"] = run.plan.stats.proven_optimal;
  doc["budget_exceeded"] = run.plan.stats.budget_exceeded;
  doc["nodes"] = run.plan.stats.nodes;
  doc["lower_bound_usd"] = run.plan.stats.lower_bound;
  doc["total_cost_usd"] = run.plan.total_cost;
  doc["total_units"] = run.plan.total_units;
  doc["removed_types"] = run.instance.removed_types;
  ordered_json sites = ordered_json::array();
  for (const auto& c : run.plan.chosen) {
    sites.push_back({{"sensor", c.sensor}, {"site", c.site}, {"count", c.count}, {"install_cost_usd", c.cost}});
  }
  doc["sites"] = std::move(sites);
  return doc.dump(2) + "\n";
}

std::string summary_csv(const PlanRun& run, const Scenario& scenario) {
  return fmt::format("city,sensor_filter,n_sites,n_sensor_units,total_cost_usd,proven_optimal\n"
                     "{},{},{},{},{:.2f},{}\n",
                     scenario.city, scenario.filter.describe(), run.plan.chosen.size(),
                     run.plan.total_units, run.plan.total_cost,
                     run.plan.stats.proven_optimal ? "true" : "false");
}

std::string heatmap_csv(const PlanRun& run, std::string_view sensor) {
  const SensorSpec* spec = run.full_catalog.find(sensor);
  if (spec == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "heatmap sensor '" + std::string(sensor) + "' is not in the catalog");
  }
  std::string out = "block,row,col,lon,lat,terrain,omega\n";
  const AreaMesh& m = run.mesh;
  for (std::size_t z = 0; z < m.block_count(); ++z) {
    const GeoPoint g = unproject(m.block_center(z), m.origin());
    out += fmt::format("{},{},{},{:.7f},{:.7f},{},{}\n", z, m.block_row(z), m.block_col(z), g.lon,
                       g.lat, terrain_name(m.terrain(z)), spec->detection(m.terrain(z)));
  }
  return out;
}

void write_text(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

Artifacts write_plan_artifacts(const PlanRun& run, const Scenario& scenario, const fs::path& out_dir) {
  Artifacts a;
  a.plan_geojson = out_dir / "plan.geojson";
  a.plan_json = out_dir / "plan.json";
  a.summary_csv = out_dir / "summary.csv";
  a.heatmap_csv = out_dir / "heatmap.csv";
  a.mesh_geojson = out_dir / "mesh.geojson";
  const std::string heat =
      scenario.heatmap_sensor.empty() ? run.catalog.specs().front().name : scenario.heatmap_sensor;
  write_text(a.plan_geojson, plan_geojson(run));
  write_text(a.plan_json, plan_json(run, scenario));
  write_text(a.summary_csv, summary_csv(run, scenario));
  write_text(a.heatmap_csv, heatmap_csv(run, heat));
  write_text(a.mesh_geojson, mesh_geojson(run.mesh));
  if (scenario.write_coverage) {
    a.coverage_csv = out_dir / "coverage.csv";
    write_text(*a.coverage_csv, coverage_csv(run.coverage));
  }
  return a;
}

SweepParameter sweep_parameter_from_name(std::string_view name) {
  if (name == "fee") return SweepParameter::Fee;
  if (name == "n0") return SweepParameter::N0;
  if (name == "detection_scale") return SweepParameter::DetectionScale;
  if (name == "r") return SweepParameter::R;
  throw Error(ErrorCode::InvalidArgument, "unknown sweep parameter '" + std::string(name) + "'");
}

std::string_view sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::Fee: return "fee";
    case SweepParameter::N0: return "n0";
    case SweepParameter::DetectionScale: return "detection_scale";
    case SweepParameter::R: return "r";
  }
  return "";
}

std::vector<SweepRow> run_sweep(const Scenario& scenario, SweepParameter parameter,
                                const std::vector<double>& values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "sweep needs at least one value");
  const bool econ_only = parameter == SweepParameter::Fee || parameter == SweepParameter::N0;
  if (econ_only && !scenario.econ) {
    throw Error(ErrorCode::InvalidArgument, "fee and n0 sweeps need an econ block");
  }

  std::optional<PlanRun> fixed;
  if (econ_only) fixed = run_plan(scenario);

  std::vector<SweepRow> rows;
  for (const double v : values) {
    Scenario s = scenario;
    switch (parameter) {
      case SweepParameter::Fee: s.econ->params.monthly_fee = v; break;
      case SweepParameter::N0: s.econ->params.n0 = v; break;
      case SweepParameter::DetectionScale: s.detection_scale = v; break;
      case SweepParameter::R: s.r = v; break;
    }
    s.validate();
    std::optional<PlanRun> fresh;
    if (!econ_only) fresh = run_plan(s);
    const PlanRun& run = econ_only ? *fixed : *fresh;

    SweepRow row;
    row.value = v;
    row.n_sites = run.plan.chosen.size();
    row.n_sensor_units = run.plan.total_units;
    row.total_cost_usd = run.plan.total_cost;
    row.proven_optimal = run.plan.stats.proven_optimal;
    if (s.econ) {
      const auto flow = run_econ(s, run.plan.total_cost);
      row.final_cum_npv_low = flow.low.cumulative.back();
      row.final_cum_npv_high = flow.high.cumulative.back();
      row.break_even_low = flow.break_even_low();
      row.break_even_high = flow.break_even_high();
    }
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv(SweepParameter parameter, const std::vector<SweepRow>& rows) {
  std::string out =
      "parameter,value,n_sites,n_sensor_units,total_cost_usd,proven_optimal,final_cum_npv_low,"
      "final_cum_npv_high,break_even_low,break_even_high\n";
  auto opt_money = [](const std::optional<double>& v) {
    return v ? fmt::format("{:.2f}", *v) : std::string();
  };
  auto opt_year = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{:.2f},{},{},{},{},{}\n", sweep_parameter_name(parameter), r.value,
                       r.n_sites, r.n_sensor_units, r.total_cost_usd,
                       r.proven_optimal ? "true" : "false", opt_money(r.final_cum_npv_low),
                       opt_money(r.final_cum_npv_high), opt_year(r.break_even_low),
                       opt_year(r.break_even_high));
  }
  return out;
}

}  // namespace sand
