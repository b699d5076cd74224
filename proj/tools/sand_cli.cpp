// sand: plan, econ, sweep and validate runs driven by a scenario file.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "sand/error.hpp"
#include "sand/kernels.hpp"
#include "sand/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitBudget = 4;

void report(std::string_view code, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = code;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
}

int exit_for(sand::ErrorCode code) {
  switch (code) {
    case sand::ErrorCode::InfeasibleCoverage:
    case sand::ErrorCode::Infeasible:
      return kExitInfeasible;
    default:
      return kExitInput;
  }
}

struct Overrides {
  std::optional<double> r;
  std::optional<double> fee;
  std::optional<std::string> out;

  void apply(sand::Scenario& s) const {
    if (r) s.r = *r;
    if (fee) {
      if (!s.econ) throw sand::Error(sand::ErrorCode::InvalidArgument, "--fee needs an econ block");
      s.econ->params.monthly_fee = *fee;
    }
    if (out) s.output = *out;
    s.validate();
  }
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--r", o.r, "Detection requirement in (0,1)");
  cmd->add_option("--fee", o.fee, "Monthly subscription fee, USD");
  cmd->add_option("--out", o.out, "Output directory");
}

int cmd_plan(const std::string& path, const Overrides& o) {
  sand::Scenario s = sand::load_scenario(path);
  o.apply(s);
  const sand::PlanRun run = sand::run_plan(s);
  const auto art = sand::write_plan_artifacts(run, s, s.output);
  const auto& st = run.plan.stats;
  fmt::print("{}: {} site(s), {} unit(s), total ${:.2f}, {} ({} nodes)\n", s.city,
             run.plan.chosen.size(), run.plan.total_units, run.plan.total_cost,
             st.proven_optimal ? "proven optimal" : (st.budget_exceeded ? "budget exceeded" : "heuristic"),
             st.nodes);
  fmt::print("wrote {}\n", art.summary_csv.string());
  return st.budget_exceeded && !st.proven_optimal ? kExitBudget : kExitOk;
}

int cmd_econ(const std::string& path, const std::string& plan_path, const Overrides& o) {
  sand::Scenario s = sand::load_scenario(path);
  o.apply(s);
  const std::filesystem::path plan = plan_path.empty() ? s.output / "plan.json" : std::filesystem::path(plan_path);
  const double capex = sand::load_plan_capex(plan);
  const auto flow = sand::run_econ(s, capex);
  const auto csv_path = s.output / "cashflow.csv";
  sand::write_text(csv_path, sand::econ::cashflow_csv(flow));
  auto year = [](const std::optional<int>& y) { return y ? std::to_string(*y) : std::string("none"); };
  fmt::print("capex ${:.2f}; break-even low: {}, high: {}\n", capex, year(flow.break_even_low()),
             year(flow.break_even_high()));
  fmt::print("wrote {}\n", csv_path.string());
  return kExitOk;
}

int cmd_sweep(const std::string& path, const std::string& parameter, const std::vector<double>& values,
              const Overrides& o) {
  sand::Scenario s = sand::load_scenario(path);
  o.apply(s);
  const auto p = sand::sweep_parameter_from_name(parameter);
  const auto rows = sand::run_sweep(s, p, values);
  const auto csv_path = s.output / fmt::format("sweep_{}.csv", sand::sweep_parameter_name(p));
  sand::write_text(csv_path, sand::sweep_csv(p, rows));
  fmt::print("wrote {}\n", csv_path.string());
  for (const auto& r : rows) {
    if (!r.proven_optimal && s.solver == sand::SolverMode::Exact) return kExitBudget;
  }
  return kExitOk;
}

int cmd_validate(const std::string& path) {
  const sand::Scenario s = sand::load_scenario(path);
  const sand::PlanRun run = sand::prepare(s);
  nlohmann::ordered_json j;
  j["city"] = s.city;
  j["blocks_x"] = run.mesh.blocks_x();
  j["blocks_y"] = run.mesh.blocks_y();
  j["blocks"] = run.mesh.block_count();
  j["in_area_blocks"] = run.mesh.in_area_blocks().size();
  j["sites"] = run.mesh.sites().size();
  j["candidates"] = run.instance.size();
  j["admitted"] = run.instance.admitted;
  j["kernels"] = sand::kernels::isa_name(sand::kernels::active().isa);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensor placement and clearinghouse economics"};
  app.require_subcommand(1);

  std::string scenario, plan_path, parameter;
  std::vector<double> values;
  Overrides o;

  auto* plan = app.add_subcommand("plan", "Solve the placement and write plan artifacts");
  plan->add_option("scenario", scenario, "Scenario JSON")->required();
  add_overrides(plan, o);

  auto* econ = app.add_subcommand("econ", "Cash flows and NPV for a written plan");
  econ->add_option("scenario", scenario, "Scenario JSON")->required();
  econ->add_option("--plan", plan_path, "plan.json (default: <out>/plan.json)");
  add_overrides(econ, o);

  auto* sweep = app.add_subcommand("sweep", "Re-run the scenario over parameter values");
  sweep->add_option("scenario", scenario, "Scenario JSON")->required();
  sweep->add_option("--parameter", parameter, "fee, n0, detection_scale or r")->required();
  sweep->add_option("--values", values, "Comma-separated values")->delimiter(',');
  add_overrides(sweep, o);

  auto* validate = app.add_subcommand("validate", "Check a scenario and print mesh statistics");
  validate->add_option("scenario", scenario, "Scenario JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report("USAGE", e.what());
    return kExitInput;
  }

  try {
    if (app.got_subcommand(plan)) return cmd_plan(scenario, o);
    if (app.got_subcommand(econ)) return cmd_econ(scenario, plan_path, o);
    if (app.got_subcommand(sweep)) return cmd_sweep(scenario, parameter, values, o);
    if (app.got_subcommand(validate)) return cmd_validate(scenario);
  } catch (const sand::Error& e) {
    report(sand::error_code_name(e.code()), e.what());
    return exit_for(e.code());
  } catch (const std::exception& e) {
    report("INTERNAL", e.what());
    return kExitInput;
  }
  return kExitInput;
}
