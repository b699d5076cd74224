#pragma once

// Minimum-cost full-coverage placement (weighted set cover).
//
// Every solver returns the plan minimising the key (total cost, number of
// chosen candidates, sorted candidate ids) where ids are positions in the
// instance's candidate list, itself sorted by (sensor name, site). Costs of a
// plan are always summed in increasing id order so equal plans compare equal
// bit for bit across solvers.

#include <cstdint>
#include <string>
#include <vector>

#include "sand/bitset.hpp"
#include "sand/coverage.hpp"
#include "sand/sensor_catalog.hpp"

namespace sand {

struct Candidate {
  std::string sensor;
  std::uint32_t site = 0;
  int count = 0;     // sensor units installed at the site
  double cost = 0.0; // count * unit price
  Bitset covers;     // over universe positions
};

struct PlacementInstance {
  std::vector<std::uint32_t> universe;  // element ids (block indices), sorted
  std::vector<Candidate> candidates;    // sorted by (sensor, site)
  std::vector<std::string> admitted;    // sensor names admitted by the filter
  std::vector<std::string> removed_types;

  std::size_t size() const { return candidates.size(); }
};

// Builds the instance for the sensor types selected by `filter`. Throws
// InfeasibleCoverageError if some in-area block has no admitted coverer.
PlacementInstance make_instance(const CoverageTable& table, const SensorFilter& filter);

struct CandidateSpec {
  std::string name;
  std::vector<std::uint32_t> elements;
  double cost = 0.0;
  int count = 1;
};

// Abstract instance; candidate `i` gets sensor=name and site=i. Candidates are
// taken in the given order, so ids follow input order when names sort the same.
PlacementInstance make_instance(std::vector<std::uint32_t> universe,
                                const std::vector<CandidateSpec>& candidates);

struct PlanChoice {
  std::size_t candidate = 0;
  std::string sensor;
  std::uint32_t site = 0;
  int count = 0;
  double cost = 0.0;
};

struct SolverStats {
  std::string mode;
  std::uint64_t nodes = 0;
  bool proven_optimal = false;
  bool budget_exceeded = false;
  double lower_bound = 0.0;
};

struct PlacementPlan {
  std::vector<PlanChoice> chosen;          // increasing candidate id
  double total_cost = 0.0;
  long long total_units = 0;
  std::vector<std::uint32_t> multiplicity; // per universe position
  SolverStats stats;

  std::vector<std::size_t> ids() const;
  bool covers_everything() const;
};

// Sum of candidate costs in increasing id order; `ids` must be sorted.
double canonical_cost(const PlacementInstance& instance, const std::vector<std::size_t>& ids);

// True if (cost_a, ids_a) precedes (cost_b, ids_b) under the plan order.
bool plan_precedes(double cost_a, const std::vector<std::size_t>& ids_a, double cost_b,
                   const std::vector<std::size_t>& ids_b);

PlacementPlan make_plan(const PlacementInstance& instance, std::vector<std::size_t> ids,
                        SolverStats stats);

struct SolverOptions {
  std::uint64_t node_budget = 10'000'000;
  std::size_t max_open_nodes = 5'000'000;
  double time_limit_s = 0.0;  // 0: none. A hit limit makes results timing-dependent.
};

// Best-first branch and bound. On budget exhaustion returns the incumbent with
// stats.proven_optimal = false and stats.budget_exceeded = true.
PlacementPlan solve_exact(const PlacementInstance& instance, const SolverOptions& options = {});

// Repeatedly takes the candidate with the lowest cost per newly covered element.
PlacementPlan solve_greedy(const PlacementInstance& instance);

// Enumerates every subset; at most kBruteMaxCandidates candidates.
inline constexpr std::size_t kBruteMaxCandidates = 20;
PlacementPlan solve_brute(const PlacementInstance& instance);

enum class DominanceRule {
  // Price compared per unit of sensing-disk area: unit_price * fov / range^2.
  AreaPrice,
  // Price compared per unit.
  UnitPrice,
};

// Names of catalog types dominated by another type in `catalog`.
std::vector<std::string> dominated_types(const SensorCatalog& catalog,
                                         DominanceRule rule = DominanceRule::AreaPrice);

// Drops candidates whose sensor type is dominated within the instance's
// admitted types; removals are recorded in removed_types.
PlacementInstance dominance_filter(const PlacementInstance& instance, const SensorCatalog& catalog,
                                   DominanceRule rule = DominanceRule::AreaPrice);

}  // namespace sand
