#include "sand/placement.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace sand {

PlacementInstance make_instance(const CoverageTable& table, const SensorFilter& filter) {
  const SensorCatalog admitted = filter_catalog(table.catalog, filter);
  PlacementInstance inst;
  inst.universe = table.universe;
  for (const auto& s : admitted.specs()) inst.admitted.push_back(s.name);

  std::vector<std::uint32_t> position(table.block_count, UINT32_MAX);
  for (std::size_t i = 0; i < inst.universe.size(); ++i) position[inst.universe[i]] = static_cast<std::uint32_t>(i);

  Bitset any(inst.universe.size());
  for (const auto& e : table.entries) {
    if (admitted.find(e.sensor) == nullptr) continue;
    Candidate c{e.sensor, e.site, e.kappa, e.install_cost_usd, Bitset(inst.universe.size())};
    e.covered.for_each([&](std::size_t z) {
      if (position[z] != UINT32_MAX) c.covers.set(position[z]);
    });
    if (c.covers.none()) continue;
    any |= c.covers;
    inst.candidates.push_back(std::move(c));
  }
  std::vector<std::uint32_t> missing;
  for (std::size_t i = 0; i < inst.universe.size(); ++i) {
    if (!any.test(i)) missing.push_back(inst.universe[i]);
  }
  if (!missing.empty()) throw InfeasibleCoverageError(std::move(missing));
  return inst;
}

PlacementInstance make_instance(std::vector<std::uint32_t> universe,
                                const std::vector<CandidateSpec>& candidates) {
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  PlacementInstance inst;
  inst.universe = std::move(universe);
  std::unordered_map<std::uint32_t, std::size_t> position;
  for (std::size_t i = 0; i < inst.universe.size(); ++i) position[inst.universe[i]] = i;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& spec = candidates[i];
    if (!(spec.cost > 0.0)) throw Error(ErrorCode::InvalidArgument, "candidate costs must be > 0");
    Candidate c{spec.name, static_cast<std::uint32_t>(i), spec.count, spec.cost,
                Bitset(inst.universe.size())};
    for (const auto el : spec.elements) {
      const auto it = position.find(el);
      if (it == position.end()) {
        throw Error(ErrorCode::InvalidArgument, "candidate covers element outside the universe");
      }
      c.covers.set(it->second);
    }
    inst.candidates.push_back(std::move(c));
    if (std::find(inst.admitted.begin(), inst.admitted.end(), spec.name) == inst.admitted.end()) {
      inst.admitted.push_back(spec.name);
    }
  }
  std::stable_sort(inst.candidates.begin(), inst.candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.sensor != b.sensor) return a.sensor < b.sensor;
                     return a.site < b.site;
                   });
  std::sort(inst.admitted.begin(), inst.admitted.end());
  return inst;
}

std::vector<std::size_t> PlacementPlan::ids() const {
  std::vector<std::size_t> out;
  out.reserve(chosen.size());
  for (const auto& c : chosen) out.push_back(c.candidate);
  return out;
}

bool PlacementPlan::covers_everything() const {
  return std::all_of(multiplicity.begin(), multiplicity.end(),
                     [](std::uint32_t m) { return m >= 1; });
}

double canonical_cost(const PlacementInstance& instance, const std::vector<std::size_t>& ids) {
  double total = 0.0;
  for (const auto id : ids) total += instance.candidates[id].cost;
  return total;
}

bool plan_precedes(double cost_a, const std::vector<std::size_t>& ids_a, double cost_b,
                   const std::vector<std::size_t>& ids_b) {
  if (cost_a != cost_b) return cost_a < cost_b;
  if (ids_a.size() != ids_b.size()) return ids_a.size() < ids_b.size();
  return std::lexicographical_compare(ids_a.begin(), ids_a.end(), ids_b.begin(), ids_b.end());
}

PlacementPlan make_plan(const PlacementInstance& instance, std::vector<std::size_t> ids,
                        SolverStats stats) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  PlacementPlan plan;
  plan.multiplicity.assign(instance.universe.size(), 0);
  for (const auto id : ids) {
    const Candidate& c = instance.candidates[id];
    plan.chosen.push_back({id, c.sensor, c.site, c.count, c.cost});
    plan.total_units += c.count;
    c.covers.for_each([&](std::size_t u) { ++plan.multiplicity[u]; });
  }
  plan.total_cost = canonical_cost(instance, ids);
  plan.stats = std::move(stats);
  return plan;
}

namespace {

void require_feasible(const PlacementInstance& instance) {
  Bitset any(instance.universe.size());
  for (const auto& c : instance.candidates) any |= c.covers;
  if (any.count() != instance.universe.size()) {
    throw Error(ErrorCode::Infeasible, "some universe element has no covering candidate");
  }
}

}  // namespace

PlacementPlan solve_greedy(const PlacementInstance& instance) {
  require_feasible(instance);
  const std::size_t m = instance.universe.size();
  Bitset covered(m);
  std::size_t n_covered = 0;

  struct Key {
    double cost;
    std::size_t gain;
    std::size_t id;
  };
  // Lower cost per element first, then lower id; compared by cross products.
  auto worse = [](const Key& a, const Key& b) {
    const double lhs = a.cost * static_cast<double>(b.gain);
    const double rhs = b.cost * static_cast<double>(a.gain);
    if (lhs != rhs) return lhs > rhs;
    return a.id > b.id;
  };
  std::priority_queue<Key, std::vector<Key>, decltype(worse)> heap(worse);
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const std::size_t gain = instance.candidates[i].covers.count();
    if (gain > 0) heap.push({instance.candidates[i].cost, gain, i});
  }

  std::vector<std::size_t> chosen;
  while (n_covered < m && !heap.empty()) {
    Key top = heap.top();
    heap.pop();
    const std::size_t gain = instance.candidates[top.id].covers.count_andnot(covered);
    if (gain == 0) continue;
    if (gain != top.gain) {
      top.gain = gain;
      heap.push(top);
      continue;
    }
    chosen.push_back(top.id);
    covered |= instance.candidates[top.id].covers;
    n_covered += gain;
  }
  return make_plan(instance, std::move(chosen), {"greedy", 0, false, false, 0.0});
}

PlacementPlan solve_brute(const PlacementInstance& instance) {
  const std::size_t n = instance.size();
  if (n > kBruteMaxCandidates) {
    throw Error(ErrorCode::TooLarge, "brute force is limited to " +
                                         std::to_string(kBruteMaxCandidates) + " candidates");
  }
  require_feasible(instance);
  const std::size_t m = instance.universe.size();
  const std::size_t subsets = std::size_t{1} << n;

  // cost[s] adds the highest member last, so sums run in increasing id order.
  std::vector<double> cost(subsets, 0.0);
  std::vector<Bitset> small_union;
  std::vector<std::uint64_t> mask_union;
  const bool narrow = m <= 64;
  std::vector<std::uint64_t> masks(n, 0);
  if (narrow) {
    for (std::size_t i = 0; i < n; ++i) {
      if (m > 0) masks[i] = instance.candidates[i].covers.words()[0];
    }
    mask_union.assign(subsets, 0);
  }
  const std::uint64_t full = (m == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);

  bool found = false;
  std::uint64_t best = 0;
  double best_cost = 0.0;
  for (std::size_t s = 0; s < subsets; ++s) {
    bool covers = false;
    if (s != 0) {
      const int high = std::bit_width(s) - 1;
      const std::size_t rest = s ^ (std::size_t{1} << high);
      cost[s] = cost[rest] + instance.candidates[static_cast<std::size_t>(high)].cost;
      if (narrow) {
        mask_union[s] = mask_union[rest] | masks[static_cast<std::size_t>(high)];
        covers = mask_union[s] == full;
      }
    } else {
      covers = (m == 0);
    }
    if (!narrow && s != 0) {
      Bitset u(m);
      for (std::size_t i = 0; i < n; ++i) {
        if ((s >> i) & 1u) u |= instance.candidates[i].covers;
      }
      covers = u.count() == m;
    }
    if (!covers) continue;
    bool better = !found;
    if (found) {
      if (cost[s] != best_cost) {
        better = cost[s] < best_cost;
      } else if (std::popcount(s) != std::popcount(best)) {
        better = std::popcount(s) < std::popcount(best);
      } else {
        // Lowest differing member decides the lexicographic order.
        const std::uint64_t diff = s ^ best;
        better = diff != 0 && ((s & (diff & (~diff + 1))) != 0);
      }
    }
    if (better) {
      found = true;
      best = s;
      best_cost = cost[s];
    }
  }

  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < n; ++i) {
    if ((best >> i) & 1u) ids.push_back(i);
  }
  return make_plan(instance, std::move(ids), {"brute", subsets, true, false, best_cost});
}

namespace {

bool dominates(const SensorSpec& v, const SensorSpec& u, DominanceRule rule) {
  bool strict = false;
  auto at_least = [&](double better, double worse_value) {
    if (better < worse_value) return false;
    if (better > worse_value) strict = true;
    return true;
  };
  if (!at_least(v.range_km, u.range_km)) return false;
  for (std::size_t t = 0; t < v.detect.size(); ++t) {
    if (!at_least(v.detect[t], u.detect[t])) return false;
  }
  if (!at_least(-v.fov_multiplier, -u.fov_multiplier)) return false;
  double price_v = v.unit_price_usd;
  double price_u = u.unit_price_usd;
  if (rule == DominanceRule::AreaPrice) {
    price_v = v.unit_price_usd * v.fov_multiplier / (v.range_km * v.range_km);
    price_u = u.unit_price_usd * u.fov_multiplier / (u.range_km * u.range_km);
  }
  if (!at_least(-price_v, -price_u)) return false;
  // Identical specs: the lexicographically smaller name is kept.
  return strict || v.name < u.name;
}

}  // namespace

std::vector<std::string> dominated_types(const SensorCatalog& catalog, DominanceRule rule) {
  std::vector<std::string> out;
  for (const auto& u : catalog.specs()) {
    for (const auto& v : catalog.specs()) {
      if (&u == &v) continue;
      if (dominates(v, u, rule)) {
        out.push_back(u.name);
        break;
      }
    }
  }
  return out;
}

PlacementInstance dominance_filter(const PlacementInstance& instance, const SensorCatalog& catalog,
                                   DominanceRule rule) {
  std::vector<SensorSpec> admitted;
  for (const auto& name : instance.admitted) {
    if (const SensorSpec* s = catalog.find(name)) admitted.push_back(*s);
  }
  if (admitted.empty()) return instance;
  const auto removed = dominated_types(SensorCatalog(std::move(admitted)), rule);
  if (removed.empty()) return instance;

  auto is_removed = [&](const std::string& name) {
    return std::find(removed.begin(), removed.end(), name) != removed.end();
  };
  PlacementInstance out;
  out.universe = instance.universe;
  for (const auto& name : instance.admitted) {
    if (!is_removed(name)) out.admitted.push_back(name);
  }
  out.removed_types = instance.removed_types;
  out.removed_types.insert(out.removed_types.end(), removed.begin(), removed.end());
  std::sort(out.removed_types.begin(), out.removed_types.end());
  for (const auto& c : instance.candidates) {
    if (!is_removed(c.sensor)) out.candidates.push_back(c);
  }
  return out;
}

}  // namespace sand
