#pragma once

// Random weighted set-cover instances shared by unit and acceptance tests.

#include <random>
#include <vector>

#include "sand/placement.hpp"

namespace sand::testing {

// Up to max_n candidates over up to max_m elements, costs in [1, 100]. Every
// element is covered by at least one candidate. Integer costs when
// `integer_costs`, which makes ties common.
inline PlacementInstance random_instance(std::mt19937_64& rng, std::size_t max_n, std::size_t max_m,
                                         bool integer_costs) {
  const std::size_t m = 1 + rng() % max_m;
  const std::size_t n = 1 + rng() % max_n;
  std::uniform_real_distribution<double> cost(1.0, 100.0);
  std::uniform_int_distribution<int> icost(1, 100);
  const double density = 0.05 + 0.3 * std::uniform_real_distribution<double>(0, 1)(rng);
  std::vector<CandidateSpec> cands(n);
  std::vector<char> hit(m, 0);
  for (std::size_t j = 0; j < n; ++j) {
    cands[j].name = "T" + std::to_string(rng() % 3);
    cands[j].cost = integer_costs ? icost(rng) : cost(rng);
    cands[j].count = 1 + static_cast<int>(rng() % 4);
    for (std::uint32_t u = 0; u < m; ++u) {
      if (std::uniform_real_distribution<double>(0, 1)(rng) < density) {
        cands[j].elements.push_back(u);
        hit[u] = 1;
      }
    }
  }
  for (std::uint32_t u = 0; u < m; ++u) {
    if (!hit[u]) cands[rng() % n].elements.push_back(u);
  }
  for (auto& c : cands) std::sort(c.elements.begin(), c.elements.end());
  std::vector<std::uint32_t> universe(m);
  for (std::uint32_t u = 0; u < m; ++u) universe[u] = u;
  return make_instance(universe, cands);
}

}  // namespace sand::testing
