// Best-first branch and bound for weighted set cover.
//
// Root reduction removes candidates whose set is contained in a cheaper (or
// equally priced, lower-id) candidate's set. Each node is then propagated
// (elements with a single remaining coverer force that coverer), bounded by
// the best of a per-element cheapest-share bound, a greedy dual-ascent bound
// and a Lagrangian bound from subgradient steps, and split on one candidate:
// include it, or exclude it. Reduced costs of the Lagrangian fix candidates
// that cannot be in any strictly better plan. When all costs are integers the
// bound is rounded up to their common divisor. Nodes store only the decision
// and the fixings, and are rebuilt from the root path when popped.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <queue>

#include "sand/placement.hpp"

namespace sand {
namespace {

constexpr std::uint8_t kAvailable = 0;
constexpr std::uint8_t kExcluded = 1;
constexpr std::uint8_t kChosen = 2;

struct Problem {
  const PlacementInstance* instance = nullptr;
  std::size_t m = 0;
  std::vector<std::size_t> original;  // local id -> instance id, increasing
  std::vector<const Bitset*> sets;
  std::vector<double> cost;
  std::vector<std::vector<std::uint32_t>> coverers;  // per element, increasing local id
  double grain = 0.0;  // common divisor of all costs, 0 if they are not integers
};

double cost_grain(const std::vector<double>& cost) {
  std::uint64_t g = 0;
  for (const double c : cost) {
    if (!(c >= 1.0 && c < 9.0e15) || c != std::floor(c)) return 0.0;
    g = std::gcd(g, static_cast<std::uint64_t>(c));
  }
  return static_cast<double>(g);
}

std::vector<std::vector<std::uint32_t>> build_coverers(std::size_t m,
                                                       const std::vector<const Bitset*>& sets) {
  std::vector<std::vector<std::uint32_t>> out(m);
  for (std::size_t j = 0; j < sets.size(); ++j) {
    sets[j]->for_each([&](std::size_t u) { out[u].push_back(static_cast<std::uint32_t>(j)); });
  }
  return out;
}

Problem reduce(const PlacementInstance& instance) {
  const std::size_t n = instance.size();
  const std::size_t m = instance.universe.size();
  std::vector<const Bitset*> all(n);
  std::vector<std::size_t> size(n);
  for (std::size_t j = 0; j < n; ++j) {
    all[j] = &instance.candidates[j].covers;
    size[j] = all[j]->count();
  }
  const auto coverers = build_coverers(m, all);

  // j is dropped if some k covers a superset at lower (cost, id).
  std::vector<char> dropped(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (size[j] == 0) {
      dropped[j] = 1;
      continue;
    }
    std::size_t rarest = m;
    all[j]->for_each([&](std::size_t u) {
      if (rarest == m || coverers[u].size() < coverers[rarest].size()) rarest = u;
    });
    const double cj = instance.candidates[j].cost;
    for (const std::uint32_t k : coverers[rarest]) {
      if (k == j || size[k] < size[j]) continue;
      const double ck = instance.candidates[k].cost;
      if (!(ck < cj || (ck == cj && k < j))) continue;
      if (all[j]->is_subset_of(*all[k])) {
        dropped[j] = 1;
        break;
      }
    }
  }

  Problem p;
  p.instance = &instance;
  p.m = m;
  for (std::size_t j = 0; j < n; ++j) {
    if (dropped[j]) continue;
    p.original.push_back(j);
    p.sets.push_back(all[j]);
    p.cost.push_back(instance.candidates[j].cost);
  }
  p.coverers = build_coverers(m, p.sets);
  p.grain = cost_grain(p.cost);
  return p;
}

struct Node {
  std::int32_t parent = -1;
  std::int32_t decision = 0;  // +(j+1) include, -(j+1) exclude, 0 root
  std::uint32_t forced_begin = 0;
  std::uint32_t forced_count = 0;
  std::uint32_t depth = 0;
  std::uint64_t mult_begin = 0;  // multipliers saved after evaluation
  std::uint32_t mult_count = 0;
};

struct SavedMultiplier {
  std::uint32_t element;
  float value;
};

// Cap on saved warm-start multipliers, in entries.
constexpr std::size_t kMaxSavedMultipliers = std::size_t{1} << 26;

struct OpenNode {
  double bound;
  std::uint32_t depth;
  std::uint64_t seq;
  std::int32_t node;
};

struct OpenOrder {
  bool operator()(const OpenNode& a, const OpenNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.seq > b.seq;
  }
};

struct State {
  Bitset covered;
  std::vector<std::uint8_t> status;
  std::vector<std::uint32_t> chosen;
  double cost = 0.0;
  std::size_t n_covered = 0;
};

enum class Outcome { Infeasible, Complete, Open };

struct Evaluation {
  Outcome outcome = Outcome::Open;
  double bound = 0.0;  // lower bound on total cost below this node
  std::uint32_t branch = 0;
};

class BranchAndBound {
 public:
  BranchAndBound(const Problem& p, const SolverOptions& options)
      : p_(p), options_(options), n_(p.sets.size()) {
    state_.covered = Bitset(p.m);
    state_.status.assign(n_, kAvailable);
    gain_.assign(n_, 0);
    slack_.assign(n_, 0.0);
    local_.assign(n_, 0);
    pos_.assign(p.m, 0);
  }

  PlacementPlan run() {
    const auto start = std::chrono::steady_clock::now();
    seed_incumbent();

    nodes_.push_back(Node{});
    std::priority_queue<OpenNode, std::vector<OpenNode>, OpenOrder> open;
    open.push({0.0, 0, seq_++, 0});
    bool exhausted = false;
    double root_bound = 0.0;

    while (!open.empty()) {
      if (explored_ >= options_.node_budget || open.size() > options_.max_open_nodes) {
        exhausted = true;
        break;
      }
      if (options_.time_limit_s > 0.0) {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        if (elapsed.count() > options_.time_limit_s) {
          exhausted = true;
          break;
        }
      }
      const OpenNode top = open.top();
      open.pop();
      if (has_incumbent_ && top.bound > incumbent_cost_ + tolerance()) continue;
      ++explored_;

      rebuild(top.node);
      const Evaluation ev = evaluate(top.node);
      if (top.node == 0) root_bound = ev.bound;
      if (ev.outcome == Outcome::Infeasible) continue;
      if (ev.outcome == Outcome::Complete) {
        offer(state_.chosen);
        continue;
      }
      if (prunable(ev.bound, state_.chosen.size())) continue;
      if (explored_ <= 256 || explored_ % 64 == 0) {
        seeds_.clear();
        for (std::size_t t = 0; t < touched_.size(); ++t) {
          if (rc_[t] < 0.0 && state_.status[touched_[t]] == kAvailable) seeds_.push_back(touched_[t]);
        }
        complete_greedily(seeds_);
        seeds_.clear();
      }

      const std::uint32_t depth = nodes_[static_cast<std::size_t>(top.node)].depth + 1;
      const auto j = static_cast<std::int32_t>(ev.branch);
      nodes_.push_back({top.node, j + 1, 0, 0, depth});
      open.push({ev.bound, depth, seq_++, static_cast<std::int32_t>(nodes_.size() - 1)});
      nodes_.push_back({top.node, -(j + 1), 0, 0, depth});
      open.push({ev.bound, depth, seq_++, static_cast<std::int32_t>(nodes_.size() - 1)});
    }

    SolverStats stats{"exact", explored_, !exhausted, exhausted, 0.0};
    double global = incumbent_cost_;
    if (exhausted && !open.empty()) global = std::min(global, open.top().bound);
    stats.lower_bound = exhausted ? std::max(root_bound, std::min(global, incumbent_cost_)) : incumbent_cost_;
    return make_plan(*p_.instance, incumbent_, std::move(stats));
  }

 private:
  double tolerance() const { return 1e-9 * std::max(1.0, std::abs(incumbent_cost_)); }

  // Below-node solutions have at least chosen + 1 members.
  bool prunable(double bound, std::size_t chosen) const {
    if (!has_incumbent_) return false;
    if (bound > incumbent_cost_ + tolerance()) return true;
    return bound >= incumbent_cost_ - tolerance() && chosen + 1 > incumbent_.size();
  }

  void offer(const std::vector<std::uint32_t>& local) {
    std::vector<std::size_t> ids;
    ids.reserve(local.size());
    for (const auto j : local) ids.push_back(p_.original[j]);
    std::sort(ids.begin(), ids.end());
    offer_original(std::move(ids));
  }

  void offer_original(std::vector<std::size_t> ids) {
    const double cost = canonical_cost(*p_.instance, ids);
    if (!has_incumbent_ || plan_precedes(cost, ids, incumbent_cost_, incumbent_)) {
      incumbent_ = std::move(ids);
      incumbent_cost_ = cost;
      has_incumbent_ = true;
    }
  }

  // Drops members, most expensive first, while coverage is kept.
  std::vector<std::size_t> without_redundant(std::vector<std::size_t> ids) const {
    const auto& inst = *p_.instance;
    std::vector<std::uint32_t> mult(p_.m, 0);
    for (const auto id : ids) inst.candidates[id].covers.for_each([&](std::size_t u) { ++mult[u]; });
    std::vector<std::size_t> order = ids;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (inst.candidates[a].cost != inst.candidates[b].cost) {
        return inst.candidates[a].cost > inst.candidates[b].cost;
      }
      return a > b;
    });
    std::vector<char> keep_flag(inst.size(), 0);
    for (const auto id : ids) keep_flag[id] = 1;
    for (const auto id : order) {
      bool needed = false;
      inst.candidates[id].covers.for_each([&](std::size_t u) {
        if (mult[u] < 2) needed = true;
      });
      if (needed) continue;
      keep_flag[id] = 0;
      inst.candidates[id].covers.for_each([&](std::size_t u) { --mult[u]; });
    }
    std::vector<std::size_t> out;
    for (const auto id : ids) {
      if (keep_flag[id]) out.push_back(id);
    }
    return out;
  }

  void seed_incumbent() {
    const PlacementPlan greedy = solve_greedy(*p_.instance);
    offer_original(greedy.ids());
    offer_original(without_redundant(greedy.ids()));
  }

  void include(std::uint32_t j) {
    if (state_.status[j] == kChosen) return;
    state_.status[j] = kChosen;
    state_.chosen.push_back(j);
    state_.cost += p_.cost[j];
    state_.covered |= *p_.sets[j];
  }

  void apply(std::int32_t decision) {
    if (decision > 0) {
      include(static_cast<std::uint32_t>(decision - 1));
    } else if (decision < 0) {
      state_.status[static_cast<std::size_t>(-decision - 1)] = kExcluded;
    }
  }

  void rebuild(std::int32_t node) {
    std::fill(state_.covered.words().begin(), state_.covered.words().end(), 0);
    std::fill(state_.status.begin(), state_.status.end(), kAvailable);
    state_.chosen.clear();
    state_.cost = 0.0;
    const Node& leaf = nodes_[static_cast<std::size_t>(node)];
    apply(leaf.decision);
    for (std::int32_t a = leaf.parent; a >= 0; a = nodes_[static_cast<std::size_t>(a)].parent) {
      const Node& anc = nodes_[static_cast<std::size_t>(a)];
      for (std::uint32_t f = 0; f < anc.forced_count; ++f) apply(forced_[anc.forced_begin + f]);
      apply(anc.decision);
    }
  }

  template <class Fn>
  void for_each_uncovered(Fn&& fn) const {
    const auto words = state_.covered.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t free_bits = ~words[w];
      if (w + 1 == words.size() && p_.m % 64 != 0) free_bits &= (std::uint64_t{1} << (p_.m % 64)) - 1;
      while (free_bits != 0) {
        const int bit = std::countr_zero(free_bits);
        fn(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(bit)));
        free_bits &= free_bits - 1;
      }
    }
  }

  // Single-coverer propagation to a fixed point. False if some element has
  // no remaining coverer.
  bool propagate(std::vector<std::int32_t>& fixed) {
    for (;;) {
      bool infeasible = false;
      forced_scratch_.clear();
      for_each_uncovered([&](std::uint32_t u) {
        if (infeasible) return;
        int deg = 0;
        std::uint32_t last = 0;
        for (const auto j : p_.coverers[u]) {
          if (state_.status[j] != kAvailable) continue;
          last = j;
          if (++deg > 1) break;
        }
        if (deg == 0) infeasible = true;
        if (deg == 1) forced_scratch_.push_back(last);
      });
      if (infeasible) return false;
      if (forced_scratch_.empty()) return true;
      std::sort(forced_scratch_.begin(), forced_scratch_.end());
      forced_scratch_.erase(std::unique(forced_scratch_.begin(), forced_scratch_.end()),
                            forced_scratch_.end());
      for (const auto j : forced_scratch_) {
        if (state_.status[j] == kAvailable) {
          include(j);
          fixed.push_back(static_cast<std::int32_t>(j) + 1);
        }
      }
    }
  }

  double round_up(double total) const {
    if (p_.grain <= 0.0) return total;
    return std::ceil(total / p_.grain - 1e-7) * p_.grain;
  }

  // Subgradient ascent on the Lagrangian of the uncovered elements, started
  // from the root multipliers. Returns the best bound on the remaining cost and
  // leaves the matching reduced costs in rc_.
  double lagrangian(std::size_t iterations, double lambda, bool heuristic) {
    const std::size_t nu = uncov_ids_.size();
    const std::size_t nt = touched_.size();
    mult_.resize(nu);
    best_mult_.resize(nu);
    rc_.resize(nt);
    hits_.resize(nu);
    for (std::size_t i = 0; i < nu; ++i) {
      const double r = root_mult_.empty() ? 0.0 : root_mult_[uncov_ids_[i]];
      mult_[i] = r > 0.0 ? r : dual_y_[i];
    }
    if (warm_from_ >= 0) {
      const Node& from = nodes_[static_cast<std::size_t>(warm_from_)];
      for (std::size_t i = 0; i < nu; ++i) pos_[uncov_ids_[i]] = static_cast<std::uint32_t>(i + 1);
      for (std::uint32_t k = 0; k < from.mult_count; ++k) {
        const SavedMultiplier& sm = saved_[from.mult_begin + k];
        if (pos_[sm.element] != 0) mult_[pos_[sm.element] - 1] = sm.value;
      }
      for (std::size_t i = 0; i < nu; ++i) pos_[uncov_ids_[i]] = 0;
    }
    const double target = has_incumbent_ ? incumbent_cost_ - state_.cost : INFINITY;
    double best = -INFINITY;
    std::size_t stall = 0;
    const std::size_t stall_limit = std::max<std::size_t>(5, iterations / 40);
    for (std::size_t it = 0; it < iterations; ++it) {
      double value = 0.0;
      for (std::size_t i = 0; i < nu; ++i) value += mult_[i];
      std::fill(hits_.begin(), hits_.end(), 0);
      for (std::size_t t = 0; t < nt; ++t) {
        double r = p_.cost[touched_[t]];
        for (std::uint32_t k = col_start_[t]; k < col_start_[t + 1]; ++k) r -= mult_[col_rows_[k]];
        if (r < 0.0) {
          value += r;
          for (std::uint32_t k = col_start_[t]; k < col_start_[t + 1]; ++k) ++hits_[col_rows_[k]];
          if (heuristic) seeds_.push_back(touched_[t]);
        }
      }
      if (heuristic) {
        complete_greedily(seeds_);
        seeds_.clear();
      }
      if (it == 0 || value > best + 1e-12 * std::max(1.0, std::abs(best))) {
        best = value;
        best_mult_ = mult_;
        stall = 0;
      } else if (++stall >= stall_limit) {
        lambda *= 0.5;
        stall = 0;
      }
      if (has_incumbent_ && round_up(state_.cost + best) > incumbent_cost_ + tolerance()) break;
      double norm = 0.0;
      for (std::size_t i = 0; i < nu; ++i) {
        const double g = 1.0 - static_cast<double>(hits_[i]);
        if (g > 0.0 || mult_[i] > 0.0) norm += g * g;
      }
      if (norm == 0.0) break;  // the relaxed solution is an exact cover
      const double aim = std::min(target, 1.02 * std::abs(best) + 1.0);
      const double gap = std::max(aim - value, 1e-6 * std::abs(aim));
      const double step = lambda * gap / norm;
      for (std::size_t i = 0; i < nu; ++i) {
        const double g = 1.0 - static_cast<double>(hits_[i]);
        mult_[i] = std::max(0.0, mult_[i] + step * g);
      }
      if (lambda < 1e-6) break;
    }
    for (std::size_t t = 0; t < nt; ++t) {
      double r = p_.cost[touched_[t]];
      for (std::uint32_t k = col_start_[t]; k < col_start_[t + 1]; ++k) r -= best_mult_[col_rows_[k]];
      rc_[t] = r;
    }
    return best;
  }

  Evaluation evaluate(std::int32_t node) {
    Evaluation ev;
    warm_from_ = nodes_[static_cast<std::size_t>(node)].parent;
    std::vector<std::int32_t> fixed;
    auto record = [&] {
      Node& self = nodes_[static_cast<std::size_t>(node)];
      self.forced_begin = static_cast<std::uint32_t>(forced_.size());
      self.forced_count = static_cast<std::uint32_t>(fixed.size());
      forced_.insert(forced_.end(), fixed.begin(), fixed.end());
    };

    for (int round = 0;; ++round) {
      if (!propagate(fixed)) {
        ev.outcome = Outcome::Infeasible;
        return ev;
      }

      // Degrees and per-candidate gains over the uncovered elements.
      uncovered_.clear();
      uncov_ids_.clear();
      touched_.clear();
      for_each_uncovered([&](std::uint32_t u) {
        std::uint32_t deg = 0;
        for (const auto j : p_.coverers[u]) {
          if (state_.status[j] != kAvailable) continue;
          if (gain_[j]++ == 0) touched_.push_back(j);
          ++deg;
        }
        uncovered_.push_back({deg, static_cast<std::uint32_t>(uncov_ids_.size())});
        uncov_ids_.push_back(u);
      });
      if (uncovered_.empty()) {
        record();
        ev.outcome = Outcome::Complete;
        ev.bound = state_.cost;
        return ev;
      }

      // Column lists over local element positions.
      const std::size_t nt = touched_.size();
      col_start_.assign(nt + 1, 0);
      for (std::size_t t = 0; t < nt; ++t) {
        local_[touched_[t]] = static_cast<std::uint32_t>(t);
        col_start_[t + 1] = col_start_[t] + gain_[touched_[t]];
      }
      col_rows_.resize(col_start_[nt]);
      fill_.assign(col_start_.begin(), col_start_.end() - 1);
      for (std::size_t i = 0; i < uncov_ids_.size(); ++i) {
        for (const auto j : p_.coverers[uncov_ids_[i]]) {
          if (state_.status[j] == kAvailable) col_rows_[fill_[local_[j]]++] = static_cast<std::uint32_t>(i);
        }
      }

      // Cheapest share bound.
      double share = 0.0;
      for (const auto& [deg, i] : uncovered_) {
        double best = INFINITY;
        for (const auto j : p_.coverers[uncov_ids_[i]]) {
          if (state_.status[j] != kAvailable) continue;
          best = std::min(best, p_.cost[j] / static_cast<double>(gain_[j]));
        }
        share += best;
      }

      // Dual ascent, most constrained elements first.
      std::sort(uncovered_.begin(), uncovered_.end());
      for (const auto j : touched_) slack_[j] = p_.cost[j];
      dual_y_.assign(uncov_ids_.size(), 0.0);
      double dual = 0.0;
      for (const auto& [deg, i] : uncovered_) {
        double y = INFINITY;
        for (const auto j : p_.coverers[uncov_ids_[i]]) {
          if (state_.status[j] == kAvailable) y = std::min(y, slack_[j]);
        }
        if (!(y > 0.0)) continue;
        dual += y;
        dual_y_[i] = y;
        for (const auto j : p_.coverers[uncov_ids_[i]]) {
          if (state_.status[j] == kAvailable) slack_[j] = std::max(0.0, slack_[j] - y);
        }
      }

      const bool root = node == 0 && round == 0;
      const std::size_t nnz = col_rows_.size();
      std::size_t iterations = root ? 4000 : 15;
      if (nnz > 200'000) iterations = root ? 1000 : 8;
      const double lag = lagrangian(iterations, root ? 2.0 : 0.5, root);
      if (root) {
        root_mult_.assign(p_.m, 0.0);
        for (std::size_t i = 0; i < uncov_ids_.size(); ++i) root_mult_[uncov_ids_[i]] = best_mult_[i];
      }
      ev.bound = round_up(state_.cost + std::max({share, dual, lag}));

      // Reduced-cost fixing against the incumbent.
      std::size_t n_fixed = 0;
      if (has_incumbent_ && ev.bound <= incumbent_cost_ + tolerance()) {
        const double limit = incumbent_cost_ + tolerance();
        for (std::size_t t = 0; t < nt; ++t) {
          const std::uint32_t j = touched_[t];
          if (rc_[t] >= 0.0 && round_up(state_.cost + lag + rc_[t]) > limit) {
            state_.status[j] = kExcluded;
            fixed.push_back(-static_cast<std::int32_t>(j) - 1);
            ++n_fixed;
          } else if (rc_[t] < 0.0 && round_up(state_.cost + lag - rc_[t]) > limit) {
            include(j);
            fixed.push_back(static_cast<std::int32_t>(j) + 1);
            ++n_fixed;
          }
        }
      }
      if (n_fixed == 0 || round >= 3) break;
      for (const auto j : touched_) gain_[j] = 0;
    }
    record();
    if (saved_.size() + uncov_ids_.size() <= kMaxSavedMultipliers) {
      Node& self = nodes_[static_cast<std::size_t>(node)];
      self.mult_begin = saved_.size();
      self.mult_count = static_cast<std::uint32_t>(uncov_ids_.size());
      for (std::size_t i = 0; i < uncov_ids_.size(); ++i) {
        saved_.push_back({uncov_ids_[i], static_cast<float>(best_mult_[i])});
      }
    }

    // Branch on the coverer of the most constrained element with the lowest
    // reduced cost.
    const std::uint32_t u = uncov_ids_[uncovered_.front().second];
    std::uint32_t pick = 0;
    bool have = false;
    for (const auto j : p_.coverers[u]) {
      if (state_.status[j] != kAvailable) continue;
      if (!have) {
        pick = j;
        have = true;
        continue;
      }
      const double rj = rc_[local_[j]];
      const double rp = rc_[local_[pick]];
      if (rj < rp || (rj == rp && j < pick)) pick = j;
    }
    ev.branch = pick;
    ev.outcome = have ? Outcome::Open : Outcome::Infeasible;
    for (const auto j : touched_) gain_[j] = 0;
    return ev;
  }

  // Lazy greedy completion of the current node state plus `seeds`, offered
  // as an incumbent.
  void complete_greedily(const std::vector<std::uint32_t>& seeds = {}) {
    Bitset covered = state_.covered;
    std::vector<std::size_t> ids;
    for (const auto j : state_.chosen) ids.push_back(p_.original[j]);
    for (const auto j : seeds) {
      covered |= *p_.sets[j];
      ids.push_back(p_.original[j]);
    }
    std::size_t n_covered = covered.count();

    struct Key {
      double cost;
      std::size_t gain;
      std::uint32_t j;
    };
    auto worse = [](const Key& a, const Key& b) {
      const double lhs = a.cost * static_cast<double>(b.gain);
      const double rhs = b.cost * static_cast<double>(a.gain);
      if (lhs != rhs) return lhs > rhs;
      return a.j > b.j;
    };
    std::priority_queue<Key, std::vector<Key>, decltype(worse)> heap(worse);
    for (std::size_t k = 0; k < touched_.size(); ++k) {
      const std::uint32_t j = touched_[k];
      heap.push({p_.cost[j], p_.sets[j]->count_andnot(covered), j});
    }
    while (n_covered < p_.m && !heap.empty()) {
      Key top = heap.top();
      heap.pop();
      const std::size_t g = p_.sets[top.j]->count_andnot(covered);
      if (g == 0) continue;
      if (g != top.gain) {
        top.gain = g;
        heap.push(top);
        continue;
      }
      covered |= *p_.sets[top.j];
      n_covered += g;
      ids.push_back(p_.original[top.j]);
    }
    if (n_covered < p_.m) return;
    std::sort(ids.begin(), ids.end());
    offer_original(without_redundant(std::move(ids)));
  }

  const Problem& p_;
  const SolverOptions& options_;
  std::size_t n_;
  State state_;
  std::vector<Node> nodes_;
  std::vector<std::int32_t> forced_;
  std::vector<std::uint32_t> forced_scratch_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> uncovered_;
  std::vector<std::uint32_t> touched_;
  std::vector<std::uint32_t> gain_;
  std::vector<double> slack_;
  std::vector<std::uint32_t> uncov_ids_;
  std::vector<std::uint32_t> local_;
  std::vector<std::uint32_t> col_start_, col_rows_, fill_;
  std::vector<double> dual_y_, mult_, best_mult_, rc_, root_mult_;
  std::vector<std::uint32_t> hits_, seeds_, pos_;
  std::vector<SavedMultiplier> saved_;
  std::int32_t warm_from_ = -1;
  std::vector<std::size_t> incumbent_;
  double incumbent_cost_ = 0.0;
  bool has_incumbent_ = false;
  std::uint64_t explored_ = 0;
  std::uint64_t seq_ = 0;
};

}  // namespace

PlacementPlan solve_exact(const PlacementInstance& instance, const SolverOptions& options) {
  {
    Bitset any(instance.universe.size());
    for (const auto& c : instance.candidates) any |= c.covers;
    if (any.count() != instance.universe.size()) {
      throw Error(ErrorCode::Infeasible, "some universe element has no covering candidate");
    }
  }
  if (instance.universe.empty()) return make_plan(instance, {}, {"exact", 0, true, false, 0.0});
  const Problem problem = reduce(instance);
  BranchAndBound bnb(problem, options);
  return bnb.run();
}

}  // namespace sand
