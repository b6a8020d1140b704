#include "msc/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace msc {

namespace {

void check_pair(const Menu& menu, Index i, Index j) {
  if (i == j) throw LookupError("Delta needs two distinct alternatives");
  if (!menu.contains(i) || !menu.contains(j)) {
    throw LookupError("Delta needs both alternatives to be members of the menu");
  }
}

Sign sign_of(double d, double threshold) {
  if (d > threshold) return Sign::positive;
  if (d < -threshold) return Sign::negative;
  return Sign::zero;
}

bool reachable(const DeltaGraph& graph, Index from, Index to) {
  std::vector<Index> stack{from};
  std::set<Index> seen{from};
  while (!stack.empty()) {
    Index v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (Index w : graph.successors(v)) {
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return false;
}

}  // namespace

double delta(const ChoiceDataset& data, const Menu& menu, Index i, Index j) {
  check_pair(menu, i, j);
  Menu binary = Menu::pair(i, j);
  return data.prob(i, menu) * data.prob(j, binary) - data.prob(i, binary) * data.prob(j, menu);
}

Rational exact_delta(const ChoiceDataset& data, const Menu& menu, Index i, Index j) {
  check_pair(menu, i, j);
  Menu binary = Menu::pair(i, j);
  return data.exact_prob(i, menu) * data.exact_prob(j, binary) -
         data.exact_prob(i, binary) * data.exact_prob(j, menu);
}

double delta_threshold(const ChoiceDataset& data, Index i, Index j, const Tolerances& tol) {
  Menu binary = Menu::pair(i, j);
  return tol.delta * std::max(data.prob(i, binary), data.prob(j, binary));
}

Sign DeltaGraph::sign(Index i, Index j) const {
  if (has_edge(i, j)) return Sign::positive;
  if (has_edge(j, i)) return Sign::negative;
  return Sign::zero;
}

std::vector<Index> DeltaGraph::successors(Index i) const {
  std::vector<Index> out;
  for (auto it = edges.lower_bound({i, 0}); it != edges.end() && it->first.first == i; ++it) {
    out.push_back(it->first.second);
  }
  return out;
}

DeltaGraph build_delta_graph(const ChoiceDataset& data, const Menu& menu, const Tolerances& tol) {
  data.entry(menu);
  DeltaGraph graph;
  graph.menu = menu;
  for (auto [a, b] : menu.pairs()) {
    double d = delta(data, menu, a, b);
    switch (sign_of(d, delta_threshold(data, a, b, tol))) {
      case Sign::positive: graph.edges[{a, b}] = d; break;
      case Sign::negative: graph.edges[{b, a}] = -d; break;
      case Sign::zero: graph.zero_pairs.insert({a, b}); continue;
    }
    graph.margin = std::min(graph.margin, std::abs(d));
  }
  return graph;
}

std::vector<CycleWitness> enumerate_sign_consistent_cycles(const ChoiceDataset& data,
                                                           const Menu& menu,
                                                           const Tolerances& tol,
                                                           std::size_t cap) {
  if (menu.size() > cap) {
    throw CapacityError("cycle enumeration is capped at " + std::to_string(cap) + " alternatives");
  }
  data.entry(menu);
  const std::size_t n = menu.size();
  // Sign table straight from the Delta formula, independent of the graph.
  std::vector<std::vector<Sign>> sign(n, std::vector<Sign>(n, Sign::zero));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      sign[a][b] = sign_of(delta(data, menu, menu[a], menu[b]),
                           delta_threshold(data, menu[a], menu[b], tol));
    }
  }

  std::vector<CycleWitness> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1u << k)) subset.push_back(k);
    }
    if (subset.size() < 2) continue;
    // Fix the first element; permuting the rest yields each directed cycle once.
    std::vector<std::size_t> rest(subset.begin() + 1, subset.end());
    do {
      std::vector<std::size_t> order{subset.front()};
      order.insert(order.end(), rest.begin(), rest.end());
      Sign common = sign[order.back()][order.front()];
      bool consistent = true;
      for (std::size_t k = 0; k + 1 < order.size() && consistent; ++k) {
        consistent = sign[order[k]][order[k + 1]] == common;
      }
      if (!consistent) continue;
      CycleWitness witness;
      witness.sign = common;
      for (std::size_t k = 0; k < order.size(); ++k) {
        witness.pairs.emplace_back(menu[order[k]], menu[order[(k + 1) % order.size()]]);
      }
      out.push_back(std::move(witness));
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  return out;
}

std::optional<std::vector<AltPair>> find_positive_cycle(const DeltaGraph& graph) {
  enum class Mark { fresh, active, done };
  std::map<Index, Mark> mark;
  for (Index v : graph.menu) mark[v] = Mark::fresh;
  std::vector<Index> path;
  std::optional<std::vector<AltPair>> cycle;

  auto visit = [&](auto&& self, Index v) -> void {
    mark[v] = Mark::active;
    path.push_back(v);
    for (Index w : graph.successors(v)) {
      if (cycle) return;
      if (mark[w] == Mark::active) {
        auto start = std::find(path.begin(), path.end(), w);
        std::vector<AltPair> pairs;
        for (auto it = start; it != path.end(); ++it) {
          auto next = std::next(it);
          pairs.emplace_back(*it, next == path.end() ? w : *next);
        }
        cycle = std::move(pairs);
        return;
      }
      if (mark[w] == Mark::fresh) self(self, w);
    }
    path.pop_back();
    mark[v] = Mark::done;
  };
  for (Index v : graph.menu) {
    if (cycle) break;
    if (mark[v] == Mark::fresh) visit(visit, v);
  }
  return cycle;
}

bool theorem1_condition(const ChoiceDataset& data, const Menu& menu, const Tolerances& tol) {
  return !find_positive_cycle(build_delta_graph(data, menu, tol)).has_value();
}

bool bounded_in_cycle(const DeltaGraph& graph, Index i, Index j) {
  switch (graph.sign(i, j)) {
    case Sign::positive: return reachable(graph, j, i);
    case Sign::negative: return reachable(graph, i, j);
    case Sign::zero: return true;
  }
  return true;
}

bool bounded_in_cycle(const ChoiceDataset& data, const Menu& menu, AltPair pair,
                      const Tolerances& tol) {
  check_pair(menu, pair.first, pair.second);
  return bounded_in_cycle(build_delta_graph(data, menu, tol), pair.first, pair.second);
}

ComparabilityConditions theorem2_condition(const ChoiceDataset& data, const Menu& menu,
                                           const Tolerances& tol) {
  DeltaGraph graph = build_delta_graph(data, menu, tol);
  ComparabilityConditions out;
  for (const auto& [pair, value] : graph.edges) {
    if (!bounded_in_cycle(graph, pair.first, pair.second)) out.unbounded.push_back(pair);
  }
  out.pairwise = out.unbounded.empty();
  out.fully = out.pairwise && check_positivity(data, menu, tol).positive;
  return out;
}

CoveringWalk theorem3_condition(const ChoiceDataset& data, const Menu& menu, const Tolerances& tol) {
  DeltaGraph graph = build_delta_graph(data, menu, tol);
  CoveringWalk out;
  if (menu.size() < 2) return out;

  for (Index alt : menu) {
    if (!(data.prob(alt, menu) > tol.delta)) {
      out.holds = false;
      out.null_alternative = alt;
      return out;
    }
  }

  auto ok = [&](Index a, Index b) { return bounded_in_cycle(graph, a, b); };
  // Depth-first spanning tree of the OK graph; the doubled tree is the covering walk.
  std::set<Index> seen{menu[0]};
  auto grow = [&](auto&& self, Index v) -> void {
    for (Index w : menu) {
      if (seen.count(w) || !ok(v, w)) continue;
      seen.insert(w);
      out.walk.emplace_back(v, w);
      self(self, w);
      out.walk.emplace_back(w, v);
    }
  };
  grow(grow, menu[0]);

  if (seen.size() != menu.size()) {
    out.holds = false;
    out.walk.clear();
    for (Index a : menu) {
      if (!seen.count(a)) continue;
      for (Index b : menu) {
        if (seen.count(b)) continue;
        AltPair oriented = graph.has_edge(a, b) ? AltPair{a, b} : AltPair{b, a};
        out.blocking_pair = oriented;
        return out;
      }
    }
  }
  return out;
}

ClassificationReport classify(const ChoiceDataset& data, const Menu& menu, const Tolerances& tol) {
  ClassificationReport report;
  report.menu = menu;
  report.graph = build_delta_graph(data, menu, tol);
  report.positive_cycle = find_positive_cycle(report.graph);
  report.reversible_only = !report.positive_cycle.has_value();

  for (const auto& [pair, value] : report.graph.edges) {
    if (!bounded_in_cycle(report.graph, pair.first, pair.second)) {
      report.unbounded_pairs.push_back(pair);
    }
  }
  report.positivity = check_positivity(data, menu, tol);
  report.pairwise = report.unbounded_pairs.empty();
  report.fully = report.pairwise && report.positivity.positive;
  report.covering = theorem3_condition(data, menu, tol);
  report.irreducible = report.covering.holds;
  report.iia = check_iia(data, menu, tol);
  report.luce = report.positivity.positive && report.iia.holds;
  return report;
}

}  // namespace msc
