#pragma once

// The Delta function on a menu, its positive digraph, sign-consistent cycles,
// and the data-side characterisations built on them:
//   * reversible-only   <=> the Delta-positive digraph is acyclic;
//   * pairwise          <=> every Delta-positive arc lies on a directed cycle;
//   * irreducible       <=> pairs that are bounded in a cycle connect the menu.

#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "msc/axioms.hpp"
#include "msc/core.hpp"

namespace msc {

/// Delta_ij(M) = p(i|M) p(j|{i,j}) - p(i|{i,j}) p(j|M).
double delta(const ChoiceDataset& data, const Menu& menu, Index i, Index j);

/// Exact Delta_ij(M) from the stored decimal literals.
Rational exact_delta(const ChoiceDataset& data, const Menu& menu, Index i, Index j);

/// |Delta_ij(M)| at or below this value counts as zero.
double delta_threshold(const ChoiceDataset& data, Index i, Index j, const Tolerances& tol);

enum class Sign { negative = -1, zero = 0, positive = 1 };

struct DeltaGraph {
  Menu menu;
  /// (i, j) -> Delta_ij(M) for every ordered pair with Delta_ij(M) above threshold.
  std::map<AltPair, double> edges;
  /// Unordered pairs (a < b) whose Delta is treated as zero.
  std::set<AltPair> zero_pairs;
  /// Smallest |Delta| among non-zero pairs; infinity if there is none.
  double margin = std::numeric_limits<double>::infinity();

  bool has_edge(Index i, Index j) const { return edges.count({i, j}) != 0; }
  Sign sign(Index i, Index j) const;
  std::vector<Index> successors(Index i) const;
};

DeltaGraph build_delta_graph(const ChoiceDataset& data, const Menu& menu,
                             const Tolerances& tol = {});

struct CycleWitness {
  std::vector<AltPair> pairs;  ///< (i1,i2), (i2,i3), ..., (ik,i1)
  Sign sign = Sign::zero;
};

inline constexpr std::size_t kCycleEnumerationCap = 7;

/// Every simple cycle (length >= 2) over every subset of the menu whose arcs share one
/// Delta sign. Exhaustive; throws CapacityError when |M| > cap.
std::vector<CycleWitness> enumerate_sign_consistent_cycles(const ChoiceDataset& data,
                                                           const Menu& menu,
                                                           const Tolerances& tol = {},
                                                           std::size_t cap = kCycleEnumerationCap);

/// A directed cycle of the Delta-positive digraph, if any.
std::optional<std::vector<AltPair>> find_positive_cycle(const DeltaGraph& graph);

/// No sign-consistent cycle with non-zero sign exists (acyclic Delta-positive digraph).
bool theorem1_condition(const ChoiceDataset& data, const Menu& menu, const Tolerances& tol = {});

bool bounded_in_cycle(const DeltaGraph& graph, Index i, Index j);
bool bounded_in_cycle(const ChoiceDataset& data, const Menu& menu, AltPair pair,
                      const Tolerances& tol = {});

struct ComparabilityConditions {
  bool pairwise = true;
  bool fully = true;
  std::vector<AltPair> unbounded;  ///< oriented so that Delta > 0
};

ComparabilityConditions theorem2_condition(const ChoiceDataset& data, const Menu& menu,
                                           const Tolerances& tol = {});

struct CoveringWalk {
  bool holds = true;
  /// Closed walk over bounded pairs that visits every member (when `holds`).
  std::vector<AltPair> walk;
  /// A non-bounded pair separating the menu (when the bounded pairs do not connect it).
  std::optional<AltPair> blocking_pair;
  /// An alternative with zero probability on the menu (irreducible chains charge every state).
  std::optional<Index> null_alternative;
};

CoveringWalk theorem3_condition(const ChoiceDataset& data, const Menu& menu,
                                const Tolerances& tol = {});

struct ClassificationReport {
  Menu menu;
  bool rationalizable_always = true;
  bool reversible_only = false;
  bool pairwise = false;
  bool fully = false;
  bool irreducible = false;
  bool luce = false;

  DeltaGraph graph;
  std::optional<std::vector<AltPair>> positive_cycle;
  std::vector<AltPair> unbounded_pairs;
  PositivityResult positivity;
  IiaResult iia;
  CoveringWalk covering;
};

ClassificationReport classify(const ChoiceDataset& data, const Menu& menu,
                              const Tolerances& tol = {});

}  // namespace msc
