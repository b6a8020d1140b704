#pragma once

// Domain types shared by every module: alternatives, menus, choice data, and
// Markov stochastic choice (MSC) models.
//
// Alternatives are addressed by their canonical universe index. Matrices and
// distributions attached to a menu are indexed by *position* within the menu,
// i.e. the rank of the alternative among the menu's sorted members.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "msc/errors.hpp"
#include "msc/rational.hpp"

namespace msc {

using Index = std::size_t;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Ordered pair of alternatives (universe indices).
using AltPair = std::pair<Index, Index>;

struct Tolerances {
  double sum = 1e-12;    ///< simplex-sum tolerance
  double tol = 1e-9;     ///< consistency / equality tolerance
  double delta = 1e-12;  ///< zero threshold for Delta signs, relative to the pair's binary scale

  /// Throws DomainError unless all values are positive and delta <= tol.
  void check() const;
};

class Universe {
 public:
  Universe() = default;
  explicit Universe(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Index alt) const;
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<Index> find(std::string_view name) const;
  Index index(std::string_view name) const;  // throws LookupError

  bool operator==(const Universe& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Index, std::less<>> lookup_;
};

/// Non-empty set of alternatives, stored sorted by universe index.
class Menu {
 public:
  Menu() = default;
  explicit Menu(std::vector<Index> members);
  Menu(std::initializer_list<Index> members) : Menu(std::vector<Index>(members)) {}

  static Menu pair(Index a, Index b) { return Menu({a, b}); }

  std::span<const Index> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  Index operator[](std::size_t position) const { return members_[position]; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  bool contains(Index alt) const;
  std::optional<std::size_t> find(Index alt) const;
  std::size_t position(Index alt) const;  // throws LookupError
  bool is_subset_of(const Menu& other) const;
  bool is_binary() const noexcept { return members_.size() == 2; }

  /// All unordered pairs {a, b} with a < b, lexicographic.
  std::vector<AltPair> pairs() const;

  auto operator<=>(const Menu&) const = default;

 private:
  std::vector<Index> members_;
};

std::string to_string(const Menu& menu, const Universe& universe);

/// Parses "i,j,k" (alternative names) into a menu of `universe`.
Menu parse_menu(std::string_view csv, const Universe& universe);

/// Stochastic choice function restricted to the stored menus.
class ChoiceDataset {
 public:
  struct Entry {
    Vector probabilities;
    /// Decimal literals the probabilities were read from; empty when built from doubles.
    std::vector<std::string> decimals;
  };

  ChoiceDataset() = default;
  explicit ChoiceDataset(Universe universe) : universe_(std::move(universe)) {}

  const Universe& universe() const noexcept { return universe_; }

  /// Stores p(.|menu). Only shapes are checked here; content goes through validate_dataset.
  void set(const Menu& menu, Vector probabilities, std::vector<std::string> decimals = {});
  /// Stores p(.|menu) from decimal literals (exact values are kept for rational mode).
  void set_decimal(const Menu& menu, std::vector<std::string> decimals);

  bool contains(const Menu& menu) const { return entries_.count(menu) != 0; }
  const Vector& choice(const Menu& menu) const;  // throws LookupError
  const Entry& entry(const Menu& menu) const;

  /// p(alt | menu); zero for alternatives outside the menu.
  double prob(Index alt, const Menu& menu) const;
  /// Exact p(alt | menu): from the stored decimal literal if any, else the exact double.
  Rational exact_prob(Index alt, const Menu& menu) const;

  const std::map<Menu, Entry>& entries() const noexcept { return entries_; }

 private:
  Universe universe_;
  std::map<Menu, Entry> entries_;
};

/// Transition matrix and initial distribution over one menu (position-indexed).
struct ModelBlock {
  Matrix q;
  Vector pi;
};

class MscModel {
 public:
  MscModel() = default;
  explicit MscModel(Universe universe) : universe_(std::move(universe)) {}

  const Universe& universe() const noexcept { return universe_; }

  void set_block(const Menu& menu, ModelBlock block);
  bool contains(const Menu& menu) const { return blocks_.count(menu) != 0; }
  const ModelBlock& block(const Menu& menu) const;  // throws LookupError
  ModelBlock& block(const Menu& menu);
  const std::map<Menu, ModelBlock>& blocks() const noexcept { return blocks_; }

  std::string name;
  std::string provenance;

 private:
  Universe universe_;
  std::map<Menu, ModelBlock> blocks_;
};

struct Violation {
  std::string kind;  // "sum", "range", "missing_binary_menu", "row_sum", ...
  std::optional<Menu> menu;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Reports every violated dataset invariant; never throws on content.
ValidationReport validate_dataset(const ChoiceDataset& data, const Tolerances& tol = {});

enum class Assumption { prolonged_consideration, binary_comparability, transition_ratio_iia };

std::string_view to_string(Assumption assumption);

struct AssumptionFailure {
  Assumption assumption;
  Menu menu;
  Index from = 0;  ///< universe index
  Index to = 0;    ///< universe index
  std::string detail;
};

struct AssumptionReport {
  bool prolonged_consideration = true;
  bool binary_comparability = true;
  bool transition_ratio_iia = true;
  std::vector<AssumptionFailure> failures;
  /// Row sums, entry ranges, and initial distributions that are not on the simplex.
  std::vector<Violation> stochastic;
  /// Pairs of larger menus whose binary block is absent, so TR-IIA could not be evaluated.
  std::vector<std::pair<Menu, AltPair>> ratio_unchecked;

  bool ok() const noexcept {
    return prolonged_consideration && binary_comparability && transition_ratio_iia &&
           stochastic.empty();
  }
};

/// Checks Assumptions 1-3 and stochasticity. Throws StructuralError on dimension mismatch.
AssumptionReport validate_model(const MscModel& model, const Tolerances& tol = {});

/// p(i | {i, j}). Throws LookupError if the binary menu is not stored or i == j.
double binary_share(const ChoiceDataset& data, Index i, Index j);

}  // namespace msc
