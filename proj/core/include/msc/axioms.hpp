#pragma once

// Axioms on choice data (positivity, IIA, Luce) and on transition matrices
// (detailed balance, Kolmogorov's criterion, reversibility).

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msc/core.hpp"
#include "msc/markov.hpp"

namespace msc {

struct PositivityResult {
  bool positive = true;
  /// (alternative, menu) pairs with p(alternative | menu) <= threshold.
  std::vector<std::pair<Index, Menu>> witnesses;
};

/// p(i|M') > tol.delta for every stored M' included in `menu` and every i in M'.
PositivityResult check_positivity(const ChoiceDataset& data, const Menu& menu,
                                  const Tolerances& tol = {});

struct IiaResult {
  bool holds = true;
  double max_violation = 0.0;  ///< max |Delta_ij(M)|
  std::optional<AltPair> worst_pair;
};

IiaResult check_iia(const ChoiceDataset& data, const Menu& menu, const Tolerances& tol = {});

using StatePair = std::pair<std::size_t, std::size_t>;

struct BalanceResult {
  bool balanced = true;
  std::vector<StatePair> violations;  ///< positions (a, b), a < b
  double max_violation = 0.0;
};

/// rho_a q_ab == rho_b q_ba (within `tol`) for every pair of positions.
BalanceResult check_detailed_balance(const Matrix& q, const Distribution& rho, double tol = 1e-9);

struct KolmogorovResult {
  bool reversible = true;
  std::vector<std::size_t> violating_cycle;  ///< positions, first state not repeated
};

inline constexpr std::size_t kKolmogorovCap = 9;

/// Forward and backward products agree (relative `tol`) on every simple cycle of length >= 3
/// inside a closed class. Throws CapacityError if the chain has more than `cap` states.
KolmogorovResult check_kolmogorov(const Matrix& q, double tol = 1e-9,
                                  std::size_t cap = kKolmogorovCap);

/// Detailed balance of every closed class against its own stationary distribution;
/// transient states carry zero limiting mass.
bool check_reversible(const Matrix& q, double tol = 1e-9);

struct LuceFit {
  std::map<Index, double> utilities;  ///< anchor alternative has utility 1
  Index anchor = 0;
  double residual = 0.0;
};

struct LuceOutcome {
  std::optional<LuceFit> fit;
  std::string violated;  ///< "positivity", "iia", "missing_binary_menu" or "residual"
  std::string detail;

  bool ok() const noexcept { return fit.has_value(); }
};

/// Luce utilities u_i = p(i|{a,i}) / p(a|{a,i}) against the first alternative `a` of the menus.
LuceOutcome fit_luce(const ChoiceDataset& data, std::span<const Menu> menus,
                     const Tolerances& tol = {});

}  // namespace msc
