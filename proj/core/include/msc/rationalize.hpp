#pragma once

// Rationalizability engine: the design system D(M) gamma = 0, exact feasibility with
// Gordan / Stiemke certificates, and explicit model constructions.

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "msc/axioms.hpp"
#include "msc/core.hpp"
#include "msc/cycles.hpp"
#include "msc/markov.hpp"

namespace msc {

using RationalMatrix = std::vector<std::vector<Rational>>;  // row-major

struct DesignSystem {
  Menu menu;
  /// Ordered pairs (i, j) with Delta_ij(M) > 0, lexicographic; column b of D belongs to g[b].
  std::vector<AltPair> g;
  /// |M| x |G|. Column (i,j): +Delta_ij / p(j|{i,j}) at row i, the negative at row j.
  Matrix d;
  /// Same matrix from the exact decimal inputs.
  RationalMatrix exact;

  std::size_t rows() const noexcept { return menu.size(); }
  std::size_t cols() const noexcept { return g.size(); }
};

DesignSystem build_design_system(const ChoiceDataset& data, const Menu& menu,
                                 const Tolerances& tol = {});

enum class Grade { nonneg, strict };

enum class FeasibilityStatus { strictly_positive, nonneg_nonzero, only_zero };

std::string_view to_string(FeasibilityStatus status);

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::only_zero;
  /// The requested grade is attainable.
  bool feasible = false;
  /// Solution over G when feasible: sum 1 (nonneg) or every entry >= 1 (strict).
  std::vector<Rational> gamma;
  /// Dual vector over the menu when infeasible: zD >> 0 (nonneg) or zD >= 0, zD != 0 (strict).
  std::vector<Rational> certificate;
};

/// Exact decision by rational simplex; solutions and certificates are verified before returning.
FeasibilityResult solve_feasibility(const DesignSystem& system, Grade grade);

/// The same decision in double precision (pivot tolerance 1e-9). Cross-check only.
FeasibilityResult solve_feasibility_float(const DesignSystem& system, Grade grade);

/// zD from a certificate, in exact arithmetic.
std::vector<Rational> certificate_image(const DesignSystem& system, std::span<const Rational> z);

struct ConstructOptions {
  /// Unordered pairs whose transitions are set to 0 in the menu block after scaling.
  std::set<AltPair> zeroed;
};

/// Builds the block on `menu` from a solution of D gamma = 0, plus a block for every binary
/// sub-menu with q_ij = 0.5 p(j|{i,j}). Verifies assumptions and the fixed point;
/// throws ConstructionError otherwise.
MscModel construct_model(const ChoiceDataset& data, const Menu& menu,
                         std::span<const Rational> gamma, const ConstructOptions& options = {},
                         const Tolerances& tol = {});

/// Identity chains on larger menus, binary-share chains on pairs, pi = data.
MscModel construct_trivial(const ChoiceDataset& data);

/// Pairs with Delta != 0 that are not bounded in a cycle (a < b).
std::set<AltPair> forced_zero_pairs(const ChoiceDataset& data, const Menu& menu,
                                    const Tolerances& tol = {});

/// Irreducible rationalizing model; throws ConstructionError naming a blocking pair otherwise.
MscModel construct_irreducible(const ChoiceDataset& data, const Menu& menu,
                               const Tolerances& tol = {});

struct RationalizeCheck {
  bool ok = true;
  double max_deviation = 0.0;
  std::optional<Menu> worst_menu;
};

/// The limiting choice function of every given menu matches the data within tol.tol.
RationalizeCheck verify_rationalizes(const MscModel& model, const ChoiceDataset& data,
                                     std::span<const Menu> menus, const Tolerances& tol = {});

enum class ModelClass { any, reversible, pairwise, fully, irreducible };

std::string_view to_string(ModelClass cls);
std::optional<ModelClass> parse_model_class(std::string_view text);

struct RationalizeOutcome {
  std::optional<MscModel> model;
  /// Set when the class is unattainable.
  std::optional<FeasibilityResult> infeasibility;
  std::optional<AltPair> blocking_pair;
  std::optional<Index> null_alternative;
  std::string reason;

  bool ok() const noexcept { return model.has_value(); }
};

/// Constructs a model of the requested class or explains why none exists.
RationalizeOutcome rationalize(const ChoiceDataset& data, const Menu& menu, ModelClass cls,
                               const Tolerances& tol = {});

/// Class properties of a block.
bool has_pairwise_pattern(const Matrix& q);
bool has_full_pattern(const Matrix& q);

}  // namespace msc
