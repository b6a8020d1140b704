#pragma once

// Choice-architecture interventions on a single menu block: comparability restrictions,
// robustness checks, initial fixation, and the decoy (attraction) effect.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "msc/core.hpp"
#include "msc/markov.hpp"

namespace msc {

enum class RestrictionKind { strict, weak };

/// Symmetric rescaling of off-diagonal transitions. Pairs are unordered universe
/// indices (a < b). Strict: zeroed pairs get 0, every other pair gets `c`. Weak: zeroed
/// pairs get 0, pairs in `factors` get their factor, the rest keep factor 1.
struct Restriction {
  RestrictionKind kind = RestrictionKind::strict;
  std::set<AltPair> zeroed;
  double c = 1.0;
  std::map<AltPair, double> factors;

  /// r_ab for two distinct members.
  double factor(Index a, Index b) const;
};

std::string describe(const Restriction& r, const Universe& universe);

struct RestrictionOutcome {
  std::optional<ModelBlock> block;
  std::string reason;  ///< "prolonged_consideration" or "class_structure" when rejected

  bool ok() const noexcept { return block.has_value(); }
};

/// q'_ab = r_ab q_ab off the diagonal, diagonal completed to row sum 1. Rejected when a diagonal
/// entry is no longer positive or the communicating classes (or their closedness) change.
/// Throws DomainError for malformed restrictions.
RestrictionOutcome apply_restriction(const ModelBlock& block, const Menu& menu, const Restriction& r);

enum class RestrictionScope { strict_single_pair, weak_samples };

struct RobustnessReport {
  bool robust = true;
  double max_change = 0.0;
  std::optional<Restriction> counterexample;
  std::size_t tested = 0;
  std::size_t rejected = 0;
};

inline constexpr std::size_t kDefaultSamples = 50;

/// Strict scope: every single-pair zeroing with c in {0.5, 1, 2}. Weak scope: `samples` random
/// symmetric factor maps in [0, 2] (each pair zeroed with probability 0.2). Restrictions that are
/// rejected by apply_restriction are skipped.
RobustnessReport robustness_to_restrictions(const ModelBlock& block, const Menu& menu,
                                            RestrictionScope scope,
                                            std::size_t samples = kDefaultSamples,
                                            std::uint64_t seed = 1, double tol = 1e-9);

struct InitialRobustness {
  bool robust = true;
  double max_change = 0.0;
};

/// Limits under `samples` random initial distributions and every degenerate one agree within tol.
InitialRobustness robustness_to_initial(const ModelBlock& block, std::size_t samples = kDefaultSamples,
                                        std::uint64_t seed = 1, double tol = 1e-9);

struct DecoyReport {
  double pair_target = 0.0;      ///< rho(i | {i,j})
  double pair_competitor = 0.0;  ///< rho(j | {i,j})
  double triple_target = 0.0;    ///< rho(i | {i,j,k})
  double triple_competitor = 0.0;
  double triple_decoy = 0.0;
  bool relative_ratio_increase = false;
  bool absolute_increase = false;
  bool condition_q_ki_gt_q_ji = false;
};

/// Target i, competitor j, decoy k. Requires blocks {i,j} and {i,j,k}, q_ik = 0 in the triple
/// (and in {i,k} when stored) with every other triple transition positive; PreconditionError otherwise.
/// Increases are judged with margin `tol`.
DecoyReport decoy_analysis(const MscModel& model, Index target, Index competitor, Index decoy,
                           double tol = 1e-12);

struct NudgeReport {
  Index target = 0;
  std::vector<Index> starts;          ///< alternative fixated first
  std::vector<Distribution> choices;  ///< generate_finite under that fixation
  /// rho(target | start at target) exceeds rho(target | start at j) for every other j.
  bool strict_maximum = true;
};

NudgeReport nudge_initial_finite(const ModelBlock& block, const Menu& menu, double alpha, Index target);

}  // namespace msc
