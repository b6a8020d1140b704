#pragma once

// Choice probabilities generated by the exploration chain of one menu.
//
// All functions here work on position-indexed matrices: q(a, b) is the
// probability of moving from the a-th to the b-th member of the menu.

#include <cstddef>
#include <span>
#include <vector>

#include "msc/core.hpp"

namespace msc {

using Distribution = Vector;

struct SccDecomposition {
  /// Communicating classes, each sorted; classes ordered by their smallest state.
  std::vector<std::vector<std::size_t>> classes;
  /// closed[c] is true iff no positive transition leaves class c.
  std::vector<bool> closed;
  /// class_index[state] -> index into `classes`.
  std::vector<std::size_t> class_index;

  std::size_t size() const noexcept { return classes.size(); }
  bool irreducible() const noexcept { return classes.size() == 1; }
};

/// rho = alpha * pi * (I - (1 - alpha) Q)^{-1}. Throws DomainError unless 0 < alpha < 1.
Distribution generate_finite(const Matrix& q, const Distribution& pi, double alpha);

/// Partial sum sum_{t=0..periods} alpha (1-alpha)^t pi Q^t. Oracle for generate_finite.
Distribution generate_series(const Matrix& q, const Distribution& pi, double alpha,
                             std::size_t periods);

/// Strongly connected components of the digraph with an arc a -> b whenever q(a, b) > 0.
SccDecomposition scc_decompose(const Matrix& q);

/// Stationary distribution of the chain restricted to `states`, which must form a closed,
/// irreducible class (PreconditionError otherwise). Result is indexed like `states`.
Distribution stationary_distribution(const Matrix& q, std::span<const std::size_t> states);

struct ClassWeight {
  std::size_t class_id;  ///< index into SccDecomposition::classes
  double weight;
};

/// Probability that the chain started from pi is eventually absorbed in each closed class.
std::vector<ClassWeight> absorption_weights(const Matrix& q, const Distribution& pi,
                                            const SccDecomposition& scc);
std::vector<ClassWeight> absorption_weights(const Matrix& q, const Distribution& pi);

/// The alpha -> 0 limit: absorption-weighted mixture of the closed classes' stationaries.
Distribution generate_limiting(const Matrix& q, const Distribution& pi);

}  // namespace msc
