#include "oracles.hpp"

#include <cmath>
#include <queue>
#include <set>

#include <Eigen/Eigenvalues>

namespace msc::testing {

Vector power_iteration(const Matrix& q, const Vector& pi, std::size_t steps) {
  Eigen::RowVectorXd v = pi.transpose();
  for (std::size_t t = 0; t < steps; ++t) v = v * q;
  return v.transpose();
}

Vector eigen_stationary(const Matrix& q) {
  Eigen::EigenSolver<Matrix> solver(q.transpose());
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < solver.eigenvalues().size(); ++k) {
    if (std::abs(solver.eigenvalues()[k] - 1.0) < std::abs(solver.eigenvalues()[best] - 1.0)) best = k;
  }
  Vector v = solver.eigenvectors().col(best).real();
  return v / v.sum();
}

bool oracle_reversible_only(const std::vector<CycleWitness>& cycles) {
  for (const auto& c : cycles) {
    if (c.sign != Sign::zero) return false;
  }
  return true;
}

bool oracle_bounded(const std::vector<CycleWitness>& cycles, Index a, Index b) {
  for (const auto& c : cycles) {
    for (auto [x, y] : c.pairs) {
      if ((x == a && y == b) || (x == b && y == a)) return true;
    }
  }
  return false;
}

bool oracle_pairwise(const ChoiceDataset& data, const Menu& menu, const Tolerances& tol) {
  auto cycles = enumerate_sign_consistent_cycles(data, menu, tol);
  for (auto [a, b] : menu.pairs()) {
    if (!oracle_bounded(cycles, a, b)) return false;
  }
  return true;
}

bool oracle_fully(const ChoiceDataset& data, const Menu& menu, const Tolerances& tol) {
  if (!oracle_pairwise(data, menu, tol)) return false;
  for (const auto& [stored, entry] : data.entries()) {
    if (stored.is_subset_of(menu) && !(entry.probabilities.minCoeff() > tol.delta)) return false;
  }
  return true;
}

bool oracle_irreducible(const ChoiceDataset& data, const Menu& menu, const Tolerances& tol) {
  for (Index a : menu) {
    if (data.prob(a, menu) <= tol.delta) return false;
  }
  const std::size_t n = menu.size();
  if (n == 1) return true;
  auto cycles = enumerate_sign_consistent_cycles(data, menu, tol);
  std::vector<std::vector<bool>> ok(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y) ok[x][y] = oracle_bounded(cycles, menu[x], menu[y]);
    }
  }
  const unsigned full = (1u << n) - 1;
  std::set<std::pair<std::size_t, unsigned>> seen;
  std::queue<std::pair<std::size_t, unsigned>> frontier;
  frontier.push({0, 1u});
  seen.insert({0, 1u});
  while (!frontier.empty()) {
    auto [v, mask] = frontier.front();
    frontier.pop();
    for (std::size_t w = 0; w < n; ++w) {
      if (!ok[v][w]) continue;
      unsigned next = mask | (1u << w);
      if (w == 0 && next == full) return true;
      if (seen.insert({w, next}).second) frontier.push({w, next});
    }
  }
  return false;
}

double balance_identity_gap(const MscModel& model, const ChoiceDataset& data, const Menu& menu) {
  const Matrix& q = model.block(menu).q;
  double gap = 0.0;
  for (auto [a, b] : menu.pairs()) {
    double pa = data.prob(a, Menu::pair(a, b));
    double pb = data.prob(b, Menu::pair(a, b));
    if (pa <= 0.0 || pb <= 0.0) continue;
    auto x = static_cast<Eigen::Index>(menu.position(a));
    auto y = static_cast<Eigen::Index>(menu.position(b));
    double term = delta(data, menu, a, b) * q(x, y) / pb + delta(data, menu, b, a) * q(y, x) / pa;
    gap = std::max(gap, std::abs(term));
  }
  return gap;
}

}  // namespace msc::testing
