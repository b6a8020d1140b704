#include "msc/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "msc/cycles.hpp"

namespace msc {

PositivityResult check_positivity(const ChoiceDataset& data, const Menu& menu,
                                  const Tolerances& tol) {
  data.entry(menu);  // the menu itself must be stored
  PositivityResult result;
  for (const auto& [stored, entry] : data.entries()) {
    if (!stored.is_subset_of(menu)) continue;
    for (std::size_t k = 0; k < stored.size(); ++k) {
      if (!(entry.probabilities[static_cast<Eigen::Index>(k)] > tol.delta)) {
        result.positive = false;
        result.witnesses.emplace_back(stored[k], stored);
      }
    }
  }
  return result;
}

IiaResult check_iia(const ChoiceDataset& data, const Menu& menu, const Tolerances& tol) {
  data.entry(menu);
  IiaResult result;
  for (auto [a, b] : menu.pairs()) {
    double d = delta(data, menu, a, b);
    double magnitude = std::abs(d);
    if (magnitude > delta_threshold(data, a, b, tol)) {
      result.holds = false;
      if (magnitude > result.max_violation || !result.worst_pair) {
        result.max_violation = magnitude;
        result.worst_pair = d > 0 ? AltPair{a, b} : AltPair{b, a};
      }
    } else {
      result.max_violation = std::max(result.max_violation, magnitude);
    }
  }
  return result;
}

BalanceResult check_detailed_balance(const Matrix& q, const Distribution& rho, double tol) {
  if (q.rows() != q.cols() || rho.size() != q.rows()) {
    throw StructuralError("detailed balance needs a square matrix and a matching distribution");
  }
  BalanceResult result;
  const auto n = q.rows();
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      double gap = std::abs(rho[a] * q(a, b) - rho[b] * q(b, a));
      result.max_violation = std::max(result.max_violation, gap);
      if (gap > tol) {
        result.balanced = false;
        result.violations.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      }
    }
  }
  return result;
}

KolmogorovResult check_kolmogorov(const Matrix& q, double tol, std::size_t cap) {
  if (q.rows() != q.cols()) throw StructuralError("transition matrix must be square");
  const auto n = static_cast<std::size_t>(q.rows());
  if (n > cap) {
    throw CapacityError("Kolmogorov cycle enumeration is capped at " + std::to_string(cap) +
                        " states; use check_reversible (detailed balance) instead");
  }
  auto at = [&](std::size_t a, std::size_t b) {
    return q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  };
  SccDecomposition scc = scc_decompose(q);
  KolmogorovResult result;

  for (std::size_t c = 0; c < scc.size(); ++c) {
    if (!scc.closed[c]) continue;
    const auto& members = scc.classes[c];
    if (members.size() < 3) continue;
    auto linked = [&](std::size_t a, std::size_t b) { return at(a, b) > 0.0 || at(b, a) > 0.0; };

    // Simple cycles through each start vertex, visiting only larger vertices of the class.
    std::vector<std::size_t> path;
    std::vector<bool> used(n, false);
    bool found = false;
    auto close_cycle = [&]() {
      double forward = 1.0, backward = 1.0;
      for (std::size_t k = 0; k < path.size(); ++k) {
        std::size_t a = path[k], b = path[(k + 1) % path.size()];
        forward *= at(a, b);
        backward *= at(b, a);
      }
      if (std::abs(forward - backward) > tol * std::max(forward, backward)) {
        result.reversible = false;
        result.violating_cycle = path;
        found = true;
      }
    };
    auto extend = [&](auto&& self, std::size_t v) -> void {
      for (std::size_t w : members) {
        if (found) return;
        if (w <= path.front() || used[w] || !linked(v, w)) continue;
        used[w] = true;
        path.push_back(w);
        if (path.size() >= 3 && path[1] < path.back() && linked(w, path.front())) close_cycle();
        self(self, w);
        path.pop_back();
        used[w] = false;
      }
    };
    for (std::size_t s : members) {
      path.assign(1, s);
      used[s] = true;
      extend(extend, s);
      used[s] = false;
      if (found) return result;
    }
  }
  return result;
}

bool check_reversible(const Matrix& q, double tol) {
  SccDecomposition scc = scc_decompose(q);
  for (std::size_t c = 0; c < scc.size(); ++c) {
    if (!scc.closed[c]) continue;
    const auto& states = scc.classes[c];
    Distribution local = stationary_distribution(q, states);
    const auto m = static_cast<Eigen::Index>(states.size());
    Matrix sub(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) {
        sub(a, b) = q(static_cast<Eigen::Index>(states[static_cast<std::size_t>(a)]),
                      static_cast<Eigen::Index>(states[static_cast<std::size_t>(b)]));
      }
    }
    if (!check_detailed_balance(sub, local, tol).balanced) return false;
  }
  // Open-class states carry no limiting mass and no closed state moves into them,
  // so their balance equations read 0 = 0.
  return true;
}

LuceOutcome fit_luce(const ChoiceDataset& data, std::span<const Menu> menus,
                     const Tolerances& tol) {
  LuceOutcome outcome;
  const Universe& u = data.universe();
  if (menus.empty()) {
    outcome.violated = "positivity";
    outcome.detail = "no menus given";
    return outcome;
  }
  std::set<Index> alternatives;
  for (const Menu& m : menus) alternatives.insert(m.begin(), m.end());

  for (const Menu& m : menus) {
    try {
      PositivityResult pos = check_positivity(data, m, tol);
      if (!pos.positive) {
        const auto& [alt, where] = pos.witnesses.front();
        outcome.violated = "positivity";
        outcome.detail = "p(" + u.name(alt) + "|" + to_string(where, u) + ") = 0";
        return outcome;
      }
      IiaResult iia = check_iia(data, m, tol);
      if (!iia.holds) {
        std::ostringstream msg;
        msg << "Delta(" << u.name(iia.worst_pair->first) << "," << u.name(iia.worst_pair->second)
            << ") = " << iia.max_violation << " on " << to_string(m, u);
        outcome.violated = "iia";
        outcome.detail = msg.str();
        return outcome;
      }
    } catch (const LookupError& e) {
      outcome.violated = "missing_binary_menu";
      outcome.detail = e.what();
      return outcome;
    }
  }

  LuceFit fit;
  fit.anchor = *alternatives.begin();
  fit.utilities[fit.anchor] = 1.0;
  for (Index alt : alternatives) {
    if (alt == fit.anchor) continue;
    Menu binary = Menu::pair(fit.anchor, alt);
    if (!data.contains(binary)) {
      outcome.violated = "missing_binary_menu";
      outcome.detail = "missing binary menu " + to_string(binary, u);
      return outcome;
    }
    double p_alt = data.prob(alt, binary);
    double p_anchor = data.prob(fit.anchor, binary);
    if (!(p_alt > tol.delta) || !(p_anchor > tol.delta)) {
      outcome.violated = "positivity";
      outcome.detail = "zero share on " + to_string(binary, u);
      return outcome;
    }
    fit.utilities[alt] = p_alt / p_anchor;
  }
  for (const Menu& m : menus) {
    double total = 0.0;
    for (Index alt : m) total += fit.utilities[alt];
    for (Index alt : m) {
      fit.residual = std::max(fit.residual, std::abs(data.prob(alt, m) - fit.utilities[alt] / total));
    }
  }
  if (fit.residual > tol.tol) {
    std::ostringstream msg;
    msg << "utilities reproduce the data only up to " << fit.residual;
    outcome.violated = "residual";
    outcome.detail = msg.str();
    return outcome;
  }
  outcome.fit = std::move(fit);
  return outcome;
}

}  // namespace msc
