#include "msc/manipulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace msc {

namespace {

AltPair unordered(Index a, Index b) { return {std::min(a, b), std::max(a, b)}; }

void check_restriction(const Restriction& r, const Menu& menu) {
  auto check_pair = [&](const AltPair& p) {
    if (p.first >= p.second) throw DomainError("restricted pairs must be listed as (a, b) with a < b");
    if (!menu.contains(p.first) || !menu.contains(p.second)) {
      throw DomainError("restricted pair is not inside the menu");
    }
  };
  for (const AltPair& p : r.zeroed) check_pair(p);
  if (r.kind == RestrictionKind::strict) {
    if (!(r.c > 0.0) || !std::isfinite(r.c)) throw DomainError("strict restriction needs c > 0");
    if (!r.factors.empty()) throw DomainError("strict restriction takes no per-pair factors");
  } else {
    for (const auto& [p, f] : r.factors) {
      check_pair(p);
      if (!(f >= 0.0) || !std::isfinite(f)) throw DomainError("weak restriction factors must be >= 0");
    }
  }
}

bool same_structure(const SccDecomposition& a, const SccDecomposition& b) {
  return a.classes == b.classes && a.closed == b.closed;
}

double sup_distance(const Distribution& a, const Distribution& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

double Restriction::factor(Index a, Index b) const {
  AltPair p = unordered(a, b);
  if (zeroed.count(p)) return 0.0;
  if (kind == RestrictionKind::strict) return c;
  auto it = factors.find(p);
  return it == factors.end() ? 1.0 : it->second;
}

std::string describe(const Restriction& r, const Universe& universe) {
  std::ostringstream out;
  out << (r.kind == RestrictionKind::strict ? "strict" : "weak") << " zero={";
  bool first = true;
  for (auto [a, b] : r.zeroed) {
    out << (first ? "" : ";") << universe.name(a) << "," << universe.name(b);
    first = false;
  }
  out << "}";
  if (r.kind == RestrictionKind::strict) {
    out << " c=" << r.c;
  } else {
    for (const auto& [p, f] : r.factors) {
      out << " r(" << universe.name(p.first) << "," << universe.name(p.second) << ")=" << f;
    }
  }
  return out.str();
}

RestrictionOutcome apply_restriction(const ModelBlock& block, const Menu& menu, const Restriction& r) {
  const auto n = static_cast<Eigen::Index>(menu.size());
  if (block.q.rows() != n || block.q.cols() != n) throw StructuralError("block does not match the menu");
  check_restriction(r, menu);

  Matrix q = block.q;
  for (Eigen::Index a = 0; a < n; ++a) {
    double off = 0.0;
    for (Eigen::Index b = 0; b < n; ++b) {
      if (a == b) continue;
      q(a, b) *= r.factor(menu[static_cast<std::size_t>(a)], menu[static_cast<std::size_t>(b)]);
      off += q(a, b);
    }
    q(a, a) = 1.0 - off;
  }
  RestrictionOutcome out;
  if (!(q.diagonal().minCoeff() > 0.0)) {
    out.reason = "prolonged_consideration";
    return out;
  }
  if (!same_structure(scc_decompose(block.q), scc_decompose(q))) {
    out.reason = "class_structure";
    return out;
  }
  out.block = ModelBlock{std::move(q), block.pi};
  return out;
}

RobustnessReport robustness_to_restrictions(const ModelBlock& block, const Menu& menu,
                                            RestrictionScope scope, std::size_t samples,
                                            std::uint64_t seed, double tol) {
  RobustnessReport report;
  const Distribution base = generate_limiting(block.q, block.pi);
  auto consider = [&](const Restriction& r) {
    RestrictionOutcome outcome = apply_restriction(block, menu, r);
    if (!outcome.ok()) {
      ++report.rejected;
      return;
    }
    ++report.tested;
    double change = sup_distance(base, generate_limiting(outcome.block->q, outcome.block->pi));
    if (change > report.max_change) report.max_change = change;
    if (change > tol && report.robust) {
      report.robust = false;
      report.counterexample = r;
    }
  };

  if (scope == RestrictionScope::strict_single_pair) {
    for (auto [a, b] : menu.pairs()) {
      auto pa = static_cast<Eigen::Index>(menu.position(a));
      auto pb = static_cast<Eigen::Index>(menu.position(b));
      if (block.q(pa, pb) == 0.0 && block.q(pb, pa) == 0.0) continue;
      for (double c : {0.5, 1.0, 2.0}) {
        Restriction r;
        r.zeroed.insert({a, b});
        r.c = c;
        consider(r);
      }
    }
    return report;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    Restriction r;
    r.kind = RestrictionKind::weak;
    for (AltPair p : menu.pairs()) {
      if (unit(rng) < 0.2) {
        r.zeroed.insert(p);
      } else {
        r.factors[p] = 2.0 * unit(rng);
      }
    }
    consider(r);
  }
  return report;
}

InitialRobustness robustness_to_initial(const ModelBlock& block, std::size_t samples,
                                        std::uint64_t seed, double tol) {
  const auto n = block.q.rows();
  std::vector<Distribution> starts;
  for (Eigen::Index k = 0; k < n; ++k) starts.push_back(Distribution::Unit(n, k));
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> draw(1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    Distribution pi(n);
    for (Eigen::Index k = 0; k < n; ++k) pi[k] = draw(rng);
    starts.push_back(pi / pi.sum());
  }
  InitialRobustness out;
  const Distribution reference = generate_limiting(block.q, starts.front());
  for (const Distribution& pi : starts) {
    out.max_change = std::max(out.max_change, sup_distance(reference, generate_limiting(block.q, pi)));
  }
  out.robust = out.max_change <= tol;
  return out;
}

DecoyReport decoy_analysis(const MscModel& model, Index target, Index competitor, Index decoy,
                           double tol) {
  if (target == competitor || target == decoy || competitor == decoy) {
    throw PreconditionError("decoy analysis needs three distinct alternatives");
  }
  const Menu pair = Menu::pair(target, competitor);
  const Menu triple({target, competitor, decoy});
  if (!model.contains(pair) || !model.contains(triple)) {
    throw PreconditionError("decoy analysis needs the {target, competitor} and triple blocks");
  }
  const ModelBlock& tb = model.block(triple);
  auto tq = [&](Index a, Index b) {
    return tb.q(static_cast<Eigen::Index>(triple.position(a)), static_cast<Eigen::Index>(triple.position(b)));
  };
  if (tq(target, decoy) != 0.0) throw PreconditionError("the target must not move to the decoy in the triple");
  for (Index a : triple) {
    for (Index b : triple) {
      if (a == b || (a == target && b == decoy)) continue;
      if (!(tq(a, b) > 0.0)) throw PreconditionError("every other triple transition must be positive");
    }
  }
  const Menu target_decoy = Menu::pair(target, decoy);
  if (model.contains(target_decoy)) {
    const ModelBlock& b = model.block(target_decoy);
    auto pos = static_cast<Eigen::Index>(target_decoy.position(target));
    if (b.q(pos, 1 - pos) != 0.0) {
      throw PreconditionError("the target must not move to the decoy in the binary menu");
    }
  }

  const ModelBlock& pb = model.block(pair);
  Distribution rho_pair = generate_limiting(pb.q, pb.pi);
  Distribution rho_triple = generate_limiting(tb.q, tb.pi);
  DecoyReport report;
  report.pair_target = rho_pair[static_cast<Eigen::Index>(pair.position(target))];
  report.pair_competitor = rho_pair[static_cast<Eigen::Index>(pair.position(competitor))];
  report.triple_target = rho_triple[static_cast<Eigen::Index>(triple.position(target))];
  report.triple_competitor = rho_triple[static_cast<Eigen::Index>(triple.position(competitor))];
  report.triple_decoy = rho_triple[static_cast<Eigen::Index>(triple.position(decoy))];
  report.relative_ratio_increase = report.triple_target * report.pair_competitor >
                                   report.pair_target * report.triple_competitor + tol;
  report.absolute_increase = report.triple_target > report.pair_target + tol;
  report.condition_q_ki_gt_q_ji = tq(decoy, target) > tq(competitor, target);
  return report;
}

NudgeReport nudge_initial_finite(const ModelBlock& block, const Menu& menu, double alpha, Index target) {
  const auto n = static_cast<Eigen::Index>(menu.size());
  if (block.q.rows() != n) throw StructuralError("block does not match the menu");
  NudgeReport report;
  report.target = target;
  const auto t = static_cast<Eigen::Index>(menu.position(target));
  for (Eigen::Index k = 0; k < n; ++k) {
    report.starts.push_back(menu[static_cast<std::size_t>(k)]);
    report.choices.push_back(generate_finite(block.q, Distribution::Unit(n, k), alpha));
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == t) continue;
    if (!(report.choices[static_cast<std::size_t>(t)][t] > report.choices[static_cast<std::size_t>(k)][t])) {
      report.strict_maximum = false;
    }
  }
  return report;
}

}  // namespace msc
