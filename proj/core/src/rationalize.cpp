#include "msc/rationalize.hpp"

#include <algorithm>
#include <cmath>

#include "msc/detail/simplex.hpp"

namespace msc {

namespace {

using detail::LpProblem;
using detail::LpStatus;

Vector menu_vector(const ChoiceDataset& data, const Menu& menu) { return data.choice(menu); }

template <class T>
std::vector<std::vector<T>> design_matrix(const DesignSystem& system);

template <>
std::vector<std::vector<Rational>> design_matrix<Rational>(const DesignSystem& system) {
  return system.exact;
}

template <>
std::vector<std::vector<double>> design_matrix<double>(const DesignSystem& system) {
  std::vector<std::vector<double>> out(system.rows(), std::vector<double>(system.cols()));
  for (std::size_t r = 0; r < system.rows(); ++r) {
    for (std::size_t c = 0; c < system.cols(); ++c) {
      out[r][c] = system.d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

Rational to_rational(const Rational& v) { return v; }
Rational to_rational(double v) { return exact_from_double(v); }

template <class T, class Ops>
class FeasibilityEngine {
 public:
  explicit FeasibilityEngine(const DesignSystem& system)
      : d_(design_matrix<T>(system)), m_(system.rows()), n_(system.cols()) {}

  FeasibilityResult run(Grade grade) {
    FeasibilityResult out;
    if (n_ == 0) {
      out.status = FeasibilityStatus::strictly_positive;
      out.feasible = true;
      return out;
    }
    // Any non-negative non-zero solution at all? (Gordan side)
    LpProblem<T> lp1;
    lp1.a = d_;
    lp1.a.push_back(std::vector<T>(n_, T(1)));
    lp1.b.assign(m_ + 1, T(0));
    lp1.b[m_] = T(1);
    lp1.c.assign(n_, T(0));
    auto first = detail::solve_lp<T, Ops>(lp1);
    std::vector<Rational> gordan;
    if (first.status == LpStatus::infeasible) {
      out.status = FeasibilityStatus::only_zero;
      for (std::size_t r = 0; r < m_; ++r) gordan.push_back(-to_rational(first.farkas[r]));
    } else {
      // Maximise min gamma over the simplex: variables gamma (n), w, slack (n).
      LpProblem<T> lp2;
      const std::size_t width = 2 * n_ + 1;
      for (std::size_t r = 0; r < m_; ++r) {
        std::vector<T> row(width, T(0));
        for (std::size_t c = 0; c < n_; ++c) row[c] = d_[r][c];
        lp2.a.push_back(std::move(row));
        lp2.b.push_back(T(0));
      }
      std::vector<T> total(width, T(0));
      for (std::size_t c = 0; c < n_; ++c) total[c] = T(1);
      lp2.a.push_back(std::move(total));
      lp2.b.push_back(T(1));
      for (std::size_t c = 0; c < n_; ++c) {
        std::vector<T> row(width, T(0));
        row[c] = T(1);
        row[n_] = T(-1);
        row[n_ + 1 + c] = T(-1);
        lp2.a.push_back(std::move(row));
        lp2.b.push_back(T(0));
      }
      lp2.c.assign(width, T(0));
      lp2.c[n_] = T(-1);
      auto second = detail::solve_lp<T, Ops>(lp2);
      if (second.status != LpStatus::optimal) throw Error("feasibility solver failed on a bounded program");
      out.status = Ops::positive(second.x[n_]) ? FeasibilityStatus::strictly_positive
                                               : FeasibilityStatus::nonneg_nonzero;
      if (grade == Grade::nonneg) {
        for (std::size_t c = 0; c < n_; ++c) out.gamma.push_back(to_rational(second.x[c]));
      }
    }

    if (grade == Grade::nonneg) {
      out.feasible = out.status != FeasibilityStatus::only_zero;
      if (!out.feasible) out.certificate = std::move(gordan);
      return out;
    }

    // Strict grade: gamma = 1 + s, s >= 0, minimise sum s.
    LpProblem<T> strict;
    strict.a = d_;
    strict.b.assign(m_, T(0));
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) strict.b[r] -= d_[r][c];
    }
    strict.c.assign(n_, T(1));
    auto third = detail::solve_lp<T, Ops>(strict);
    if (third.status == LpStatus::optimal) {
      out.feasible = true;
      out.status = FeasibilityStatus::strictly_positive;
      for (std::size_t c = 0; c < n_; ++c) out.gamma.push_back(to_rational(third.x[c]) + 1);
    } else {
      out.feasible = false;
      if (out.status == FeasibilityStatus::strictly_positive) {
        out.status = FeasibilityStatus::nonneg_nonzero;
      }
      for (std::size_t r = 0; r < m_; ++r) out.certificate.push_back(-to_rational(third.farkas[r]));
    }
    return out;
  }

 private:
  std::vector<std::vector<T>> d_;
  std::size_t m_, n_;
};

std::vector<Rational> apply_exact(const DesignSystem& system, std::span<const Rational> gamma) {
  std::vector<Rational> out(system.rows(), Rational(0));
  for (std::size_t r = 0; r < system.rows(); ++r) {
    for (std::size_t c = 0; c < system.cols(); ++c) out[r] += system.exact[r][c] * gamma[c];
  }
  return out;
}

void verify(const DesignSystem& system, const FeasibilityResult& result, Grade grade) {
  if (result.feasible) {
    for (const Rational& v : apply_exact(system, result.gamma)) {
      if (v != 0) throw Error("feasibility solver returned gamma with D gamma != 0");
    }
    Rational sum(0);
    for (const Rational& g : result.gamma) {
      if (grade == Grade::strict ? g < 1 : g < 0) throw Error("gamma below the requested grade");
      sum += g;
    }
    if (grade == Grade::nonneg && !result.gamma.empty() && sum != 1) {
      throw Error("non-negative gamma is not normalised");
    }
    return;
  }
  auto image = certificate_image(system, result.certificate);
  bool nonzero = false;
  for (const Rational& v : image) {
    if (grade == Grade::nonneg ? v <= 0 : v < 0) throw Error("certificate fails its dual inequality");
    nonzero = nonzero || v != 0;
  }
  if (!nonzero) throw Error("certificate image is zero");
}

void zero_pair(Matrix& q, std::size_t a, std::size_t b) {
  q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = 0.0;
  q(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = 0.0;
}

void complete_diagonal(Matrix& q) {
  for (Eigen::Index r = 0; r < q.rows(); ++r) {
    q(r, r) = 0.0;
    q(r, r) = 1.0 - q.row(r).sum();
  }
}

ModelBlock binary_block(const ChoiceDataset& data, const Menu& binary) {
  const Vector& p = data.choice(binary);
  ModelBlock block;
  block.q.resize(2, 2);
  block.q << 1.0 - 0.5 * p[1], 0.5 * p[1], 0.5 * p[0], 1.0 - 0.5 * p[0];
  block.pi = p;
  return block;
}

void add_binary_blocks(MscModel& model, const ChoiceDataset& data, const Menu& menu) {
  for (auto [a, b] : menu.pairs()) {
    Menu binary = Menu::pair(a, b);
    model.set_block(binary, binary_block(data, binary));
  }
}

void check_constructed(const MscModel& model, const Menu& menu, const Vector& target,
                       const Tolerances& tol) {
  AssumptionReport report = validate_model(model, tol);
  if (!report.ok()) {
    std::string what = "constructed model violates its assumptions";
    if (!report.failures.empty()) what += ": " + std::string(to_string(report.failures.front().assumption));
    throw ConstructionError(what);
  }
  const ModelBlock& block = model.block(menu);
  Vector residual = (target.transpose() * (Matrix::Identity(block.q.rows(), block.q.cols()) - block.q)).transpose();
  if (residual.cwiseAbs().maxCoeff() > tol.tol) {
    throw ConstructionError("constructed block does not keep the data fixed");
  }
}

}  // namespace

std::string_view to_string(FeasibilityStatus status) {
  switch (status) {
    case FeasibilityStatus::strictly_positive: return "strictly_positive";
    case FeasibilityStatus::nonneg_nonzero: return "nonneg_nonzero";
    case FeasibilityStatus::only_zero: return "only_zero";
  }
  return "unknown";
}

std::string_view to_string(ModelClass cls) {
  switch (cls) {
    case ModelClass::any: return "any";
    case ModelClass::reversible: return "reversible";
    case ModelClass::pairwise: return "pairwise";
    case ModelClass::fully: return "fully";
    case ModelClass::irreducible: return "irreducible";
  }
  return "unknown";
}

std::optional<ModelClass> parse_model_class(std::string_view text) {
  for (ModelClass c : {ModelClass::any, ModelClass::reversible, ModelClass::pairwise,
                       ModelClass::fully, ModelClass::irreducible}) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

DesignSystem build_design_system(const ChoiceDataset& data, const Menu& menu, const Tolerances& tol) {
  DeltaGraph graph = build_delta_graph(data, menu, tol);
  DesignSystem sys;
  sys.menu = menu;
  for (const auto& [pair, value] : graph.edges) sys.g.push_back(pair);
  const std::size_t m = menu.size(), n = sys.g.size();
  sys.d = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  sys.exact.assign(m, std::vector<Rational>(n, Rational(0)));
  for (std::size_t c = 0; c < n; ++c) {
    auto [i, j] = sys.g[c];
    Menu binary = Menu::pair(i, j);
    std::size_t ri = menu.position(i), rj = menu.position(j);
    double value = graph.edges.at(sys.g[c]) / data.prob(j, binary);
    sys.d(static_cast<Eigen::Index>(ri), static_cast<Eigen::Index>(c)) = value;
    sys.d(static_cast<Eigen::Index>(rj), static_cast<Eigen::Index>(c)) = -value;
    Rational exact = exact_delta(data, menu, i, j);
    if (exact <= 0) throw Error("exact Delta disagrees in sign with its floating-point value");
    exact /= data.exact_prob(j, binary);
    sys.exact[ri][c] = exact;
    sys.exact[rj][c] = -exact;
  }
  return sys;
}

FeasibilityResult solve_feasibility(const DesignSystem& system, Grade grade) {
  FeasibilityResult result = FeasibilityEngine<Rational, detail::ExactOps<Rational>>(system).run(grade);
  verify(system, result, grade);
  return result;
}

FeasibilityResult solve_feasibility_float(const DesignSystem& system, Grade grade) {
  return FeasibilityEngine<double, detail::FloatOps>(system).run(grade);
}

std::vector<Rational> certificate_image(const DesignSystem& system, std::span<const Rational> z) {
  if (z.size() != system.rows()) throw StructuralError("certificate length does not match the menu");
  std::vector<Rational> out(system.cols(), Rational(0));
  for (std::size_t c = 0; c < system.cols(); ++c) {
    for (std::size_t r = 0; r < system.rows(); ++r) out[c] += z[r] * system.exact[r][c];
  }
  return out;
}

MscModel construct_model(const ChoiceDataset& data, const Menu& menu, std::span<const Rational> gamma,
                         const ConstructOptions& options, const Tolerances& tol) {
  DesignSystem sys = build_design_system(data, menu, tol);
  if (gamma.size() != sys.cols()) throw ConstructionError("gamma length does not match the design system");
  for (const Rational& g : gamma) {
    if (g < 0) throw ConstructionError("gamma has a negative component");
  }
  for (const Rational& v : apply_exact(sys, gamma)) {
    if (v != 0) throw ConstructionError("gamma does not solve the design system");
  }

  MscModel model(data.universe());
  model.name = "constructed";
  add_binary_blocks(model, data, menu);
  if (menu.size() <= 2) {
    if (menu.size() == 1) model.set_block(menu, ModelBlock{Matrix::Ones(1, 1), Vector::Ones(1)});
    check_constructed(model, menu, menu_vector(data, menu), tol);
    return model;
  }

  const auto n = static_cast<Eigen::Index>(menu.size());
  Matrix q = Matrix::Zero(n, n);
  std::map<AltPair, std::size_t> column;
  for (std::size_t c = 0; c < sys.g.size(); ++c) column[sys.g[c]] = c;
  for (auto [a, b] : menu.pairs()) {
    auto pa = static_cast<Eigen::Index>(menu.position(a));
    auto pb = static_cast<Eigen::Index>(menu.position(b));
    Menu binary = Menu::pair(a, b);
    double share_a = data.prob(a, binary), share_b = data.prob(b, binary);
    if (auto it = column.find({a, b}); it != column.end()) {
      double g = to_double(gamma[it->second]);
      q(pa, pb) = g;
      q(pb, pa) = g * share_a / share_b;
    } else if (auto jt = column.find({b, a}); jt != column.end()) {
      double g = to_double(gamma[jt->second]);
      q(pb, pa) = g;
      q(pa, pb) = g * share_b / share_a;
    } else {
      q(pa, pb) = share_b;
      q(pb, pa) = share_a;
    }
  }
  double widest = q.rowwise().sum().maxCoeff();
  if (widest > 0.0) q *= 0.5 / widest;
  for (auto [a, b] : options.zeroed) zero_pair(q, menu.position(a), menu.position(b));
  complete_diagonal(q);

  model.set_block(menu, ModelBlock{q, menu_vector(data, menu)});
  check_constructed(model, menu, menu_vector(data, menu), tol);
  return model;
}

MscModel construct_trivial(const ChoiceDataset& data) {
  MscModel model(data.universe());
  model.name = "trivial";
  for (const auto& [menu, entry] : data.entries()) {
    if (menu.is_binary()) {
      model.set_block(menu, binary_block(data, menu));
    } else {
      const auto n = static_cast<Eigen::Index>(menu.size());
      model.set_block(menu, ModelBlock{Matrix::Identity(n, n), entry.probabilities});
    }
  }
  return model;
}

std::set<AltPair> forced_zero_pairs(const ChoiceDataset& data, const Menu& menu, const Tolerances& tol) {
  DeltaGraph graph = build_delta_graph(data, menu, tol);
  std::set<AltPair> out;
  for (const auto& [pair, value] : graph.edges) {
    if (!bounded_in_cycle(graph, pair.first, pair.second)) {
      out.insert({std::min(pair.first, pair.second), std::max(pair.first, pair.second)});
    }
  }
  return out;
}

MscModel construct_irreducible(const ChoiceDataset& data, const Menu& menu, const Tolerances& tol) {
  const Universe& u = data.universe();
  CoveringWalk walk = theorem3_condition(data, menu, tol);
  if (!walk.holds) {
    if (walk.null_alternative) {
      throw ConstructionError("no irreducible model: " + u.name(*walk.null_alternative) +
                              " has zero probability on " + to_string(menu, u));
    }
    throw ConstructionError("no irreducible model: pair (" + u.name(walk.blocking_pair->first) + "," +
                            u.name(walk.blocking_pair->second) + ") is not bounded in a cycle");
  }

  // Adjust binary shares on forced pairs so that their Delta vanishes.
  std::set<AltPair> forced = forced_zero_pairs(data, menu, tol);
  ChoiceDataset adjusted = data;
  for (auto [k, l] : forced) {
    double pk = data.prob(k, menu), pl = data.prob(l, menu);
    Vector share(2);
    share << pk / (pk + pl), pl / (pk + pl);
    adjusted.set(Menu::pair(k, l), share);
  }
  DesignSystem sys = build_design_system(adjusted, menu, tol);
  FeasibilityResult strict = solve_feasibility(sys, Grade::strict);
  if (!strict.feasible) throw ConstructionError("adjusted data admits no strictly positive solution");

  MscModel model = construct_model(adjusted, menu, strict.gamma, ConstructOptions{forced}, tol);
  add_binary_blocks(model, data, menu);
  model.name = "irreducible";
  check_constructed(model, menu, menu_vector(data, menu), tol);
  if (!scc_decompose(model.block(menu).q).irreducible()) {
    throw ConstructionError("constructed block is not irreducible");
  }
  return model;
}

RationalizeCheck verify_rationalizes(const MscModel& model, const ChoiceDataset& data,
                                     std::span<const Menu> menus, const Tolerances& tol) {
  RationalizeCheck check;
  for (const Menu& menu : menus) {
    const ModelBlock& block = model.block(menu);
    Distribution limit = generate_limiting(block.q, block.pi);
    double gap = (limit - data.choice(menu)).cwiseAbs().maxCoeff();
    if (!check.worst_menu || gap > check.max_deviation) {
      check.max_deviation = gap;
      check.worst_menu = menu;
    }
  }
  check.ok = check.max_deviation <= tol.tol;
  return check;
}

bool has_pairwise_pattern(const Matrix& q) {
  for (Eigen::Index a = 0; a < q.rows(); ++a) {
    for (Eigen::Index b = a + 1; b < q.cols(); ++b) {
      if (!(q(a, b) > 0.0) && !(q(b, a) > 0.0)) return false;
    }
  }
  return true;
}

bool has_full_pattern(const Matrix& q) {
  for (Eigen::Index a = 0; a < q.rows(); ++a) {
    for (Eigen::Index b = 0; b < q.cols(); ++b) {
      if (a != b && !(q(a, b) > 0.0)) return false;
    }
  }
  return true;
}

RationalizeOutcome rationalize(const ChoiceDataset& data, const Menu& menu, ModelClass cls,
                               const Tolerances& tol) {
  RationalizeOutcome out;
  const Universe& u = data.universe();
  switch (cls) {
    case ModelClass::any: {
      MscModel model(u);
      model.name = "trivial";
      add_binary_blocks(model, data, menu);
      if (!menu.is_binary()) {
        const auto n = static_cast<Eigen::Index>(menu.size());
        model.set_block(menu, ModelBlock{Matrix::Identity(n, n), menu_vector(data, menu)});
      }
      out.model = std::move(model);
      return out;
    }
    case ModelClass::reversible: {
      // No flow on Delta-positive pairs; every remaining pair is detailed-balanced.
      DesignSystem sys = build_design_system(data, menu, tol);
      std::vector<Rational> zero(sys.cols(), Rational(0));
      ConstructOptions options;
      for (auto [a, b] : menu.pairs()) {
        if (!(data.prob(a, menu) > tol.delta) && !(data.prob(b, menu) > tol.delta)) {
          options.zeroed.insert({a, b});
        }
      }
      out.model = construct_model(data, menu, zero, options, tol);
      out.model->name = "reversible";
      return out;
    }
    case ModelClass::pairwise:
    case ModelClass::fully: {
      if (cls == ModelClass::fully) {
        PositivityResult pos = check_positivity(data, menu, tol);
        if (!pos.positive) {
          out.null_alternative = pos.witnesses.front().first;
          out.reason = "data is not positive: p(" + u.name(pos.witnesses.front().first) + "|" +
                       to_string(pos.witnesses.front().second, u) + ") = 0";
          return out;
        }
      }
      DesignSystem sys = build_design_system(data, menu, tol);
      FeasibilityResult strict = solve_feasibility(sys, Grade::strict);
      if (!strict.feasible) {
        ComparabilityConditions cond = theorem2_condition(data, menu, tol);
        if (!cond.unbounded.empty()) out.blocking_pair = cond.unbounded.front();
        out.reason = "no strictly positive solution of the design system";
        out.infeasibility = std::move(strict);
        return out;
      }
      out.model = construct_model(data, menu, strict.gamma, {}, tol);
      out.model->name = std::string(to_string(cls));
      return out;
    }
    case ModelClass::irreducible: {
      CoveringWalk walk = theorem3_condition(data, menu, tol);
      if (!walk.holds) {
        out.blocking_pair = walk.blocking_pair;
        out.null_alternative = walk.null_alternative;
        out.reason = walk.null_alternative ? "an alternative has zero probability on the menu"
                                           : "bounded pairs do not connect the menu";
        return out;
      }
      out.model = construct_irreducible(data, menu, tol);
      return out;
    }
  }
  return out;
}

}  // namespace msc
