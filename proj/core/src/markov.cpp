#include "msc/markov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace msc {

namespace {

void check_square(const Matrix& q, const Distribution& pi) {
  if (q.rows() != q.cols()) throw StructuralError("transition matrix must be square");
  if (pi.size() != q.rows()) throw StructuralError("initial distribution length mismatch");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("stopping probability must lie in (0,1), got " + std::to_string(alpha));
  }
}

}  // namespace

Distribution generate_finite(const Matrix& q, const Distribution& pi, double alpha) {
  check_square(q, pi);
  check_alpha(alpha);
  const auto n = q.rows();
  // rho (I - (1-alpha) Q) = alpha pi, solved in transposed form.
  Matrix system = Matrix::Identity(n, n) - (1.0 - alpha) * q;
  Eigen::PartialPivLU<Matrix> lu(system.transpose());
  Distribution rho = lu.solve(alpha * pi);
  if (!rho.allFinite()) throw Error("numeric failure in closed-form choice probabilities");
  // The exact solution sums to one; renormalising removes the error component that
  // lies along the near-null (stationary) direction when alpha is tiny.
  rho = rho.cwiseMax(0.0);
  double total = rho.sum();
  if (total > 0.0) rho /= total;
  return rho;
}

Distribution generate_series(const Matrix& q, const Distribution& pi, double alpha,
                             std::size_t periods) {
  check_square(q, pi);
  check_alpha(alpha);
  Eigen::RowVectorXd state = pi.transpose();
  Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(q.rows());
  double weight = alpha;
  for (std::size_t t = 0; t <= periods; ++t) {
    sum += weight * state;
    state = state * q;
    weight *= 1.0 - alpha;
  }
  return sum.transpose();
}

SccDecomposition scc_decompose(const Matrix& q) {
  if (q.rows() != q.cols()) throw StructuralError("transition matrix must be square");
  const std::size_t n = static_cast<std::size_t>(q.rows());
  auto arc = [&](std::size_t a, std::size_t b) {
    return q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) > 0.0;
  };

  // Tarjan's algorithm; menus are small, so recursion depth is bounded by n.
  std::vector<int> order(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    order[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (w == v || !arc(v, w)) continue;
      if (order[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], order[w]);
      }
    }
    if (low[v] == order[v]) {
      std::vector<std::size_t> component;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
      } while (w != v);
      std::sort(component.begin(), component.end());
      components.push_back(std::move(component));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (order[v] < 0) visit(v);
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  SccDecomposition scc;
  scc.classes = std::move(components);
  scc.class_index.assign(n, 0);
  for (std::size_t c = 0; c < scc.classes.size(); ++c) {
    for (std::size_t s : scc.classes[c]) scc.class_index[s] = c;
  }
  scc.closed.assign(scc.classes.size(), true);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (scc.class_index[a] != scc.class_index[b] && arc(a, b)) {
        scc.closed[scc.class_index[a]] = false;
      }
    }
  }
  return scc;
}

Distribution stationary_distribution(const Matrix& q, std::span<const std::size_t> states) {
  if (q.rows() != q.cols()) throw StructuralError("transition matrix must be square");
  const auto n = static_cast<std::size_t>(q.rows());
  if (states.empty()) throw PreconditionError("stationary distribution of an empty class");
  std::vector<bool> inside(n, false);
  for (std::size_t s : states) {
    if (s >= n) throw StructuralError("class state out of range");
    inside[s] = true;
  }
  for (std::size_t s : states) {
    for (std::size_t t = 0; t < n; ++t) {
      if (!inside[t] && q(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) > 0.0) {
        throw PreconditionError("class is not closed");
      }
    }
  }
  const auto m = static_cast<Eigen::Index>(states.size());
  Matrix sub(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      sub(a, b) = q(static_cast<Eigen::Index>(states[static_cast<std::size_t>(a)]),
                    static_cast<Eigen::Index>(states[static_cast<std::size_t>(b)]));
    }
  }
  if (!scc_decompose(sub).irreducible()) throw PreconditionError("class is not irreducible");
  if (m == 1) return Distribution::Ones(1);

  // (I - Q^T) rho = 0 with the last equation replaced by sum(rho) = 1.
  Matrix system = Matrix::Identity(m, m) - sub.transpose();
  system.row(m - 1).setOnes();
  Vector rhs = Vector::Zero(m);
  rhs[m - 1] = 1.0;
  Distribution rho = system.fullPivLu().solve(rhs);
  rho = rho.cwiseMax(0.0);
  return rho / rho.sum();
}

std::vector<ClassWeight> absorption_weights(const Matrix& q, const Distribution& pi,
                                            const SccDecomposition& scc) {
  check_square(q, pi);
  const std::size_t n = static_cast<std::size_t>(q.rows());
  std::vector<std::size_t> transient;
  std::vector<std::size_t> closed_ids;
  for (std::size_t c = 0; c < scc.size(); ++c) {
    if (scc.closed[c]) {
      closed_ids.push_back(c);
    } else {
      transient.insert(transient.end(), scc.classes[c].begin(), scc.classes[c].end());
    }
  }
  std::vector<ClassWeight> weights;
  for (std::size_t c : closed_ids) {
    double w = 0.0;
    for (std::size_t s : scc.classes[c]) w += pi[static_cast<Eigen::Index>(s)];
    weights.push_back({c, w});
  }
  if (!transient.empty()) {
    // (I - Q_TT) H = R, where R(t, c) is the one-step mass from t into closed class c.
    const auto nt = static_cast<Eigen::Index>(transient.size());
    const auto nc = static_cast<Eigen::Index>(closed_ids.size());
    Matrix q_tt(nt, nt);
    Matrix r = Matrix::Zero(nt, nc);
    std::vector<Eigen::Index> closed_column(scc.size(), -1);
    for (Eigen::Index c = 0; c < nc; ++c) closed_column[closed_ids[static_cast<std::size_t>(c)]] = c;
    for (Eigen::Index a = 0; a < nt; ++a) {
      const auto from = static_cast<Eigen::Index>(transient[static_cast<std::size_t>(a)]);
      for (Eigen::Index b = 0; b < nt; ++b) {
        q_tt(a, b) = q(from, static_cast<Eigen::Index>(transient[static_cast<std::size_t>(b)]));
      }
      for (std::size_t to = 0; to < n; ++to) {
        Eigen::Index col = closed_column[scc.class_index[to]];
        if (col >= 0) r(a, col) += q(from, static_cast<Eigen::Index>(to));
      }
    }
    Matrix h = (Matrix::Identity(nt, nt) - q_tt).partialPivLu().solve(r);
    for (Eigen::Index a = 0; a < nt; ++a) {
      double mass = pi[static_cast<Eigen::Index>(transient[static_cast<std::size_t>(a)])];
      if (mass == 0.0) continue;
      for (Eigen::Index c = 0; c < nc; ++c) weights[static_cast<std::size_t>(c)].weight += mass * h(a, c);
    }
  }
  return weights;
}

std::vector<ClassWeight> absorption_weights(const Matrix& q, const Distribution& pi) {
  return absorption_weights(q, pi, scc_decompose(q));
}

Distribution generate_limiting(const Matrix& q, const Distribution& pi) {
  check_square(q, pi);
  SccDecomposition scc = scc_decompose(q);
  Distribution rho = Distribution::Zero(q.rows());
  for (const ClassWeight& cw : absorption_weights(q, pi, scc)) {
    if (cw.weight == 0.0) continue;
    const auto& states = scc.classes[cw.class_id];
    Distribution local = stationary_distribution(q, states);
    for (std::size_t k = 0; k < states.size(); ++k) {
      rho[static_cast<Eigen::Index>(states[k])] += cw.weight * local[static_cast<Eigen::Index>(k)];
    }
  }
  // Weights and stationaries each carry rounding error; keep the result on the simplex.
  rho = rho.cwiseMax(0.0);
  return rho / rho.sum();
}

}  // namespace msc
