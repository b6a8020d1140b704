#pragma once

// Dense two-phase tableau simplex with Bland's rule, generic over the scalar.
// Rational scalars give exact answers; doubles use a fixed pivot tolerance.
//
//   minimise c.x  subject to  A x = b,  x >= 0
//
// On infeasibility a Farkas vector y with yA <= 0 and yb > 0 is returned.

#include <cmath>
#include <cstddef>
#include <vector>

namespace msc::detail {

template <class T>
struct ExactOps {
  static bool positive(const T& v) { return v > 0; }
  static bool negative(const T& v) { return v < 0; }
  static bool zero(const T& v) { return v == 0; }
};

struct FloatOps {
  static constexpr double eps = 1e-9;
  static bool positive(double v) { return v > eps; }
  static bool negative(double v) { return v < -eps; }
  static bool zero(double v) { return std::abs(v) <= eps; }
};

enum class LpStatus { optimal, infeasible, unbounded };

template <class T>
struct LpProblem {
  std::vector<std::vector<T>> a;  ///< m rows of n coefficients
  std::vector<T> b;
  std::vector<T> c;
};

template <class T>
struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<T> x;
  std::vector<T> farkas;
  T objective{};
};

template <class T, class Ops>
class Tableau {
 public:
  explicit Tableau(const LpProblem<T>& p)
      : m_(p.b.size()), n_(p.c.size()), rows_(m_), flip_(m_, false), basis_(m_), live_(m_, true) {
    for (std::size_t i = 0; i < m_; ++i) {
      auto& row = rows_[i];
      row.assign(n_ + m_ + 1, T(0));
      flip_[i] = Ops::negative(p.b[i]);
      for (std::size_t j = 0; j < n_; ++j) row[j] = flip_[i] ? T(-p.a[i][j]) : p.a[i][j];
      row[n_ + i] = T(1);
      row[n_ + m_] = flip_[i] ? T(-p.b[i]) : p.b[i];
      basis_[i] = n_ + i;
    }
  }

  LpSolution<T> solve(const std::vector<T>& cost) {
    LpSolution<T> out;
    std::vector<T> phase1(n_ + m_, T(0));
    for (std::size_t i = 0; i < m_; ++i) phase1[n_ + i] = T(1);
    run(phase1, n_ + m_);

    T infeasibility(0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) infeasibility += rhs(i);
    }
    if (Ops::positive(infeasibility)) {
      out.status = LpStatus::infeasible;
      out.farkas.assign(m_, T(0));
      for (std::size_t k = 0; k < m_; ++k) {
        // y_k = c_B B^{-1} e_k, read from the artificial column of row k.
        T y(0);
        for (std::size_t i = 0; i < m_; ++i) {
          if (live_[i] && basis_[i] >= n_) y += rows_[i][n_ + k];
        }
        out.farkas[k] = flip_[k] ? T(-y) : y;
      }
      return out;
    }

    drive_out_artificials();
    std::vector<T> phase2(n_ + m_, T(0));
    for (std::size_t j = 0; j < n_; ++j) phase2[j] = cost[j];
    if (!run(phase2, n_)) {
      out.status = LpStatus::unbounded;
      return out;
    }
    out.status = LpStatus::optimal;
    out.x.assign(n_, T(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (live_[i] && basis_[i] < n_) out.x[basis_[i]] = rhs(i);
    }
    for (std::size_t j = 0; j < n_; ++j) out.objective += cost[j] * out.x[j];
    return out;
  }

 private:
  const T& rhs(std::size_t i) const { return rows_[i][n_ + m_]; }

  /// Minimises `cost` over columns [0, limit). Returns false if unbounded.
  bool run(const std::vector<T>& cost, std::size_t limit) {
    for (;;) {
      std::size_t entering = limit;
      for (std::size_t j = 0; j < limit && entering == limit; ++j) {
        if (is_basic(j)) continue;
        T reduced = cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
          if (live_[i]) reduced -= cost[basis_[i]] * rows_[i][j];
        }
        if (Ops::negative(reduced)) entering = j;
      }
      if (entering == limit) return true;

      std::size_t leaving = m_;
      T best{};
      for (std::size_t i = 0; i < m_; ++i) {
        if (!live_[i] || !Ops::positive(rows_[i][entering])) continue;
        T ratio = rhs(i) / rows_[i][entering];
        if (leaving == m_ || ratio < best || (!(best < ratio) && basis_[i] < basis_[leaving])) {
          leaving = i;
          best = ratio;
        }
      }
      if (leaving == m_) return false;
      pivot(leaving, entering);
    }
  }

  bool is_basic(std::size_t j) const {
    for (std::size_t i = 0; i < m_; ++i) {
      if (live_[i] && basis_[i] == j) return true;
    }
    return false;
  }

  void pivot(std::size_t r, std::size_t col) {
    T scale = rows_[r][col];
    for (auto& v : rows_[r]) v /= scale;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || !live_[i] || Ops::zero(rows_[i][col])) continue;
      T factor = rows_[i][col];
      for (std::size_t j = 0; j < rows_[i].size(); ++j) {
        rows_[i][j] -= factor * rows_[r][j];
        if (Ops::zero(rows_[i][j])) rows_[i][j] = T(0);
      }
    }
    basis_[r] = col;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!live_[i] || basis_[i] < n_) continue;
      std::size_t col = n_;
      for (std::size_t j = 0; j < n_ && col == n_; ++j) {
        if (!is_basic(j) && !Ops::zero(rows_[i][j])) col = j;
      }
      if (col == n_) {
        live_[i] = false;  // redundant equation
      } else {
        pivot(i, col);
      }
    }
  }

  std::size_t m_, n_;
  std::vector<std::vector<T>> rows_;
  std::vector<bool> flip_;
  std::vector<std::size_t> basis_;
  std::vector<bool> live_;
};

template <class T, class Ops>
LpSolution<T> solve_lp(const LpProblem<T>& problem) {
  Tableau<T, Ops> tableau(problem);
  return tableau.solve(problem.c);
}

}  // namespace msc::detail
