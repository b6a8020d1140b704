#include <random>

#include <gtest/gtest.h>

#include "msc/detail/simplex.hpp"
#include "msc/rational.hpp"

namespace msc {
namespace {

using detail::LpProblem;
using detail::LpStatus;
using Exact = detail::ExactOps<Rational>;
using Float = detail::FloatOps;

Rational r(long n, long d = 1) { return Rational(n, d); }

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  T s(0);
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

TEST(Simplex, SolvesSmallSystem) {
  LpProblem<Rational> p{{{r(1), r(2)}, {r(1), r(-1)}}, {r(4), r(1)}, {r(1), r(1)}};
  auto s = detail::solve_lp<Rational, Exact>(p);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_EQ(s.x[0], r(2));
  EXPECT_EQ(s.x[1], r(1));
  EXPECT_EQ(s.objective, r(3));
}

TEST(Simplex, InfeasibleGivesFarkasVector) {
  LpProblem<Rational> p{{{r(1), r(1)}, {r(1), r(-1)}}, {r(-1), r(0)}, {r(0), r(0)}};
  auto s = detail::solve_lp<Rational, Exact>(p);
  ASSERT_EQ(s.status, LpStatus::infeasible);
  ASSERT_EQ(s.farkas.size(), 2u);
  for (std::size_t j = 0; j < 2; ++j) {
    Rational col = s.farkas[0] * p.a[0][j] + s.farkas[1] * p.a[1][j];
    EXPECT_LE(col, 0);
  }
  EXPECT_GT(dot(s.farkas, p.b), 0);
}

TEST(Simplex, DetectsUnbounded) {
  LpProblem<Rational> p{{{r(1), r(-1)}}, {r(0)}, {r(-1), r(0)}};
  EXPECT_EQ((detail::solve_lp<Rational, Exact>(p).status), LpStatus::unbounded);
}

TEST(Simplex, DropsRedundantRows) {
  LpProblem<Rational> p{{{r(1), r(1)}, {r(2), r(2)}}, {r(1), r(2)}, {r(1), r(0)}};
  auto s = detail::solve_lp<Rational, Exact>(p);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_EQ(s.objective, r(0));
  EXPECT_EQ(s.x[1], r(1));
}

TEST(Simplex, BlandRuleTerminatesOnDegenerateProblem) {
  // Classic cycling instance for the largest-coefficient rule; slack variables first.
  LpProblem<Rational> p{
      {{r(1), r(0), r(0), r(1, 4), r(-8), r(-1), r(9)},
       {r(0), r(1), r(0), r(1, 2), r(-12), r(-1, 2), r(3)},
       {r(0), r(0), r(1), r(0), r(0), r(1), r(0)}},
      {r(0), r(0), r(1)},
      {r(0), r(0), r(0), r(-3, 4), r(20), r(-1, 2), r(6)}};
  auto s = detail::solve_lp<Rational, Exact>(p);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_EQ(s.objective, r(-5, 4));
}

TEST(Simplex, FloatMatchesExactOnRandomFeasibleProblems) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coef(-5, 5), pos(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 3, n = 6;
    LpProblem<Rational> pe;
    LpProblem<double> pf;
    std::vector<int> x0(n);
    for (auto& v : x0) v = pos(rng);
    pe.a.assign(m, std::vector<Rational>(n));
    pf.a.assign(m, std::vector<double>(n));
    for (std::size_t i = 0; i < m; ++i) {
      int b = 0;
      for (std::size_t j = 0; j < n; ++j) {
        int v = coef(rng);
        pe.a[i][j] = v;
        pf.a[i][j] = v;
        b += v * x0[j];
      }
      pe.b.push_back(b);
      pf.b.push_back(b);
    }
    for (std::size_t j = 0; j < n; ++j) {
      int v = pos(rng) + 1;  // positive costs keep the problem bounded
      pe.c.push_back(v);
      pf.c.push_back(v);
    }
    auto se = detail::solve_lp<Rational, Exact>(pe);
    auto sf = detail::solve_lp<double, Float>(pf);
    ASSERT_EQ(se.status, LpStatus::optimal);
    ASSERT_EQ(sf.status, LpStatus::optimal);
    EXPECT_NEAR(to_double(se.objective), sf.objective, 1e-7);
    for (std::size_t i = 0; i < m; ++i) EXPECT_EQ(dot(pe.a[i], se.x), pe.b[i]);
  }
}

}  // namespace
}  // namespace msc
