#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "msc/axioms.hpp"
#include "msc/cycles.hpp"
#include "msc/markov.hpp"
#include "msc/rationalize.hpp"

namespace {

using namespace msc;

Matrix random_chain(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix q(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) q(r, c) = r == c ? 0.0 : u(rng);
    q.row(r) *= 0.5 / q.row(r).sum();
    q(r, r) = 0.5;
  }
  return q;
}

Menu full_menu(std::size_t n) {
  std::vector<Index> all(n);
  for (std::size_t k = 0; k < n; ++k) all[k] = k;
  return Menu(all);
}

/// Grand-menu shares plus random binary shares: generic data with many Delta cycles.
ChoiceDataset random_data(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back("a" + std::to_string(k));
  ChoiceDataset d{Universe(names)};
  Menu m = full_menu(n);
  Vector p(static_cast<Eigen::Index>(n));
  for (auto& x : p) x = u(rng);
  d.set(m, p / p.sum());
  for (auto [a, b] : m.pairs()) {
    double s = u(rng);
    d.set(Menu::pair(a, b), Vector{{s, 1.0 - s}});
  }
  return d;
}

void BM_GenerateLimiting(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = state.range(0);
  Matrix q = random_chain(n, rng);
  Vector pi = Vector::Constant(n, 1.0 / static_cast<double>(n));
  for (auto _ : state) benchmark::DoNotOptimize(generate_limiting(q, pi));
}
BENCHMARK(BM_GenerateLimiting)->Arg(4)->Arg(16)->Arg(64);

void BM_GenerateFinite(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto n = state.range(0);
  Matrix q = random_chain(n, rng);
  Vector pi = Vector::Constant(n, 1.0 / static_cast<double>(n));
  for (auto _ : state) benchmark::DoNotOptimize(generate_finite(q, pi, 0.1));
}
BENCHMARK(BM_GenerateFinite)->Arg(4)->Arg(16)->Arg(64);

void BM_Kolmogorov(benchmark::State& state) {
  std::mt19937_64 rng(3);
  Matrix q = random_chain(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(check_kolmogorov(q, 1e-9));
}
BENCHMARK(BM_Kolmogorov)->DenseRange(4, 8, 2);

void BM_Classify(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ChoiceDataset d = random_data(n, 4);
  Menu m = full_menu(n);
  for (auto _ : state) benchmark::DoNotOptimize(classify(d, m));
}
BENCHMARK(BM_Classify)->Arg(4)->Arg(8)->Arg(16);

void BM_EnumerateCycles(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ChoiceDataset d = random_data(n, 5);
  Menu m = full_menu(n);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_sign_consistent_cycles(d, m));
}
BENCHMARK(BM_EnumerateCycles)->DenseRange(4, 7, 1);

void BM_FeasibilityExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ChoiceDataset d = random_data(n, 6);
  DesignSystem sys = build_design_system(d, full_menu(n));
  for (auto _ : state) benchmark::DoNotOptimize(solve_feasibility(sys, Grade::strict));
}
BENCHMARK(BM_FeasibilityExact)->Arg(4)->Arg(6)->Arg(8);

void BM_FeasibilityFloat(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ChoiceDataset d = random_data(n, 6);
  DesignSystem sys = build_design_system(d, full_menu(n));
  for (auto _ : state) benchmark::DoNotOptimize(solve_feasibility_float(sys, Grade::strict));
}
BENCHMARK(BM_FeasibilityFloat)->Arg(4)->Arg(6)->Arg(8);

void BM_ConstructIrreducible(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Menu m = full_menu(n);
  std::uint64_t seed = 7;
  ChoiceDataset d = random_data(n, seed);
  while (!theorem3_condition(d, m).holds) d = random_data(n, ++seed);
  for (auto _ : state) benchmark::DoNotOptimize(construct_irreducible(d, m));
}
BENCHMARK(BM_ConstructIrreducible)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
