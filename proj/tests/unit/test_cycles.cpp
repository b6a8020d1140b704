#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "msc/cycles.hpp"
#include "oracles.hpp"

namespace msc {
namespace {

using namespace msc::testing;

bool contains_cycle(const std::vector<CycleWitness>& cycles, std::vector<AltPair> wanted, Sign sign) {
  std::sort(wanted.begin(), wanted.end());
  for (const auto& c : cycles) {
    auto pairs = c.pairs;
    std::sort(pairs.begin(), pairs.end());
    if (pairs == wanted && c.sign == sign) return true;
  }
  return false;
}

TEST(Delta, WorkedValues) {
  EXPECT_NEAR(delta(example2(), grand(), I, K), 0.025, 1e-15);
  EXPECT_NEAR(delta(example3(), grand(), I, L), 0.0, 1e-15);
  EXPECT_EQ(exact_delta(example3(), grand(), I, L), Rational(0));
  EXPECT_EQ(exact_delta(example2(), grand(), I, K), Rational(1, 40));
}

TEST(Delta, Antisymmetric) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    ChoiceDataset d = random_dataset(5, rng);
    Menu m({0, 1, 2, 3, 4});
    for (auto [a, b] : m.pairs()) EXPECT_EQ(delta(d, m, a, b), -delta(d, m, b, a));
  }
}

TEST(Delta, RejectsBadPairs) {
  EXPECT_THROW(delta(example1(), grand(), I, I), LookupError);
  EXPECT_THROW(delta(example1(), Menu({I, J, K}), I, J), LookupError);
}

TEST(DeltaGraph, FirstExampleIsStarOutOfK) {
  DeltaGraph g = build_delta_graph(example1(), grand());
  ASSERT_EQ(g.edges.size(), 3u);
  EXPECT_NEAR(g.edges.at({K, I}), 0.1, 1e-15);
  EXPECT_NEAR(g.edges.at({K, J}), 0.16, 1e-15);
  EXPECT_NEAR(g.edges.at({K, L}), 0.16, 1e-15);
  EXPECT_EQ(g.zero_pairs, (std::set<AltPair>{{I, J}, {I, L}, {J, L}}));
  EXPECT_NEAR(g.margin, 0.1, 1e-15);
  EXPECT_EQ(g.sign(I, K), Sign::negative);
  EXPECT_EQ(g.successors(K), (std::vector<Index>{I, J, L}));
}

TEST(DeltaGraph, LuceDataHasNoEdges) {
  DeltaGraph g = build_delta_graph(luce_data({1, 2, 3, 4}), grand());
  EXPECT_TRUE(g.edges.empty());
  EXPECT_EQ(g.zero_pairs.size(), 6u);
}

TEST(DeltaGraph, SecondAndThirdExamples) {
  DeltaGraph g2 = build_delta_graph(example2(), grand());
  std::map<AltPair, double> want2{{{I, K}, 0.025}, {{J, I}, 0.015}, {{L, I}, 0.01},
                                  {{K, J}, 0.008}, {{J, L}, 0.005}, {{K, L}, 0.012}};
  ASSERT_EQ(g2.edges.size(), want2.size());
  for (auto& [pair, value] : want2) EXPECT_NEAR(g2.edges.at(pair), value, 1e-15);

  DeltaGraph g3 = build_delta_graph(example3(), grand());
  std::map<AltPair, double> want3{{{J, I}, 0.03}, {{I, K}, 0.01}, {{K, J}, 0.012},
                                  {{J, L}, 0.03}, {{K, L}, 0.036}};
  ASSERT_EQ(g3.edges.size(), want3.size());
  for (auto& [pair, value] : want3) EXPECT_NEAR(g3.edges.at(pair), value, 1e-15);
  EXPECT_EQ(g3.zero_pairs, (std::set<AltPair>{{I, L}}));
}

TEST(DeltaGraph, EveryPairOnceAndAntisymmetric) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    ChoiceDataset d = random_dataset(6, rng);
    Menu m({0, 1, 2, 3, 4, 5});
    DeltaGraph g = build_delta_graph(d, m);
    for (auto [a, b] : m.pairs()) {
      int seen = int(g.has_edge(a, b)) + int(g.has_edge(b, a)) + int(g.zero_pairs.count({a, b}));
      EXPECT_EQ(seen, 1);
    }
  }
}

TEST(Enumeration, SecondExampleHasPositiveFourCycle) {
  auto cycles = enumerate_sign_consistent_cycles(example2(), grand());
  EXPECT_TRUE(contains_cycle(cycles, {{I, K}, {K, J}, {J, L}, {L, I}}, Sign::positive));
  EXPECT_TRUE(contains_cycle(cycles, {{K, I}, {J, K}, {L, J}, {I, L}}, Sign::negative));
}

TEST(Enumeration, FirstExampleOnlyZeroCycles) {
  auto cycles = enumerate_sign_consistent_cycles(example1(), grand());
  EXPECT_FALSE(cycles.empty());
  for (const auto& c : cycles) EXPECT_EQ(c.sign, Sign::zero);
}

TEST(Enumeration, ThirdExampleHasPositiveTriangle) {
  auto cycles = enumerate_sign_consistent_cycles(example3(), grand());
  EXPECT_TRUE(contains_cycle(cycles, {{J, I}, {I, K}, {K, J}}, Sign::positive));
}

TEST(Enumeration, WitnessesChainAndCoverSubsetOnce) {
  auto cycles = enumerate_sign_consistent_cycles(example2(), grand());
  for (const auto& c : cycles) {
    std::set<Index> from;
    for (std::size_t k = 0; k < c.pairs.size(); ++k) {
      EXPECT_EQ(c.pairs[k].second, c.pairs[(k + 1) % c.pairs.size()].first);
      from.insert(c.pairs[k].first);
    }
    EXPECT_EQ(from.size(), c.pairs.size());
  }
}

TEST(Enumeration, CapacityLimit) {
  Rng rng(4);
  ChoiceDataset d = random_dataset(8, rng);
  EXPECT_THROW(enumerate_sign_consistent_cycles(d, Menu({0, 1, 2, 3, 4, 5, 6, 7})), CapacityError);
}

TEST(Theorem1, WorkedExamples) {
  EXPECT_TRUE(theorem1_condition(example1(), grand()));
  EXPECT_FALSE(theorem1_condition(example2(), grand()));
  EXPECT_TRUE(theorem1_condition(luce_data({1, 2, 3, 4}), grand()));
  auto cycle = find_positive_cycle(build_delta_graph(example2(), grand()));
  ASSERT_TRUE(cycle.has_value());
  DeltaGraph g = build_delta_graph(example2(), grand());
  for (auto [a, b] : *cycle) EXPECT_TRUE(g.has_edge(a, b));
}

TEST(Bounded, WorkedExamples) {
  EXPECT_TRUE(bounded_in_cycle(example2(), grand(), {I, J}));
  EXPECT_FALSE(bounded_in_cycle(example3(), grand(), {J, L}));
  EXPECT_FALSE(bounded_in_cycle(example3(), grand(), {L, J}));
  EXPECT_TRUE(bounded_in_cycle(example3(), grand(), {I, L}));
  EXPECT_TRUE(bounded_in_cycle(example1(), grand(), {I, J}));
  EXPECT_FALSE(bounded_in_cycle(example1(), grand(), {I, K}));
}

TEST(Theorem2, WorkedExamples) {
  auto c2 = theorem2_condition(example2(), grand());
  EXPECT_TRUE(c2.pairwise);
  EXPECT_TRUE(c2.fully);
  auto c3 = theorem2_condition(example3(), grand());
  EXPECT_FALSE(c3.pairwise);
  EXPECT_EQ(c3.unbounded, (std::vector<AltPair>{{J, L}, {K, L}}));
  auto c1 = theorem2_condition(example1(), grand());
  EXPECT_FALSE(c1.pairwise);
  EXPECT_EQ(c1.unbounded.size(), 3u);
}

void expect_covering(const CoveringWalk& w, const ChoiceDataset& d, const Menu& m) {
  ASSERT_TRUE(w.holds);
  std::set<Index> visited;
  for (std::size_t k = 0; k < w.walk.size(); ++k) {
    EXPECT_EQ(w.walk[k].second, w.walk[(k + 1) % w.walk.size()].first);
    EXPECT_TRUE(bounded_in_cycle(d, m, w.walk[k]));
    visited.insert(w.walk[k].first);
  }
  EXPECT_EQ(visited.size(), m.size());
}

TEST(Theorem3, WorkedExamples) {
  expect_covering(theorem3_condition(example3(), grand()), example3(), grand());
  expect_covering(theorem3_condition(example2(), grand()), example2(), grand());
  auto w1 = theorem3_condition(example1(), grand());
  EXPECT_FALSE(w1.holds);
  ASSERT_TRUE(w1.blocking_pair.has_value());
  EXPECT_TRUE(w1.blocking_pair->first == K || w1.blocking_pair->second == K);
}

TEST(Theorem3, NullAlternativeBlocks) {
  ChoiceDataset d = four_way({"0.5", "0.5", "0", "0"});
  auto w = theorem3_condition(d, grand());
  EXPECT_FALSE(w.holds);
  EXPECT_EQ(*w.null_alternative, K);
}

TEST(Classify, Flags) {
  auto r1 = classify(example1(), grand());
  EXPECT_TRUE(r1.reversible_only);
  EXPECT_FALSE(r1.pairwise);
  EXPECT_FALSE(r1.irreducible);
  EXPECT_FALSE(r1.luce);
  auto r2 = classify(example2(), grand());
  EXPECT_TRUE(r2.fully);
  EXPECT_FALSE(r2.reversible_only);
  EXPECT_TRUE(r2.irreducible);
  auto rl = classify(luce_data({1, 2, 3, 4}), grand());
  EXPECT_TRUE(rl.rationalizable_always && rl.reversible_only && rl.pairwise && rl.fully &&
              rl.irreducible && rl.luce);
}

TEST(Classify, GraphAgreesWithEnumeration) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 3 + trial % 5;  // up to 7
    ChoiceDataset d = random_dataset(n, rng);
    std::vector<Index> all(n);
    for (std::size_t k = 0; k < n; ++k) all[k] = k;
    Menu m(all);
    auto cycles = enumerate_sign_consistent_cycles(d, m);
    EXPECT_EQ(theorem1_condition(d, m), oracle_reversible_only(cycles));
    for (auto [a, b] : m.pairs()) EXPECT_EQ(bounded_in_cycle(d, m, {a, b}), oracle_bounded(cycles, a, b));
    EXPECT_EQ(theorem2_condition(d, m).pairwise, oracle_pairwise(d, m));
    EXPECT_EQ(theorem2_condition(d, m).fully, oracle_fully(d, m));
    EXPECT_EQ(theorem3_condition(d, m).holds, oracle_irreducible(d, m));
  }
}

TEST(Classify, PairwiseImpliesIrreducibleUnderPositivity) {
  Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    ChoiceDataset d = random_dataset(5, rng);
    Menu m({0, 1, 2, 3, 4});
    auto r = classify(d, m);
    if (r.fully) EXPECT_TRUE(r.irreducible);
    EXPECT_EQ(r.reversible_only && r.fully, r.positivity.positive && r.iia.holds);
  }
}

}  // namespace
}  // namespace msc
