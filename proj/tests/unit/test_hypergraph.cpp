#include <gtest/gtest.h>

#include "ecw/ecw.hpp"
#include "support/corpus.hpp"

namespace ecw {
namespace {

using testing::CutOracle;
using testing::ModelSpec;

// One vertex per color (A.. then O) plus the given internal vertices.
ModelSpec five_party(const std::vector<std::vector<std::string>>& edges, std::vector<std::string> internal = {}) {
  ModelSpec s;
  s.parties = 5;
  for (int c = 0; c <= 5; ++c) {
    const std::string id(1, c < 5 ? static_cast<char>('A' + c) : 'O');
    s.ids.push_back(id);
    s.boundary[id] = c;
  }
  for (auto& v : internal) s.ids.push_back(v);
  for (const auto& e : edges) s.edges.push_back({e, Rational(1)});
  return s;
}

TEST(CutWeight, TrivialCuts) {
  ModelSpec s;
  s.parties = 2;
  s.ids = {"a", "b", "c"};
  s.boundary = {{"a", 0}, {"b", 1}, {"c", 2}};
  s.edges = {{{"a", "b", "c"}, Rational(1)}};
  const auto h = s.build();
  EXPECT_EQ(cut_weight(h, Cut{}), Rational(0));
  EXPECT_EQ(cut_weight(h, Cut{0b111}), Rational(0));
  EXPECT_EQ(cut_weight(h, h.make_cut({"a"})), Rational(1));
}

TEST(MinCut, SingleEdgeHasTwoCutsAndPicksTheBoundary) {
  ModelSpec s;
  s.parties = 1;
  s.ids = {"vA", "vO"};
  s.boundary = {{"vA", 0}, {"vO", 1}};
  s.edges = {{{"vA", "vO"}, Rational(1)}};
  const auto h = s.build();
  const auto m = min_cut(h, 0b1);
  EXPECT_EQ(m.weight, Rational(1));
  EXPECT_EQ(h.cut_ids(m.witness), std::vector<std::string>{"vA"});
}

TEST(MinCut, AllColorHyperedgeGivesOneEverywhere) {
  const auto h = five_party({{"A", "B", "C", "D", "E", "O"}}).build();
  for (PartyMask I = 1; I < 32; ++I) EXPECT_EQ(min_cut(h, I).weight, Rational(1)) << I;
}

TEST(MinCut, EdgeInsideTheCutContributesNothing) {
  auto s = five_party({{"A", "B"}, {"A", "O"}});
  const auto h = s.build();
  EXPECT_EQ(min_cut(h, 0b00011).weight, Rational(1));
  EXPECT_EQ(cut_weight(h, h.make_cut({"A", "B"})), Rational(1));
}

TEST(MinCut, EnumeratesDegenerateCuts) {
  ModelSpec s;
  s.parties = 1;
  s.ids = {"vA", "m", "vO"};
  s.boundary = {{"vA", 0}, {"vO", 1}};
  s.edges = {{{"vA", "m"}, Rational(1)}, {{"m", "vO"}, Rational(1)}};
  const auto h = s.build();
  const auto cuts = enumerate_min_cuts(h, 0b1);
  ASSERT_EQ(cuts.size(), 2u);
  EXPECT_EQ(h.cut_ids(cuts[0]), std::vector<std::string>{"vA"});
  EXPECT_EQ(h.cut_ids(cuts[1]), (std::vector<std::string>{"vA", "m"}));
  EXPECT_EQ(h.cut_ids(min_cut(h, 0b1).witness), std::vector<std::string>{"vA"});
  for (const auto& c : cuts) EXPECT_EQ(cut_weight(h, c), Rational(1));
}

TEST(MinCut, UniqueMinCutIsSingleton) {
  const auto h = five_party({{"A", "B"}}).build();
  EXPECT_EQ(enumerate_min_cuts(h, 0b1).size(), 1u);
}

TEST(EntropyVector, BellPairMatchesFirstRow) {
  const auto h = five_party({{"A", "B"}}).build();
  EXPECT_EQ(entropy_vector(h), parse_entropy_vector(testing::six_qubit_rows()[0]));
}

TEST(EntropyVector, FivePartyHyperedgeMatchesFifthRow) {
  const auto h = five_party({{"A", "B", "C", "D", "E"}}).build();
  EXPECT_EQ(entropy_vector(h), parse_entropy_vector(testing::six_qubit_rows()[4]));
}

TEST(EntropyVector, EmptyModelIsZero) {
  EXPECT_EQ(entropy_vector(five_party({}).build()), EntropyVector(5));
}

TEST(Model, ValidationErrors) {
  ModelSpec s = five_party({});
  auto bad = s;
  bad.boundary.erase("O");
  EXPECT_THROW(bad.build(), std::invalid_argument);  // purifier color missing
  bad = s;
  bad.edges.push_back({{"A"}, Rational(1)});
  EXPECT_THROW(bad.build(), std::invalid_argument);  // arity 1
  bad = s;
  bad.edges.push_back({{"A", "A"}, Rational(1)});
  EXPECT_THROW(bad.build(), std::invalid_argument);
  bad = s;
  bad.edges.push_back({{"A", "B"}, Rational(0)});
  EXPECT_THROW(bad.build(), std::invalid_argument);
  bad = s;
  bad.edges.push_back({{"A", "zz"}, Rational(1)});
  EXPECT_THROW(bad.build(), std::invalid_argument);
  bad = s;
  bad.ids.push_back("A");
  EXPECT_THROW(bad.build(), std::invalid_argument);
  bad = s;
  bad.boundary["A"] = 6;
  EXPECT_THROW(bad.build(), std::invalid_argument);
}

TEST(Model, JsonRoundTrip) {
  testing::Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto h = testing::random_model_spec(rng, testing::uniform(rng, 1, 5)).build();
    const auto back = parse_hypergraph_json(hypergraph_to_json(h));
    EXPECT_EQ(back, h);
    EXPECT_EQ(hypergraph_to_json(back), hypergraph_to_json(h));
  }
}

TEST(Model, JsonErrors) {
  EXPECT_THROW(parse_hypergraph_json("{"), std::invalid_argument);
  EXPECT_THROW(parse_hypergraph_json(R"({"parties": 1, "vertices": ["a"]})"), std::invalid_argument);
  EXPECT_THROW(parse_hypergraph_json(R"({"parties": 1, "vertices": ["a","b"], "boundary": {"a": "A", "b": "Q"}})"),
               std::invalid_argument);
}

class RandomModels : public ::testing::TestWithParam<int> {};

TEST_P(RandomModels, MinCutAgreesWithOracle) {
  testing::Rng rng(static_cast<std::uint64_t>(GetParam()));
  for (int t = 0; t < 20; ++t) {
    const int n = testing::uniform(rng, 1, 4);
    const auto spec = testing::random_model_spec(rng, n);
    const auto h = spec.build();
    const CutOracle oracle(spec);
    for (PartyMask I = 1; I <= full_mask(n); ++I) {
      const auto label = testing::letters(I);
      const auto m = min_cut(h, I);
      EXPECT_EQ(m.weight, oracle.min_cut(label));
      std::set<std::vector<int>> got;
      for (const auto& c : enumerate_min_cuts(h, I)) got.insert(testing::members_of(c));
      EXPECT_EQ(got, oracle.min_cuts(label));
      // The witness is the lexicographically smallest minimizer.
      EXPECT_EQ(testing::members_of(m.witness), *oracle.min_cuts(label).begin());
    }
  }
}

TEST_P(RandomModels, PurifierDuality) {
  // Relabeling a model and permuting its vector agree, including swaps with O.
  testing::Rng rng(100 + static_cast<std::uint64_t>(GetParam()));
  for (int t = 0; t < 10; ++t) {
    const int n = testing::uniform(rng, 1, 4);
    const auto h = testing::random_model_spec(rng, n).build();
    std::vector<int> image(static_cast<std::size_t>(n) + 1);
    std::iota(image.begin(), image.end(), 0);
    std::shuffle(image.begin(), image.end(), rng);
    const LabelPermutation g(image);
    EXPECT_EQ(entropy_vector(relabeled(h, g)), entropy_vector(h).permuted(g));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomModels, ::testing::Range(1, 6));

}  // namespace
}  // namespace ecw
