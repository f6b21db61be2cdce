#include <gtest/gtest.h>

#include "crn/graph.hpp"
#include "crn/linalg.hpp"
#include "crn/parser.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace crn;

namespace {
const char* kPoissonPair = "0 -> A + B ; 1\nA + B -> A ; 1\nA -> 0 ; 1\n";
const char* kReversiblePair = "A + B <-> 2C ; 1, 1\nA <-> B ; 1, 1\n";
const char* kCubicDeath = "0 -> A ; 1\n3A -> 2A ; 1\n";
ReactionNetwork net_of(const char* text) { return parse_network(text).network; }
}  // namespace

TEST(Linalg, RankMatchesRationalOracle) {
  gen::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto rows = static_cast<std::size_t>(gen::uniform_int(rng, 1, 5));
    const auto cols = static_cast<std::size_t>(gen::uniform_int(rng, 1, 5));
    std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(cols));
    for (auto& r : a)
      for (auto& v : r) v = gen::uniform_int(rng, -3, 3);
    if (trial % 3 == 0 && rows > 1) a[rows - 1] = a[0];  // force dependence
    linalg::IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = a[i][j];
    EXPECT_EQ(linalg::rank(m), oracle::rational_rank(a));
  }
}

TEST(Linalg, LargeEntriesStayExact) {
  linalg::IntMatrix m(2, 2);
  m(0, 0) = 1'000'000'007;
  m(0, 1) = 1'000'000'009;
  m(1, 0) = 1'000'000'009;
  m(1, 1) = 1'000'000'011;   // det = -4
  EXPECT_EQ(linalg::rank(m), 2u);
}

TEST(LinkageClasses, Fixtures) {
  auto rp = linkage_classes(net_of(kReversiblePair));
  EXPECT_EQ(rp.num_classes(), 2u);
  EXPECT_EQ(rp.classes[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(rp.classes[1], (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(linkage_classes(net_of(kPoissonPair)).num_classes(), 1u);
  EXPECT_EQ(linkage_classes(net_of(kCubicDeath)).num_classes(), 2u);
}

TEST(Reversibility, Fixtures) {
  EXPECT_TRUE(is_reversible(net_of(kReversiblePair)));
  EXPECT_TRUE(is_weakly_reversible(net_of(kReversiblePair)));
  EXPECT_FALSE(is_reversible(net_of(kPoissonPair)));
  EXPECT_TRUE(is_weakly_reversible(net_of(kPoissonPair)));
  EXPECT_FALSE(is_weakly_reversible(net_of(kCubicDeath)));
}

TEST(StoichiometricSubspace, Fixtures) {
  const auto rp = stoichiometric_subspace(net_of(kReversiblePair));
  EXPECT_EQ(rp.dim, 2u);
  EXPECT_EQ(stoichiometric_subspace(net_of(kPoissonPair)).dim, 2u);
  EXPECT_EQ(stoichiometric_subspace(net_of(kCubicDeath)).dim, 1u);
  for (std::size_t b = 0; b < rp.basis.size(); ++b)
    EXPECT_EQ(rp.basis[b], rp.reaction_vectors[rp.basis_reactions[b]]);
}

TEST(Deficiency, FixturesByBothRoutes) {
  struct Case {
    const char* text;
    std::int64_t delta;
    std::size_t m, ell, s;
  };
  for (const auto& c : {Case{kPoissonPair, 0, 3, 1, 2}, Case{kReversiblePair, 0, 4, 2, 2},
                        Case{kCubicDeath, 1, 4, 2, 1}}) {
    const auto net = net_of(c.text);
    const auto rep = deficiency(net);
    EXPECT_EQ(rep.m, c.m);
    EXPECT_EQ(rep.ell, c.ell);
    EXPECT_EQ(rep.s, c.s);
    EXPECT_EQ(rep.delta, c.delta);
    EXPECT_EQ(rep.delta_kernel, c.delta);
    EXPECT_EQ(oracle::deficiency(net), c.delta);
  }
}

TEST(Deficiency, RandomNetworksMatchOracle) {
  gen::Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto net = gen::random_network(rng, 4, 8);
    const auto rep = deficiency(net);
    EXPECT_GE(rep.delta, 0);
    EXPECT_EQ(rep.delta, rep.delta_kernel);
    EXPECT_EQ(rep.delta, oracle::deficiency(net));
    EXPECT_EQ(rep.ell, oracle::count_linkage_classes(net));
    EXPECT_EQ(is_weakly_reversible(net), oracle::weakly_reversible(net));
    const auto map = complex_space_map(net);
    EXPECT_EQ(map.d_dim, net.num_complexes() - rep.ell);
  }
}

TEST(ComplexSpaceMap, MapsDVectorsToReactionVectors) {
  const auto net = net_of(kReversiblePair);
  const auto map = complex_space_map(net);
  for (std::size_t k = 0; k < net.num_reactions(); ++k) {
    IntVector image(net.num_species(), 0);
    for (std::size_t j = 0; j < net.num_complexes(); ++j)
      for (std::size_t i = 0; i < net.num_species(); ++i) image[i] += map.phi(i, j) * map.dvectors[k][j];
    EXPECT_EQ(image, net.reaction_vector(k));
  }
}

TEST(AuxiliaryNetwork, Fixtures) {
  const auto pp = build_auxiliary_network(net_of(kPoissonPair));
  EXPECT_EQ(pp.num_species(), 5u);
  EXPECT_EQ(pp.num_complexes(), 3u);
  EXPECT_EQ(pp.num_reactions(), 3u);
  EXPECT_EQ(deficiency(pp).delta, 0);
  EXPECT_EQ(pp.species()[2].name, "AUX_0");
  EXPECT_EQ(pp.species()[3].name, "AUX_A_B");
  const auto cd = build_auxiliary_network(net_of(kCubicDeath));
  EXPECT_EQ(cd.num_species(), 5u);
  EXPECT_EQ(deficiency(cd).delta, 0);
}

TEST(AuxiliaryNetwork, NameCollisionsGetSuffix) {
  const auto net = net_of("AUX_A -> A ; 1\n");
  const auto aux = build_auxiliary_network(net);
  EXPECT_EQ(aux.species()[2].name, "AUX_AUX_A");
  EXPECT_EQ(aux.species()[3].name, "AUX_A_2");
}

TEST(AuxiliaryNetwork, RandomNetworks) {
  gen::Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const auto net = gen::random_network(rng, 4, 8);
    const auto aux = build_auxiliary_network(net);
    EXPECT_EQ(deficiency(aux).delta, 0);
    EXPECT_EQ(oracle::deficiency(aux), 0);
    EXPECT_EQ(is_weakly_reversible(aux), is_weakly_reversible(net));
    EXPECT_EQ(linkage_classes(aux).num_classes(), linkage_classes(net).num_classes());
  }
}

TEST(StronglyConnected, SmallGraph) {
  std::vector<std::vector<std::size_t>> adj{{1}, {2}, {0, 3}, {4}, {3}, {}};
  std::size_t n = 0;
  const auto comp = strongly_connected_components(6, adj, &n);
  EXPECT_EQ(n, 3u);
  EXPECT_EQ(comp[0], comp[1]);
  EXPECT_EQ(comp[1], comp[2]);
  EXPECT_EQ(comp[3], comp[4]);
  EXPECT_NE(comp[0], comp[3]);
  EXPECT_NE(comp[5], comp[3]);
}
