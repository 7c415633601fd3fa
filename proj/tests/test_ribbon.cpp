#include <gtest/gtest.h>

#include <random>

#include "swapgame/catalog.hpp"
#include "swapgame/ribbon.hpp"

using namespace swapgame;

namespace {

// One vertex carrying the given loops; rotation given as (edge, end) pairs.
RibbonEmbedding bouquet(std::size_t loops, std::vector<Dart> rotation, std::vector<bool> twisted) {
  RibbonEmbedding e;
  e.vertices = {"v"};
  for (std::size_t i = 0; i < loops; ++i) {
    e.edges.push_back("c" + std::to_string(i + 1));
    e.endpoints.push_back({0, 0});
  }
  e.rotations = {std::move(rotation)};
  e.twisted = std::move(twisted);
  return e;
}

RibbonEmbedding theta() {
  RibbonEmbedding e;
  e.vertices = {"u", "v"};
  e.edges = {"c1", "c2", "c3"};
  e.endpoints = {{0, 1}, {0, 1}, {0, 1}};
  e.rotations = {{{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {2, 1}, {1, 1}}};
  e.twisted = {false, false, false};
  return e;
}

} // namespace

TEST(Ribbon, SingleVertexIsASphere) {
  RibbonEmbedding e;
  e.vertices = {"v"};
  e.rotations = {{}};
  EXPECT_TRUE(embedding_problems(e).empty());
  EXPECT_EQ(boundary_components(e, BitVec(0)), 1U);
  EXPECT_EQ(euler_characteristic(e), 2);
}

TEST(Ribbon, UntwistedLoopIsAnAnnulus) {
  const auto e = bouquet(1, {{0, 0}, {0, 1}}, {false});
  EXPECT_EQ(boundary_components(e, BitVec::from_string("1")), 2U);
  EXPECT_EQ(euler_characteristic(e), 2);
  EXPECT_TRUE(neighborhood_orientable(e, BitVec::from_string("1")));
}

TEST(Ribbon, TwistedLoopIsAMobiusBand) {
  const auto e = bouquet(1, {{0, 0}, {0, 1}}, {true});
  EXPECT_EQ(boundary_components(e, BitVec::from_string("1")), 1U);
  EXPECT_EQ(euler_characteristic(e), 1);
  EXPECT_FALSE(neighborhood_orientable(e, BitVec::from_string("1")));
}

TEST(Ribbon, InterleavedLoopsGiveATorus) {
  const auto e = bouquet(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {false, false});
  EXPECT_EQ(boundary_components(e, BitVec::from_string("11")), 1U);
  EXPECT_EQ(euler_characteristic(e), 0);
  EXPECT_TRUE(neighborhood_orientable(e, BitVec::from_string("11")));
  const auto nested = bouquet(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {false, false});
  EXPECT_EQ(euler_characteristic(nested), 2);
}

TEST(Ribbon, TwoTwistedLoopsGiveAKleinBottle) {
  // Nested twisted loops: non-orientable with one vertex, two edges, one face.
  const auto e = bouquet(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {true, true});
  EXPECT_EQ(euler_characteristic(e), 0);
  EXPECT_FALSE(neighborhood_orientable(e, BitVec::from_string("11")));
}

TEST(Ribbon, ThetaGraphOnTheSphere) {
  const auto e = theta();
  EXPECT_TRUE(embedding_problems(e).empty());
  EXPECT_EQ(euler_characteristic(e), 2);
  EXPECT_EQ(face_edge_sets(e).size(), 3U);
  EXPECT_EQ(boundary_components(e, BitVec::from_string("100")), 1U);
  EXPECT_EQ(boundary_components(e, BitVec::from_string("000")), 2U);
  EXPECT_EQ(boundary_components(e, BitVec::from_string("110")), 2U);
  EXPECT_EQ(boundary_components(e, BitVec::from_string("000"), IsolatedVertices::ignore), 0U);
}

TEST(Ribbon, EmptySubgraphCountsEveryVertex) {
  const auto e = *ladder(3).board->embedding();
  EXPECT_EQ(boundary_components(e, BitVec(e.edge_count())), e.vertex_count());
}

TEST(Ribbon, ProblemsAreReported) {
  auto e = theta();
  e.rotations[0].pop_back();
  EXPECT_FALSE(embedding_problems(e).empty());
  auto f = theta();
  f.endpoints[0] = {1, 0};
  EXPECT_FALSE(embedding_problems(f).empty());
  EXPECT_THROW(boundary_components(theta(), BitVec(2)), StructuralError);
}

TEST(Ribbon, ResolveRejectsUnknownIds) {
  EmbeddingSpec spec;
  spec.rotations["u"] = {{"c9", 0}};
  EXPECT_THROW(resolve_embedding(spec, {"u"}, {"c1"}), StructuralError);
  EmbeddingSpec spec2;
  spec2.endpoints["c1"] = {"u", "w"};
  EXPECT_THROW(resolve_embedding(spec2, {"u"}, {"c1"}), StructuralError);
}

TEST(Ribbon, SpecRoundTrip) {
  const auto e = *ladder(2).board->embedding();
  EXPECT_EQ(resolve_embedding(to_spec(e), e.vertices, e.edges), e);
}

TEST(Ribbon, OrientabilityNeedsAConnectedSubgraph) {
  const auto e = theta();
  EXPECT_TRUE(neighborhood_orientable(e, BitVec::from_string("110")));
  const auto l = *ladder(2).board->embedding();
  BitVec two(l.edge_count());
  two.set(2); // a step at level 1
  two.set(6); // a step at level 0
  EXPECT_THROW(neighborhood_orientable(l, two), DomainError);
}

TEST(Ribbon, TreesAreOrientable) {
  const auto l = *ladder(2).board->embedding();
  // Path through the four vertices: direct step at level 1, right rail, direct step at level 0.
  const auto on = BitVec::from_string("01100010");
  EXPECT_TRUE(neighborhood_orientable(l, on));
}

// Cyclically shifting a rotation, or mirroring every rotation, must not change
// boundary counts.
TEST(Ribbon, CountsIgnoreRotationStartAndMirroring) {
  std::mt19937 rng(17);
  for (const auto& name : {"twist5", "figure8", "trefoil", "borromean", "ladder-2", "ladder-3"}) {
    const auto e = *catalog_entry(name).board->embedding();
    auto shifted = e;
    for (auto& rot : shifted.rotations)
      if (!rot.empty())
        std::rotate(rot.begin(), rot.begin() + static_cast<long>(rng() % rot.size()), rot.end());
    auto mirrored = e;
    for (auto& rot : mirrored.rotations)
      std::reverse(rot.begin(), rot.end());
    for (int t = 0; t < 200; ++t) {
      BitVec on(e.edge_count());
      for (std::size_t i = 0; i < on.size(); ++i)
        if (rng() & 1U)
          on.set(i);
      const auto c = boundary_components(e, on);
      EXPECT_EQ(boundary_components(shifted, on), c) << name;
      EXPECT_EQ(boundary_components(mirrored, on), c) << name;
    }
  }
}
