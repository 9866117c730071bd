#include <gtest/gtest.h>

#include "ics/errors.hpp"
#include "ics/layered_graph.hpp"
#include "support.hpp"

using namespace ics;

namespace {

Vertex vx(const char* t, int layer) { return {BitString::parse(t), layer}; }

const GraphParams kGraph{4, 8};

}  // namespace

TEST(LayeredGraph, ApplyEdgeExamples) {
  EXPECT_EQ(apply_edge(vx("", 0), EdgeLabel::Back, kGraph), vx("", 1));
  EXPECT_EQ(apply_edge(vx("01", 5), EdgeLabel::One, kGraph), vx("011", 6));
  EXPECT_EQ(apply_edge(vx("01", 5), EdgeLabel::Stay, kGraph), vx("01", 6));
  EXPECT_EQ(apply_edge(vx("01", 5), EdgeLabel::Back, kGraph), vx("0", 6));
}

TEST(LayeredGraph, ApplyEdgeErrors) {
  EXPECT_THROW(apply_edge(vx("0110", 5), EdgeLabel::Zero, kGraph), AppendBeyondComplete);
  EXPECT_THROW(apply_edge(vx("01", 8), EdgeLabel::Stay, kGraph), DepthExceeded);
  Vertex out;
  EXPECT_FALSE(try_apply_edge(vx("0110", 5), EdgeLabel::One, kGraph, out));
  EXPECT_TRUE(try_apply_edge(vx("0110", 5), EdgeLabel::Back, kGraph, out));
  EXPECT_EQ(out, vx("011", 6));
}

TEST(LayeredGraph, FollowPathExamples) {
  EXPECT_EQ(follow_path(root_vertex(), edges_from_string("1"), kGraph), vx("1", 1));
  EXPECT_EQ(follow_path(root_vertex(), edges_from_string(".1.."), kGraph), vx("1", 4));
  EXPECT_EQ(follow_path(root_vertex(), edges_from_string("1<<"), kGraph), vx("", 3));
}

TEST(LayeredGraph, EdgeOrderAndText) {
  EXPECT_LT(EdgeLabel::Zero, EdgeLabel::One);
  EXPECT_LT(EdgeLabel::One, EdgeLabel::Back);
  EXPECT_LT(EdgeLabel::Back, EdgeLabel::Stay);
  const auto path = edges_from_string("01<.");
  EXPECT_EQ(edges_to_string(path), "01<.");
  EXPECT_THROW(edges_from_string("2"), std::invalid_argument);
}

TEST(LayeredGraph, LayerVertexExamples) {
  EXPECT_EQ(layer_vertices(0, kGraph), std::vector<Vertex>{vx("", 0)});
  const auto l1 = layer_vertices(1, kGraph);
  EXPECT_EQ(std::set<Vertex>(l1.begin(), l1.end()), (std::set<Vertex>{vx("", 1), vx("0", 1), vx("1", 1)}));
  const auto l2 = layer_vertices(2, GraphParams{1, 4});
  EXPECT_EQ(std::set<Vertex>(l2.begin(), l2.end()), (std::set<Vertex>{vx("", 2), vx("0", 2), vx("1", 2)}));
}

TEST(LayeredGraph, ValidatesParams) {
  EXPECT_THROW(validate(GraphParams{0, 4}), ConfigError);
  EXPECT_THROW(validate(GraphParams{4, 0}), ConfigError);
  EXPECT_NO_THROW(validate(GraphParams{2, 1}));
}

// Layer sizes match an enumeration of every vertex reachable by some path.
TEST(LayeredGraph, LayersMatchReachableSet) {
  for (int n0 : {1, 2, 4}) {
    const GraphParams g{n0, 6};
    std::set<Vertex> frontier{root_vertex()};
    for (int layer = 1; layer <= 5; ++layer) {
      std::set<Vertex> next;
      for (const Vertex& v : frontier)
        for (EdgeLabel e : kAllEdges) {
          Vertex out;
          if (try_apply_edge(v, e, g, out)) next.insert(out);
        }
      frontier = next;
      const auto listed = layer_vertices(layer, g);
      EXPECT_EQ(std::set<Vertex>(listed.begin(), listed.end()), frontier) << "n0=" << n0 << " layer=" << layer;
      EXPECT_EQ(layer_size(layer, g), frontier.size());
    }
  }
}

TEST(LayeredGraph, RandomPathInvariants) {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const GraphParams g{2 * static_cast<int>(1 + uniform_below(rng, 4)), 12};
    const auto path = testkit::random_path(rng, g, 12);
    Vertex v = root_vertex();
    for (EdgeLabel e : path) {
      v = apply_edge(v, e, g);
      ASSERT_LE(v.transcript.size(), v.layer);
      ASSERT_LE(v.transcript.size(), g.n0);
    }
    EXPECT_EQ(v.layer, 12);
  }
}
