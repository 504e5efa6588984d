#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace hamdecomp;

namespace {

// Independent component count for cross-checking the BFS implementation.
std::size_t union_find_components(const MultiGraph& g)
{
    std::vector<VertexId> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](VertexId v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    std::size_t count = g.vertex_count();
    for (const Edge& e : g.edges()) {
        auto a = find(e.a), b = find(e.b);
        if (a != b) {
            parent[a] = b;
            --count;
        }
    }
    return count;
}

MultiGraph from_edges(std::size_t n, std::initializer_list<std::pair<VertexId, VertexId>> edges)
{
    MultiGraph g(n);
    for (auto [a, b] : edges)
        g.add_edge(a, b);
    return g;
}

void expect_balanced(const MultiGraph& g, const std::vector<Arc>& arcs)
{
    ASSERT_EQ(arcs.size(), g.edge_count());
    std::vector<std::size_t> out(g.vertex_count(), 0), in(g.vertex_count(), 0);
    for (std::size_t p = 0; p < arcs.size(); ++p) {
        const Edge& e = g.edge(p);
        const Arc& a = arcs[p];
        ASSERT_TRUE((a.tail == e.a && a.head == e.b) || (a.tail == e.b && a.head == e.a));
        ++out[a.tail];
        ++in[a.head];
    }
    auto deg = g.degrees();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        EXPECT_EQ(out[v], in[v]) << "vertex " << v;
        EXPECT_EQ(out[v] * 2, deg[v]) << "vertex " << v;
    }
}

} // namespace

TEST(MultiGraph, EdgeIdsAreStableInSubgraphs)
{
    auto g = from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    auto h = g.spanning_subgraph([](std::size_t p) { return p % 2 == 1; });
    ASSERT_EQ(h.edge_count(), 2u);
    EXPECT_EQ(h.edge(0).id, 1u);
    EXPECT_EQ(h.edge(1).id, 3u);
    EXPECT_EQ(h.position_of(3), 1u);
    EXPECT_EQ(h.vertex_count(), 4u);
}

TEST(MultiGraph, AddEdgeWithIdRejectsDecreasingIds)
{
    MultiGraph g(2);
    g.add_edge_with_id(5, 0, 1);
    EXPECT_THROW(g.add_edge_with_id(3, 0, 1), PreconditionViolated);
    EXPECT_THROW(g.add_edge_with_id(9, 0, 2), PreconditionViolated);
}

TEST(MultiGraph, LoopCountsTwiceTowardsDegree)
{
    auto g = from_edges(2, {{0, 0}, {0, 1}});
    EXPECT_EQ(g.degree(0), 3u);
    EXPECT_EQ(g.degree(1), 1u);
}

TEST(Components, EmptyGraphOnThreeVertices)
{
    MultiGraph g(3);
    auto c = components(g);
    EXPECT_EQ(c.count, 3u);
}

TEST(Components, PathIsOneComponent)
{
    EXPECT_EQ(components(from_edges(3, {{0, 1}, {1, 2}})).count, 1u);
}

TEST(Components, TwoDisjointDigons)
{
    auto g = from_edges(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    auto c = components(g);
    EXPECT_EQ(c.count, 2u);
    EXPECT_EQ(c.component_of[0], c.component_of[1]);
    EXPECT_NE(c.component_of[0], c.component_of[2]);
}

TEST(Components, MatchesUnionFindOnRandomGraphs)
{
    testgen::Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        auto g = testgen::random_multigraph(rng, 12, 14);
        auto c = components(g);
        EXPECT_EQ(c.count, union_find_components(g));
        for (const Edge& e : g.edges())
            EXPECT_EQ(c.component_of[e.a], c.component_of[e.b]);
    }
}

TEST(Components, IdempotentAndOrderInvariant)
{
    testgen::Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        auto g = testgen::random_multigraph(rng, 10, 12);
        auto edges = g.endpoint_multiset();
        std::shuffle(edges.begin(), edges.end(), rng);
        MultiGraph h(g.vertex_count());
        for (auto [a, b] : edges)
            h.add_edge(a, b);
        EXPECT_EQ(components(g).count, components(h).count);
        EXPECT_EQ(components(g).component_of, components(g).component_of);
    }
}

TEST(Degrees, HandshakeOnRandomMultigraphs)
{
    testgen::Rng rng(13);
    for (int i = 0; i < 500; ++i) {
        auto g = testgen::random_multigraph(rng, 10, 20);
        auto deg = g.degrees();
        EXPECT_EQ(std::accumulate(deg.begin(), deg.end(), std::size_t{0}), 2 * g.edge_count());
    }
}

TEST(EulerOrientation, FourCycle)
{
    auto g = from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    expect_balanced(g, euler_orientation(g));
}

TEST(EulerOrientation, ParallelPairGoesBothWays)
{
    auto g = from_edges(2, {{0, 1}, {0, 1}});
    auto arcs = euler_orientation(g);
    expect_balanced(g, arcs);
    EXPECT_NE(arcs[0].tail, arcs[1].tail);
}

TEST(EulerOrientation, SingleLoop)
{
    auto g = from_edges(1, {{0, 0}});
    expect_balanced(g, euler_orientation(g));
}

TEST(EulerOrientation, RejectsOddDegree)
{
    EXPECT_THROW(euler_orientation(from_edges(2, {{0, 1}})), OddDegreeVertex);
}

TEST(EulerOrientation, BalancedOnRandomEvenMultigraphs)
{
    testgen::Rng rng(14);
    for (int i = 0; i < 1000; ++i) {
        auto g = testgen::random_even_multigraph(rng, 12, 4);
        for (auto d : g.degrees())
            ASSERT_EQ(d % 2, 0u);
        expect_balanced(g, euler_orientation(g));
    }
}

TEST(ClassifyFactor, PathOnFourVertices)
{
    auto s = classify_factor(from_edges(4, {{0, 1}, {1, 2}, {2, 3}}));
    EXPECT_EQ(s.tag, ShapeTag::HamiltonPath);
    EXPECT_EQ(s.component_count, 1u);
}

TEST(ClassifyFactor, TrianglePlusEdge)
{
    auto s = classify_factor(from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}}));
    EXPECT_EQ(s.tag, ShapeTag::CyclesPlusOnePath);
    EXPECT_EQ(s.component_count, 2u);
}

TEST(ClassifyFactor, StarWithThreeLeaves)
{
    EXPECT_EQ(classify_factor(from_edges(4, {{0, 1}, {0, 2}, {0, 3}})).tag, ShapeTag::Other);
}

TEST(ClassifyFactor, TwoPathsAreOther)
{
    EXPECT_EQ(classify_factor(from_edges(4, {{0, 1}, {2, 3}})).tag, ShapeTag::Other);
}

TEST(ClassifyFactor, CycleWithIsolatedVertexCountsTheVertexAsThePath)
{
    auto s = classify_factor(from_edges(4, {{0, 1}, {1, 2}, {2, 0}}));
    EXPECT_EQ(s.tag, ShapeTag::CyclesPlusOnePath);
}

TEST(ClassifyFactor, LoopAndDigonAreCycles)
{
    auto s = classify_factor(from_edges(5, {{0, 0}, {1, 2}, {2, 1}, {3, 4}}));
    EXPECT_EQ(s.tag, ShapeTag::CyclesPlusOnePath);
    EXPECT_EQ(s.component_count, 3u);
}

TEST(CycleThrough, FindsCycleOrNothing)
{
    auto g = from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}});
    auto cycle = cycle_through(g, 0);
    EXPECT_EQ(cycle.size(), 3u);
    EXPECT_TRUE(cycle_through(g, 3).empty());
    EXPECT_TRUE(cycle_through(g, 4).empty());
}

TEST(CycleThrough, ResultIsAClosedWalkThroughTheVertex)
{
    testgen::Rng rng(15);
    for (int i = 0; i < 300; ++i) {
        auto g = testgen::random_multigraph(rng, 8, 10);
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            auto cycle = cycle_through(g, v);
            if (cycle.empty())
                continue;
            auto c = g.spanning_subgraph([&](std::size_t p) {
                return std::find(cycle.begin(), cycle.end(), p) != cycle.end();
            });
            auto deg = c.degrees();
            EXPECT_EQ(deg[v], 2u);
            for (auto d : deg)
                EXPECT_TRUE(d == 0 || d == 2);
        }
    }
}

TEST(ShortestPath, FollowsBreadthFirstOrder)
{
    auto g = from_edges(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}, {0, 3}});
    EXPECT_EQ(shortest_path(g, 0, 3), std::vector<std::size_t>{4});
    EXPECT_TRUE(shortest_path(from_edges(3, {{0, 1}}), 0, 2).empty());
}
