#include "support/contracts.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace hamdecomp;

namespace {

using testgen::connect_contract_holds;
using testgen::degree_table;
using testgen::recolour_contract_holds;

MultiGraph from_edges(std::size_t n, std::initializer_list<std::pair<VertexId, VertexId>> edges)
{
    MultiGraph g(n);
    for (auto [a, b] : edges)
        g.add_edge(a, b);
    return g;
}

std::size_t component_count(const MultiGraph& g, const std::vector<std::uint32_t>& factor_of, std::uint32_t i)
{
    return components(g.spanning_subgraph([&](std::size_t p) { return factor_of[p] == i; })).count;
}

// Every assignment of `edges` positions to `colours` values.
void for_each_assignment(std::size_t edges, std::size_t colours,
                         const std::function<void(const std::vector<ColourId>&)>& visit)
{
    std::vector<ColourId> a(edges, 0);
    while (true) {
        visit(a);
        std::size_t i = 0;
        while (i < edges && ++a[i] == colours)
            a[i++] = 0;
        if (i == edges)
            return;
    }
}

} // namespace

TEST(CheckOrbit, AcceptsSymmetricPair)
{
    auto g = from_edges(3, {{0, 2}, {1, 2}, {0, 1}});
    EXPECT_NO_THROW(check_orbit(g, SymmetricOrbit::of({0, 1})));
}

TEST(CheckOrbit, RejectsUnevenAnchor)
{
    auto g = from_edges(3, {{0, 2}, {0, 2}, {1, 2}});
    EXPECT_THROW(check_orbit(g, SymmetricOrbit::of({0, 1})), OrbitViolation);
}

TEST(CheckOrbit, RejectsUnequalInnerPairs)
{
    auto g = from_edges(3, {{0, 1}, {0, 1}, {1, 2}, {0, 2}});
    EXPECT_THROW(check_orbit(g, SymmetricOrbit::of({0, 1, 2})), OrbitViolation);
}

TEST(CheckOrbit, RejectsLoopsOnTheOrbit)
{
    auto g = from_edges(2, {{0, 0}, {1, 1}});
    EXPECT_THROW(check_orbit(g, SymmetricOrbit::of({0, 1})), LoopOnOrbit);
}

TEST(AlmostRegularRecolour, SplitsTwoMonochromePairs)
{
    // alpha = 0, beta = 1, w = 2; alpha-w twice in colour 0, beta-w twice in colour 1.
    auto g = from_edges(3, {{0, 2}, {0, 2}, {1, 2}, {1, 2}});
    Colouring in{{0, 0, 1, 1}, 2};
    const std::vector<VertexId> s{0, 1};

    std::vector<std::vector<ColourId>> valid;
    for_each_assignment(4, 2, [&](const std::vector<ColourId>& a) {
        if (recolour_contract_holds(g, in.colour_of, a, 2, s))
            valid.push_back(a);
    });
    ASSERT_FALSE(valid.empty());

    auto out = almost_regular_recolour(g, in, SymmetricOrbit::of(s));
    EXPECT_NE(std::find(valid.begin(), valid.end(), out.colour_of), valid.end());
    auto deg = out.colour_degrees(g);
    // Flat layout v * colours + c.
    EXPECT_EQ(deg[0 * 2 + 0], 1u);
    EXPECT_EQ(deg[1 * 2 + 0], 1u);
    EXPECT_EQ(deg[0 * 2 + 1], 1u);
    EXPECT_EQ(deg[1 * 2 + 1], 1u);
    EXPECT_EQ(deg[2 * 2 + 0], 2u);
    EXPECT_EQ(deg[2 * 2 + 1], 2u);
}

TEST(AlmostRegularRecolour, BalancedInputIsReturnedUnchanged)
{
    auto g = from_edges(3, {{0, 2}, {1, 2}, {0, 2}, {1, 2}});
    Colouring in{{0, 0, 1, 1}, 2};
    EXPECT_EQ(almost_regular_recolour(g, in, SymmetricOrbit::of({0, 1})), in);
}

TEST(AlmostRegularRecolour, EdgesAwayFromOrbitAreUntouched)
{
    auto g = from_edges(5, {{2, 3}, {3, 4}, {4, 2}, {2, 2}});
    Colouring in{{0, 1, 2, 0}, 3};
    EXPECT_EQ(almost_regular_recolour(g, in, SymmetricOrbit::of({0, 1})), in);
}

TEST(AlmostRegularRecolour, AgreesWithExhaustiveFeasibilityOnTinyInstances)
{
    testgen::Rng rng(31);
    std::size_t checked = 0;
    while (checked < 150) {
        auto inst = testgen::random_orbit_instance(rng, 4, 2, 2, 3);
        if (inst.graph.edge_count() == 0 || inst.graph.edge_count() > 8)
            continue;
        const std::size_t colours = testgen::uniform(rng, 1, 3);
        auto in = testgen::random_colouring(rng, inst.graph, colours);
        bool feasible = false;
        for_each_assignment(inst.graph.edge_count(), colours, [&](const std::vector<ColourId>& a) {
            feasible = feasible || recolour_contract_holds(inst.graph, in.colour_of, a, colours, inst.orbit.vertices);
        });
        EXPECT_TRUE(feasible);
        auto out = almost_regular_recolour(inst.graph, in, inst.orbit);
        EXPECT_TRUE(recolour_contract_holds(inst.graph, in.colour_of, out.colour_of, colours, inst.orbit.vertices));
        ++checked;
    }
}

TEST(AlmostRegularRecolour, ContractOnRandomInstances)
{
    testgen::Rng rng(32);
    for (int i = 0; i < 1000; ++i) {
        auto inst = testgen::random_orbit_instance(rng, 10, 3);
        const std::size_t colours = testgen::uniform(rng, 1, 4);
        auto in = testgen::random_colouring(rng, inst.graph, colours);
        auto out = almost_regular_recolour(inst.graph, in, inst.orbit);
        ASSERT_TRUE(recolour_contract_holds(inst.graph, in.colour_of, out.colour_of, colours, inst.orbit.vertices))
            << "instance " << i;
        EXPECT_FALSE(recolour_contract_failure(inst.graph, in, out, inst.orbit));
    }
}

TEST(AlmostRegularRecolour, RejectsBrokenOrbit)
{
    auto g = from_edges(3, {{0, 2}, {0, 2}, {1, 2}});
    EXPECT_THROW(almost_regular_recolour(g, Colouring{{0, 0, 0}, 1}, SymmetricOrbit::of({0, 1})), OrbitViolation);
}

TEST(Equitabilise, BalancesK22)
{
    // a1 = 0, a2 = 1, b1 = 2, b2 = 3. Edges in build order: a1b1, a1b2, a2b1, a2b2.
    auto [k, parts] = build_graph(MultipartiteSpec({2, 2}));
    Factorisation f{k, {0, 0, 1, 1}, 2};

    std::vector<std::vector<std::uint32_t>> valid;
    for_each_assignment(4, 2, [&](const std::vector<ColourId>& a) {
        bool ok = std::count(a.begin(), a.end(), 0u) == 2;
        auto deg = degree_table(k, a, 2);
        for (std::size_t i = 0; i < 2 && ok; ++i)
            for (const auto& part : parts.blocks)
                ok = ok && std::max(deg[i][part[0]], deg[i][part[1]]) - std::min(deg[i][part[0]], deg[i][part[1]]) <= 1;
        if (ok)
            valid.push_back(a);
    });
    ASSERT_EQ(valid.size(), 2u);

    auto out = equitabilise(k, parts, f);
    EXPECT_NE(std::find(valid.begin(), valid.end(), out.factor_of), valid.end());
    for (std::size_t i = 0; i < 2; ++i)
        for (auto d : out.factor(i).degrees())
            EXPECT_EQ(d, 1u);
}

TEST(Equitabilise, SingleFactorUnchanged)
{
    auto [k, parts] = build_graph(MultipartiteSpec({1, 2}));
    Factorisation f{k, {0, 0}, 1};
    EXPECT_EQ(equitabilise(k, parts, f).factor_of, f.factor_of);
}

TEST(Equitabilise, SingletonPartsUnchanged)
{
    auto [k, parts] = build_graph(MultipartiteSpec({1, 1, 1, 1}));
    Factorisation f{k, {0, 1, 1, 0, 0, 1}, 2};
    EXPECT_EQ(equitabilise(k, parts, f).factor_of, f.factor_of);
}

TEST(Equitabilise, PostconditionsOnRandomInstances)
{
    testgen::Rng rng(33);
    for (int i = 0; i < 1000; ++i) {
        auto spec = testgen::random_spec(rng, 10);
        auto [k, parts] = build_graph(spec);
        const std::size_t t = testgen::uniform(rng, 1, 4);
        auto f = Factorisation::from_colouring(k, testgen::random_colouring(rng, k, t));
        auto out = equitabilise(k, parts, f);
        auto db = degree_table(k, f.factor_of, t);
        auto da = degree_table(k, out.factor_of, t);
        for (std::uint32_t c = 0; c < t; ++c) {
            ASSERT_EQ(std::count(f.factor_of.begin(), f.factor_of.end(), c),
                      std::count(out.factor_of.begin(), out.factor_of.end(), c));
            for (const auto& part : parts.blocks) {
                std::size_t lo = SIZE_MAX, hi = 0, sum_before = 0, sum_after = 0;
                for (VertexId v : part) {
                    lo = std::min(lo, da[c][v]);
                    hi = std::max(hi, da[c][v]);
                    sum_before += db[c][v];
                    sum_after += da[c][v];
                }
                ASSERT_LE(hi - lo, 1u) << spec.to_string();
                ASSERT_EQ(sum_before, sum_after);
            }
        }
        ASSERT_TRUE(same_factor_quotients(f, out, parts)) << spec.to_string();
    }
}

TEST(ConnectPair, JoinsPairThroughSharedNeighbour)
{
    // alpha = 0, beta = 1, w = 2. Edges: alpha-w x2, beta-w x2, alpha-beta x2.
    auto g = from_edges(3, {{0, 2}, {0, 2}, {1, 2}, {1, 2}, {0, 1}, {0, 1}});
    Factorisation f{g, {0, 0, 1, 1, 1, 1}, 2};

    std::vector<std::vector<std::uint32_t>> valid;
    for_each_assignment(6, 2, [&](const std::vector<ColourId>& a) {
        if (connect_contract_holds(g, f.factor_of, a, 2, 0, 1))
            valid.push_back(a);
    });
    ASSERT_FALSE(valid.empty());

    auto out = connect_pair(f, 0, 1);
    EXPECT_NE(std::find(valid.begin(), valid.end(), out.factor_of), valid.end());
    auto f1 = out.factor(0);
    ASSERT_EQ(f1.edge_count(), 2u);
    EXPECT_EQ(classify_factor(f1).tag, ShapeTag::HamiltonPath);
    EXPECT_EQ(f1.degree(2), 2u);
    EXPECT_TRUE(is_connected(out.factor(1)));
}

TEST(ConnectPair, AlreadyJoinedPairSatisfiesContract)
{
    auto g = from_edges(4, {{0, 2}, {1, 2}, {0, 3}, {1, 3}});
    Factorisation f{g, {0, 0, 1, 1}, 2};
    auto out = connect_pair(f, 0, 1);
    EXPECT_TRUE(connect_contract_holds(g, f.factor_of, out.factor_of, 2, 0, 1));
}

TEST(ConnectPair, RejectsAcyclicSeparatedFactor)
{
    // Factor 0 is alpha-w and beta-z: two paths, no cycle.
    auto g = from_edges(4, {{0, 2}, {1, 3}, {0, 3}, {1, 2}});
    Factorisation f{g, {0, 0, 1, 1}, 2};
    EXPECT_THROW(connect_pair(f, 0, 1), PreconditionViolated);
}

TEST(ConnectPair, ContractAndComponentDecreaseOnRandomInstances)
{
    testgen::Rng rng(34);
    std::size_t strict = 0;
    for (int i = 0; i < 1000; ++i) {
        auto inst = testgen::random_connect_instance(rng, 10, 4, 3);
        const auto& f = inst.f;
        bool separated = false;
        std::size_t before = 0, after = 0;
        auto out = connect_pair(f, inst.alpha, inst.beta);
        ASSERT_TRUE(connect_contract_holds(f.graph, f.factor_of, out.factor_of, f.t, inst.alpha, inst.beta))
            << "instance " << i;
        for (std::uint32_t c = 0; c < f.t; ++c) {
            auto comps = components(f.factor(c));
            separated = separated || comps.component_of[inst.alpha] != comps.component_of[inst.beta];
            before += component_count(f.graph, f.factor_of, c);
            after += component_count(f.graph, out.factor_of, c);
        }
        ASSERT_LE(after, before);
        if (separated) {
            ASSERT_LT(after, before) << "instance " << i;
            ++strict;
        }
    }
    EXPECT_GT(strict, 50u);
}
