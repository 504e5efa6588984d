#pragma once

#include "hamdecomp/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hamdecomp {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using ColourId = std::uint32_t;

struct Edge {
    EdgeId id;
    VertexId a;
    VertexId b;

    bool is_loop() const { return a == b; }
    VertexId other(VertexId v) const { return v == a ? b : a; }
    bool touches(VertexId v) const { return a == v || b == v; }
};

/// Undirected multigraph with parallel edges and loops.
///
/// Every edge is its own record carrying a stable EdgeId; parallel edges are
/// never collapsed into a counter. The edge sequence is kept strictly
/// increasing in id, so spanning subgraphs and quotients that copy edges keep
/// both the ids and their relative order. Most algorithms address edges by
/// position in this sequence; ids survive across derived graphs.
class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(std::size_t vertex_count) : vertex_count_(vertex_count) {}

    /// Appends an edge with the next free id.
    EdgeId add_edge(VertexId a, VertexId b)
    {
        EdgeId id = next_id_;
        add_edge_with_id(id, a, b);
        return id;
    }

    /// Appends an edge with an explicit id, which must exceed every id present.
    void add_edge_with_id(EdgeId id, VertexId a, VertexId b)
    {
        if (a >= vertex_count_ || b >= vertex_count_)
            throw PreconditionViolated("edge endpoint out of range");
        if (!edges_.empty() && id < next_id_)
            throw PreconditionViolated("edge ids must be added in increasing order");
        edges_.push_back(Edge{id, a, b});
        next_id_ = id + 1;
    }

    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::span<const Edge> edges() const { return edges_; }
    const Edge& edge(std::size_t position) const { return edges_[position]; }

    /// Position of the edge with the given id, or edge_count() if absent.
    std::size_t position_of(EdgeId id) const
    {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                                   [](const Edge& e, EdgeId x) { return e.id < x; });
        if (it == edges_.end() || it->id != id)
            return edges_.size();
        return static_cast<std::size_t>(it - edges_.begin());
    }

    /// Degrees with loops counted twice.
    std::vector<std::size_t> degrees() const
    {
        std::vector<std::size_t> deg(vertex_count_, 0);
        for (const Edge& e : edges_) {
            ++deg[e.a];
            ++deg[e.b];
        }
        return deg;
    }

    std::size_t degree(VertexId v) const
    {
        std::size_t d = 0;
        for (const Edge& e : edges_)
            d += (e.a == v) + (e.b == v);
        return d;
    }

    std::size_t max_degree() const
    {
        auto deg = degrees();
        return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    }

    /// Edge positions incident with each vertex; a loop is listed twice.
    std::vector<std::vector<std::size_t>> incidence() const
    {
        std::vector<std::vector<std::size_t>> inc(vertex_count_);
        for (std::size_t p = 0; p < edges_.size(); ++p) {
            inc[edges_[p].a].push_back(p);
            inc[edges_[p].b].push_back(p);
        }
        return inc;
    }

    /// Spanning subgraph on the edges whose positions satisfy `keep`.
    template <class Predicate>
    MultiGraph spanning_subgraph(Predicate&& keep) const
    {
        MultiGraph sub(vertex_count_);
        for (std::size_t p = 0; p < edges_.size(); ++p)
            if (keep(p))
                sub.edges_.push_back(edges_[p]);
        sub.next_id_ = next_id_;
        return sub;
    }

    /// Sorted list of normalised endpoint pairs: the graph up to edge identity.
    std::vector<std::pair<VertexId, VertexId>> endpoint_multiset() const
    {
        std::vector<std::pair<VertexId, VertexId>> pairs;
        pairs.reserve(edges_.size());
        for (const Edge& e : edges_)
            pairs.emplace_back(std::min(e.a, e.b), std::max(e.a, e.b));
        std::sort(pairs.begin(), pairs.end());
        return pairs;
    }

    /// Dense vertex_count x vertex_count multiplicity table; loops on the diagonal.
    std::vector<std::uint32_t> multiplicity_table() const
    {
        std::vector<std::uint32_t> mult(vertex_count_ * vertex_count_, 0);
        for (const Edge& e : edges_) {
            ++mult[e.a * vertex_count_ + e.b];
            if (!e.is_loop())
                ++mult[e.b * vertex_count_ + e.a];
        }
        return mult;
    }

private:
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    EdgeId next_id_ = 0;
};

/// Same vertex count and same multiset of endpoint pairs.
inline bool same_multigraph(const MultiGraph& x, const MultiGraph& y)
{
    return x.vertex_count() == y.vertex_count() && x.endpoint_multiset() == y.endpoint_multiset();
}

/// Edge colouring indexed by edge position in its graph.
struct Colouring {
    std::vector<ColourId> colour_of;
    std::size_t colour_count = 0;

    /// Spanning subgraph of the edges with colour `c`.
    MultiGraph colour_class(const MultiGraph& g, ColourId c) const
    {
        return g.spanning_subgraph([&](std::size_t p) { return colour_of[p] == c; });
    }

    /// colour_degree[v * colour_count + c]
    std::vector<std::size_t> colour_degrees(const MultiGraph& g) const
    {
        std::vector<std::size_t> deg(g.vertex_count() * colour_count, 0);
        for (std::size_t p = 0; p < g.edge_count(); ++p) {
            const Edge& e = g.edge(p);
            ++deg[e.a * colour_count + colour_of[p]];
            ++deg[e.b * colour_count + colour_of[p]];
        }
        return deg;
    }

    friend bool operator==(const Colouring&, const Colouring&) = default;
};

enum class ShapeTag { CyclesPlusOnePath, HamiltonPath, Other };

inline const char* to_string(ShapeTag tag)
{
    switch (tag) {
    case ShapeTag::CyclesPlusOnePath: return "cycles+path";
    case ShapeTag::HamiltonPath: return "hamilton-path";
    case ShapeTag::Other: return "other";
    }
    return "?";
}

struct FactorShape {
    ShapeTag tag = ShapeTag::Other;
    std::size_t component_count = 0;

    /// HamiltonPath is the connected special case of cycles plus one path.
    bool has_cycles_plus_path_form() const { return tag != ShapeTag::Other; }
};

struct Components {
    std::size_t count = 0;
    std::vector<std::uint32_t> component_of;
};

/// Connected components by breadth-first search; ids numbered in order of
/// their smallest vertex.
inline Components components(const MultiGraph& g)
{
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    Components result;
    result.component_of.assign(g.vertex_count(), unset);

    std::vector<std::vector<VertexId>> neighbours(g.vertex_count());
    for (const Edge& e : g.edges()) {
        if (e.is_loop())
            continue;
        neighbours[e.a].push_back(e.b);
        neighbours[e.b].push_back(e.a);
    }

    std::vector<VertexId> queue;
    for (VertexId start = 0; start < g.vertex_count(); ++start) {
        if (result.component_of[start] != unset)
            continue;
        auto id = static_cast<std::uint32_t>(result.count++);
        result.component_of[start] = id;
        queue.assign(1, start);
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (VertexId w : neighbours[queue[head]])
                if (result.component_of[w] == unset) {
                    result.component_of[w] = id;
                    queue.push_back(w);
                }
    }
    return result;
}

inline bool is_connected(const MultiGraph& g)
{
    return components(g).count <= 1;
}

struct Arc {
    VertexId tail;
    VertexId head;

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Orients every edge so that each vertex has in-degree equal to out-degree.
///
/// Iterative Hierholzer: from each start vertex a greedy walk is followed
/// until it returns to a vertex with no unused edges. Every such walk is a
/// closed trail because all degrees are even, so recording directions at
/// traversal time balances each vertex. Result is indexed by edge position.
inline std::vector<Arc> euler_orientation(const MultiGraph& g)
{
    auto deg = g.degrees();
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (deg[v] % 2 != 0)
            throw OddDegreeVertex("vertex " + std::to_string(v) + " has odd degree "
                                  + std::to_string(deg[v]));

    auto inc = g.incidence();
    std::vector<std::size_t> cursor(g.vertex_count(), 0);
    std::vector<char> used(g.edge_count(), 0);
    std::vector<Arc> arcs(g.edge_count());

    std::vector<VertexId> stack;
    for (VertexId start = 0; start < g.vertex_count(); ++start) {
        stack.assign(1, start);
        while (!stack.empty()) {
            VertexId v = stack.back();
            auto& c = cursor[v];
            while (c < inc[v].size() && used[inc[v][c]])
                ++c;
            if (c == inc[v].size()) {
                stack.pop_back();
                continue;
            }
            std::size_t p = inc[v][c];
            used[p] = 1;
            VertexId w = g.edge(p).other(v);
            arcs[p] = Arc{v, w};
            stack.push_back(w);
        }
    }
    return arcs;
}

/// Recognises a vertex-disjoint union of cycles and exactly one path.
///
/// A component of a max-degree-2 graph is a cycle when it has as many edges
/// as vertices (loops and 2-cycles included) and a path when it has one edge
/// fewer. A lone vertex is a path of length zero.
inline FactorShape classify_factor(const MultiGraph& g)
{
    auto comps = components(g);
    FactorShape shape{ShapeTag::Other, comps.count};
    if (g.vertex_count() == 0 || g.max_degree() > 2)
        return shape;

    std::vector<std::size_t> vertices(comps.count, 0), edges(comps.count, 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        ++vertices[comps.component_of[v]];
    for (const Edge& e : g.edges())
        ++edges[comps.component_of[e.a]];

    std::size_t paths = 0;
    for (std::size_t c = 0; c < comps.count; ++c) {
        if (edges[c] + 1 == vertices[c])
            ++paths;
        else if (edges[c] != vertices[c])
            return shape;
    }
    if (paths != 1)
        return shape;
    shape.tag = comps.count == 1 ? ShapeTag::HamiltonPath : ShapeTag::CyclesPlusOnePath;
    return shape;
}

/// Edge positions of some cycle through `v`, or empty if `v` lies on none.
///
/// Tries incident edges in position order; for edge (v, z) the cycle closes
/// along a breadth-first path from z back to v that avoids that edge. A loop
/// is a cycle of length one.
inline std::vector<std::size_t> cycle_through(const MultiGraph& g, VertexId v)
{
    auto inc = g.incidence();
    for (std::size_t first : inc[v]) {
        const Edge& e = g.edge(first);
        if (e.is_loop())
            return {first};
        VertexId z = e.other(v);

        constexpr auto none = static_cast<std::size_t>(-1);
        std::vector<std::size_t> via(g.vertex_count(), none);
        std::vector<char> seen(g.vertex_count(), 0);
        std::vector<VertexId> queue{z};
        seen[z] = 1;
        for (std::size_t head = 0; head < queue.size() && !seen[v]; ++head) {
            VertexId u = queue[head];
            for (std::size_t p : inc[u]) {
                if (p == first)
                    continue;
                VertexId w = g.edge(p).other(u);
                if (!seen[w]) {
                    seen[w] = 1;
                    via[w] = p;
                    queue.push_back(w);
                }
            }
        }
        if (!seen[v])
            continue;
        std::vector<std::size_t> cycle{first};
        for (VertexId u = v; u != z; u = g.edge(via[u]).other(u))
            cycle.push_back(via[u]);
        return cycle;
    }
    return {};
}

/// Edge positions of a shortest path from `from` to `to` (ties by lowest
/// edge position), or empty when they are disconnected or equal.
inline std::vector<std::size_t> shortest_path(const MultiGraph& g, VertexId from, VertexId to)
{
    if (from == to)
        return {};
    auto inc = g.incidence();
    constexpr auto none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> via(g.vertex_count(), none);
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<VertexId> queue{from};
    seen[from] = 1;
    for (std::size_t head = 0; head < queue.size() && !seen[to]; ++head) {
        VertexId u = queue[head];
        for (std::size_t p : inc[u]) {
            VertexId w = g.edge(p).other(u);
            if (!seen[w]) {
                seen[w] = 1;
                via[w] = p;
                queue.push_back(w);
            }
        }
    }
    if (!seen[to])
        return {};
    std::vector<std::size_t> path;
    for (VertexId u = to; u != from; u = g.edge(via[u]).other(u))
        path.push_back(via[u]);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace hamdecomp
