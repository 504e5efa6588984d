#pragma once

#include "hamdecomp/errors.hpp"
#include "hamdecomp/graph.hpp"
#include "hamdecomp/multipartite.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hamdecomp {

/// A vertex set every permutation of which is an automorphism of its graph.
struct SymmetricOrbit {
    std::vector<VertexId> vertices;   ///< sorted, distinct

    static SymmetricOrbit of(std::vector<VertexId> vs)
    {
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return SymmetricOrbit{std::move(vs)};
    }

    bool contains(VertexId v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
    std::size_t size() const { return vertices.size(); }
};

/// Throws LoopOnOrbit / OrbitViolation unless S is a loop-free symmetric orbit:
/// every outside vertex sees all of S with the same multiplicity and all pairs
/// inside S have the same multiplicity.
inline void check_orbit(const MultiGraph& g, const SymmetricOrbit& s)
{
    const std::size_t n = g.vertex_count();
    for (VertexId x : s.vertices)
        if (x >= n)
            throw PreconditionViolated("orbit vertex out of range");
    for (const Edge& e : g.edges())
        if (e.is_loop() && s.contains(e.a))
            throw LoopOnOrbit("loop on orbit vertex " + std::to_string(e.a));
    if (s.size() < 2)
        return;

    auto mult = g.multiplicity_table();
    const VertexId first = s.vertices.front();
    for (VertexId w = 0; w < n; ++w) {
        if (s.contains(w))
            continue;
        for (VertexId x : s.vertices)
            if (mult[w * n + x] != mult[w * n + first])
                throw OrbitViolation("vertex " + std::to_string(w) + " does not see the orbit uniformly");
    }
    const auto inner = mult[s.vertices[0] * n + s.vertices[1]];
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (mult[s.vertices[i] * n + s.vertices[j]] != inner)
                throw OrbitViolation("orbit pairs have unequal multiplicity");
}

/// Describes the first violated clause of the almost-regular recolouring
/// contract, or nullopt when `after` satisfies all four:
///   (a) per-colour edge counts unchanged,
///   (b) per-colour degrees unchanged outside S,
///   (c) edges with both ends outside S keep their colour,
///   (d) every colour class almost regular on S.
inline std::optional<std::string> recolour_contract_failure(const MultiGraph& g, const Colouring& before,
                                                            const Colouring& after, const SymmetricOrbit& s)
{
    const std::size_t colours = before.colour_count;
    if (after.colour_count != colours || after.colour_of.size() != g.edge_count()
        || before.colour_of.size() != g.edge_count())
        return "colouring shape mismatch";

    std::vector<std::size_t> count_before(colours, 0), count_after(colours, 0);
    for (std::size_t p = 0; p < g.edge_count(); ++p) {
        if (before.colour_of[p] >= colours || after.colour_of[p] >= colours)
            return "colour out of range";
        ++count_before[before.colour_of[p]];
        ++count_after[after.colour_of[p]];
        const Edge& e = g.edge(p);
        if (!s.contains(e.a) && !s.contains(e.b) && before.colour_of[p] != after.colour_of[p])
            return "(c) edge " + std::to_string(e.id) + " outside S was recoloured";
    }
    if (count_before != count_after)
        return "(a) colour counts changed";

    auto deg_before = before.colour_degrees(g);
    auto deg_after = after.colour_degrees(g);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (s.contains(v))
            continue;
        for (std::size_t c = 0; c < colours; ++c)
            if (deg_before[v * colours + c] != deg_after[v * colours + c])
                return "(b) colour degree changed at vertex " + std::to_string(v);
    }
    for (std::size_t c = 0; c < colours; ++c) {
        std::size_t lo = static_cast<std::size_t>(-1), hi = 0;
        for (VertexId x : s.vertices) {
            lo = std::min(lo, deg_after[x * colours + c]);
            hi = std::max(hi, deg_after[x * colours + c]);
        }
        if (!s.vertices.empty() && hi - lo > 1)
            return "(d) colour " + std::to_string(c) + " not almost regular on S";
    }
    return std::nullopt;
}

namespace detail {

inline std::vector<std::size_t> vertex_colour_degrees(const std::vector<std::vector<std::size_t>>& inc,
                                                      const Colouring& col, VertexId x)
{
    std::vector<std::size_t> deg(col.colour_count, 0);
    for (std::size_t p : inc[x])
        ++deg[col.colour_of[p]];
    return deg;
}

/// Recolours `edges` (positions) so their colour multiset equals `target`,
/// keeping existing colours wherever the target still has room.
inline void assign_colours(std::vector<ColourId>& colour_of, const std::vector<std::size_t>& edges,
                           std::vector<std::size_t> target)
{
    std::vector<char> kept(edges.size(), 0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto c = colour_of[edges[i]];
        if (target[c] > 0) {
            --target[c];
            kept[i] = 1;
        }
    }
    ColourId c = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (kept[i])
            continue;
        while (target[c] == 0)
            ++c;
        colour_of[edges[i]] = c;
        --target[c];
    }
}

/// Makes every colour class almost regular on {x, y}, where (x y) is an
/// automorphism. Only edges between {x, y} and outside anchors move, and each
/// anchor keeps its colour counts, so degrees outside {x, y} are untouched.
///
/// Per anchor w, each colour's tokens split evenly between x and y; the odd
/// leftovers (an even number per anchor) are paired into edges of an
/// auxiliary graph on colours. A balanced orientation of that graph sends
/// tails to x and heads to y, leaving every colour off by at most one.
inline void balance_pair(const MultiGraph& g, const std::vector<std::vector<std::size_t>>& inc,
                         Colouring& col, VertexId x, VertexId y)
{
    const std::size_t colours = col.colour_count;
    std::vector<VertexId> anchors;
    std::vector<std::vector<std::size_t>> to_x(g.vertex_count()), to_y(g.vertex_count());
    for (std::size_t p : inc[x]) {
        VertexId w = g.edge(p).other(x);
        if (w != x && w != y)
            to_x[w].push_back(p);
    }
    for (std::size_t p : inc[y]) {
        VertexId w = g.edge(p).other(y);
        if (w != x && w != y)
            to_y[w].push_back(p);
    }
    for (VertexId w = 0; w < g.vertex_count(); ++w) {
        ensure(to_x[w].size() == to_y[w].size(), "pair is not symmetric at anchor " + std::to_string(w));
        if (!to_x[w].empty())
            anchors.push_back(w);
    }

    std::vector<std::vector<std::size_t>> share_x(anchors.size(), std::vector<std::size_t>(colours, 0));
    std::vector<std::vector<std::size_t>> totals(anchors.size(), std::vector<std::size_t>(colours, 0));
    MultiGraph aux(colours + 1);
    std::vector<std::size_t> aux_anchor;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        VertexId w = anchors[i];
        for (std::size_t p : to_x[w])
            ++totals[i][col.colour_of[p]];
        for (std::size_t p : to_y[w])
            ++totals[i][col.colour_of[p]];
        std::vector<ColourId> odd;
        for (ColourId c = 0; c < colours; ++c) {
            share_x[i][c] = totals[i][c] / 2;
            if (totals[i][c] % 2)
                odd.push_back(c);
        }
        for (std::size_t j = 0; j + 1 < odd.size(); j += 2) {
            aux.add_edge(odd[j], odd[j + 1]);
            aux_anchor.push_back(i);
        }
    }
    const std::size_t real_aux = aux.edge_count();
    auto aux_deg = aux.degrees();
    for (ColourId c = 0; c < colours; ++c)
        if (aux_deg[c] % 2)
            aux.add_edge(c, static_cast<VertexId>(colours));

    auto arcs = euler_orientation(aux);
    for (std::size_t k = 0; k < real_aux; ++k)
        ++share_x[aux_anchor[k]][arcs[k].tail];

    for (std::size_t i = 0; i < anchors.size(); ++i) {
        VertexId w = anchors[i];
        std::vector<std::size_t> share_y(colours);
        for (std::size_t c = 0; c < colours; ++c)
            share_y[c] = totals[i][c] - share_x[i][c];
        assign_colours(col.colour_of, to_x[w], share_x[i]);
        assign_colours(col.colour_of, to_y[w], share_y);
    }
}

} // namespace detail

/// Recolours so that every colour class is almost regular on the orbit S,
/// preserving colour counts, colour degrees outside S and the colours of
/// edges away from S. The contract is checked on every call; a breach raises
/// InternalInconsistency.
///
/// Pairs are balanced one at a time: while some colour's degrees on S spread
/// by two or more (first such colour), its argmax and argmin vertices (lowest
/// id on ties) are balanced against each other. Each step strictly lowers
/// the sum of squared colour degrees on S.
inline Colouring almost_regular_recolour(const MultiGraph& g, const Colouring& colouring,
                                         const SymmetricOrbit& s)
{
    if (colouring.colour_of.size() != g.edge_count())
        throw PreconditionViolated("colouring does not cover the graph");
    for (auto c : colouring.colour_of)
        if (c >= colouring.colour_count)
            throw PreconditionViolated("colour out of range");
    check_orbit(g, s);

    Colouring result = colouring;
    if (s.size() >= 2) {
        const auto inc = g.incidence();
        const std::size_t colours = colouring.colour_count;
        while (true) {
            std::vector<std::vector<std::size_t>> deg;
            for (VertexId x : s.vertices)
                deg.push_back(detail::vertex_colour_degrees(inc, result, x));

            std::optional<std::pair<std::size_t, std::size_t>> pick;
            for (std::size_t c = 0; c < colours && !pick; ++c) {
                std::size_t hi = 0, lo = 0;
                for (std::size_t i = 1; i < s.size(); ++i) {
                    if (deg[i][c] > deg[hi][c])
                        hi = i;
                    if (deg[i][c] < deg[lo][c])
                        lo = i;
                }
                if (deg[hi][c] >= deg[lo][c] + 2)
                    pick = {hi, lo};
            }
            if (!pick)
                break;
            detail::balance_pair(g, inc, result, s.vertices[pick->first], s.vertices[pick->second]);
        }
    }

    if (auto failure = recolour_contract_failure(g, colouring, result, s))
        throw InternalInconsistency("almost_regular_recolour: " + *failure);
    return result;
}

/// Assignment of every edge of `graph` to one of t factors (0-based).
struct Factorisation {
    MultiGraph graph;
    std::vector<std::uint32_t> factor_of;   ///< by edge position
    std::size_t t = 0;

    static Factorisation from_colouring(MultiGraph graph, const Colouring& c)
    {
        return Factorisation{std::move(graph), c.colour_of, c.colour_count};
    }

    Colouring as_colouring() const { return Colouring{factor_of, t}; }

    MultiGraph factor(std::size_t i) const
    {
        return graph.spanning_subgraph([&](std::size_t p) { return factor_of[p] == i; });
    }

    std::vector<MultiGraph> factors() const
    {
        std::vector<MultiGraph> out;
        for (std::size_t i = 0; i < t; ++i)
            out.push_back(factor(i));
        return out;
    }

    /// Sum over factors of the number of components.
    std::size_t total_components() const
    {
        std::size_t total = 0;
        for (std::size_t i = 0; i < t; ++i)
            total += components(factor(i)).count;
        return total;
    }

    /// Sum over factors of the number of components of the factor's quotient.
    std::size_t total_components(const VertexPartition& partition) const
    {
        std::size_t total = 0;
        for (std::size_t i = 0; i < t; ++i)
            total += components(quotient_graph(factor(i), partition)).count;
        return total;
    }
};

/// True when factor i of x and y have equal quotients under `partition`, for all i.
inline bool same_factor_quotients(const Factorisation& x, const Factorisation& y, const VertexPartition& partition)
{
    if (x.t != y.t)
        return false;
    for (std::size_t i = 0; i < x.t; ++i)
        if (!same_multigraph(quotient_graph(x.factor(i), partition), quotient_graph(y.factor(i), partition)))
            return false;
    return true;
}

inline bool almost_regular_on(const std::vector<std::size_t>& degrees, const std::vector<VertexId>& s)
{
    if (s.empty())
        return true;
    auto [lo, hi] = std::minmax_element(s.begin(), s.end(),
                                        [&](VertexId a, VertexId b) { return degrees[a] < degrees[b]; });
    return degrees[*hi] - degrees[*lo] <= 1;
}

/// Factorisation of K with the same part-quotient per factor and each factor
/// almost regular on every part: the recolouring applied to S = A_1, A_2, ...
inline Factorisation equitabilise(const MultiGraph& k, const VertexPartition& parts, const Factorisation& f)
{
    if (f.graph.edge_count() != k.edge_count() || parts.block_of.size() != k.vertex_count())
        throw PreconditionViolated("factorisation does not belong to this graph");

    Colouring col = f.as_colouring();
    for (const auto& part : parts.blocks)
        if (part.size() >= 2)
            col = almost_regular_recolour(k, col, SymmetricOrbit::of(part));

    Factorisation out = Factorisation::from_colouring(k, col);
    detail::ensure(same_factor_quotients(f, out, parts), "equitabilise changed a part quotient");
    for (std::size_t i = 0; i < out.t; ++i) {
        auto deg = out.factor(i).degrees();
        for (const auto& part : parts.blocks)
            detail::ensure(almost_regular_on(deg, part), "equitabilise left a part unbalanced");
    }
    return out;
}

/// Makes each factor's part-quotient almost regular across parts of equal
/// size: the recolouring on the part quotient with S = all parts of one size.
/// Each factor keeps its degree-class quotient (edges only trade endpoints
/// between equal-size parts).
inline Factorisation equalise_equal_parts(const MultiGraph& k, const VertexPartition& parts, const Factorisation& f)
{
    if (f.graph.edge_count() != k.edge_count() || parts.block_of.size() != k.vertex_count())
        throw PreconditionViolated("factorisation does not belong to this graph");

    MultiGraph part_quotient = quotient_graph(k, parts);
    Colouring col = f.as_colouring();
    for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        std::vector<VertexId> same_size;
        while (j < parts.size() && parts.blocks[j].size() == parts.blocks[i].size())
            same_size.push_back(static_cast<VertexId>(j++));
        if (same_size.size() >= 2)
            col = almost_regular_recolour(part_quotient, col, SymmetricOrbit::of(same_size));
        i = j;
    }
    return Factorisation::from_colouring(k, col);
}

/// Describes the first violated clause of the connecting contract for the
/// pair {alpha, beta}, or nullopt:
///   (1) factor sizes kept, (2) degrees outside the pair kept,
///   (3) edges away from the pair keep their factor, (4) each factor almost
///   regular on the pair, (5) alpha and beta share a component in every factor.
inline std::optional<std::string> connect_contract_failure(const Factorisation& before, const Factorisation& after,
                                                           VertexId alpha, VertexId beta)
{
    if (before.t != after.t || before.factor_of.size() != after.factor_of.size())
        return "factorisation shape mismatch";
    const MultiGraph& g = before.graph;
    for (std::size_t p = 0; p < g.edge_count(); ++p) {
        const Edge& e = g.edge(p);
        if (!e.touches(alpha) && !e.touches(beta) && before.factor_of[p] != after.factor_of[p])
            return "(3) edge " + std::to_string(e.id) + " away from the pair changed factor";
    }
    for (std::size_t i = 0; i < before.t; ++i) {
        auto gi = before.factor(i);
        auto fi = after.factor(i);
        if (gi.edge_count() != fi.edge_count())
            return "(1) factor " + std::to_string(i) + " changed size";
        auto dg = gi.degrees();
        auto df = fi.degrees();
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (v != alpha && v != beta && dg[v] != df[v])
                return "(2) degree changed at vertex " + std::to_string(v) + " in factor " + std::to_string(i);
        if (std::max(df[alpha], df[beta]) - std::min(df[alpha], df[beta]) > 1)
            return "(4) factor " + std::to_string(i) + " not almost regular on the pair";
        auto comps = components(fi);
        if (comps.component_of[alpha] != comps.component_of[beta])
            return "(5) pair separated in factor " + std::to_string(i);
    }
    return std::nullopt;
}

/// Joins alpha and beta into one component of every factor, where the
/// transposition (alpha beta) is an automorphism and in each factor the two
/// share a component or one of them lies on a cycle.
///
/// Factor i is split into colour c_i and a marked colour c'_i: the marked
/// edges are a breadth-first alpha-beta path when the pair is already joined,
/// otherwise a cycle through the lower-labelled of the two that lies on one.
/// After the almost-regular recolouring on {alpha, beta} every marked class
/// has degree exactly one at both alpha and beta and even degree elsewhere,
/// so it links them. Factor i is then c_i together with c'_i.
inline Factorisation connect_pair(const Factorisation& f, VertexId alpha, VertexId beta)
{
    const MultiGraph& g = f.graph;
    if (alpha == beta || alpha >= g.vertex_count() || beta >= g.vertex_count())
        throw PreconditionViolated("connect_pair needs two distinct vertices");
    const auto pair = SymmetricOrbit::of({alpha, beta});
    check_orbit(g, pair);

    const std::size_t t = f.t;
    Colouring gamma{f.factor_of, 2 * t};
    for (std::size_t i = 0; i < t; ++i) {
        std::vector<std::size_t> positions;
        for (std::size_t p = 0; p < g.edge_count(); ++p)
            if (f.factor_of[p] == i)
                positions.push_back(p);
        MultiGraph gi = f.factor(i);
        auto comps = components(gi);

        std::vector<std::size_t> marked;
        if (comps.component_of[alpha] == comps.component_of[beta]) {
            marked = shortest_path(gi, alpha, beta);
        } else {
            VertexId first = std::min(alpha, beta), second = std::max(alpha, beta);
            marked = cycle_through(gi, first);
            if (marked.empty())
                marked = cycle_through(gi, second);
            if (marked.empty())
                throw PreconditionViolated("factor " + std::to_string(i)
                                           + " separates the pair and neither vertex lies on a cycle");
        }
        for (std::size_t local : marked)
            gamma.colour_of[positions[local]] = static_cast<ColourId>(t + i);
    }

    Colouring recoloured = almost_regular_recolour(g, gamma, pair);
    Factorisation out{g, recoloured.colour_of, t};
    for (auto& c : out.factor_of)
        c %= static_cast<std::uint32_t>(t);

    if (auto failure = connect_contract_failure(f, out, alpha, beta))
        throw InternalInconsistency("connect_pair: " + *failure);
    detail::ensure(out.total_components() <= f.total_components(), "connect_pair increased the component total");
    return out;
}

} // namespace hamdecomp
