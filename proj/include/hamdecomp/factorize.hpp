#pragma once

#include "hamdecomp/errors.hpp"
#include "hamdecomp/graph.hpp"
#include "hamdecomp/multipartite.hpp"
#include "hamdecomp/recolour.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hamdecomp {

using BlockId = std::uint32_t;

namespace detail {

/// Perfect matchings peeled off a regular bipartite multigraph, one Kuhn
/// augmenting-path maximum matching per round.
class RegularBipartiteSplitter {
public:
    /// arcs[p] = (left tail, right head); both sides have `side` vertices.
    RegularBipartiteSplitter(std::size_t side, const std::vector<Arc>& arcs)
        : side_(side), arcs_(arcs), out_(side), removed_(arcs.size(), 0)
    {
        for (std::size_t p = 0; p < arcs.size(); ++p)
            out_[arcs[p].tail].push_back(p);
    }

    /// Arc positions of one perfect matching over the remaining arcs.
    std::vector<std::size_t> next_matching()
    {
        match_of_right_.assign(side_, none);
        for (VertexId u = 0; u < side_; ++u) {
            visited_.assign(side_, 0);
            ensure(augment(u), "regular bipartite multigraph has no perfect matching");
        }
        std::vector<std::size_t> matching;
        for (VertexId v = 0; v < side_; ++v) {
            matching.push_back(match_of_right_[v]);
            removed_[match_of_right_[v]] = 1;
        }
        std::sort(matching.begin(), matching.end());
        return matching;
    }

private:
    static constexpr std::size_t none = static_cast<std::size_t>(-1);

    bool augment(VertexId u)
    {
        for (std::size_t p : out_[u]) {
            if (removed_[p])
                continue;
            VertexId v = arcs_[p].head;
            if (visited_[v])
                continue;
            visited_[v] = 1;
            if (match_of_right_[v] == none || augment(arcs_[match_of_right_[v]].tail)) {
                match_of_right_[v] = p;
                return true;
            }
        }
        return false;
    }

    std::size_t side_;
    const std::vector<Arc>& arcs_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<char> removed_;
    std::vector<std::size_t> match_of_right_;
    std::vector<char> visited_;
};

/// Index of the 2-factor holding each edge position.
inline std::vector<std::uint32_t> two_factor_assignment(const MultiGraph& g)
{
    auto deg = g.degrees();
    const std::size_t d = deg.empty() ? 0 : deg.front();
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (deg[v] != d || d % 2 != 0)
            throw NotEvenRegular("graph is not regular of even degree (vertex " + std::to_string(v) + ")");

    // Out-copies on the left, in-copies on the right: each vertex has d/2 of
    // each, so the split graph is (d/2)-regular bipartite and every perfect
    // matching folds back to a spanning 2-regular subgraph.
    auto arcs = euler_orientation(g);
    RegularBipartiteSplitter splitter(g.vertex_count(), arcs);
    std::vector<std::uint32_t> factor_of(g.edge_count(), 0);
    for (std::uint32_t i = 0; i < d / 2; ++i)
        for (std::size_t p : splitter.next_matching())
            factor_of[p] = i;
    return factor_of;
}

} // namespace detail

/// Petersen: a 2k-regular multigraph (loops counting two) splits into k
/// edge-disjoint spanning 2-regular subgraphs. Edge ids are kept.
inline std::vector<MultiGraph> two_factorization(const MultiGraph& g)
{
    auto factor_of = detail::two_factor_assignment(g);
    std::size_t k = g.vertex_count() == 0 ? 0 : g.degree(0) / 2;
    std::vector<MultiGraph> out;
    for (std::uint32_t i = 0; i < k; ++i)
        out.push_back(g.spanning_subgraph([&](std::size_t p) { return factor_of[p] == i; }));
    return out;
}

/// t factors with deg_{F_i}(v) = deg(v)/t, given 2t | deg(v) for every v.
///
/// Each vertex is split into deg(v)/2t copies, its incidences dealt out in
/// edge-id order 2t per copy; the resulting 2t-regular graph is 2-factorised
/// and copies are merged back.
inline Factorisation proportional_factorization(const MultiGraph& g, std::size_t t)
{
    if (t == 0)
        throw PreconditionViolated("t must be positive");
    auto deg = g.degrees();
    std::vector<VertexId> first_copy(g.vertex_count() + 1, 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (deg[v] % (2 * t) != 0)
            throw DegreeNotDivisible("degree " + std::to_string(deg[v]) + " of vertex " + std::to_string(v)
                                     + " is not divisible by " + std::to_string(2 * t));
        first_copy[v + 1] = first_copy[v] + static_cast<VertexId>(deg[v] / (2 * t));
    }

    MultiGraph split(first_copy.back());
    std::vector<std::size_t> dealt(g.vertex_count(), 0);
    for (const Edge& e : g.edges()) {
        auto ca = first_copy[e.a] + static_cast<VertexId>(dealt[e.a]++ / (2 * t));
        auto cb = first_copy[e.b] + static_cast<VertexId>(dealt[e.b]++ / (2 * t));
        split.add_edge_with_id(e.id, ca, cb);
    }

    Factorisation f{g, detail::two_factor_assignment(split), t};
    for (std::size_t i = 0; i < t; ++i) {
        auto fd = f.factor(i).degrees();
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            detail::ensure(fd[v] * t == deg[v], "proportional_factorization broke the degree contract");
    }
    return f;
}

/// Star of multiplicity 2t in the degree-class quotient. `excluded` is the
/// one block left out of a near-spanning star; it is always a single part.
struct StarCertificate {
    BlockId center = 0;
    std::vector<BlockId> leaves;
    std::size_t multiplicity = 0;
    std::optional<BlockId> excluded;
};

/// Finds a spanning or near-spanning star of multiplicity two_t.
///
/// Tried in order: spanning star on the largest block; the largest block
/// with one smallest single-part block left out; then every (center,
/// excluded) pair. A block is a single part exactly when it carries no loops.
inline StarCertificate find_star(const QuotientView& q, std::size_t two_t)
{
    const std::size_t s = q.quotient.vertex_count();
    if (s == 0)
        throw PreconditionViolated("empty quotient");
    if (s == 1)
        return StarCertificate{0, {}, two_t, std::nullopt};

    const auto mult = q.quotient.multiplicity_table();
    auto single_part = [&](BlockId b) { return mult[b * s + b] == 0; };
    auto attempt = [&](BlockId center, std::optional<BlockId> excluded) -> std::optional<StarCertificate> {
        if (excluded && (*excluded == center || !single_part(*excluded)))
            return std::nullopt;
        StarCertificate cert{center, {}, two_t, excluded};
        for (BlockId j = 0; j < s; ++j) {
            if (j == center || (excluded && j == *excluded))
                continue;
            if (mult[center * s + j] < two_t)
                return std::nullopt;
            cert.leaves.push_back(j);
        }
        return cert;
    };

    std::vector<std::size_t> sizes;
    for (const auto& block : q.partition.blocks)
        sizes.push_back(block.size());
    const BlockId largest = static_cast<BlockId>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    const std::size_t smallest_size = *std::min_element(sizes.begin(), sizes.end());

    if (auto cert = attempt(largest, std::nullopt))
        return *cert;
    for (BlockId b = 0; b < s; ++b)
        if (sizes[b] == smallest_size)
            if (auto cert = attempt(largest, b))
                return *cert;
    for (BlockId center = 0; center < s; ++center) {
        if (auto cert = attempt(center, std::nullopt))
            return *cert;
        for (BlockId b = 0; b < s; ++b)
            if (auto cert = attempt(center, b))
                return *cert;
    }
    throw StarNotFound("no star of multiplicity " + std::to_string(two_t) + " in the degree-class quotient");
}

/// Splits the star's edges into t stars of multiplicity 2: from each leaf's
/// lowest-id 2t parallel edges, set i takes the (2i)th and (2i+1)th.
inline std::vector<std::vector<EdgeId>> split_star(const StarCertificate& cert, const QuotientView& q, std::size_t t)
{
    if (cert.multiplicity != 2 * t)
        throw PreconditionViolated("star multiplicity is not 2t");
    std::vector<std::vector<EdgeId>> sets(t);
    for (BlockId leaf : cert.leaves) {
        std::vector<EdgeId> parallel;
        for (const Edge& e : q.quotient.edges())
            if ((e.a == cert.center && e.b == leaf) || (e.a == leaf && e.b == cert.center))
                parallel.push_back(e.id);
        if (parallel.size() < 2 * t)
            throw PreconditionViolated("leaf " + std::to_string(leaf) + " has multiplicity below 2t");
        for (std::size_t i = 0; i < t; ++i) {
            sets[i].push_back(parallel[2 * i]);
            sets[i].push_back(parallel[2 * i + 1]);
        }
    }
    for (auto& set : sets)
        std::sort(set.begin(), set.end());
    return sets;
}

} // namespace hamdecomp
