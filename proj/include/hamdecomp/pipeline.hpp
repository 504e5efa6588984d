#pragma once

#include "hamdecomp/errors.hpp"
#include "hamdecomp/factorize.hpp"
#include "hamdecomp/graph.hpp"
#include "hamdecomp/multipartite.hpp"
#include "hamdecomp/recolour.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace hamdecomp {

/// Degree-class quotient plus an extra vertex absorbing each block's degree
/// deficit, so block j has degree 2t*b_j and the extra vertex has degree 2t.
/// Edges with ids below `base_edge_count` are the quotient's own edges.
struct AugmentedQuotient {
    MultiGraph graph;
    VertexId infinity = 0;
    std::vector<std::uint64_t> infinity_multiplicities;
    std::size_t base_edge_count = 0;
};

inline AugmentedQuotient augment_quotient(const QuotientView& q, std::size_t t)
{
    const std::size_t s = q.quotient.vertex_count();
    AugmentedQuotient aug;
    aug.graph = MultiGraph(s + 1);
    aug.infinity = static_cast<VertexId>(s);
    aug.base_edge_count = q.quotient.edge_count();
    for (const Edge& e : q.quotient.edges())
        aug.graph.add_edge_with_id(e.id, e.a, e.b);

    auto deg = q.quotient.degrees();
    for (BlockId j = 0; j < s; ++j) {
        const std::uint64_t target = 2 * t * q.partition.blocks[j].size();
        detail::ensure(deg[j] <= target, "block degree exceeds 2t*b_j");
        aug.infinity_multiplicities.push_back(target - deg[j]);
        for (std::uint64_t k = 0; k < target - deg[j]; ++k)
            aug.graph.add_edge(j, aug.infinity);
    }

    auto aug_deg = aug.graph.degrees();
    std::size_t n = q.base.vertex_count();
    detail::ensure(aug_deg[aug.infinity] == 2 * t, "extra vertex degree is not 2t");
    for (BlockId j = 0; j < s; ++j)
        detail::ensure(aug_deg[j] == 2 * t * q.partition.blocks[j].size(), "block degree is not 2t*b_j");
    detail::ensure(aug.graph.edge_count() == t * (n + 1), "augmented quotient does not have t(n+1) edges");
    return aug;
}

struct TraceEntry {
    std::string stage;     ///< "base", "part-connect" or "hamilton"
    std::string measure;   ///< what `components` counts: degree-class, part or factor components
    std::size_t components = 0;
    std::vector<ShapeTag> shapes;
};

/// Per-stage component totals. Within one stage consecutive entries strictly
/// decrease; the first entry of a stage is its starting value.
struct PipelineTrace {
    std::vector<TraceEntry> entries;
};

/// t vertex sequences; each orientation starts at its lower endpoint and the
/// list is sorted.
struct Decomposition {
    std::vector<std::vector<VertexId>> paths;

    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

namespace detail {

inline void record(PipelineTrace* trace, std::string stage, std::string measure, std::size_t total,
                   const Factorisation& f)
{
    if (!trace)
        return;
    TraceEntry entry{std::move(stage), std::move(measure), total, {}};
    for (std::size_t i = 0; i < f.t; ++i)
        entry.shapes.push_back(classify_factor(f.factor(i)).tag);
    trace->entries.push_back(std::move(entry));
}

inline void ensure_shapes(const Factorisation& f, std::size_t n, const std::string& where)
{
    for (std::size_t i = 0; i < f.t; ++i) {
        auto fi = f.factor(i);
        ensure(fi.edge_count() == n - 1, where + ": factor " + std::to_string(i) + " does not have n-1 edges");
        ensure(classify_factor(fi).has_cycles_plus_path_form(),
               where + ": factor " + std::to_string(i) + " is not cycles plus one path");
    }
}

inline std::size_t require_pipeline_input(const MultipartiteSpec& spec)
{
    auto report = admissibility(spec);
    if (!report.admissible)
        throw NotAdmissible(report);
    if (spec.part_count() < 2 || report.n < 2)
        throw PreconditionViolated("the construction needs at least two parts");
    return static_cast<std::size_t>(*report.t);
}

} // namespace detail

/// Factorisation of K into t factors, each a union of cycles and one path,
/// with every factor connected after collapsing degree classes.
///
/// The degree-class quotient is augmented, a star of multiplicity 2t is cut
/// out, the rest is factorised proportionally and the star is shared out two
/// edges per leaf per factor. Dropping the extra vertex and lifting through
/// the shared edge ids gives factors of K with block totals at most 2b_j;
/// equal-size parts are then balanced on the part quotient and each part is
/// equitabilised, which caps every vertex degree at 2.
inline Factorisation base_factorisation(const MultipartiteSpec& spec, PipelineTrace* trace = nullptr)
{
    const std::size_t t = detail::require_pipeline_input(spec);
    const std::size_t n = spec.order();
    auto [k, parts] = build_graph(spec);
    const auto classes = degree_partition(spec);
    const auto q = quotient(k, classes);
    const std::size_t s = classes.size();

    const auto aug = augment_quotient(q, t);
    const auto star = find_star(q, 2 * t);
    const auto star_sets = split_star(star, q, t);

    std::vector<char> in_star(aug.graph.edge_count(), 0);
    for (const auto& set : star_sets)
        for (EdgeId id : set)
            in_star[aug.graph.position_of(id)] = 1;
    MultiGraph rest = aug.graph.spanning_subgraph([&](std::size_t p) { return !in_star[p]; });
    const Factorisation z = proportional_factorization(rest, t);

    // Factor of each edge of K, read through the shared ids.
    std::vector<std::uint32_t> factor_of(k.edge_count(), static_cast<std::uint32_t>(-1));
    for (std::size_t p = 0; p < rest.edge_count(); ++p)
        if (rest.edge(p).id < aug.base_edge_count)
            factor_of[k.position_of(rest.edge(p).id)] = z.factor_of[p];
    for (std::uint32_t i = 0; i < t; ++i)
        for (EdgeId id : star_sets[i])
            factor_of[k.position_of(id)] = i;
    for (auto f : factor_of)
        detail::ensure(f < t, "an edge of K was left without a factor");

    const Factorisation g{k, factor_of, t};
    for (std::size_t i = 0; i < t; ++i) {
        auto h = quotient_graph(g.factor(i), classes);
        auto hdeg = h.degrees();
        for (BlockId j = 0; j < s; ++j)
            detail::ensure(hdeg[j] <= 2 * classes.blocks[j].size(), "base stage: block degree above 2b_j");
        detail::ensure(h.edge_count() == n - 1, "base stage: factor does not have n-1 edges");
        detail::ensure(is_connected(h), "base stage: degree-class quotient of a factor is disconnected");
    }

    const Factorisation balanced = equalise_equal_parts(k, parts, g);
    detail::ensure(same_factor_quotients(g, balanced, classes), "balancing equal parts moved a degree-class quotient");
    Factorisation f = equitabilise(k, parts, balanced);

    detail::ensure_shapes(f, n, "base stage");
    detail::ensure(f.total_components(classes) == t, "base stage: degree-class quotients not all connected");
    detail::record(trace, "base", "degree-class", f.total_components(classes), f);
    return f;
}

/// Makes every factor's part quotient connected, keeping the cycles-plus-path
/// shape and the degree-class quotients, by repeatedly connecting two
/// equal-size parts that a factor's part quotient separates.
inline Factorisation part_connect(const MultipartiteSpec& spec, Factorisation f, PipelineTrace* trace = nullptr)
{
    const std::size_t t = detail::require_pipeline_input(spec);
    const std::size_t n = spec.order();
    auto [k, parts] = build_graph(spec);
    const auto classes = degree_partition(spec);
    if (f.t != t || f.graph.edge_count() != k.edge_count())
        throw PreconditionViolated("factorisation does not belong to this spec");
    const MultiGraph part_quotient = quotient_graph(k, parts);

    std::size_t total = f.total_components(parts);
    detail::record(trace, "part-connect", "part", total, f);
    const std::size_t budget = total - t;
    for (std::size_t iteration = 0; total > t; ++iteration) {
        detail::ensure(iteration < budget, "part-connect exceeded its iteration bound");

        std::size_t target = 0;
        Components comps;
        for (; target < t; ++target) {
            comps = components(quotient_graph(f.factor(target), parts));
            if (comps.count > 1)
                break;
        }
        VertexId x = 0, y = 0;
        bool found = false;
        for (VertexId a = 0; a < parts.size() && !found; ++a)
            for (VertexId b = a + 1; b < parts.size() && !found; ++b)
                if (parts.blocks[a].size() == parts.blocks[b].size()
                    && comps.component_of[a] != comps.component_of[b]) {
                    x = a;
                    y = b;
                    found = true;
                }
        detail::ensure(found, "part-connect: no separated pair of equal-size parts");

        const Factorisation on_quotient{part_quotient, f.factor_of, t};
        const Factorisation joined = connect_pair(on_quotient, x, y);
        const Factorisation next = equitabilise(k, parts, Factorisation{k, joined.factor_of, t});

        const std::size_t next_total = next.total_components(parts);
        detail::ensure(next_total < total, "part-connect: component total did not decrease");
        detail::ensure(same_factor_quotients(f, next, classes), "part-connect: degree-class quotient changed");
        detail::ensure_shapes(next, n, "part-connect");
        f = next;
        total = next_total;
        detail::record(trace, "part-connect", "part", total, f);
    }
    return f;
}

/// Hamilton path of a connected factor, walked from its lower endpoint.
inline std::vector<VertexId> factor_to_path(const MultiGraph& factor)
{
    detail::ensure(classify_factor(factor).tag == ShapeTag::HamiltonPath, "factor is not a Hamilton path");
    const std::size_t n = factor.vertex_count();
    if (n == 1)
        return {0};
    auto deg = factor.degrees();
    auto inc = factor.incidence();
    VertexId start = static_cast<VertexId>(std::find(deg.begin(), deg.end(), 1u) - deg.begin());
    std::vector<VertexId> path{start};
    std::size_t came_by = static_cast<std::size_t>(-1);
    while (path.size() < n) {
        VertexId v = path.back();
        for (std::size_t p : inc[v])
            if (p != came_by) {
                came_by = p;
                path.push_back(factor.edge(p).other(v));
                break;
            }
    }
    return path;
}

/// Decomposition of an admissible complete multipartite graph into t
/// edge-disjoint Hamilton paths. Throws NotAdmissible otherwise.
inline Decomposition hamilton_decompose(const MultipartiteSpec& spec, PipelineTrace* trace = nullptr)
{
    auto report = admissibility(spec);
    if (!report.admissible)
        throw NotAdmissible(report);
    if (report.n == 1 || *report.t == 0)
        return {};

    const std::size_t t = static_cast<std::size_t>(*report.t);
    const std::size_t n = spec.order();
    auto [k, parts] = build_graph(spec);

    Factorisation f = part_connect(spec, base_factorisation(spec, trace), trace);

    std::size_t total = f.total_components();
    detail::record(trace, "hamilton", "factor", total, f);
    const std::size_t budget = total - t;
    for (std::size_t iteration = 0; total > t; ++iteration) {
        detail::ensure(iteration < budget, "hamilton stage exceeded its iteration bound");

        std::size_t target = 0;
        Components comps;
        for (; target < t; ++target) {
            comps = components(f.factor(target));
            if (comps.count > 1)
                break;
        }
        VertexId u = 0, v = 0;
        bool found = false;
        for (const auto& part : parts.blocks) {
            for (std::size_t i = 0; i < part.size() && !found; ++i)
                for (std::size_t j = i + 1; j < part.size() && !found; ++j)
                    if (comps.component_of[part[i]] != comps.component_of[part[j]]) {
                        u = part[i];
                        v = part[j];
                        found = true;
                    }
            if (found)
                break;
        }
        detail::ensure(found, "hamilton stage: no separated pair inside a part");

        const Factorisation next = connect_pair(f, u, v);
        const std::size_t next_total = next.total_components();
        detail::ensure(next_total < total, "hamilton stage: component total did not decrease");
        detail::ensure(same_factor_quotients(f, next, parts), "hamilton stage: part quotient changed");
        detail::ensure_shapes(next, n, "hamilton stage");
        f = next;
        total = next_total;
        detail::record(trace, "hamilton", "factor", total, f);
    }

    Decomposition d;
    for (std::size_t i = 0; i < t; ++i)
        d.paths.push_back(factor_to_path(f.factor(i)));
    std::sort(d.paths.begin(), d.paths.end());
    return d;
}

} // namespace hamdecomp
