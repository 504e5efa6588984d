#pragma once

#include "hamdecomp/errors.hpp"
#include "hamdecomp/multipartite.hpp"
#include "hamdecomp/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hamdecomp {

enum class VerificationFailure {
    NotSpanning,
    RepeatedVertex,
    NonEdge,
    DuplicateEdgeAcrossPaths,
    EdgeCountMismatch,
    WrongPathCount
};

inline const char* to_string(VerificationFailure f)
{
    switch (f) {
    case VerificationFailure::NotSpanning: return "not-spanning";
    case VerificationFailure::RepeatedVertex: return "repeated-vertex";
    case VerificationFailure::NonEdge: return "non-edge";
    case VerificationFailure::DuplicateEdgeAcrossPaths: return "duplicate-edge";
    case VerificationFailure::EdgeCountMismatch: return "edge-count-mismatch";
    case VerificationFailure::WrongPathCount: return "wrong-path-count";
    }
    return "?";
}

struct VerificationReport {
    struct Item {
        std::optional<std::size_t> path;   ///< absent for whole-decomposition failures
        VerificationFailure reason;
    };
    bool valid = true;
    std::vector<Item> failures;

    bool has(VerificationFailure reason) const
    {
        for (const auto& f : failures)
            if (f.reason == reason)
                return true;
        return false;
    }
};

/// Checks that `d` is exactly t Hamilton paths of K whose edge sets
/// partition E(K). Works from part sizes alone; no pipeline code involved.
inline VerificationReport verify_decomposition(const MultipartiteSpec& spec, const Decomposition& d)
{
    VerificationReport report;
    auto fail = [&](std::optional<std::size_t> path, VerificationFailure why) {
        report.valid = false;
        report.failures.push_back({path, why});
    };

    const auto adm = admissibility(spec);
    const std::size_t n = spec.order();
    std::vector<std::size_t> part_of;
    for (std::size_t i = 0; i < spec.part_count(); ++i)
        part_of.insert(part_of.end(), spec.part_size(i), i);

    if (!adm.t || d.paths.size() != *adm.t)
        fail(std::nullopt, VerificationFailure::WrongPathCount);

    std::set<std::pair<std::size_t, std::size_t>> used;
    std::size_t edge_total = 0;
    for (std::size_t i = 0; i < d.paths.size(); ++i) {
        const auto& path = d.paths[i];
        std::vector<char> seen(n, 0);
        bool repeated = false, out_of_range = false;
        for (auto v : path) {
            if (v >= n) {
                out_of_range = true;
                continue;
            }
            repeated |= seen[v] != 0;
            seen[v] = 1;
        }
        if (repeated)
            fail(i, VerificationFailure::RepeatedVertex);
        if (out_of_range || path.size() != n || std::find(seen.begin(), seen.end(), 0) != seen.end())
            fail(i, VerificationFailure::NotSpanning);

        bool non_edge = false, duplicate = false;
        for (std::size_t j = 0; j + 1 < path.size(); ++j) {
            std::size_t u = path[j], v = path[j + 1];
            if (u >= n || v >= n || part_of[u] == part_of[v]) {
                non_edge = true;
                continue;
            }
            ++edge_total;
            if (!used.insert({std::min(u, v), std::max(u, v)}).second)
                duplicate = true;
        }
        if (non_edge)
            fail(i, VerificationFailure::NonEdge);
        if (duplicate)
            fail(i, VerificationFailure::DuplicateEdgeAcrossPaths);
    }
    if (edge_total != adm.m || used.size() != adm.m)
        fail(std::nullopt, VerificationFailure::EdgeCountMismatch);
    return report;
}

enum class OracleStatus { Found, Exhausted, Unknown };

inline const char* to_string(OracleStatus s)
{
    switch (s) {
    case OracleStatus::Found: return "found";
    case OracleStatus::Exhausted: return "none";
    case OracleStatus::Unknown: return "unknown";
    }
    return "?";
}

struct OracleResult {
    OracleStatus status = OracleStatus::Exhausted;
    std::optional<Decomposition> decomposition;
    std::uint64_t nodes = 0;
};

namespace detail {

/// Exact search for an edge partition into Hamilton paths on bitmask
/// adjacency. The next path always contains the smallest unused edge,
/// oriented from its lower end, which removes path permutations and
/// reversals. Between paths, every vertex must keep a remaining degree in
/// [k, 2k] for the k paths still to come.
class HamiltonPathSearch {
public:
    HamiltonPathSearch(std::size_t n, std::vector<std::uint32_t> adjacency, std::uint64_t limit)
        : n_(n), adj_(std::move(adjacency)), limit_(limit)
    {
    }

    OracleResult run()
    {
        OracleResult result;
        std::size_t remaining = 0;
        for (auto row : adj_)
            remaining += static_cast<std::size_t>(std::popcount(row));
        remaining /= 2;
        bool found = solve(remaining);
        result.nodes = nodes_;
        if (found) {
            result.status = OracleStatus::Found;
            Decomposition d{paths_};
            std::sort(d.paths.begin(), d.paths.end());
            result.decomposition = std::move(d);
        } else {
            result.status = aborted_ ? OracleStatus::Unknown : OracleStatus::Exhausted;
        }
        return result;
    }

private:
    bool tick()
    {
        if (limit_ && ++nodes_ > limit_) {
            aborted_ = true;
            return false;
        }
        if (!limit_)
            ++nodes_;
        return true;
    }

    bool solve(std::size_t remaining)
    {
        if (remaining == 0)
            return true;
        if (!tick() || remaining % (n_ - 1) != 0)
            return false;
        const std::size_t k = remaining / (n_ - 1);
        for (std::size_t v = 0; v < n_; ++v) {
            auto r = static_cast<std::size_t>(std::popcount(adj_[v]));
            if (r < k || r > 2 * k)
                return false;
        }
        std::size_t u = 0;
        while (adj_[u] == 0)
            ++u;
        std::size_t v = static_cast<std::size_t>(std::countr_zero(adj_[u]));

        remove_edge(u, v);
        std::vector<std::uint32_t> right{static_cast<std::uint32_t>(v)};
        bool ok = extend_right(u, right, (1u << u) | (1u << v), remaining);
        add_edge(u, v);
        return ok;
    }

    // Grows the part after v; at each length the left side from u is tried.
    bool extend_right(std::size_t u, std::vector<std::uint32_t>& right, std::uint32_t visited, std::size_t remaining)
    {
        if (aborted_)
            return false;
        std::vector<std::uint32_t> left{static_cast<std::uint32_t>(u)};
        if (extend_left(left, right, visited, remaining))
            return true;
        std::size_t end = right.back();
        for (std::uint32_t cand = adj_[end] & ~visited; cand; cand &= cand - 1) {
            auto w = static_cast<std::size_t>(std::countr_zero(cand));
            if (!tick())
                return false;
            remove_edge(end, w);
            right.push_back(static_cast<std::uint32_t>(w));
            bool ok = extend_right(u, right, visited | (1u << w), remaining);
            right.pop_back();
            add_edge(end, w);
            if (ok)
                return true;
        }
        return false;
    }

    bool extend_left(std::vector<std::uint32_t>& left, const std::vector<std::uint32_t>& right,
                     std::uint32_t visited, std::size_t remaining)
    {
        if (aborted_)
            return false;
        if (std::popcount(visited) == static_cast<int>(n_)) {
            std::vector<VertexId> path(left.rbegin(), left.rend());
            path.insert(path.end(), right.begin(), right.end());
            if (path.front() > path.back())
                std::reverse(path.begin(), path.end());
            paths_.push_back(std::move(path));
            if (solve(remaining - (n_ - 1)))
                return true;
            paths_.pop_back();
            return false;
        }
        std::size_t end = left.back();
        for (std::uint32_t cand = adj_[end] & ~visited; cand; cand &= cand - 1) {
            auto w = static_cast<std::size_t>(std::countr_zero(cand));
            if (!tick())
                return false;
            remove_edge(end, w);
            left.push_back(static_cast<std::uint32_t>(w));
            bool ok = extend_left(left, right, visited | (1u << w), remaining);
            left.pop_back();
            add_edge(end, w);
            if (ok)
                return true;
        }
        return false;
    }

    void remove_edge(std::size_t a, std::size_t b)
    {
        adj_[a] &= ~(1u << b);
        adj_[b] &= ~(1u << a);
    }
    void add_edge(std::size_t a, std::size_t b)
    {
        adj_[a] |= 1u << b;
        adj_[b] |= 1u << a;
    }

    std::size_t n_;
    std::vector<std::uint32_t> adj_;
    std::uint64_t limit_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    std::vector<std::vector<VertexId>> paths_;
};

} // namespace detail

/// Exhaustive search for a Hamilton path decomposition of K. `limit` caps
/// search nodes (0 = unlimited); hitting it yields Unknown, distinct from an
/// exhausted search. Throws OrderTooLarge above `max_order` (at most 32).
inline OracleResult brute_force_decompose(const MultipartiteSpec& spec, std::uint64_t limit = 0,
                                          std::size_t max_order = 8)
{
    const std::size_t n = spec.order();
    if (n > max_order || n > 32)
        throw OrderTooLarge("oracle order " + std::to_string(n) + " exceeds bound " + std::to_string(max_order));
    if (n == 1)
        return OracleResult{OracleStatus::Found, Decomposition{}, 0};

    std::vector<std::size_t> part_of;
    for (std::size_t i = 0; i < spec.part_count(); ++i)
        part_of.insert(part_of.end(), spec.part_size(i), i);
    std::vector<std::uint32_t> adj(n, 0);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (part_of[u] != part_of[v])
                adj[u] |= 1u << v;
    return detail::HamiltonPathSearch(n, std::move(adj), limit).run();
}

} // namespace hamdecomp
