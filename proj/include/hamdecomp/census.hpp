#pragma once

#include "hamdecomp/factorize.hpp"
#include "hamdecomp/multipartite.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace hamdecomp {

namespace detail {

template <class Visitor>
void descending_partitions(std::size_t remaining, std::size_t max_part, std::vector<std::size_t>& prefix,
                           std::size_t min_parts, Visitor& visit)
{
    if (remaining == 0) {
        if (prefix.size() >= min_parts)
            visit(MultipartiteSpec(prefix));
        return;
    }
    for (std::size_t part = std::min(remaining, max_part); part >= 1; --part) {
        prefix.push_back(part);
        descending_partitions(remaining - part, part, prefix, min_parts, visit);
        prefix.pop_back();
    }
}

} // namespace detail

/// Streams every integer partition of one order with at least `min_parts`
/// parts, generated largest part first (descending order of the descending
/// representation).
template <class Visitor>
void for_each_spec_of_order(std::size_t order, std::size_t min_parts, Visitor&& visit)
{
    std::vector<std::size_t> prefix;
    detail::descending_partitions(order, order, prefix, min_parts, visit);
}

/// Streams every partition of every order 1..max_order, order by order.
template <class Visitor>
void enumerate_specs(std::size_t max_order, std::size_t min_parts, Visitor&& visit)
{
    for (std::size_t n = 1; n <= max_order; ++n)
        for_each_spec_of_order(n, min_parts, visit);
}

enum class StarCase { Spanning, Excluded, CompleteGraph };

inline const char* to_string(StarCase c)
{
    switch (c) {
    case StarCase::Spanning: return "spanning";
    case StarCase::Excluded: return "excluded";
    case StarCase::CompleteGraph: return "complete";
    }
    return "?";
}

struct CensusRow {
    std::size_t order = 0;
    MultipartiteSpec spec{{1}};
    bool admissible = false;
    std::optional<std::uint64_t> t;
    std::uint64_t max_degree = 0;
    std::optional<StarCase> star_case;   ///< set for admissible specs with at least two parts
};

inline CensusRow census_row(const MultipartiteSpec& spec)
{
    auto report = admissibility(spec);
    CensusRow row{report.n, spec, report.admissible, report.t, report.max_degree, std::nullopt};
    if (report.admissible && spec.part_count() >= 2) {
        if (spec.is_complete_graph()) {
            row.star_case = StarCase::CompleteGraph;
        } else {
            auto [k, parts] = build_graph(spec);
            auto cert = find_star(quotient(k, degree_partition(spec)), 2 * *report.t);
            row.star_case = cert.excluded ? StarCase::Excluded : StarCase::Spanning;
        }
    }
    return row;
}

struct CensusOptions {
    bool include_trivial = false;    ///< also count n = 1 and single-part specs
    bool exclude_complete = false;   ///< leave complete graphs out of the counts
    std::size_t jobs = 1;
};

/// cumulative[n] = admissible specs of order at most n.
struct CensusCounts {
    std::vector<std::uint64_t> per_order;
    std::vector<std::uint64_t> cumulative;

    std::uint64_t at_most(std::size_t n) const { return cumulative.at(n); }
};

inline bool census_counts_spec(const MultipartiteSpec& spec, const CensusOptions& options)
{
    if (options.exclude_complete && spec.is_complete_graph() && spec.part_count() >= 2)
        return false;
    return admissibility(spec).admissible;
}

/// Admissible-spec tallies per order. Orders are split across `jobs` threads
/// by striding; each order's tally is independent so the merge is exact.
inline CensusCounts count_admissible(std::size_t max_order, const CensusOptions& options = {})
{
    CensusCounts counts;
    counts.per_order.assign(max_order + 1, 0);
    const std::size_t min_parts = options.include_trivial ? 1 : 2;
    auto tally = [&](std::size_t n) {
        std::uint64_t c = 0;
        for_each_spec_of_order(n, min_parts, [&](const MultipartiteSpec& spec) {
            c += census_counts_spec(spec, options) ? 1 : 0;
        });
        counts.per_order[n] = c;
    };

    const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
    if (jobs == 1) {
        for (std::size_t n = 1; n <= max_order; ++n)
            tally(n);
    } else {
        std::vector<std::thread> workers;
        for (std::size_t w = 0; w < jobs; ++w)
            workers.emplace_back([&, w] {
                for (std::size_t n = max_order - w; n >= 1 && n <= max_order; n -= jobs)
                    tally(n);
            });
        for (auto& worker : workers)
            worker.join();
    }

    counts.cumulative.assign(max_order + 1, 0);
    for (std::size_t n = 1; n <= max_order; ++n)
        counts.cumulative[n] = counts.cumulative[n - 1] + counts.per_order[n];
    return counts;
}

} // namespace hamdecomp
