#pragma once

#include "hamdecomp/errors.hpp"
#include "hamdecomp/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hamdecomp {

/// Part sizes of a complete multipartite graph, kept sorted ascending.
class MultipartiteSpec {
public:
    explicit MultipartiteSpec(std::vector<std::size_t> parts) : parts_(std::move(parts))
    {
        if (parts_.empty())
            throw PreconditionViolated("a multipartite spec needs at least one part");
        if (std::find(parts_.begin(), parts_.end(), 0u) != parts_.end())
            throw PreconditionViolated("part sizes must be positive");
        std::sort(parts_.begin(), parts_.end());
    }

    /// Parses `size(^exponent)?(,size(^exponent)?)*`, e.g. "1^4,2,3".
    static MultipartiteSpec parse(std::string_view text)
    {
        std::vector<std::size_t> parts;
        auto fail = [&](const std::string& why) {
            throw ParseError("bad part list '" + std::string(text) + "': " + why);
        };
        auto read_number = [&](std::string_view& rest) {
            std::size_t value = 0;
            auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
            if (ec != std::errc{} || ptr == rest.data())
                fail("expected a positive integer");
            if (value == 0)
                fail("zero is not allowed");
            rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
            return value;
        };

        std::string_view rest = text;
        if (rest.empty())
            fail("empty");
        while (true) {
            std::size_t size = read_number(rest);
            std::size_t count = 1;
            if (!rest.empty() && rest.front() == '^') {
                rest.remove_prefix(1);
                count = read_number(rest);
            }
            if (count > 100000)
                fail("exponent too large");
            parts.insert(parts.end(), count, size);
            if (rest.empty())
                break;
            if (rest.front() != ',')
                fail("unexpected character '" + std::string(1, rest.front()) + "'");
            rest.remove_prefix(1);
        }
        return MultipartiteSpec(std::move(parts));
    }

    /// Canonical text: ascending sizes, runs of two or more written as a^x.
    std::string to_string() const
    {
        std::string out;
        for (std::size_t i = 0; i < parts_.size();) {
            std::size_t j = i;
            while (j < parts_.size() && parts_[j] == parts_[i])
                ++j;
            if (!out.empty())
                out += ',';
            out += std::to_string(parts_[i]);
            if (j - i > 1)
                out += '^' + std::to_string(j - i);
            i = j;
        }
        return out;
    }

    const std::vector<std::size_t>& parts() const { return parts_; }
    std::size_t part_count() const { return parts_.size(); }
    std::size_t part_size(std::size_t i) const { return parts_[i]; }

    std::size_t order() const
    {
        std::size_t n = 0;
        for (auto a : parts_)
            n += a;
        return n;
    }

    /// First vertex id of part `i`.
    VertexId part_offset(std::size_t i) const
    {
        std::size_t off = 0;
        for (std::size_t k = 0; k < i; ++k)
            off += parts_[k];
        return static_cast<VertexId>(off);
    }

    bool is_complete_graph() const { return parts_.back() == 1; }
    bool is_regular() const { return parts_.front() == parts_.back(); }

    friend bool operator==(const MultipartiteSpec&, const MultipartiteSpec&) = default;

private:
    std::vector<std::size_t> parts_;
};

enum class AdmissibilityReason { Ok, NonIntegerT, DegreeExceeds2t, TrivialSingleVertex };

inline const char* to_string(AdmissibilityReason r)
{
    switch (r) {
    case AdmissibilityReason::Ok: return "ok";
    case AdmissibilityReason::NonIntegerT: return "non-integer-t";
    case AdmissibilityReason::DegreeExceeds2t: return "degree-exceeds-2t";
    case AdmissibilityReason::TrivialSingleVertex: return "trivial-single-vertex";
    }
    return "?";
}

struct AdmissibilityReport {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::optional<std::uint64_t> t;   ///< m/(n-1) when integral; 0 for n = 1
    std::uint64_t max_degree = 0;
    bool admissible = false;
    AdmissibilityReason reason = AdmissibilityReason::Ok;
};

/// Raised when a decomposition is requested for a graph that has none.
class NotAdmissible : public Error {
public:
    explicit NotAdmissible(AdmissibilityReport report)
        : Error("complete multipartite graph is not admissible (" + std::string(to_string(report.reason))
                + ")"),
          report_(report)
    {
    }
    const AdmissibilityReport& report() const { return report_; }

private:
    AdmissibilityReport report_;
};

/// n > 1 is admissible iff t = m/(n-1) is an integer and the largest degree,
/// which sits in a smallest part, is at most 2t.
inline AdmissibilityReport admissibility(const MultipartiteSpec& spec)
{
    AdmissibilityReport r;
    std::uint64_t sum_sq = 0;
    for (auto a : spec.parts()) {
        r.n += a;
        sum_sq += static_cast<std::uint64_t>(a) * a;
    }
    r.m = (r.n * r.n - sum_sq) / 2;
    r.max_degree = r.n - spec.parts().front();

    if (r.n == 1) {
        r.t = 0;
        r.admissible = true;
        r.reason = AdmissibilityReason::TrivialSingleVertex;
        return r;
    }
    if (r.m % (r.n - 1) != 0) {
        r.reason = AdmissibilityReason::NonIntegerT;
        return r;
    }
    r.t = r.m / (r.n - 1);
    if (r.max_degree > 2 * *r.t) {
        r.reason = AdmissibilityReason::DegreeExceeds2t;
        return r;
    }
    r.admissible = true;
    return r;
}

/// Self-check: an admissible graph with at least two parts is complete, or
/// irregular with maximum degree exactly 2t.
inline bool validate_max_degree_characterisation(const MultipartiteSpec& spec)
{
    auto report = admissibility(spec);
    if (!report.admissible)
        throw NotAdmissible(report);
    if (spec.part_count() < 2)
        throw PreconditionViolated("needs at least two parts");
    if (spec.is_complete_graph())
        return true;
    return !spec.is_regular() && report.max_degree == 2 * *report.t;
}

/// Disjoint blocks covering 0..n-1.
struct VertexPartition {
    std::vector<std::vector<VertexId>> blocks;
    std::vector<std::uint32_t> block_of;

    static VertexPartition from_blocks(std::vector<std::vector<VertexId>> blocks, std::size_t vertex_count)
    {
        constexpr auto unset = static_cast<std::uint32_t>(-1);
        VertexPartition p;
        p.block_of.assign(vertex_count, unset);
        for (std::uint32_t b = 0; b < blocks.size(); ++b) {
            if (blocks[b].empty())
                throw PreconditionViolated("partition has an empty block");
            for (VertexId v : blocks[b]) {
                if (v >= vertex_count || p.block_of[v] != unset)
                    throw PreconditionViolated("partition blocks overlap or fall out of range");
                p.block_of[v] = b;
            }
        }
        if (std::find(p.block_of.begin(), p.block_of.end(), unset) != p.block_of.end())
            throw PreconditionViolated("partition does not cover every vertex");
        p.blocks = std::move(blocks);
        return p;
    }

    std::size_t size() const { return blocks.size(); }
};

struct CompleteMultipartite {
    MultiGraph graph;
    VertexPartition parts;
};

/// Vertex ids run part by part: part i holds ids part_offset(i) .. +a_i - 1.
/// Edges are added in lexicographic (u, v) order with u < v.
inline CompleteMultipartite build_graph(const MultipartiteSpec& spec)
{
    std::size_t n = spec.order();
    std::vector<std::vector<VertexId>> blocks;
    std::vector<std::uint32_t> part_of;
    VertexId next = 0;
    for (std::size_t i = 0; i < spec.part_count(); ++i) {
        auto& block = blocks.emplace_back();
        for (std::size_t j = 0; j < spec.part_size(i); ++j) {
            block.push_back(next++);
            part_of.push_back(static_cast<std::uint32_t>(i));
        }
    }

    MultiGraph g(n);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (part_of[u] != part_of[v])
                g.add_edge(u, v);
    return {std::move(g), VertexPartition::from_blocks(std::move(blocks), n)};
}

/// "p<i>v<j>": offset j within part i (both 0-based).
inline std::string vertex_label(const MultipartiteSpec& spec, VertexId v)
{
    std::size_t part = 0;
    std::size_t offset = v;
    while (part < spec.part_count() && offset >= spec.part_size(part))
        offset -= spec.part_size(part++);
    return "p" + std::to_string(part) + "v" + std::to_string(offset);
}

/// Inverse of vertex_label; nullopt when malformed or out of range.
inline std::optional<VertexId> parse_vertex_label(const MultipartiteSpec& spec, std::string_view label)
{
    if (label.size() < 4 || label.front() != 'p')
        return std::nullopt;
    auto sep = label.find('v');
    if (sep == std::string_view::npos)
        return std::nullopt;
    std::size_t part = 0, offset = 0;
    auto a = label.substr(1, sep - 1);
    auto b = label.substr(sep + 1);
    auto r1 = std::from_chars(a.data(), a.data() + a.size(), part);
    auto r2 = std::from_chars(b.data(), b.data() + b.size(), offset);
    if (a.empty() || b.empty() || r1.ec != std::errc{} || r1.ptr != a.data() + a.size()
        || r2.ec != std::errc{} || r2.ptr != b.data() + b.size())
        return std::nullopt;
    if (part >= spec.part_count() || offset >= spec.part_size(part))
        return std::nullopt;
    return static_cast<VertexId>(spec.part_offset(part) + offset);
}

/// Groups vertices of equal degree, i.e. merges parts of equal size.
/// Blocks come in decreasing block size, ties by increasing part size.
inline VertexPartition degree_partition(const MultipartiteSpec& spec)
{
    struct Group {
        std::size_t part_size;
        std::vector<VertexId> vertices;
    };
    std::vector<Group> groups;
    VertexId next = 0;
    for (std::size_t i = 0; i < spec.part_count(); ++i) {
        if (groups.empty() || groups.back().part_size != spec.part_size(i))
            groups.push_back({spec.part_size(i), {}});
        for (std::size_t j = 0; j < spec.part_size(i); ++j)
            groups.back().vertices.push_back(next++);
    }
    std::stable_sort(groups.begin(), groups.end(), [](const Group& x, const Group& y) {
        return x.vertices.size() > y.vertices.size();
    });
    std::vector<std::vector<VertexId>> blocks;
    for (auto& grp : groups)
        blocks.push_back(std::move(grp.vertices));
    return VertexPartition::from_blocks(std::move(blocks), spec.order());
}

/// Quotient graph over block ids. Quotient edge at position p corresponds to
/// base edge at position p and carries the same EdgeId, so the edge bijection
/// is the identity on ids. Edges inside a block become loops.
inline MultiGraph quotient_graph(const MultiGraph& g, const VertexPartition& partition)
{
    if (partition.block_of.size() != g.vertex_count())
        throw PreconditionViolated("partition does not match the graph's vertex count");
    MultiGraph q(partition.size());
    for (const Edge& e : g.edges())
        q.add_edge_with_id(e.id, partition.block_of[e.a], partition.block_of[e.b]);
    return q;
}

struct QuotientView {
    MultiGraph base;
    VertexPartition partition;
    MultiGraph quotient;

    /// Quotient edge corresponding to a base edge; ids are shared.
    EdgeId quotient_edge(EdgeId base_edge) const { return base_edge; }
    EdgeId base_edge(EdgeId quotient_edge) const { return quotient_edge; }
};

inline QuotientView quotient(const MultiGraph& g, const VertexPartition& partition)
{
    return QuotientView{g, partition, quotient_graph(g, partition)};
}

} // namespace hamdecomp
