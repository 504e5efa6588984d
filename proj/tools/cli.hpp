#pragma once

#include "hamdecomp/hamdecomp.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hamdecomp::cli {

enum ExitCode : int { Ok = 0, InputError = 1, NotAdmissibleExit = 2, VerificationFailed = 3, Inconsistency = 4 };

enum class Format { Json, Text };

struct RunConfig {
    std::string parts;
    Format format = Format::Json;
    std::uint64_t seed = 0;
    bool verify = false;
    bool trace = false;
    std::string input;
    std::size_t max_order = 20;
    std::size_t oracle_bound = 8;
    std::uint64_t limit = 0;
    std::string csv;
    std::size_t jobs = 1;
    bool include_trivial = false;
    bool exclude_complete = false;
};

using json = nlohmann::ordered_json;

inline json report_json(const MultipartiteSpec& spec, const AdmissibilityReport& r)
{
    json j;
    j["parts"] = spec.parts();
    j["n"] = r.n;
    j["m"] = r.m;
    j["t"] = r.t ? json(*r.t) : json(nullptr);
    j["max_degree"] = r.max_degree;
    j["admissible"] = r.admissible;
    j["reason"] = to_string(r.reason);
    return j;
}

inline json decomposition_json(const MultipartiteSpec& spec, const Decomposition& d)
{
    json j;
    j["parts"] = spec.parts();
    j["t"] = d.paths.size();
    json paths = json::array();
    for (const auto& path : d.paths) {
        json labels = json::array();
        for (auto v : path)
            labels.push_back(vertex_label(spec, v));
        paths.push_back(std::move(labels));
    }
    j["paths"] = std::move(paths);
    return j;
}

inline json trace_json(const PipelineTrace& trace)
{
    json entries = json::array();
    for (const auto& e : trace.entries) {
        json shapes = json::array();
        for (auto s : e.shapes)
            shapes.push_back(to_string(s));
        entries.push_back({{"stage", e.stage}, {"measure", e.measure}, {"components", e.components}, {"shapes", shapes}});
    }
    return entries;
}

inline json verification_json(const VerificationReport& report)
{
    json failures = json::array();
    for (const auto& f : report.failures)
        failures.push_back({{"path", f.path ? json(*f.path) : json(nullptr)}, {"reason", to_string(f.reason)}});
    return {{"valid", report.valid}, {"failures", failures}};
}

inline void print_paths_text(std::ostream& out, const MultipartiteSpec& spec, const Decomposition& d)
{
    for (const auto& path : d.paths) {
        for (std::size_t i = 0; i < path.size(); ++i)
            out << (i ? " " : "") << vertex_label(spec, path[i]);
        out << '\n';
    }
}

/// Reads a decomposition in the `decompose` output format.
inline Decomposition read_decomposition(const MultipartiteSpec& spec, const std::string& file)
{
    std::ifstream in(file);
    if (!in)
        throw ParseError("cannot open " + file);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(file + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("paths") || !j["paths"].is_array())
        throw ParseError(file + ": expected an object with a \"paths\" array");
    if (j.contains("parts") && j["parts"] != json(spec.parts()))
        throw ParseError(file + ": parts do not match --parts");
    Decomposition d;
    for (const auto& path : j["paths"]) {
        if (!path.is_array())
            throw ParseError(file + ": each path must be an array of vertex labels");
        std::vector<VertexId> vertices;
        for (const auto& label : path) {
            if (!label.is_string())
                throw ParseError(file + ": vertex labels must be strings");
            auto v = parse_vertex_label(spec, label.get<std::string>());
            if (!v)
                throw ParseError(file + ": unknown vertex label " + label.get<std::string>());
            vertices.push_back(*v);
        }
        d.paths.push_back(std::move(vertices));
    }
    return d;
}

inline int cmd_admissible(const RunConfig& cfg, std::ostream& out)
{
    auto spec = MultipartiteSpec::parse(cfg.parts);
    auto r = admissibility(spec);
    if (cfg.format == Format::Json) {
        out << report_json(spec, r).dump(2) << '\n';
    } else {
        out << spec.to_string() << ": n=" << r.n << " m=" << r.m << " t=" << (r.t ? std::to_string(*r.t) : "-")
            << " max_degree=" << r.max_degree << " admissible=" << (r.admissible ? "true" : "false")
            << " reason=" << to_string(r.reason) << '\n';
    }
    return Ok;
}

inline int cmd_decompose(const RunConfig& cfg, std::ostream& out)
{
    auto spec = MultipartiteSpec::parse(cfg.parts);
    PipelineTrace trace;
    auto d = hamilton_decompose(spec, cfg.trace ? &trace : nullptr);
    std::optional<VerificationReport> report;
    if (cfg.verify)
        report = verify_decomposition(spec, d);

    if (cfg.format == Format::Json) {
        auto j = decomposition_json(spec, d);
        if (report)
            j["verification"] = verification_json(*report);
        if (cfg.trace)
            j["trace"] = trace_json(trace);
        j["seed"] = cfg.seed;
        out << j.dump(2) << '\n';
    } else {
        print_paths_text(out, spec, d);
        if (cfg.trace)
            for (const auto& e : trace.entries)
                out << "# " << e.stage << ' ' << e.measure << ' ' << e.components << '\n';
        if (report)
            out << "# verified: " << (report->valid ? "valid" : "invalid") << '\n';
    }
    return report && !report->valid ? VerificationFailed : Ok;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out)
{
    auto spec = MultipartiteSpec::parse(cfg.parts);
    auto d = read_decomposition(spec, cfg.input);
    auto report = verify_decomposition(spec, d);
    if (cfg.format == Format::Json) {
        out << verification_json(report).dump(2) << '\n';
    } else {
        out << (report.valid ? "valid" : "invalid") << '\n';
        for (const auto& f : report.failures)
            out << "  " << to_string(f.reason) << (f.path ? " in path " + std::to_string(*f.path) : "") << '\n';
    }
    return report.valid ? Ok : VerificationFailed;
}

inline int cmd_oracle(const RunConfig& cfg, std::ostream& out)
{
    auto spec = MultipartiteSpec::parse(cfg.parts);
    auto result = brute_force_decompose(spec, cfg.limit, cfg.oracle_bound);
    if (cfg.format == Format::Json) {
        json j;
        j["parts"] = spec.parts();
        j["status"] = to_string(result.status);
        j["nodes"] = result.nodes;
        j["admissible"] = admissibility(spec).admissible;
        if (result.decomposition)
            j["paths"] = decomposition_json(spec, *result.decomposition)["paths"];
        out << j.dump(2) << '\n';
    } else {
        out << to_string(result.status) << " (" << result.nodes << " nodes)\n";
        if (result.decomposition)
            print_paths_text(out, spec, *result.decomposition);
    }
    return Ok;
}

inline int cmd_census(const RunConfig& cfg, std::ostream& out)
{
    CensusOptions options{cfg.include_trivial, cfg.exclude_complete, cfg.jobs};
    auto counts = count_admissible(cfg.max_order, options);

    if (!cfg.csv.empty()) {
        std::ofstream csv(cfg.csv);
        if (!csv)
            throw ParseError("cannot write " + cfg.csv);
        csv << "n,spec,admissible,t,max_degree,star_case\n";
        enumerate_specs(cfg.max_order, options.include_trivial ? 1 : 2, [&](const MultipartiteSpec& spec) {
            auto row = census_row(spec);
            csv << row.order << ",\"" << spec.to_string() << "\"," << (row.admissible ? "true" : "false") << ','
                << (row.t ? std::to_string(*row.t) : "") << ',' << row.max_degree << ','
                << (row.star_case ? to_string(*row.star_case) : "") << '\n';
        });
    }

    const std::uint64_t total = counts.at_most(cfg.max_order);
    if (cfg.format == Format::Json) {
        json cumulative = json::object();
        for (std::size_t n = 1; n <= cfg.max_order; ++n)
            cumulative[std::to_string(n)] = counts.cumulative[n];
        json j;
        j["max_order"] = cfg.max_order;
        j["count"] = total;
        j["include_trivial"] = cfg.include_trivial;
        j["exclude_complete"] = cfg.exclude_complete;
        j["cumulative"] = std::move(cumulative);
        out << j.dump(2) << '\n';
    } else {
        out << total << '\n';
    }
    return Ok;
}

/// Parses argv and runs one subcommand. Returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Hamilton path decompositions of complete multipartite graphs"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", cfg.seed, "Run seed; the construction is deterministic");

    auto add_parts = [&](CLI::App* sub) {
        sub->add_option("--parts", cfg.parts, "Part sizes, e.g. 1^4,2,3")->required();
    };
    auto* admissible = app.add_subcommand("admissible", "Report admissibility of a part list");
    add_parts(admissible);

    auto* decompose = app.add_subcommand("decompose", "Construct a Hamilton path decomposition");
    add_parts(decompose);
    decompose->add_flag("--verify", cfg.verify, "Check the result with the independent verifier");
    decompose->add_flag("--trace", cfg.trace, "Include per-stage component totals");

    auto* verify = app.add_subcommand("verify", "Check a stored decomposition");
    add_parts(verify);
    verify->add_option("--input", cfg.input, "JSON file written by decompose")->required();

    auto* oracle = app.add_subcommand("oracle", "Exhaustive search for small orders");
    add_parts(oracle);
    oracle->add_option("--oracle-bound", cfg.oracle_bound, "Largest order searched")->check(CLI::Range(1, 32));
    oracle->add_option("--limit", cfg.limit, "Search node cap; 0 means none");

    auto* census = app.add_subcommand("census", "Count admissible part lists by order");
    census->add_option("--max-order", cfg.max_order, "Largest order counted")->check(CLI::Range(1, 200));
    census->add_option("--csv", cfg.csv, "Write one row per part list to this file");
    census->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1, 256));
    census->add_flag("--include-trivial", cfg.include_trivial, "Also count one-part lists");
    census->add_flag("--exclude-complete", cfg.exclude_complete, "Leave complete graphs out");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Ok : InputError;
    }
    cfg.format = format == "text" ? Format::Text : Format::Json;

    try {
        if (admissible->parsed())
            return cmd_admissible(cfg, out);
        if (decompose->parsed())
            return cmd_decompose(cfg, out);
        if (verify->parsed())
            return cmd_verify(cfg, out);
        if (oracle->parsed())
            return cmd_oracle(cfg, out);
        return cmd_census(cfg, out);
    } catch (const NotAdmissible& e) {
        err << "error: " << e.what() << '\n';
        return NotAdmissibleExit;
    } catch (const InternalInconsistency& e) {
        err << "internal inconsistency: " << e.what() << '\n';
        return Inconsistency;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return InputError;
    }
}

} // namespace hamdecomp::cli
