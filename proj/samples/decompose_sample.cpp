// Decomposes K_{1,1,1,1,2,3} into four Hamilton paths and prints them.

#include "hamdecomp/hamdecomp.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    using namespace hamdecomp;
    const auto spec = MultipartiteSpec::parse(argc > 1 ? argv[1] : "1^4,2,3");

    const auto report = admissibility(spec);
    if (!report.admissible) {
        std::cout << spec.to_string() << " is not admissible (" << to_string(report.reason) << ")\n";
        return 0;
    }

    PipelineTrace trace;
    const auto d = hamilton_decompose(spec, &trace);
    std::cout << "K_{" << spec.to_string() << "}: n=" << report.n << " m=" << report.m << " t=" << *report.t << '\n';
    for (const auto& path : d.paths) {
        for (std::size_t i = 0; i < path.size(); ++i)
            std::cout << (i ? " - " : "  ") << vertex_label(spec, path[i]);
        std::cout << '\n';
    }
    for (const auto& e : trace.entries)
        std::cout << "  [" << e.stage << "] " << e.measure << " components: " << e.components << '\n';
    std::cout << "verified: " << (verify_decomposition(spec, d).valid ? "yes" : "no") << '\n';
}
