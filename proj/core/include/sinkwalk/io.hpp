#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sinkwalk/attractor.hpp"
#include "sinkwalk/dynamics.hpp"
#include "sinkwalk/graph.hpp"
#include "sinkwalk/operators.hpp"
#include "sinkwalk/oracle.hpp"
#include "sinkwalk/verify.hpp"

namespace sinkwalk {

/// Parsed description of a sinked graph prior to construction.
struct GraphSpec {
    VertexId vertex_count = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<VertexId> loops;
    std::vector<VertexId> sinks;

    SymmetricDigraph build() const { return SymmetricDigraph::build(vertex_count, edges, loops); }
};

/// Text format, one item per line:
///   v <count>   vertex count (required, first non-comment line)
///   e <u> <w>   undirected edge
///   l <u>       self-loop
///   s <u>       sink vertex
/// '#' starts a comment. Parse errors carry the line number.
GraphSpec parse_graph_text(std::istream& in);
GraphSpec parse_graph_json(const std::string& text);

/// Reads a graph file, JSON when the name ends in ".json", text otherwise.
GraphSpec load_graph_file(const std::string& path);

std::string graph_to_json(const GraphSpec& spec);

/// Initial state on the internal arcs from a preset:
///   delta:<arc-id>      unit amplitude on one ambient arc id
///   uniform-cycle:<k>   normalised uniform state on cycle k's forward arcs
///   file:<path>         JSON {"amplitudes": [[arc, re, im], ...]}
/// Ambient arc ids are used throughout; amplitudes on deleted arcs are an
/// error. The result is normalised.
ArcVector parse_initial_state(const std::string& preset, const SymmetricDigraph& g,
                              const InternalGraph& g0);

// --- JSON artifact emitters (all carry "schema": 1 and stable key order) ---

std::string matrix_json(const ComplexMatrix& m);
std::string operators_to_json(const SymmetricDigraph& g, const InternalGraph& g0);
std::string basis_to_json(const InternalGraph& g0, const AttractorBasis& basis,
                          bool include_projector);
std::string survival_to_json(const InternalGraph& g0, const AttractorBasis& basis,
                             const SurvivalBreakdown& breakdown);
std::string dims_to_json(const GraphSpec& spec, const DimensionReport& report);
std::string spectrum_to_json(const SpectrumReport& report);
std::string tail_state_to_json(const InternalGraph& g0, const TailState& state,
                               const TailResiduals& residuals);
std::string verify_to_json(const std::vector<std::pair<std::string, VerifyReport>>& reports);

/// CSV with header n,gamma_n,tau_n; floats carry full round-trip precision.
std::string run_to_csv(const SinkRun& run);
std::string run_to_json(const SinkRun& run);

}  // namespace sinkwalk
