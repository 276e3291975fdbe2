#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sinkwalk/graph.hpp"

namespace sinkwalk {

inline constexpr std::uint64_t kDefaultSweepSeed = 20240601;

struct SweepGraph {
    SymmetricDigraph graph;
    std::vector<VertexId> sinks;
};

/// One randomized sinked graph steered toward the given case label.
///
/// The family: 2..4 internal vertices carrying a random tree, up to three
/// extra edges with the parity the case needs, up to two self-loops, and
/// one pendant sink per tail with at most one tail-free internal vertex.
/// That last rule keeps the absorbing walk fast-mixing on every member, so
/// the whole family drains below 1e-6 within 10 * |V0| * max_deg steps.
SweepGraph random_sweep_graph(std::mt19937_64& rng, CaseLabel target);

/// Deterministic sweep: `count` graphs cycling through the four cases.
std::vector<SweepGraph> sweep_graphs(int count, std::uint64_t seed = kDefaultSweepSeed);

}  // namespace sinkwalk
