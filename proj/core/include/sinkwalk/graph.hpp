#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sinkwalk {

using VertexId = std::int32_t;
using ArcId = std::int32_t;

// Hard cap on arc counts; everything downstream builds dense matrices.
inline constexpr ArcId kMaxArcs = 10000;

class SymmetricDigraph;
class InternalGraph;

/// Deletes the sinks and every arc touching them. Throws if the sinks are
/// not a proper subset of the vertices or if the remainder is disconnected.
InternalGraph remove_sinks(const SymmetricDigraph& g, const std::vector<VertexId>& sinks);

/// Finite connected symmetric digraph: every arc has an inverse arc, and a
/// self-loop is its own inverse. No multiple arcs between a vertex pair.
///
/// Arc numbering is deterministic: for each undirected edge (in input
/// order) the forward arc comes before the reverse arc; self-loops are
/// appended afterwards in input order.
class SymmetricDigraph {
public:
    static SymmetricDigraph build(VertexId vertex_count,
                                  const std::vector<std::pair<VertexId, VertexId>>& edges,
                                  const std::vector<VertexId>& loop_vertices);

    VertexId vertex_count() const { return vertex_count_; }
    ArcId arc_count() const { return static_cast<ArcId>(origin_.size()); }

    VertexId origin(ArcId a) const { return origin_[static_cast<std::size_t>(a)]; }
    VertexId terminus(ArcId a) const { return terminus_[static_cast<std::size_t>(a)]; }
    ArcId inverse(ArcId a) const { return inverse_[static_cast<std::size_t>(a)]; }
    bool is_loop(ArcId a) const { return inverse(a) == a; }

    /// Self-loop arcs, ascending.
    const std::vector<ArcId>& loops() const { return loops_; }

    /// deg(v) = number of arcs terminating at v; a self-loop counts once.
    int degree(VertexId v) const { return degree_[static_cast<std::size_t>(v)]; }

    /// Arcs with origin v, ascending by arc id (drives all BFS determinism).
    const std::vector<ArcId>& out_arcs(VertexId v) const {
        return out_arcs_[static_cast<std::size_t>(v)];
    }

    /// Undirected edge count, self-loops excluded.
    int edge_count() const {
        return (arc_count() - static_cast<ArcId>(loops_.size())) / 2;
    }

private:
    SymmetricDigraph() = default;
    friend class InternalGraph;
    friend InternalGraph remove_sinks(const SymmetricDigraph& g,
                                      const std::vector<VertexId>& sinks);

    VertexId vertex_count_ = 0;
    std::vector<VertexId> origin_;
    std::vector<VertexId> terminus_;
    std::vector<ArcId> inverse_;
    std::vector<ArcId> loops_;
    std::vector<int> degree_;
    std::vector<std::vector<ArcId>> out_arcs_;
};

/// The internal graph left after deleting a set of sinks from an ambient
/// graph, re-indexed densely. Keeps the ambient degrees, the boundary
/// (vertices that lost at least one arc), and the maps back to the parent.
class InternalGraph {
public:
    const SymmetricDigraph& graph() const { return graph_; }

    VertexId vertex_count() const { return graph_.vertex_count(); }
    ArcId arc_count() const { return graph_.arc_count(); }

    /// Degree in the ambient graph (>= degree in the internal graph,
    /// strictly greater exactly on the boundary).
    int ambient_degree(VertexId v) const { return ambient_degree_[static_cast<std::size_t>(v)]; }

    const std::vector<VertexId>& boundary() const { return boundary_; }
    bool on_boundary(VertexId v) const { return boundary_mask_[static_cast<std::size_t>(v)]; }

    /// One entry per deleted sink-incident arc, i.e. per semi-infinite tail
    /// in the tail picture; sorted by boundary vertex. tail_vertices()[i] is
    /// where tail i attaches.
    const std::vector<VertexId>& tail_vertices() const { return tail_vertices_; }

    VertexId parent_vertex(VertexId v) const { return vertex_map_[static_cast<std::size_t>(v)]; }
    ArcId parent_arc(ArcId a) const { return arc_map_[static_cast<std::size_t>(a)]; }
    const std::vector<ArcId>& parent_arcs() const { return arc_map_; }

    friend InternalGraph remove_sinks(const SymmetricDigraph& g,
                                      const std::vector<VertexId>& sinks);

private:
    SymmetricDigraph graph_;
    std::vector<int> ambient_degree_;
    std::vector<VertexId> boundary_;
    std::vector<bool> boundary_mask_;
    std::vector<VertexId> tail_vertices_;
    std::vector<VertexId> vertex_map_;
    std::vector<ArcId> arc_map_;
};

struct FundamentalCycle {
    std::vector<ArcId> arcs;  // closed head-to-tail chain, one non-tree arc first
    bool odd() const { return arcs.size() % 2 == 1; }
};

struct CycleBasis {
    std::vector<ArcId> tree_arcs;  // parent-to-child arc per tree edge
    std::vector<FundamentalCycle> cycles;
    std::vector<std::size_t> odd;   // indices into cycles
    std::vector<std::size_t> even;
};

/// Fundamental cycles of the BFS spanning tree rooted at vertex 0 with
/// neighbours visited in arc-id order. Each cycle traverses its non-tree
/// arc in the stored forward direction (the lower arc id of the pair) and
/// returns through the tree. Self-loops never participate.
CycleBasis fundamental_cycle_basis(const InternalGraph& g0);

enum class CaseLabel { A, B, C, D };

char to_char(CaseLabel c);

/// Two-colourability of the graph with self-loops ignored.
bool is_bipartite_sans_loops(const SymmetricDigraph& g);

/// A: no loops, bipartite.  B: no loops, non-bipartite.
/// C: loops, bipartite without them.  D: loops, non-bipartite without them.
CaseLabel classify_case(const InternalGraph& g0);

}  // namespace sinkwalk
