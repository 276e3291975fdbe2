#include "sinkwalk/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace sinkwalk {

namespace {

void check_vertex(VertexId v, VertexId n) {
    if (v < 0 || v >= n) {
        throw std::invalid_argument("vertex index out of range: " + std::to_string(v));
    }
}

bool connected(VertexId n, const std::vector<std::vector<ArcId>>& out,
               const std::vector<VertexId>& terminus) {
    if (n == 0) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::deque<VertexId> queue{0};
    seen[0] = true;
    VertexId count = 1;
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (ArcId a : out[static_cast<std::size_t>(v)]) {
            VertexId w = terminus[static_cast<std::size_t>(a)];
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                ++count;
                queue.push_back(w);
            }
        }
    }
    return count == n;
}

}  // namespace

SymmetricDigraph SymmetricDigraph::build(VertexId vertex_count,
                                         const std::vector<std::pair<VertexId, VertexId>>& edges,
                                         const std::vector<VertexId>& loop_vertices) {
    if (vertex_count <= 0) {
        throw std::invalid_argument("graph needs at least one vertex");
    }
    SymmetricDigraph g;
    g.vertex_count_ = vertex_count;

    std::set<std::pair<VertexId, VertexId>> edge_set;
    for (const auto& [u, w] : edges) {
        check_vertex(u, vertex_count);
        check_vertex(w, vertex_count);
        if (u == w) {
            throw std::invalid_argument("edge endpoints coincide; declare a loop instead");
        }
        auto key = std::minmax(u, w);
        if (!edge_set.insert(key).second) {
            throw std::invalid_argument("duplicate edge " + std::to_string(u) + "-" +
                                        std::to_string(w));
        }
        ArcId fwd = static_cast<ArcId>(g.origin_.size());
        g.origin_.push_back(u);
        g.terminus_.push_back(w);
        g.origin_.push_back(w);
        g.terminus_.push_back(u);
        g.inverse_.push_back(fwd + 1);
        g.inverse_.push_back(fwd);
    }
    std::set<VertexId> loop_set;
    for (VertexId u : loop_vertices) {
        check_vertex(u, vertex_count);
        if (!loop_set.insert(u).second) {
            throw std::invalid_argument("duplicate loop at vertex " + std::to_string(u));
        }
        ArcId a = static_cast<ArcId>(g.origin_.size());
        g.origin_.push_back(u);
        g.terminus_.push_back(u);
        g.inverse_.push_back(a);
        g.loops_.push_back(a);
    }
    if (g.arc_count() > kMaxArcs) {
        throw std::invalid_argument("graph exceeds the arc cap of " + std::to_string(kMaxArcs));
    }

    g.degree_.assign(static_cast<std::size_t>(vertex_count), 0);
    g.out_arcs_.assign(static_cast<std::size_t>(vertex_count), {});
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        g.degree_[static_cast<std::size_t>(g.terminus_[static_cast<std::size_t>(a)])]++;
        g.out_arcs_[static_cast<std::size_t>(g.origin_[static_cast<std::size_t>(a)])].push_back(a);
    }
    if (!connected(vertex_count, g.out_arcs_, g.terminus_)) {
        throw std::invalid_argument("graph is disconnected");
    }
    return g;
}

InternalGraph remove_sinks(const SymmetricDigraph& g, const std::vector<VertexId>& sinks) {
    std::vector<bool> is_sink(static_cast<std::size_t>(g.vertex_count()), false);
    for (VertexId v : sinks) {
        check_vertex(v, g.vertex_count());
        is_sink[static_cast<std::size_t>(v)] = true;
    }

    InternalGraph out;
    std::vector<VertexId> vmap(static_cast<std::size_t>(g.vertex_count()), -1);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!is_sink[static_cast<std::size_t>(v)]) {
            vmap[static_cast<std::size_t>(v)] = static_cast<VertexId>(out.vertex_map_.size());
            out.vertex_map_.push_back(v);
        }
    }
    if (out.vertex_map_.empty()) {
        throw std::invalid_argument("sink removal leaves an empty internal graph");
    }

    SymmetricDigraph& g0 = out.graph_;
    g0.vertex_count_ = static_cast<VertexId>(out.vertex_map_.size());
    std::vector<ArcId> amap(static_cast<std::size_t>(g.arc_count()), -1);
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        VertexId o = g.origin(a), t = g.terminus(a);
        if (is_sink[static_cast<std::size_t>(o)] || is_sink[static_cast<std::size_t>(t)]) continue;
        amap[static_cast<std::size_t>(a)] = static_cast<ArcId>(out.arc_map_.size());
        out.arc_map_.push_back(a);
        g0.origin_.push_back(vmap[static_cast<std::size_t>(o)]);
        g0.terminus_.push_back(vmap[static_cast<std::size_t>(t)]);
    }
    for (ArcId a0 = 0; a0 < static_cast<ArcId>(out.arc_map_.size()); ++a0) {
        ArcId a = out.arc_map_[static_cast<std::size_t>(a0)];
        g0.inverse_.push_back(amap[static_cast<std::size_t>(g.inverse(a))]);
        if (g.is_loop(a)) g0.loops_.push_back(a0);
    }

    g0.degree_.assign(static_cast<std::size_t>(g0.vertex_count_), 0);
    g0.out_arcs_.assign(static_cast<std::size_t>(g0.vertex_count_), {});
    for (ArcId a = 0; a < g0.arc_count(); ++a) {
        g0.degree_[static_cast<std::size_t>(g0.terminus(a))]++;
        g0.out_arcs_[static_cast<std::size_t>(g0.origin(a))].push_back(a);
    }
    if (!connected(g0.vertex_count_, g0.out_arcs_, g0.terminus_)) {
        throw std::invalid_argument("internal graph after sink removal is disconnected");
    }

    out.ambient_degree_.resize(static_cast<std::size_t>(g0.vertex_count_));
    for (VertexId v = 0; v < g0.vertex_count_; ++v) {
        out.ambient_degree_[static_cast<std::size_t>(v)] =
            g.degree(out.vertex_map_[static_cast<std::size_t>(v)]);
    }
    out.boundary_mask_.assign(static_cast<std::size_t>(g0.vertex_count_), false);
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        VertexId o = g.origin(a), t = g.terminus(a);
        if (!is_sink[static_cast<std::size_t>(o)] && is_sink[static_cast<std::size_t>(t)]) {
            VertexId v = vmap[static_cast<std::size_t>(o)];
            out.boundary_mask_[static_cast<std::size_t>(v)] = true;
            out.tail_vertices_.push_back(v);
        }
    }
    std::sort(out.tail_vertices_.begin(), out.tail_vertices_.end());
    for (VertexId v = 0; v < g0.vertex_count_; ++v) {
        if (out.boundary_mask_[static_cast<std::size_t>(v)]) out.boundary_.push_back(v);
    }
    return out;
}

namespace {

// Predecessor arcs of a BFS tree rooted at vertex 0, arc-id visitation order.
std::vector<ArcId> bfs_tree(const SymmetricDigraph& g) {
    std::vector<ArcId> parent(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
    seen[0] = true;
    std::deque<VertexId> queue{0};
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (ArcId a : g.out_arcs(v)) {
            if (g.is_loop(a)) continue;
            VertexId w = g.terminus(a);
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                parent[static_cast<std::size_t>(w)] = a;
                queue.push_back(w);
            }
        }
    }
    return parent;
}

// Arc path u -> w inside the tree (up from u to the join, then down to w).
std::vector<ArcId> tree_path(const SymmetricDigraph& g, const std::vector<ArcId>& parent,
                             VertexId u, VertexId w) {
    auto chain = [&](VertexId x) {
        std::vector<VertexId> vs{x};
        std::vector<ArcId> as;
        while (parent[static_cast<std::size_t>(x)] != -1) {
            ArcId a = parent[static_cast<std::size_t>(x)];
            as.push_back(a);
            x = g.origin(a);
            vs.push_back(x);
        }
        return std::make_pair(vs, as);
    };
    auto [vu, au] = chain(u);
    auto [vw, aw] = chain(w);
    std::vector<int> pos(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t j = 0; j < vw.size(); ++j) pos[static_cast<std::size_t>(vw[j])] = static_cast<int>(j);
    for (std::size_t i = 0; i < vu.size(); ++i) {
        int j = pos[static_cast<std::size_t>(vu[i])];
        if (j < 0) continue;
        std::vector<ArcId> path;
        for (std::size_t k = 0; k < i; ++k) path.push_back(g.inverse(au[k]));
        for (int k = j - 1; k >= 0; --k) path.push_back(aw[static_cast<std::size_t>(k)]);
        return path;
    }
    throw std::logic_error("tree path not found");
}

}  // namespace

CycleBasis fundamental_cycle_basis(const InternalGraph& g0) {
    const SymmetricDigraph& g = g0.graph();
    CycleBasis basis;
    std::vector<ArcId> parent = bfs_tree(g);
    std::vector<bool> in_tree(static_cast<std::size_t>(g.arc_count()), false);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        ArcId a = parent[static_cast<std::size_t>(v)];
        if (a != -1) {
            basis.tree_arcs.push_back(a);
            in_tree[static_cast<std::size_t>(a)] = true;
            in_tree[static_cast<std::size_t>(g.inverse(a))] = true;
        }
    }
    std::sort(basis.tree_arcs.begin(), basis.tree_arcs.end());
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        if (g.is_loop(a) || in_tree[static_cast<std::size_t>(a)] || g.inverse(a) < a) continue;
        FundamentalCycle c;
        c.arcs.push_back(a);
        auto path = tree_path(g, parent, g.terminus(a), g.origin(a));
        c.arcs.insert(c.arcs.end(), path.begin(), path.end());
        if (c.odd()) {
            basis.odd.push_back(basis.cycles.size());
        } else {
            basis.even.push_back(basis.cycles.size());
        }
        basis.cycles.push_back(std::move(c));
    }
    return basis;
}

char to_char(CaseLabel c) {
    switch (c) {
        case CaseLabel::A: return 'A';
        case CaseLabel::B: return 'B';
        case CaseLabel::C: return 'C';
        case CaseLabel::D: return 'D';
    }
    return '?';
}

bool is_bipartite_sans_loops(const SymmetricDigraph& g) {
    std::vector<int> colour(static_cast<std::size_t>(g.vertex_count()), -1);
    colour[0] = 0;
    std::deque<VertexId> queue{0};
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (ArcId a : g.out_arcs(v)) {
            if (g.is_loop(a)) continue;
            VertexId w = g.terminus(a);
            if (colour[static_cast<std::size_t>(w)] == -1) {
                colour[static_cast<std::size_t>(w)] = 1 - colour[static_cast<std::size_t>(v)];
                queue.push_back(w);
            } else if (colour[static_cast<std::size_t>(w)] == colour[static_cast<std::size_t>(v)]) {
                return false;
            }
        }
    }
    return true;
}

CaseLabel classify_case(const InternalGraph& g0) {
    bool loops = !g0.graph().loops().empty();
    bool bip = is_bipartite_sans_loops(g0.graph());
    if (!loops) return bip ? CaseLabel::A : CaseLabel::B;
    return bip ? CaseLabel::C : CaseLabel::D;
}

}  // namespace sinkwalk
