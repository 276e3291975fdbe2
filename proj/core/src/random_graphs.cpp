#include "sinkwalk/random_graphs.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <utility>

namespace sinkwalk {

namespace {

// uniform in [0, n); explicit reduction keeps the sequence portable
int rand_below(std::mt19937_64& rng, int n) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

template <typename T>
void shuffle_vec(std::mt19937_64& rng, std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
        std::swap(v[static_cast<std::size_t>(i)],
                  v[static_cast<std::size_t>(rand_below(rng, i + 1))]);
    }
}

}  // namespace

SweepGraph random_sweep_graph(std::mt19937_64& rng, CaseLabel target) {
    bool want_odd = target == CaseLabel::B || target == CaseLabel::D;
    bool want_loops = target == CaseLabel::C || target == CaseLabel::D;

    while (true) {
        int n0 = 2 + rand_below(rng, 3);          // 2..4 internal vertices
        if (want_odd && n0 < 3) n0 = 3 + rand_below(rng, 2);

        std::vector<std::pair<VertexId, VertexId>> edges;
        for (int v = 1; v < n0; ++v) {
            edges.emplace_back(rand_below(rng, v), v);
        }
        // tree two-colouring fixes which extra edges close even/odd cycles
        std::vector<int> parity(static_cast<std::size_t>(n0), 0);
        {
            std::vector<std::vector<int>> adj(static_cast<std::size_t>(n0));
            for (auto [u, w] : edges) {
                adj[static_cast<std::size_t>(u)].push_back(w);
                adj[static_cast<std::size_t>(w)].push_back(u);
            }
            std::vector<bool> seen(static_cast<std::size_t>(n0), false);
            std::deque<int> queue{0};
            seen[0] = true;
            while (!queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                for (int w : adj[static_cast<std::size_t>(v)]) {
                    if (!seen[static_cast<std::size_t>(w)]) {
                        seen[static_cast<std::size_t>(w)] = true;
                        parity[static_cast<std::size_t>(w)] = 1 - parity[static_cast<std::size_t>(v)];
                        queue.push_back(w);
                    }
                }
            }
        }
        std::set<std::pair<VertexId, VertexId>> used(edges.begin(), edges.end());
        for (auto [u, w] : std::vector<std::pair<VertexId, VertexId>>(edges)) {
            used.insert({std::min(u, w), std::max(u, w)});
        }
        std::vector<std::pair<VertexId, VertexId>> even_pool, odd_pool;
        for (VertexId u = 0; u < n0; ++u) {
            for (VertexId w = u + 1; w < n0; ++w) {
                if (used.count({u, w})) continue;
                (parity[static_cast<std::size_t>(u)] == parity[static_cast<std::size_t>(w)]
                     ? odd_pool
                     : even_pool)
                    .push_back({u, w});
            }
        }
        if (want_odd && odd_pool.empty()) continue;
        shuffle_vec(rng, even_pool);
        shuffle_vec(rng, odd_pool);

        int extra = rand_below(rng, 4);  // 0..3
        if (want_odd) {
            edges.push_back(odd_pool.back());
            odd_pool.pop_back();
            extra -= 1;
        }
        std::vector<std::pair<VertexId, VertexId>> pool = even_pool;
        if (want_odd) pool.insert(pool.end(), odd_pool.begin(), odd_pool.end());
        shuffle_vec(rng, pool);
        for (int k = 0; k < extra && !pool.empty(); ++k) {
            edges.push_back(pool.back());
            pool.pop_back();
        }

        std::vector<VertexId> loops;
        if (want_loops) {
            int count = 1 + rand_below(rng, std::min(2, n0));
            std::vector<VertexId> verts(static_cast<std::size_t>(n0));
            for (int v = 0; v < n0; ++v) verts[static_cast<std::size_t>(v)] = v;
            shuffle_vec(rng, verts);
            loops.assign(verts.begin(), verts.begin() + count);
        }

        // tails: at most one internal vertex stays tail-free
        std::vector<VertexId> verts(static_cast<std::size_t>(n0));
        for (int v = 0; v < n0; ++v) verts[static_cast<std::size_t>(v)] = v;
        shuffle_vec(rng, verts);
        int tail_verts = n0 - rand_below(rng, 2);
        if (tail_verts < std::min(2, n0)) tail_verts = std::min(2, n0);
        std::vector<VertexId> tails(verts.begin(), verts.begin() + tail_verts);
        while (static_cast<int>(tails.size()) < 4 && n0 + static_cast<int>(tails.size()) < 8 &&
               rand_below(rng, 3) == 0) {
            tails.push_back(verts[static_cast<std::size_t>(rand_below(rng, n0))]);
        }

        std::vector<VertexId> sinks;
        VertexId n = n0;
        for (VertexId v : tails) {
            edges.emplace_back(v, n);
            sinks.push_back(n);
            ++n;
        }
        SweepGraph out{SymmetricDigraph::build(n, edges, loops), std::move(sinks)};
        // steering can overshoot (an "even" extra edge may close an odd
        // cycle through another extra edge); resample on mismatch
        if (classify_case(remove_sinks(out.graph, out.sinks)) != target) continue;
        return out;
    }
}

std::vector<SweepGraph> sweep_graphs(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<SweepGraph> out;
    out.reserve(static_cast<std::size_t>(count));
    const CaseLabel order[4] = {CaseLabel::A, CaseLabel::B, CaseLabel::C, CaseLabel::D};
    for (int i = 0; i < count; ++i) {
        out.push_back(random_sweep_graph(rng, order[i % 4]));
    }
    return out;
}

}  // namespace sinkwalk
