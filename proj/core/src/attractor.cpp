#include "sinkwalk/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "sinkwalk/oracle.hpp"

namespace sinkwalk {

namespace {

// delta_a + delta_{inv a}, collapsing to a single delta on self-loops
void add_symmetrised(const SymmetricDigraph& g, ComplexVector& acc, ArcId a, double sign) {
    acc[a] += sign;
    if (!g.is_loop(a)) acc[g.inverse(a)] += sign;
}

void require_chained(const SymmetricDigraph& g, const std::vector<ArcId>& walk) {
    for (std::size_t j = 0; j + 1 < walk.size(); ++j) {
        if (g.terminus(walk[j]) != g.origin(walk[j + 1])) {
            throw std::invalid_argument("walk is not chained head-to-tail");
        }
    }
}

// BFS arc path from src to the nearest vertex of `targets`; deterministic
// via arc-id visitation order. Returns the path (possibly empty if src is
// itself a target).
std::vector<ArcId> bfs_path_to(const SymmetricDigraph& g, VertexId src,
                               const std::vector<bool>& target) {
    if (target[static_cast<std::size_t>(src)]) return {};
    std::vector<ArcId> pred(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
    seen[static_cast<std::size_t>(src)] = true;
    std::deque<VertexId> queue{src};
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (ArcId a : g.out_arcs(v)) {
            if (g.is_loop(a)) continue;
            VertexId w = g.terminus(a);
            if (seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = true;
            pred[static_cast<std::size_t>(w)] = a;
            if (target[static_cast<std::size_t>(w)]) {
                std::vector<ArcId> path;
                VertexId x = w;
                while (x != src) {
                    ArcId pa = pred[static_cast<std::size_t>(x)];
                    path.push_back(pa);
                    x = g.origin(pa);
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(w);
        }
    }
    throw std::logic_error("bfs_path_to: no path in a connected graph");
}

std::vector<ArcId> rotate_to(const SymmetricDigraph& g, const FundamentalCycle& c,
                             VertexId start) {
    for (std::size_t i = 0; i < c.arcs.size(); ++i) {
        if (g.origin(c.arcs[i]) == start) {
            std::vector<ArcId> out(c.arcs.begin() + static_cast<std::ptrdiff_t>(i), c.arcs.end());
            out.insert(out.end(), c.arcs.begin(), c.arcs.begin() + static_cast<std::ptrdiff_t>(i));
            return out;
        }
    }
    throw std::logic_error("cycle does not pass through the requested vertex");
}

std::vector<ArcId> reversed_arcs(const SymmetricDigraph& g, const std::vector<ArcId>& path) {
    std::vector<ArcId> out;
    out.reserve(path.size());
    for (auto it = path.rbegin(); it != path.rend(); ++it) out.push_back(g.inverse(*it));
    return out;
}

std::string describe(const SymmetricDigraph& g, const Anchor& a) {
    if (a.type == Anchor::Type::loop) {
        return "loop:" + std::to_string(a.loop_arc);
    }
    std::string s = "cycle:";
    for (std::size_t i = 0; i < a.cycle.arcs.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(a.cycle.arcs[i]);
    }
    return s;
}

// Walk for a loop--loop pair: (a*, path, a).
std::vector<ArcId> walk_loop_loop(const SymmetricDigraph& g, ArcId astar, ArcId other) {
    std::vector<bool> target(static_cast<std::size_t>(g.vertex_count()), false);
    target[static_cast<std::size_t>(g.origin(other))] = true;
    std::vector<ArcId> walk{astar};
    auto path = bfs_path_to(g, g.origin(astar), target);
    walk.insert(walk.end(), path.begin(), path.end());
    walk.push_back(other);
    return walk;
}

// Walk for a loop--odd-cycle pair: around the cycle between two visits of
// the loop, reaching it through a fixed shortest path when detached.
std::vector<ArcId> walk_loop_cycle(const SymmetricDigraph& g, ArcId astar,
                                   const FundamentalCycle& c) {
    VertexId u = g.origin(astar);
    std::vector<bool> on_cycle(static_cast<std::size_t>(g.vertex_count()), false);
    for (ArcId a : c.arcs) on_cycle[static_cast<std::size_t>(g.origin(a))] = true;
    std::vector<ArcId> walk{astar};
    if (on_cycle[static_cast<std::size_t>(u)]) {
        auto rc = rotate_to(g, c, u);
        walk.insert(walk.end(), rc.begin(), rc.end());
    } else {
        auto path = bfs_path_to(g, u, on_cycle);
        VertexId w = g.terminus(path.back());
        auto rc = rotate_to(g, c, w);
        walk.insert(walk.end(), path.begin(), path.end());
        walk.insert(walk.end(), rc.begin(), rc.end());
        auto back = reversed_arcs(g, path);
        walk.insert(walk.end(), back.begin(), back.end());
    }
    walk.push_back(astar);
    return walk;
}

// Walk for an odd-cycle pair: both cycles from a shared vertex, or joined
// by a fixed shortest path walked out and back.
std::vector<ArcId> walk_cycle_cycle(const SymmetricDigraph& g, const FundamentalCycle& cstar,
                                    const FundamentalCycle& c) {
    std::vector<bool> on_star(static_cast<std::size_t>(g.vertex_count()), false);
    std::vector<bool> on_c(static_cast<std::size_t>(g.vertex_count()), false);
    for (ArcId a : cstar.arcs) on_star[static_cast<std::size_t>(g.origin(a))] = true;
    for (ArcId a : c.arcs) on_c[static_cast<std::size_t>(g.origin(a))] = true;

    VertexId common = -1;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (on_star[static_cast<std::size_t>(v)] && on_c[static_cast<std::size_t>(v)]) {
            common = v;
            break;
        }
    }
    if (common != -1) {
        auto walk = rotate_to(g, cstar, common);
        auto rc = rotate_to(g, c, common);
        walk.insert(walk.end(), rc.begin(), rc.end());
        return walk;
    }

    // layered BFS from all of V(c*) to the nearest vertex of V(c)
    std::vector<ArcId> pred(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<bool> seen = on_star;
    std::deque<VertexId> queue;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (on_star[static_cast<std::size_t>(v)]) queue.push_back(v);
    }
    VertexId hit = -1;
    while (!queue.empty() && hit == -1) {
        VertexId v = queue.front();
        queue.pop_front();
        for (ArcId a : g.out_arcs(v)) {
            if (g.is_loop(a)) continue;
            VertexId w = g.terminus(a);
            if (seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = true;
            pred[static_cast<std::size_t>(w)] = a;
            if (on_c[static_cast<std::size_t>(w)]) {
                hit = w;
                break;
            }
            queue.push_back(w);
        }
    }
    if (hit == -1) throw std::logic_error("odd cycles not connected");
    std::vector<ArcId> path;
    VertexId x = hit;
    while (pred[static_cast<std::size_t>(x)] != -1) {
        ArcId pa = pred[static_cast<std::size_t>(x)];
        path.push_back(pa);
        x = g.origin(pa);
    }
    std::reverse(path.begin(), path.end());
    VertexId u0 = g.origin(path.front());

    auto walk = rotate_to(g, cstar, u0);
    auto rc = rotate_to(g, c, hit);
    walk.insert(walk.end(), path.begin(), path.end());
    walk.insert(walk.end(), rc.begin(), rc.end());
    auto back = reversed_arcs(g, path);
    walk.insert(walk.end(), back.begin(), back.end());
    return walk;
}

}  // namespace

FlowVector xi_plus(const InternalGraph& g0, const FundamentalCycle& cycle) {
    const SymmetricDigraph& g = g0.graph();
    FlowVector out{FlowVector::Kind::plus, ComplexVector::Zero(g.arc_count()), cycle.arcs};
    for (ArcId a : cycle.arcs) {
        out.carrier[a] += 1.0;
        out.carrier[g.inverse(a)] -= 1.0;
    }
    return out;
}

FlowVector xi_minus(const InternalGraph& g0, const std::vector<ArcId>& walk) {
    const SymmetricDigraph& g = g0.graph();
    require_chained(g, walk);
    FlowVector out{FlowVector::Kind::minus, ComplexVector::Zero(g.arc_count()), walk};
    double sign = 1.0;
    for (ArcId a : walk) {
        add_symmetrised(g, out.carrier, a, sign);
        sign = -sign;
    }
    return out;
}

EtaVector eta(const InternalGraph& g0, const Anchor& x, const Anchor& y) {
    const SymmetricDigraph& g = g0.graph();
    auto validate = [&](const Anchor& a) {
        if (a.type == Anchor::Type::loop) {
            if (a.loop_arc < 0 || a.loop_arc >= g.arc_count() || !g.is_loop(a.loop_arc)) {
                throw std::invalid_argument("eta: anchor is not a self-loop of the internal graph");
            }
        } else if (!a.cycle.odd()) {
            throw std::invalid_argument("eta: anchor cycle must have odd length");
        }
    };
    validate(x);
    validate(y);

    std::vector<ArcId> walk;
    if (x.type == Anchor::Type::loop && y.type == Anchor::Type::loop) {
        if (x.loop_arc == y.loop_arc) throw std::invalid_argument("eta: anchors coincide");
        walk = walk_loop_loop(g, x.loop_arc, y.loop_arc);
    } else if (x.type == Anchor::Type::loop) {
        walk = walk_loop_cycle(g, x.loop_arc, y.cycle);
    } else if (y.type == Anchor::Type::loop) {
        walk = walk_loop_cycle(g, y.loop_arc, x.cycle);
    } else {
        if (x.cycle.arcs == y.cycle.arcs) throw std::invalid_argument("eta: anchors coincide");
        walk = walk_cycle_cycle(g, x.cycle, y.cycle);
    }
    FlowVector flow = xi_minus(g0, walk);
    return EtaVector{std::move(flow.carrier), describe(g, x), describe(g, y), std::move(walk)};
}

std::vector<FlowVector> ker_one_minus_E_basis(const InternalGraph& g0, const CycleBasis& basis) {
    std::vector<FlowVector> out;
    out.reserve(basis.cycles.size());
    for (const auto& c : basis.cycles) out.push_back(xi_plus(g0, c));
    return out;
}

MinusBasis ker_one_plus_E_basis(const InternalGraph& g0, const CycleBasis& basis) {
    const SymmetricDigraph& g = g0.graph();
    MinusBasis out;
    CaseLabel label = classify_case(g0);

    auto flows_over = [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i : idx) out.flows.push_back(xi_minus(g0, basis.cycles[i].arcs));
    };
    std::vector<std::size_t> all(basis.cycles.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

    switch (label) {
        case CaseLabel::A:
            flows_over(all);
            break;
        case CaseLabel::B: {
            flows_over(basis.even);
            const auto& cstar = basis.cycles[basis.odd.front()];
            for (std::size_t k = 1; k < basis.odd.size(); ++k) {
                out.etas.push_back(eta(g0, Anchor::odd_cycle(cstar),
                                       Anchor::odd_cycle(basis.cycles[basis.odd[k]])));
            }
            break;
        }
        case CaseLabel::C: {
            flows_over(all);
            ArcId astar = g.loops().front();
            for (std::size_t k = 1; k < g.loops().size(); ++k) {
                out.etas.push_back(eta(g0, Anchor::loop(astar), Anchor::loop(g.loops()[k])));
            }
            break;
        }
        case CaseLabel::D: {
            flows_over(basis.even);
            ArcId astar = g.loops().front();
            for (std::size_t i : basis.odd) {
                out.etas.push_back(eta(g0, Anchor::loop(astar), Anchor::odd_cycle(basis.cycles[i])));
            }
            for (std::size_t k = 1; k < g.loops().size(); ++k) {
                out.etas.push_back(eta(g0, Anchor::loop(astar), Anchor::loop(g.loops()[k])));
            }
            break;
        }
    }
    return out;
}

std::vector<std::pair<double, RealVector>> interior_dirichlet_eigenpairs(
    const RealMatrix& t, const std::vector<VertexId>& boundary, double cluster_tol,
    double rank_tol) {
    std::vector<std::pair<double, RealVector>> out;
    if (t.rows() == 0) return out;
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(t);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("interior_dirichlet_eigenpairs: eigensolver failed");
    }
    const RealVector& w = solver.eigenvalues();
    const RealMatrix& v = solver.eigenvectors();

    Eigen::Index i = 0;
    while (i < w.size()) {
        Eigen::Index j = i;
        while (j + 1 < w.size() && std::abs(w[j + 1] - w[i]) <= cluster_tol) ++j;
        double mu = w.segment(i, j - i + 1).mean();
        if (std::abs(mu) < 1.0 - 1e-8) {
            RealMatrix q = v.middleCols(i, j - i + 1);
            RealMatrix f;
            if (boundary.empty()) {
                f = q;
            } else {
                RealMatrix rows(static_cast<Eigen::Index>(boundary.size()), q.cols());
                for (std::size_t b = 0; b < boundary.size(); ++b) {
                    rows.row(static_cast<Eigen::Index>(b)) = q.row(boundary[b]);
                }
                Eigen::JacobiSVD<RealMatrix> svd(rows, Eigen::ComputeFullV);
                Eigen::Index rank = 0;
                for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
                    if (svd.singularValues()[k] > rank_tol) ++rank;
                }
                f = q * svd.matrixV().rightCols(q.cols() - rank);
            }
            for (Eigen::Index k = 0; k < f.cols(); ++k) {
                out.emplace_back(mu, f.col(k));
            }
        }
        i = j + 1;
    }
    // descending mu for a stable block order downstream
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    return out;
}

LiftedEigenpair lift(const RealVector& f, double mu, const InternalGraph& g0) {
    if (std::abs(mu) >= 1.0) {
        throw std::invalid_argument("lift requires |mu| < 1");
    }
    double theta = std::acos(mu);
    Complex lambda(mu, std::sqrt(std::max(0.0, 1.0 - mu * mu)));
    ArcVector base = apply_d1_adjoint(g0, f.cast<Complex>());
    ArcVector flipped = apply_flip(g0.graph(), base);
    LiftedEigenpair out;
    out.f = f;
    out.mu = mu;
    out.theta = theta;
    out.phi_plus = base.values - lambda * flipped.values;
    out.phi_minus = base.values - std::conj(lambda) * flipped.values;
    if (out.phi_plus.norm() < 1e-12 || out.phi_minus.norm() < 1e-12) {
        throw std::runtime_error("lift produced a zero vector");
    }
    return out;
}

namespace {

// Modified Gram-Schmidt with a rank-loss guard; returns orthonormal columns.
ComplexMatrix orthonormalise(const std::vector<ComplexVector>& vectors, Eigen::Index dim) {
    ComplexMatrix q(dim, static_cast<Eigen::Index>(vectors.size()));
    Eigen::Index col = 0;
    for (const auto& v : vectors) {
        ComplexVector w = v;
        double n0 = w.norm();
        for (Eigen::Index k = 0; k < col; ++k) {
            w -= q.col(k).dot(w) * q.col(k);
        }
        double n = w.norm();
        if (n < 1e-10 * std::max(n0, 1.0)) {
            throw std::runtime_error("rank loss while orthonormalising an eigenblock");
        }
        q.col(col++) = w / n;
    }
    return q;
}

}  // namespace

std::size_t AttractorBasis::dimension() const {
    std::size_t d = 0;
    for (const auto& b : blocks) d += static_cast<std::size_t>(b.vectors.cols());
    return d;
}

AttractorBasis attractor_basis(const InternalGraph& g0) {
    AttractorBasis out;
    out.case_label = classify_case(g0);
    CycleBasis basis = fundamental_cycle_basis(g0);

    out.k_part = ker_one_minus_E_basis(g0, basis);
    out.minus_part = ker_one_plus_E_basis(g0, basis);

    RealMatrix t = build_T(g0);
    auto pairs = interior_dirichlet_eigenpairs(t, g0.boundary());
    for (const auto& [mu, f] : pairs) {
        out.t_part.push_back(lift(f, mu, g0));
    }

    // Without a boundary E is the full unitary walk, and the random walk's
    // +-1 eigenvectors contribute unit eigenvectors the flow constructions
    // cannot see: d1* of the Perron vector is constant on arcs and fixed;
    // in the bipartite loop-free case its alternating twin picks up -1.
    std::vector<ComplexVector> plus_extra, minus_extra;
    if (g0.boundary().empty() && g0.arc_count() > 0) {
        plus_extra.push_back(ComplexVector::Ones(g0.arc_count()));
        if (out.case_label == CaseLabel::A) {
            std::vector<int> colour(static_cast<std::size_t>(g0.vertex_count()), 0);
            std::deque<VertexId> queue{0};
            std::vector<bool> seen(static_cast<std::size_t>(g0.vertex_count()), false);
            seen[0] = true;
            while (!queue.empty()) {
                VertexId v = queue.front();
                queue.pop_front();
                for (ArcId a : g0.graph().out_arcs(v)) {
                    VertexId w = g0.graph().terminus(a);
                    if (!seen[static_cast<std::size_t>(w)]) {
                        seen[static_cast<std::size_t>(w)] = true;
                        colour[static_cast<std::size_t>(w)] = 1 - colour[static_cast<std::size_t>(v)];
                        queue.push_back(w);
                    }
                }
            }
            ComplexVector alt(g0.arc_count());
            for (ArcId a = 0; a < g0.arc_count(); ++a) {
                alt[a] = colour[static_cast<std::size_t>(g0.graph().terminus(a))] == 0 ? 1.0 : -1.0;
            }
            minus_extra.push_back(std::move(alt));
        }
    }

    if (!out.k_part.empty() || !plus_extra.empty()) {
        std::vector<ComplexVector> vs;
        for (const auto& x : out.k_part) vs.push_back(x.carrier);
        for (const auto& x : plus_extra) vs.push_back(x);
        out.blocks.push_back({Complex(1.0, 0.0), orthonormalise(vs, g0.arc_count())});
    }
    if (out.minus_part.size() > 0 || !minus_extra.empty()) {
        std::vector<ComplexVector> vs;
        for (const auto& x : out.minus_part.flows) vs.push_back(x.carrier);
        for (const auto& x : out.minus_part.etas) vs.push_back(x.carrier);
        for (const auto& x : minus_extra) vs.push_back(x);
        out.blocks.push_back({Complex(-1.0, 0.0), orthonormalise(vs, g0.arc_count())});
    }
    // group lifted pairs by mu (already sorted descending)
    std::size_t i = 0;
    while (i < out.t_part.size()) {
        std::size_t j = i;
        while (j + 1 < out.t_part.size() &&
               std::abs(out.t_part[j + 1].mu - out.t_part[i].mu) <= 1e-12) {
            ++j;
        }
        std::vector<ComplexVector> plus, minus;
        for (std::size_t k = i; k <= j; ++k) {
            plus.push_back(out.t_part[k].phi_plus);
            minus.push_back(out.t_part[k].phi_minus);
        }
        double theta = out.t_part[i].theta;
        Complex lambda(std::cos(theta), std::sin(theta));
        out.blocks.push_back({lambda, orthonormalise(plus, g0.arc_count())});
        out.blocks.push_back({std::conj(lambda), orthonormalise(minus, g0.arc_count())});
        i = j + 1;
    }

    out.projector = ComplexMatrix::Zero(g0.arc_count(), g0.arc_count());
    for (const auto& b : out.blocks) {
        out.projector += b.vectors * b.vectors.adjoint();
    }
    return out;
}

AttractorBasis attractor_basis(const SymmetricDigraph& g, const std::vector<VertexId>& sinks) {
    return attractor_basis(remove_sinks(g, sinks));
}

SurvivalBreakdown survival_spectral(const AttractorBasis& basis, const ArcVector& phi0) {
    if (phi0.domain != ArcDomain::internal ||
        phi0.values.size() != basis.projector.rows()) {
        throw std::invalid_argument("survival_spectral: state must live on the internal arcs");
    }
    SurvivalBreakdown out{0.0, 0.0, 0.0, 0.0};
    for (const auto& b : basis.blocks) {
        double mass = (b.vectors.adjoint() * phi0.values).squaredNorm();
        if (std::abs(b.eigenvalue - Complex(1.0, 0.0)) < 1e-9) {
            out.k_block += mass;
        } else if (std::abs(b.eigenvalue + Complex(1.0, 0.0)) < 1e-9) {
            out.minus_block += mass;
        } else {
            out.t_block += mass;
        }
    }
    out.gamma = out.t_block + out.k_block + out.minus_block;
    return out;
}

DimensionReport dimension_report(const InternalGraph& g0, double eig_tol) {
    DimensionReport r;
    r.case_label = classify_case(g0);
    const SymmetricDigraph& g = g0.graph();
    int edges = g.edge_count();
    int vertices = g.vertex_count();
    int loops = static_cast<int>(g.loops().size());
    r.predicted_plus = edges - vertices + 1;
    switch (r.case_label) {
        case CaseLabel::A: r.predicted_minus = edges - vertices + 1; break;
        case CaseLabel::B: r.predicted_minus = edges - vertices; break;
        case CaseLabel::C:
        case CaseLabel::D: r.predicted_minus = edges - vertices + loops; break;
    }
    // with no boundary the evolution is unitary and the random walk's +-1
    // eigenvectors add one dimension each (the -1 only in case A)
    if (g0.boundary().empty() && g0.arc_count() > 0) {
        r.predicted_plus += 1;
        if (r.case_label == CaseLabel::A) r.predicted_minus += 1;
    }

    SpectrumReport spec = numeric_spectrum(build_E(g0));
    r.numeric_plus = 0;
    r.numeric_minus = 0;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        if (std::abs(spec.eigenvalues[i] - Complex(1.0, 0.0)) <= eig_tol) ++r.numeric_plus;
        if (std::abs(spec.eigenvalues[i] + Complex(1.0, 0.0)) <= eig_tol) ++r.numeric_minus;
    }
    r.match = r.numeric_plus == r.predicted_plus && r.numeric_minus == r.predicted_minus;
    return r;
}

}  // namespace sinkwalk
