#include "sinkwalk/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace sinkwalk {

std::pair<ArcVector, double> step_with_sinks(const InternalGraph& g0, const ArcVector& psi) {
    const SymmetricDigraph& g = g0.graph();
    if (psi.domain != ArcDomain::internal || psi.values.size() != g.arc_count()) {
        throw std::invalid_argument("step_with_sinks: state must live on the internal arcs");
    }
    ComplexVector vertex_sum = ComplexVector::Zero(g.vertex_count());
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        vertex_sum[g.terminus(a)] += psi.values[a];
    }
    ArcVector next{ArcDomain::internal, ComplexVector(g.arc_count())};
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        VertexId o = g.origin(a);
        next.values[a] =
            -psi.values[g.inverse(a)] + (2.0 / g0.ambient_degree(o)) * vertex_sum[o];
    }
    // each deleted sink arc at v carries (2/dt(v)) * (incoming sum at v)
    double outflow = 0.0;
    for (VertexId v : g0.tail_vertices()) {
        double coin = 2.0 / g0.ambient_degree(v);
        outflow += std::norm(coin * vertex_sum[v]);
    }
    return {std::move(next), outflow};
}

SinkRun survival_sequence(const InternalGraph& g0, const ArcVector& phi0, int n_max,
                          bool keep_states) {
    if (n_max < 0) throw std::invalid_argument("survival_sequence: n_max must be >= 0");
    SinkRun run;
    run.gammas.reserve(static_cast<std::size_t>(n_max) + 1);
    run.outflows.reserve(static_cast<std::size_t>(n_max) + 1);
    ArcVector phi = phi0;
    run.gammas.push_back(phi.values.squaredNorm());
    run.outflows.push_back(0.0);
    if (keep_states) run.states.push_back(phi.values);
    for (int n = 1; n <= n_max; ++n) {
        auto [next, tau] = step_with_sinks(g0, phi);
        phi = std::move(next);
        run.gammas.push_back(phi.values.squaredNorm());
        run.outflows.push_back(tau);
        if (keep_states) run.states.push_back(phi.values);
    }
    return run;
}

std::vector<double> random_walk_survival(const InternalGraph& g0, const RealVector& p0,
                                         int n_max) {
    const SymmetricDigraph& g = g0.graph();
    if (p0.size() != g.vertex_count()) {
        throw std::invalid_argument("random_walk_survival: distribution size mismatch");
    }
    std::vector<double> survival;
    survival.reserve(static_cast<std::size_t>(n_max) + 1);
    RealVector p = p0;
    survival.push_back(p.sum());
    for (int n = 1; n <= n_max; ++n) {
        RealVector next = RealVector::Zero(g.vertex_count());
        for (ArcId a = 0; a < g.arc_count(); ++a) {
            VertexId o = g.origin(a), t = g.terminus(a);
            next[t] += p[o] / g0.ambient_degree(o);
        }
        p = std::move(next);
        survival.push_back(p.sum());
    }
    return survival;
}

ComplexVector asymptotic_evolve(const AttractorBasis& basis, const ArcVector& phi0, long n) {
    if (phi0.domain != ArcDomain::internal ||
        phi0.values.size() != basis.projector.rows()) {
        throw std::invalid_argument("asymptotic_evolve: state must live on the internal arcs");
    }
    ComplexVector out = ComplexVector::Zero(phi0.values.size());
    for (const auto& b : basis.blocks) {
        Complex phase = std::pow(b.eigenvalue, static_cast<double>(n));
        out += phase * (b.vectors * (b.vectors.adjoint() * phi0.values));
    }
    return out;
}

ConvergenceEstimate convergence_estimate(const ComplexMatrix& e, const AttractorBasis& basis) {
    ConvergenceEstimate est;
    est.kappa = static_cast<int>(e.rows()) - static_cast<int>(basis.dimension());
    est.r_max = 0.0;
    if (e.rows() > 0) {
        Eigen::ComplexEigenSolver<ComplexMatrix> solver(e, false);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("convergence_estimate: eigensolver failed");
        }
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
            double m = std::abs(solver.eigenvalues()[i]);
            if (m < 1.0 - 1e-8) est.r_max = std::max(est.r_max, m);
        }
    }
    return est;
}

double fit_bound_constant(const ConvergenceEstimate& est, const SinkRun& run, double gamma,
                          int n_fit) {
    if (n_fit <= 0 || n_fit >= static_cast<int>(run.gammas.size())) {
        throw std::invalid_argument("fit_bound_constant: n_fit outside the run");
    }
    if (est.r_max <= 0.0) return 0.0;
    double decay = std::pow(static_cast<double>(n_fit), est.kappa) * std::pow(est.r_max, n_fit);
    return std::abs(run.gammas[static_cast<std::size_t>(n_fit)] - gamma) / decay;
}

double convergence_bound_violation(const ConvergenceEstimate& est, double bound_constant,
                                   const SinkRun& run, double gamma, int n_from) {
    double worst = -1.0;
    for (std::size_t n = static_cast<std::size_t>(n_from); n < run.gammas.size(); ++n) {
        double bound = bound_constant * std::pow(static_cast<double>(n), est.kappa) *
                       std::pow(est.r_max, static_cast<double>(n));
        worst = std::max(worst, std::abs(run.gammas[n] - gamma) - bound);
    }
    return worst;
}

TailState tail_stationary_state(const InternalGraph& g0, const std::vector<Complex>& alphas) {
    const SymmetricDigraph& g = g0.graph();
    const auto& tails = g0.tail_vertices();
    if (alphas.size() != tails.size()) {
        throw std::invalid_argument("tail_stationary_state: expected one inflow per tail (" +
                                    std::to_string(tails.size()) + ")");
    }
    TailState state;
    state.alphas = alphas;
    state.mean = 0.0;
    for (Complex a : alphas) state.mean += a;
    if (!alphas.empty()) state.mean /= static_cast<double>(alphas.size());

    // unknowns: one flow value per non-loop edge, on the smaller arc id
    std::vector<ArcId> reps;
    std::vector<Eigen::Index> column(static_cast<std::size_t>(g.arc_count()), -1);
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        if (!g.is_loop(a) && g.inverse(a) > a) {
            column[static_cast<std::size_t>(a)] = static_cast<Eigen::Index>(reps.size());
            reps.push_back(a);
        }
    }
    CycleBasis basis = fundamental_cycle_basis(g0);

    Eigen::Index rows = g.vertex_count() + static_cast<Eigen::Index>(basis.cycles.size());
    ComplexMatrix lhs = ComplexMatrix::Zero(rows, static_cast<Eigen::Index>(reps.size()));
    ComplexVector rhs = ComplexVector::Zero(rows);
    auto signed_column = [&](ArcId a) -> std::pair<Eigen::Index, double> {
        if (column[static_cast<std::size_t>(a)] >= 0) return {column[static_cast<std::size_t>(a)], 1.0};
        return {column[static_cast<std::size_t>(g.inverse(a))], -1.0};
    };
    // current law at every vertex, tail injections on the right
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        if (g.is_loop(a)) continue;
        auto [col, sign] = signed_column(a);
        lhs(g.terminus(a), col) += sign;
    }
    for (std::size_t i = 0; i < tails.size(); ++i) {
        rhs[tails[i]] -= alphas[i] - state.mean;
    }
    // voltage law around every fundamental cycle
    for (std::size_t c = 0; c < basis.cycles.size(); ++c) {
        Eigen::Index row = g.vertex_count() + static_cast<Eigen::Index>(c);
        for (ArcId a : basis.cycles[c].arcs) {
            auto [col, sign] = signed_column(a);
            lhs(row, col) += sign;
        }
    }

    double scale = 1.0;
    for (Complex a : alphas) scale = std::max(scale, std::abs(a));
    ComplexVector x(reps.size());
    if (!reps.empty()) {
        x = lhs.colPivHouseholderQr().solve(rhs);
        if ((lhs * x - rhs).norm() > 1e-10 * scale) {
            throw std::runtime_error("tail_stationary_state: Kirchhoff system is inconsistent");
        }
    } else if (rhs.norm() > 1e-12 * scale) {
        throw std::runtime_error("tail_stationary_state: Kirchhoff system is inconsistent");
    }

    state.current = ComplexVector::Zero(g.arc_count());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        ArcId a = reps[i];
        state.current[a] = x[static_cast<Eigen::Index>(i)];
        state.current[g.inverse(a)] = -x[static_cast<Eigen::Index>(i)];
    }
    state.psi_internal = ComplexVector::Constant(g.arc_count(), state.mean) + state.current;
    state.psi_tail = alphas;
    return state;
}

TailResiduals check_tail_state(const InternalGraph& g0, const TailState& state) {
    const SymmetricDigraph& g = g0.graph();
    TailResiduals res{0.0, 0.0, 0.0, 0.0};

    ComplexVector inj = ComplexVector::Zero(g.vertex_count());
    for (std::size_t i = 0; i < g0.tail_vertices().size(); ++i) {
        inj[g0.tail_vertices()[i]] += state.alphas[i] - state.mean;
    }
    ComplexVector sums = inj;
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        sums[g.terminus(a)] += state.current[a];
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        res.current_law = std::max(res.current_law, std::abs(sums[v]));
    }
    CycleBasis basis = fundamental_cycle_basis(g0);
    for (const auto& c : basis.cycles) {
        Complex total = 0.0;
        for (ArcId a : c.arcs) total += state.current[a];
        res.voltage_law = std::max(res.voltage_law, std::abs(total));
    }
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        res.antisymmetry =
            std::max(res.antisymmetry, std::abs(state.current[a] + state.current[g.inverse(a)]));
    }
    // rho(a) = (2/dt(o(a))) * sum of tail amplitudes entering o(a)
    ComplexVector tail_sum = ComplexVector::Zero(g.vertex_count());
    for (std::size_t i = 0; i < g0.tail_vertices().size(); ++i) {
        tail_sum[g0.tail_vertices()[i]] += state.alphas[i];
    }
    ComplexVector rho(g.arc_count());
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        VertexId o = g.origin(a);
        rho[a] = (2.0 / g0.ambient_degree(o)) * tail_sum[o];
    }
    ComplexMatrix e = build_E(g0);
    res.fixed_point = (e * state.psi_internal + rho - state.psi_internal).norm();
    return res;
}

}  // namespace sinkwalk
