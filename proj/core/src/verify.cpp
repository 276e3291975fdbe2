#include "sinkwalk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "sinkwalk/attractor.hpp"
#include "sinkwalk/dynamics.hpp"
#include "sinkwalk/operators.hpp"
#include "sinkwalk/oracle.hpp"

namespace sinkwalk {

void VerifyReport::add(std::string name, double value, double tolerance) {
    bool ok = value <= tolerance;
    checks.push_back({std::move(name), value, tolerance, ok});
    pass = pass && ok;
}

namespace {

// deterministic full-support test state on the internal arcs
ArcVector probe_state(ArcId arc_count) {
    ArcVector psi{ArcDomain::internal, ComplexVector(arc_count)};
    for (ArcId a = 0; a < arc_count; ++a) {
        double x = std::sin(1.0 + 0.7 * a);
        double y = std::cos(2.0 + 0.3 * a);
        psi.values[a] = Complex(x, y);
    }
    if (arc_count > 0) psi.values /= psi.values.norm();
    return psi;
}

}  // namespace

VerifyReport verify_graph(const SymmetricDigraph& g, const std::vector<VertexId>& sinks,
                          const Tolerances& tol) {
    VerifyReport report;

    ComplexMatrix u = build_grover_matrix(g);
    report.add("grover_unitarity",
               (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()))
                   .cwiseAbs()
                   .maxCoeff(),
               tol.unitarity);

    InternalGraph g0 = remove_sinks(g, sinks);
    CycleBasis basis = fundamental_cycle_basis(g0);
    report.add("chain_condition", check_chain_condition(g0, basis), tol.chain_condition);

    ComplexMatrix e = build_E(g0);
    double submatrix = 0.0;
    for (ArcId a = 0; a < g0.arc_count(); ++a) {
        for (ArcId b = 0; b < g0.arc_count(); ++b) {
            submatrix = std::max(submatrix,
                                 std::abs(e(a, b) - u(g0.parent_arc(a), g0.parent_arc(b))));
        }
    }
    report.add("e_is_grover_submatrix", submatrix, tol.submatrix_identity);

    // every fundamental-cycle flow is a fixed point of the ambient walk
    double xi_fixed = 0.0;
    for (const auto& c : basis.cycles) {
        FlowVector xi = xi_plus(g0, c);
        ArcVector full{ArcDomain::full, ComplexVector::Zero(g.arc_count())};
        for (ArcId a = 0; a < g0.arc_count(); ++a) full.values[g0.parent_arc(a)] = xi.carrier[a];
        ArcVector stepped = apply_grover(g, full);
        xi_fixed = std::max(xi_fixed, (stepped.values - full.values).norm());
    }
    report.add("cycle_flow_fixed_point", xi_fixed, tol.eigen_residual);

    SpectrumReport spectrum = numeric_spectrum(e, tol.unit_circle);
    report.add("spectral_radius_bound", std::max(0.0, spectrum.spectral_radius - 1.0),
               tol.spectral_radius_slack);

    DimensionReport dims = dimension_report(g0, tol.dims_eig_tol);
    report.add("dimension_formulas",
               std::abs(dims.predicted_plus - dims.numeric_plus) +
                   std::abs(dims.predicted_minus - dims.numeric_minus),
               0.5);

    AttractorBasis attractor = attractor_basis(g0);
    double residual = 0.0;
    for (const auto& block : attractor.blocks) {
        residual = std::max(residual,
                            (e * block.vectors - block.vectors * block.eigenvalue)
                                .cwiseAbs()
                                .maxCoeff());
    }
    report.add("attractor_eigen_residual", residual, tol.eigen_residual);

    const ComplexMatrix& p = attractor.projector;
    report.add("projector_hermitian", (p - p.adjoint()).cwiseAbs().maxCoeff(),
               tol.projector_idempotent);
    report.add("projector_idempotent", (p * p - p).cwiseAbs().maxCoeff(),
               tol.projector_idempotent);
    report.add("projector_commutes_with_e", (p * e - e * p).cwiseAbs().maxCoeff(),
               tol.commutes_with_e);

    ComplexMatrix p_numeric = numeric_attractor_projector(e, tol.unit_circle);
    report.add("projector_equivalence", subspace_distance(p, p_numeric),
               tol.projector_distance);
    report.add("attractor_dimension_match",
               std::abs(static_cast<double>(attractor.dimension()) -
                        std::round(p_numeric.trace().real())),
               0.5);

    ArcVector probe = probe_state(g0.arc_count());
    if (g0.arc_count() > 0) {
        SurvivalBreakdown spectral = survival_spectral(attractor, probe);
        double brute = brute_force_survival(e, probe.values, tol.unit_circle);
        report.add("survival_route_agreement", std::abs(spectral.gamma - brute),
                   tol.survival_agreement);

        ConvergenceEstimate est = convergence_estimate(e, attractor);
        // a nilpotent stable part dies within kappa steps
        int horizon = est.kappa + 1;
        if (est.r_max > 0.0) {
            // first n with n^kappa r^n below 1e-9, capped
            for (horizon = 10; horizon < 5000; horizon *= 2) {
                double decay = est.kappa * std::log(static_cast<double>(horizon)) +
                               horizon * std::log(est.r_max);
                if (decay < std::log(1e-9)) break;
            }
            horizon = std::min(horizon, 5000);
        }
        SinkRun run = survival_sequence(g0, probe, horizon);
        double accounting = 0.0;
        double spent = 0.0;
        for (std::size_t n = 0; n < run.gammas.size(); ++n) {
            spent += run.outflows[n];
            accounting = std::max(accounting, std::abs(run.gammas[n] + spent - run.gammas[0]));
        }
        report.add("norm_accounting", accounting, tol.norm_accounting);
        report.add("sequence_vs_spectral", std::abs(run.gammas.back() - spectral.gamma), 1e-6);
    }

    if (!sinks.empty() && g0.vertex_count() > 0) {
        // absorbing random walk drains from every start; budget set by the
        // substochastic spectral radius
        RealMatrix t = build_T(g0);
        Eigen::SelfAdjointEigenSolver<RealMatrix> tsolver(t);
        double rho = 0.0;
        for (Eigen::Index i = 0; i < tsolver.eigenvalues().size(); ++i) {
            rho = std::max(rho, std::abs(tsolver.eigenvalues()[i]));
        }
        int maxdeg = 0;
        for (VertexId v = 0; v < g0.vertex_count(); ++v) {
            maxdeg = std::max(maxdeg, g0.ambient_degree(v));
        }
        int steps = 10 * g0.vertex_count() * maxdeg;
        if (rho > 0.0 && rho < 1.0) {
            int needed = static_cast<int>(std::ceil(std::log(1e-8) / std::log(rho)));
            steps = std::max(steps, std::min(needed, 1000000));
        }
        double worst = 0.0;
        for (VertexId v = 0; v < g0.vertex_count(); ++v) {
            RealVector p0 = RealVector::Zero(g0.vertex_count());
            p0[v] = 1.0;
            worst = std::max(worst, random_walk_survival(g0, p0, steps).back());
        }
        report.add("random_walk_contrast", worst, tol.rw_survival);

        // Kirchhoff tail solve: equal inflows give zero flow; generic
        // inflows satisfy both laws and the fixed-point equation
        std::size_t r = g0.tail_vertices().size();
        TailState flat = tail_stationary_state(g0, std::vector<Complex>(r, Complex(1.0, 0.0)));
        report.add("kirchhoff_flat_inflow",
                   r > 0 && flat.current.size() > 0 ? flat.current.cwiseAbs().maxCoeff() : 0.0,
                   tol.kirchhoff_residual);
        std::vector<Complex> alphas(r);
        for (std::size_t i = 0; i < r; ++i) {
            alphas[i] = Complex(std::sin(1.3 * static_cast<double>(i) + 0.4),
                                std::cos(0.9 * static_cast<double>(i)));
        }
        TailState generic = tail_stationary_state(g0, alphas);
        TailResiduals res = check_tail_state(g0, generic);
        report.add("kirchhoff_current_law", res.current_law, tol.kirchhoff_residual);
        report.add("kirchhoff_voltage_law", res.voltage_law, tol.kirchhoff_residual);
        report.add("kirchhoff_antisymmetry", res.antisymmetry, tol.kirchhoff_residual);
        report.add("tail_fixed_point", res.fixed_point, tol.tail_fixed_point);
    }

    return report;
}

}  // namespace sinkwalk
