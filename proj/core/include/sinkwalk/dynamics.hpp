#pragma once

#include <utility>
#include <vector>

#include "sinkwalk/attractor.hpp"
#include "sinkwalk/graph.hpp"
#include "sinkwalk/operators.hpp"

namespace sinkwalk {

/// One sinked Grover step: apply the ambient evolution to the state
/// extended by zeros, truncate back to the internal arcs, and account the
/// amplitude that crossed into the sinks. ||next||^2 + outflow = ||psi||^2.
std::pair<ArcVector, double> step_with_sinks(const InternalGraph& g0, const ArcVector& psi);

struct SinkRun {
    std::vector<ComplexVector> states;  // phi_n; filled only when requested
    std::vector<double> gammas;         // gamma_n = ||phi_n||^2
    std::vector<double> outflows;       // tau_n, with tau_0 = 0
};

SinkRun survival_sequence(const InternalGraph& g0, const ArcVector& phi0, int n_max,
                          bool keep_states = false);

/// Total remaining mass of the absorbing isotropic random walk, one entry
/// per step (index 0 = initial mass).
std::vector<double> random_walk_survival(const InternalGraph& g0, const RealVector& p0,
                                         int n_max);

/// W^n P_c phi0 evaluated in the attractor eigenbasis.
ComplexVector asymptotic_evolve(const AttractorBasis& basis, const ArcVector& phi0, long n);

struct ConvergenceEstimate {
    int kappa;      // dimension of the stable eigenspace
    double r_max;   // largest sub-unit eigenvalue modulus (0 when none)
    double bound_constant = 0.0;
};

ConvergenceEstimate convergence_estimate(const ComplexMatrix& e, const AttractorBasis& basis);

/// C such that |gamma_{n_fit} - gamma| = C * n_fit^kappa * r_max^n_fit.
double fit_bound_constant(const ConvergenceEstimate& est, const SinkRun& run, double gamma,
                          int n_fit);

/// Largest violation of |gamma_n - gamma| <= C n^kappa r_max^n over
/// n in [n_from, run length); <= 0 means the bound holds.
double convergence_bound_violation(const ConvergenceEstimate& est, double bound_constant,
                                   const SinkRun& run, double gamma, int n_from);

struct TailState {
    ComplexVector psi_internal;         // stationary amplitudes on the internal arcs
    std::vector<Complex> psi_tail;      // amplitudes on the tail entry arcs (= alphas)
    ComplexVector current;              // edge flow j on the internal arcs
    Complex mean;                       // (alpha_1 + ... + alpha_r) / r
    std::vector<Complex> alphas;
};

/// Stationary state of the walk fed by constant inflows, one amplitude per
/// tail (ordering matches InternalGraph::tail_vertices()). Solves the
/// Kirchhoff current/voltage system for the edge flow.
TailState tail_stationary_state(const InternalGraph& g0, const std::vector<Complex>& alphas);

struct TailResiduals {
    double current_law;        // flow conservation with boundary injections
    double voltage_law;        // flow sums around fundamental cycles
    double antisymmetry;       // j(inv a) + j(a)
    double fixed_point;        // || E psi + rho - psi ||
};

TailResiduals check_tail_state(const InternalGraph& g0, const TailState& state);

}  // namespace sinkwalk
