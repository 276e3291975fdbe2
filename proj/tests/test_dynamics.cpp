#include <doctest.h>

#include <cmath>

#include "sinkwalk/dynamics.hpp"
#include "sinkwalk/oracle.hpp"
#include "sinkwalk/random_graphs.hpp"
#include "support.hpp"

using namespace sinkwalk;
using namespace sinkwalk::testing;

namespace {
InternalGraph square() { return remove_sinks(looped_square(), looped_square_sinks()); }
}  // namespace

TEST_CASE("cycle flows survive sinked steps without outflow") {
    auto g0 = square();
    auto basis = fundamental_cycle_basis(g0);
    auto xi = xi_plus(g0, basis.cycles[0]);
    ArcVector state{ArcDomain::internal, xi.carrier / xi.carrier.norm()};
    auto [next, tau] = step_with_sinks(g0, state);
    CHECK(tau < 1e-15);
    CHECK((next.values - state.values).norm() < 1e-12);
}

TEST_CASE("a single interior edge between two boundary vertices drains in one step") {
    auto g = SymmetricDigraph::build(4, {{0, 1}, {0, 2}, {1, 3}}, {});
    auto g0 = remove_sinks(g, {2, 3});
    REQUIRE(g0.arc_count() == 2);
    auto psi = make_delta(ArcDomain::internal, 0, 2);
    auto [one, tau1] = step_with_sinks(g0, psi);
    CHECK(std::abs(one.values.squaredNorm() + tau1 - 1.0) < 1e-12);
    auto [two, tau2] = step_with_sinks(g0, one);
    CHECK(two.values.squaredNorm() <= 1.0 + 1e-12);
    CHECK(std::abs(two.values.squaredNorm() + tau2 - one.values.squaredNorm()) < 1e-12);
}

TEST_CASE("step rejects ambient-domain states") {
    auto g0 = square();
    auto psi = random_state(ArcDomain::full, 14, 5);
    CHECK_THROWS_AS(step_with_sinks(g0, psi), std::invalid_argument);
}

TEST_CASE("survival sequence of the loop delta tends to one half") {
    auto g0 = square();
    auto phi0 = make_delta(ArcDomain::internal, kLoopedSquareB1Internal, 10);
    auto run = survival_sequence(g0, phi0, 500);
    CHECK(run.gammas[10] == doctest::Approx(0.5004674772835197).epsilon(1e-10));
    CHECK(std::abs(run.gammas[500] - 0.5) < 1e-6);
    // gammas never increase and the ledger balances at every step
    double spent = 0.0;
    for (std::size_t n = 1; n < run.gammas.size(); ++n) {
        CHECK(run.gammas[n] <= run.gammas[n - 1] + 1e-12);
        spent += run.outflows[n];
        CHECK(std::abs(run.gammas[n] + spent - 1.0) < 1e-10);
    }
}

TEST_CASE("attractor states keep their survival constant") {
    auto g0 = square();
    auto basis = attractor_basis(g0);
    ComplexVector v = basis.blocks[1].vectors.col(1);  // the (-1)-block vector
    auto run = survival_sequence(g0, ArcVector{ArcDomain::internal, v}, 50);
    for (double gamma : run.gammas) CHECK(std::abs(gamma - 1.0) < 1e-12);
}

TEST_CASE("norm accounting holds for generic states on the sweep") {
    for (const auto& sg : sweep_graphs(12)) {
        auto g0 = remove_sinks(sg.graph, sg.sinks);
        if (g0.arc_count() == 0) continue;
        auto phi0 = random_state(ArcDomain::internal, g0.arc_count(), 7);
        auto run = survival_sequence(g0, phi0, 60);
        double spent = 0.0;
        for (std::size_t n = 0; n < run.gammas.size(); ++n) {
            spent += run.outflows[n];
            CHECK(std::abs(run.gammas[n] + spent - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("random walk drains through the sinks") {
    auto g0 = square();
    RealVector p0 = RealVector::Zero(4);
    p0[0] = 1.0;
    auto survival = random_walk_survival(g0, p0, 200);
    CHECK(survival[200] < 1e-6);
    for (std::size_t n = 1; n < survival.size(); ++n) {
        CHECK(survival[n] <= survival[n - 1] + 1e-14);
    }
}

TEST_CASE("random walk without sinks conserves mass") {
    auto g0 = remove_sinks(looped_square(), {});
    RealVector p0 = RealVector::Constant(6, 1.0 / 6.0);
    auto survival = random_walk_survival(g0, p0, 50);
    for (double s : survival) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single boundary vertex decays geometrically") {
    auto g = SymmetricDigraph::build(2, {{0, 1}}, {0});
    auto g0 = remove_sinks(g, {1});  // one vertex with a loop, one tail
    RealVector p0 = RealVector::Ones(1);
    auto survival = random_walk_survival(g0, p0, 20);
    for (std::size_t n = 0; n < survival.size(); ++n) {
        CHECK(survival[n] == doctest::Approx(std::pow(0.5, n)).epsilon(1e-12));
    }
}

TEST_CASE("asymptotic evolution matches powers of the reduced operator") {
    auto g0 = square();
    auto basis = attractor_basis(g0);
    auto e = build_E(g0);
    auto phi0 = make_delta(ArcDomain::internal, kLoopedSquareB1Internal, 10);
    ComplexVector reduced = basis.projector * phi0.values;
    for (long n : {0L, 1L, 2L, 3L, 7L}) {
        ComplexVector expect = reduced;
        for (long k = 0; k < n; ++k) expect = e * expect;
        CHECK((asymptotic_evolve(basis, phi0, n) - expect).norm() < 1e-12);
    }
}

TEST_CASE("asymptotic evolution converges to the true dynamics") {
    auto g0 = square();
    auto basis = attractor_basis(g0);
    auto phi0 = make_delta(ArcDomain::internal, kLoopedSquareB1Internal, 10);
    auto run = survival_sequence(g0, phi0, 300, /*keep_states=*/true);
    ComplexVector predicted = asymptotic_evolve(basis, phi0, 300);
    CHECK((run.states[300] - predicted).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("eigenstates rotate by a pure phase") {
    auto g0 = square();
    auto basis = attractor_basis(g0);
    ComplexVector phi = basis.blocks[2].vectors.col(0);
    Complex lambda = basis.blocks[2].eigenvalue;
    auto out = asymptotic_evolve(basis, ArcVector{ArcDomain::internal, phi}, 5);
    CHECK((out - std::pow(lambda, 5.0) * phi).norm() < 1e-12);
}

TEST_CASE("convergence estimate for the looped square") {
    auto g0 = square();
    auto basis = attractor_basis(g0);
    auto e = build_E(g0);
    auto est = convergence_estimate(e, basis);
    CHECK(est.kappa == 5);
    CHECK(est.r_max == doctest::Approx(0.7196027977730819).epsilon(1e-9));

    auto phi0 = make_delta(ArcDomain::internal, kLoopedSquareB1Internal, 10);
    auto run = survival_sequence(g0, phi0, 500);
    double c = fit_bound_constant(est, run, 0.5, 10);
    CHECK(c > 0.0);
    // decay law holds from the fit point on, up to double-precision noise
    CHECK(convergence_bound_violation(est, c, run, 0.5, 10) <= 1e-12);
}

TEST_CASE("the decay law holds on random graphs with a genuine stable part") {
    for (const auto& sg : sweep_graphs(20)) {
        auto g0 = remove_sinks(sg.graph, sg.sinks);
        if (g0.arc_count() == 0) continue;
        auto basis = attractor_basis(g0);
        auto e = build_E(g0);
        auto est = convergence_estimate(e, basis);
        if (est.r_max < 1e-6) continue;  // nilpotent stable parts die instantly
        auto phi0 = random_state(ArcDomain::internal, g0.arc_count(), 11);
        auto run = survival_sequence(g0, phi0, 400);
        double gamma = survival_spectral(basis, phi0).gamma;
        double c = fit_bound_constant(est, run, gamma, 10);
        CHECK(convergence_bound_violation(est, c, run, gamma, 10) <= 1e-9);
    }
}

TEST_CASE("convergence estimate without sinks is trivial") {
    auto g0 = remove_sinks(looped_square(), {});
    auto basis = attractor_basis(g0);
    auto est = convergence_estimate(build_E(g0), basis);
    CHECK(est.kappa == 0);
    CHECK(est.r_max == 0.0);
}

TEST_CASE("equal inflows give a flat stationary state with zero current") {
    auto g0 = square();
    std::vector<Complex> alphas(g0.tail_vertices().size(), Complex(0.7, -0.2));
    auto state = tail_stationary_state(g0, alphas);
    CHECK(state.current.cwiseAbs().maxCoeff() < 1e-12);
    for (ArcId a = 0; a < g0.arc_count(); ++a) {
        CHECK(std::abs(state.psi_internal[a] - Complex(0.7, -0.2)) < 1e-12);
    }
    auto res = check_tail_state(g0, state);
    CHECK(res.fixed_point < 1e-10);
}

TEST_CASE("two tails on a path carry a half current each way") {
    auto g = SymmetricDigraph::build(4, {{0, 1}, {1, 2}, {2, 3}}, {});
    auto g0 = remove_sinks(g, {0, 3});
    auto state = tail_stationary_state(g0, {Complex(1.0), Complex(0.0)});
    CHECK(std::abs(state.mean - Complex(0.5)) < 1e-15);
    // internal arcs: (0->1) then (1->0); flow enters at vertex 0
    CHECK(std::abs(state.current[0] - Complex(0.5)) < 1e-12);
    CHECK(std::abs(state.current[1] + Complex(0.5)) < 1e-12);
    CHECK(std::abs(state.psi_internal[0] - Complex(1.0)) < 1e-12);
    CHECK(std::abs(state.psi_internal[1]) < 1e-12);
    auto res = check_tail_state(g0, state);
    CHECK(res.current_law < 1e-12);
    CHECK(res.voltage_law < 1e-12);
    CHECK(res.fixed_point < 1e-10);
}

TEST_CASE("random inflows satisfy both Kirchhoff laws across the sweep") {
    for (const auto& sg : sweep_graphs(20)) {
        auto g0 = remove_sinks(sg.graph, sg.sinks);
        std::vector<Complex> alphas;
        for (std::size_t i = 0; i < g0.tail_vertices().size(); ++i) {
            alphas.emplace_back(std::sin(0.9 * static_cast<double>(i) + 0.2),
                                std::cos(1.7 * static_cast<double>(i)));
        }
        auto state = tail_stationary_state(g0, alphas);
        auto res = check_tail_state(g0, state);
        CHECK(res.current_law < 1e-12);
        CHECK(res.voltage_law < 1e-12);
        CHECK(res.antisymmetry < 1e-12);
        CHECK(res.fixed_point < 1e-10);
    }
}

TEST_CASE("tail solver wants exactly one inflow per tail") {
    auto g0 = square();
    CHECK_THROWS_AS(tail_stationary_state(g0, {Complex(1.0)}), std::invalid_argument);
}
