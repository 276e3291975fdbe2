#include <doctest.h>

#include <cmath>

#include "sinkwalk/attractor.hpp"
#include "sinkwalk/oracle.hpp"
#include "sinkwalk/random_graphs.hpp"
#include "support.hpp"

using namespace sinkwalk;
using namespace sinkwalk::testing;

namespace {

const Complex kLambdaPlus(1.0 / 3.0, std::sqrt(8.0) / 3.0);

InternalGraph square() { return remove_sinks(looped_square(), looped_square_sinks()); }

}  // namespace

TEST_CASE("xi_plus carries +-1 on the cycle pair and is fixed by E") {
    auto g0 = square();
    auto basis = fundamental_cycle_basis(g0);
    auto xi = xi_plus(g0, basis.cycles[0]);
    // +1 on a1..a4, -1 on the reverses, 0 on the loops
    for (ArcId a : {0, 2, 4, 6}) CHECK(xi.carrier[a] == Complex(1.0));
    for (ArcId a : {1, 3, 5, 7}) CHECK(xi.carrier[a] == Complex(-1.0));
    CHECK(xi.carrier[8] == Complex(0.0));
    CHECK(xi.carrier[9] == Complex(0.0));

    auto e = build_E(g0);
    CHECK((e * xi.carrier - xi.carrier).norm() < 1e-12);
    auto d1 = apply_d1(g0, ArcVector{ArcDomain::internal, xi.carrier});
    CHECK(d1.norm() == 0.0);
}

TEST_CASE("xi_minus alternates edge signs around the square") {
    auto g0 = square();
    auto basis = fundamental_cycle_basis(g0);
    auto xi = xi_minus(g0, basis.cycles[0].arcs);
    // cycle (a3, a4, a1, a2): even positions a3, a1 get +, odd a4, a2 get -
    for (ArcId a : {4, 5, 0, 1}) CHECK(xi.carrier[a] == Complex(1.0));
    for (ArcId a : {6, 7, 2, 3}) CHECK(xi.carrier[a] == Complex(-1.0));
    auto e = build_E(g0);
    CHECK((e * xi.carrier + xi.carrier).norm() < 1e-12);
}

TEST_CASE("xi_minus rejects a walk that is not chained") {
    auto g0 = square();
    CHECK_THROWS_AS(xi_minus(g0, std::vector<ArcId>{0, 0}), std::invalid_argument);
}

TEST_CASE("even cycles are flat for d1; odd cycles leave one frustration of 2") {
    for (const auto& sg : sweep_graphs(24)) {
        auto g0 = remove_sinks(sg.graph, sg.sinks);
        auto basis = fundamental_cycle_basis(g0);
        for (const auto& c : basis.cycles) {
            auto xi = xi_minus(g0, c.arcs);
            auto f = apply_d1(g0, ArcVector{ArcDomain::internal, xi.carrier});
            if (!c.odd()) {
                CHECK(f.norm() < 1e-14);
            } else {
                VertexId u = g0.graph().origin(c.arcs.front());
                Complex expected =
                    2.0 / std::sqrt(static_cast<double>(g0.ambient_degree(u)));
                CHECK(std::abs(f[u] - expected) < 1e-14);
                f[u] = 0.0;
                CHECK(f.norm() < 1e-14);
            }
        }
    }
}

TEST_CASE("eta between the two loops reproduces the square's minus eigenvector") {
    auto g0 = square();
    auto h = eta(g0, Anchor::loop(kLoopedSquareB1Internal),
                 Anchor::loop(kLoopedSquareB2Internal));
    ComplexVector expected = ComplexVector::Zero(10);
    expected[8] = 1.0;                    // b1
    expected[0] = expected[1] = -1.0;     // -(a1 + ~a1)
    expected[2] = expected[3] = 1.0;      // +(a2 + ~a2)
    expected[9] = -1.0;                   // -b2
    CHECK((h.carrier - expected).norm() < 1e-15);
    CHECK(h.walk == std::vector<ArcId>{8, 0, 2, 9});

    auto e = build_E(g0);
    CHECK((e * h.carrier + h.carrier).norm() < 1e-12);
}

TEST_CASE("eta through a loop sitting on an odd cycle doubles the loop amplitude") {
    // triangle with a loop at vertex 0 and a sink off vertex 2
    auto g = SymmetricDigraph::build(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}, {0});
    auto g0 = remove_sinks(g, {3});
    auto basis = fundamental_cycle_basis(g0);
    REQUIRE(basis.odd.size() == 1);
    auto h = eta(g0, Anchor::loop(g0.graph().loops().front()),
                 Anchor::odd_cycle(basis.cycles[basis.odd.front()]));
    ArcId loop = g0.graph().loops().front();
    CHECK(std::abs(h.carrier[loop] - Complex(2.0)) < 1e-15);
    auto e = build_E(g0);
    CHECK((e * h.carrier + h.carrier).norm() < 1e-12);
    auto d1 = apply_d1(g0, ArcVector{ArcDomain::internal, h.carrier});
    CHECK(d1.norm() < 1e-14);
}

TEST_CASE("eta rejects inadmissible anchors") {
    auto g0 = square();
    CHECK_THROWS_AS(eta(g0, Anchor::loop(kLoopedSquareB1Internal),
                        Anchor::loop(kLoopedSquareB1Internal)),
                    std::invalid_argument);
    CHECK_THROWS_AS(eta(g0, Anchor::loop(0), Anchor::loop(kLoopedSquareB1Internal)),
                    std::invalid_argument);
    auto basis = fundamental_cycle_basis(g0);
    CHECK_THROWS_AS(eta(g0, Anchor::odd_cycle(basis.cycles[0]),
                        Anchor::loop(kLoopedSquareB1Internal)),
                    std::invalid_argument);  // even cycle is not a valid anchor
}

TEST_CASE("plus kernel basis has one private non-tree arc per vector") {
    auto g0 = square();
    auto vectors = ker_one_minus_E_basis(g0, fundamental_cycle_basis(g0));
    CHECK(vectors.size() == 1);

    auto k4 = SymmetricDigraph::build(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}},
                                      {});
    auto k0 = remove_sinks(k4, {4});
    CHECK(ker_one_minus_E_basis(k0, fundamental_cycle_basis(k0)).size() == 3);

    auto tree = SymmetricDigraph::build(4, {{0, 1}, {1, 2}, {1, 3}}, {});
    auto t0 = remove_sinks(tree, {3});
    CHECK(ker_one_minus_E_basis(t0, fundamental_cycle_basis(t0)).empty());
}

TEST_CASE("minus kernel basis follows the case table") {
    auto g0 = square();  // case C, one even cycle, two loops
    auto minus = ker_one_plus_E_basis(g0, fundamental_cycle_basis(g0));
    CHECK(minus.flows.size() == 1);
    CHECK(minus.etas.size() == 1);

    // triangle, case B with a single odd cycle: even part empty, no etas
    auto tri = SymmetricDigraph::build(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}, {});
    auto tri0 = remove_sinks(tri, {3});
    auto tri_minus = ker_one_plus_E_basis(tri0, fundamental_cycle_basis(tri0));
    CHECK(tri_minus.size() == 0);

    // bipartite 4-cycle, case A: one vector
    auto c4 = SymmetricDigraph::build(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}}, {});
    auto c40 = remove_sinks(c4, {4});
    auto c4_minus = ker_one_plus_E_basis(c40, fundamental_cycle_basis(c40));
    CHECK(c4_minus.flows.size() == 1);
    CHECK(c4_minus.etas.empty());
}

TEST_CASE("minus kernel vectors all satisfy E v = -v across the sweep") {
    for (const auto& sg : sweep_graphs(40)) {
        auto g0 = remove_sinks(sg.graph, sg.sinks);
        auto e = build_E(g0);
        auto minus = ker_one_plus_E_basis(g0, fundamental_cycle_basis(g0));
        for (const auto& v : minus.flows) CHECK((e * v.carrier + v.carrier).norm() < 1e-10);
        for (const auto& v : minus.etas) CHECK((e * v.carrier + v.carrier).norm() < 1e-10);
    }
}

TEST_CASE("interior Dirichlet eigenpairs on the looped square") {
    auto g0 = square();
    auto pairs = interior_dirichlet_eigenpairs(build_T(g0), g0.boundary());
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].first == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    const RealVector& f = pairs[0].second;
    CHECK(std::abs(f[1]) < 1e-12);
    CHECK(std::abs(f[3]) < 1e-12);
    CHECK(std::abs(std::abs(f[0]) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(f[0] * f[2] < 0.0);
}

TEST_CASE("interior support can be unsatisfiable") {
    // 2-vertex internal path, both boundary
    auto g = SymmetricDigraph::build(4, {{0, 1}, {1, 2}, {2, 3}}, {});
    auto g0 = remove_sinks(g, {0, 3});
    auto pairs = interior_dirichlet_eigenpairs(build_T(g0), g0.boundary());
    CHECK(pairs.empty());
}

TEST_CASE("interior pair count matches the numeric non-real unit eigenvalues") {
    for (const auto& sg : sweep_graphs(30)) {
        auto g0 = remove_sinks(sg.graph, sg.sinks);
        auto pairs = interior_dirichlet_eigenpairs(build_T(g0), g0.boundary());
        auto spectrum = numeric_spectrum(build_E(g0));
        int non_real_unit = 0;
        for (int i : spectrum.unit_circle) {
            Complex lambda = spectrum.eigenvalues[i];
            if (std::abs(lambda - Complex(1, 0)) > 1e-8 &&
                std::abs(lambda + Complex(1, 0)) > 1e-8) {
                ++non_real_unit;
            }
        }
        CHECK(static_cast<int>(pairs.size()) * 2 == non_real_unit);
    }
}

TEST_CASE("lift reproduces the looped-square amplitude table") {
    auto g0 = square();
    RealVector f(4);
    f << 1.0, 0.0, -1.0, 0.0;
    auto pair = lift(f, 1.0 / 3.0, g0);
    CHECK(pair.theta == doctest::Approx(std::acos(1.0 / 3.0)).epsilon(1e-14));

    // published amplitudes, internal arc order (a1,~a1,...,b1,b2), up to the
    // 1/sqrt(d) weight of d1*
    Complex L = kLambdaPlus;
    ComplexVector expected(10);
    expected << -L, 1.0, -1.0, L, L, -1.0, 1.0, -L, 1.0 - L, -1.0 + L;
    expected /= std::sqrt(3.0);
    CHECK((pair.phi_plus - expected).norm() < 1e-13);
    CHECK((pair.phi_minus - expected.conjugate()).norm() < 1e-13);
}

TEST_CASE("attractor basis on the looped square matches the published data") {
    auto basis = attractor_basis(looped_square(), looped_square_sinks());
    CHECK(basis.case_label == CaseLabel::C);
    CHECK(basis.dimension() == 5);
    REQUIRE(basis.blocks.size() == 4);
    CHECK(basis.blocks[0].eigenvalue == Complex(1.0, 0.0));
    CHECK(basis.blocks[0].vectors.cols() == 1);
    CHECK(basis.blocks[1].eigenvalue == Complex(-1.0, 0.0));
    CHECK(basis.blocks[1].vectors.cols() == 2);
    CHECK(std::abs(basis.blocks[2].eigenvalue - kLambdaPlus) < 1e-12);
    CHECK(std::abs(basis.blocks[3].eigenvalue - std::conj(kLambdaPlus)) < 1e-12);

    // orthonormalising the minus block leaves (eta + eta') / 4 as the
    // second vector: -+1/4 on the square pairs, +-1/2 on the loops
    ComplexVector second = basis.blocks[1].vectors.col(1);
    ComplexVector expected(10);
    expected << -0.25, -0.25, 0.25, 0.25, 0.25, 0.25, -0.25, -0.25, 0.5, -0.5;
    CHECK((second - expected).norm() < 1e-12);

    const auto& p = basis.projector;
    CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(p.trace().real() - 5.0) < 1e-10);
    auto e = build_E(square());
    CHECK((p * e - e * p).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("survival of the loop delta state is one half") {
    auto g0 = square();
    auto basis = attractor_basis(g0);
    auto phi0 = make_delta(ArcDomain::internal, kLoopedSquareB1Internal, 10);
    auto breakdown = survival_spectral(basis, phi0);
    CHECK(std::abs(breakdown.gamma - 0.5) < 1e-10);
    CHECK(breakdown.k_block == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(breakdown.minus_block - 0.25) < 1e-10);
    CHECK(std::abs(breakdown.t_block - 0.25) < 1e-10);
}

TEST_CASE("survival is 0 orthogonal to the attractor and 1 inside it") {
    auto g0 = square();
    auto basis = attractor_basis(g0);
    // phi0 = (I - P) probe, renormalised
    auto probe = random_state(ArcDomain::internal, 10, 42);
    ComplexVector ortho = probe.values - basis.projector * probe.values;
    ortho /= ortho.norm();
    auto zero = survival_spectral(basis, ArcVector{ArcDomain::internal, ortho});
    CHECK(zero.gamma < 1e-12);

    auto cycles = fundamental_cycle_basis(g0);
    auto xi = xi_plus(g0, cycles.cycles[0]);
    ComplexVector unitxi = xi.carrier / xi.carrier.norm();
    auto one = survival_spectral(basis, ArcVector{ArcDomain::internal, unitxi});
    CHECK(std::abs(one.gamma - 1.0) < 1e-12);
}

TEST_CASE("dimension report across named graphs") {
    auto g0 = square();
    auto r = dimension_report(g0);
    CHECK(r.predicted_plus == 1);
    CHECK(r.predicted_minus == 2);
    CHECK(r.match);

    auto c4 = SymmetricDigraph::build(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}}, {});
    auto rc4 = dimension_report(remove_sinks(c4, {4}));
    CHECK(rc4.predicted_plus == 1);
    CHECK(rc4.predicted_minus == 1);
    CHECK(rc4.match);

    auto tree2 = SymmetricDigraph::build(4, {{0, 1}, {1, 2}, {1, 3}}, {0, 2});
    auto rt = dimension_report(remove_sinks(tree2, {3}));
    CHECK(rt.predicted_plus == 0);
    CHECK(rt.predicted_minus == 1);
    CHECK(rt.match);

    auto k4 = SymmetricDigraph::build(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}},
                                      {});
    auto rk = dimension_report(remove_sinks(k4, {4}));
    CHECK(rk.predicted_plus == 3);
    CHECK(rk.predicted_minus == 2);
    CHECK(rk.match);
}

TEST_CASE("a unitary evolution has a complete combinatorial attractor") {
    // no sinks: P_c must be the identity, built from flows plus the random
    // walk's own unit eigenvectors
    for (auto spec : {looped_square(),
                      SymmetricDigraph::build(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {}),
                      SymmetricDigraph::build(3, {{0, 1}, {1, 2}, {0, 2}}, {})}) {
        auto g0 = remove_sinks(spec, {});
        auto basis = attractor_basis(g0);
        CHECK(static_cast<ArcId>(basis.dimension()) == g0.arc_count());
        CHECK((basis.projector - ComplexMatrix::Identity(g0.arc_count(), g0.arc_count()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
        CHECK(dimension_report(g0).match);
    }
}

TEST_CASE("combinatorial blocks agree with the numeric attractor on the sweep") {
    for (const auto& sg : sweep_graphs(40)) {
        auto g0 = remove_sinks(sg.graph, sg.sinks);
        auto basis = attractor_basis(g0);
        auto e = build_E(g0);
        for (const auto& block : basis.blocks) {
            CHECK((e * block.vectors - block.vectors * block.eigenvalue).cwiseAbs().maxCoeff() <
                  1e-10);
        }
        // distinct eigenvalue blocks are orthogonal without any cross-block
        // orthogonalisation
        for (std::size_t i = 0; i < basis.blocks.size(); ++i) {
            for (std::size_t j = i + 1; j < basis.blocks.size(); ++j) {
                ComplexMatrix overlap =
                    basis.blocks[i].vectors.adjoint() * basis.blocks[j].vectors;
                CHECK(overlap.cwiseAbs().maxCoeff() < 1e-10);
            }
        }
        auto numeric = numeric_attractor_projector(e);
        CHECK(subspace_distance(basis.projector, numeric) < 1e-8);
        CHECK(dimension_report(g0).match);
    }
}
