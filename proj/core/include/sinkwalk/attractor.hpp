#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sinkwalk/graph.hpp"
#include "sinkwalk/operators.hpp"

namespace sinkwalk {

/// A combinatorial flow on the internal arcs. Plus-kind flows are
/// antisymmetric under the flip and satisfy E xi = xi; minus-kind flows are
/// symmetric and satisfy E xi = -xi. Both lie in ker d1.
struct FlowVector {
    enum class Kind { plus, minus };
    Kind kind;
    ComplexVector carrier;
    std::vector<ArcId> walk;  // generating arc sequence
};

/// Anchor for the eta construction: a self-loop or an odd fundamental cycle.
struct Anchor {
    enum class Type { loop, odd_cycle };
    Type type;
    ArcId loop_arc = -1;
    FundamentalCycle cycle;

    static Anchor loop(ArcId a) { return Anchor{Type::loop, a, {}}; }
    static Anchor odd_cycle(FundamentalCycle c) { return Anchor{Type::odd_cycle, -1, std::move(c)}; }
};

/// Symmetric flow joining two frustration sources (self-loops or odd
/// cycles) through a signed walk; lies in ker(1-S) and ker d1, hence in
/// ker(1+E).
struct EtaVector {
    ComplexVector carrier;
    std::string anchor_x;
    std::string anchor_y;
    std::vector<ArcId> walk;
};

/// +1 on the cycle's arcs, -1 on their inverses.
FlowVector xi_plus(const InternalGraph& g0, const FundamentalCycle& cycle);

/// Alternating edge signs along a head-to-tail walk, symmetrised over arc
/// pairs, multiplicities summed when the walk repeats an arc.
FlowVector xi_minus(const InternalGraph& g0, const std::vector<ArcId>& walk);

/// Builds the case-appropriate walk between the anchors (x is the fixed
/// one) and returns its alternating flow. Throws if the pair is not of an
/// admissible shape (e.g. x == y).
EtaVector eta(const InternalGraph& g0, const Anchor& x, const Anchor& y);

/// { xi_plus(c) : c in the basis }; spans ker(1-E).
std::vector<FlowVector> ker_one_minus_E_basis(const InternalGraph& g0, const CycleBasis& basis);

struct MinusBasis {
    std::vector<FlowVector> flows;
    std::vector<EtaVector> etas;
    std::size_t size() const { return flows.size() + etas.size(); }
};

/// Case-dependent spanning set of ker(1+E):
///   A: xi_minus over all cycles;
///   B: xi_minus over even cycles + eta(c*, c) over other odd cycles;
///   C: xi_minus over all cycles + eta(a*, a) over other loops;
///   D: xi_minus over even cycles + eta(a*, y) over odd cycles and other loops.
/// The anchors c* / a* are the least-id odd cycle / least-id loop.
MinusBasis ker_one_plus_E_basis(const InternalGraph& g0, const CycleBasis& basis);

struct LiftedEigenpair {
    RealVector f;       // interior-supported eigenvector of T, unit norm
    double mu;          // its eigenvalue, |mu| < 1
    double theta;       // arccos(mu)
    ComplexVector phi_plus;   // (1 - e^{+i theta} S) d1* f
    ComplexVector phi_minus;  // (1 - e^{-i theta} S) d1* f
};

/// Orthonormal bases of { f : T f = mu f, f = 0 on the boundary } for each
/// eigenvalue mu of T with |mu| < 1. Eigenvalues are clustered at
/// `cluster_tol`; the eigenspace/coordinate-subspace intersection uses a
/// singular-value threshold of `rank_tol`.
std::vector<std::pair<double, RealVector>> interior_dirichlet_eigenpairs(
    const RealMatrix& t, const std::vector<VertexId>& boundary,
    double cluster_tol = 1e-9, double rank_tol = 1e-9);

/// Lifts an interior Dirichlet eigenpair to the conjugate pair of
/// E-eigenvectors with eigenvalues e^{+-i arccos(mu)}.
LiftedEigenpair lift(const RealVector& f, double mu, const InternalGraph& g0);

struct EigenBlock {
    Complex eigenvalue;
    ComplexMatrix vectors;  // orthonormal columns
};

struct AttractorBasis {
    CaseLabel case_label;
    std::vector<LiftedEigenpair> t_part;
    std::vector<FlowVector> k_part;
    MinusBasis minus_part;
    /// Orthonormalised eigenblocks, in order: +1 block, -1 block, then
    /// e^{+-i theta} pairs by decreasing mu. Blocks are mutually orthogonal.
    std::vector<EigenBlock> blocks;
    ComplexMatrix projector;  // orthogonal projector onto the attractor space

    std::size_t dimension() const;
};

AttractorBasis attractor_basis(const InternalGraph& g0);
AttractorBasis attractor_basis(const SymmetricDigraph& g, const std::vector<VertexId>& sinks);

struct SurvivalBreakdown {
    double gamma;
    double t_block;
    double k_block;
    double minus_block;
};

/// gamma = || P_c phi0 ||^2 with the per-block contributions.
SurvivalBreakdown survival_spectral(const AttractorBasis& basis, const ArcVector& phi0);

struct DimensionReport {
    CaseLabel case_label;
    int predicted_plus;
    int predicted_minus;
    int numeric_plus;
    int numeric_minus;
    bool match;
};

/// Closed-form dimensions of ker(1 -+ E) against eigenvalue counts of the
/// numeric spectrum (threshold `eig_tol` around +-1).
DimensionReport dimension_report(const InternalGraph& g0, double eig_tol = 1e-8);

}  // namespace sinkwalk
