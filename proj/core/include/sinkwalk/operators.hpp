#pragma once

#include <complex>

#include <Eigen/Dense>

#include "sinkwalk/graph.hpp"

namespace sinkwalk {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Which arc set a state lives on: the ambient graph or the internal graph.
enum class ArcDomain { full, internal };

struct ArcVector {
    ArcDomain domain;
    ComplexVector values;
};

using VertexVector = ComplexVector;  // amplitudes over the internal vertices

ArcVector make_delta(ArcDomain domain, ArcId arc, ArcId arc_count);

/// One Grover step on the ambient arc space:
/// (U psi)(a) = -psi(inv a) + (2/deg(o(a))) sum_{t(b)=o(a)} psi(b).
/// Preserves the l2 norm.
ArcVector apply_grover(const SymmetricDigraph& g, const ArcVector& psi);

/// The flip (S psi)(a) = psi(inv a); an involution fixing self-loops.
ArcVector apply_flip(const SymmetricDigraph& g, const ArcVector& psi);

/// (d1 psi)(v) = (1/sqrt(dt(v))) sum_{t(a)=v} psi(a), with the ambient degree.
VertexVector apply_d1(const InternalGraph& g0, const ArcVector& psi);

/// Adjoint of d1 w.r.t. the standard inner products:
/// (d1* f)(a) = f(t(a)) / sqrt(dt(t(a))).
ArcVector apply_d1_adjoint(const InternalGraph& g0, const VertexVector& f);

/// (b2 Psi)(a) = sum of Psi(c) over cycles c containing a.
ArcVector apply_boundary2(const InternalGraph& g0, const CycleBasis& basis,
                          const ComplexVector& cycle_coefficients);

/// (b2* psi)(c) = sum of psi(a) over arcs a of c.
ComplexVector apply_boundary2_adjoint(const InternalGraph& g0, const CycleBasis& basis,
                                      const ArcVector& psi);

/// Dense matrix of the Grover step on the ambient arc space.
ComplexMatrix build_grover_matrix(const SymmetricDigraph& g);

/// Dense matrix of the flip on the given graph's arc space.
ComplexMatrix build_flip_matrix(const SymmetricDigraph& g);

/// Sink-truncated evolution E on the internal arc space. The coin
/// denominators are the ambient degrees, so E is exactly the principal
/// submatrix of the ambient Grover matrix on the surviving arcs.
ComplexMatrix build_E(const InternalGraph& g0);
ComplexMatrix build_E(const SymmetricDigraph& g, const std::vector<VertexId>& sinks);

/// Dirichlet-cut random walk operator, real symmetric:
/// T[u,v] = #(arcs v->u) / sqrt(dt(u) dt(v)), self-loops on the diagonal.
RealMatrix build_T(const InternalGraph& g0);

/// P' = D^{-1/2} T D^{1/2}: rows hold 1/dt(u) per neighbour.
RealMatrix build_dirichlet_transition(const InternalGraph& g0);

RealMatrix build_d1_matrix(const InternalGraph& g0);
RealMatrix build_boundary2_matrix(const InternalGraph& g0, const CycleBasis& basis);

/// max over cycles c of || d1 (I - S) b2 delta_c ||; zero in exact arithmetic.
double check_chain_condition(const InternalGraph& g0, const CycleBasis& basis);

}  // namespace sinkwalk
