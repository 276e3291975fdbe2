#include "sinkwalk/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace sinkwalk {

namespace {

void require_domain(const ArcVector& psi, ArcDomain expected, ArcId arc_count,
                    const char* where) {
    if (psi.domain != expected || psi.values.size() != arc_count) {
        throw std::invalid_argument(std::string(where) + ": arc vector domain mismatch");
    }
}

}  // namespace

ArcVector make_delta(ArcDomain domain, ArcId arc, ArcId arc_count) {
    if (arc < 0 || arc >= arc_count) {
        throw std::invalid_argument("delta arc index out of range");
    }
    ArcVector v{domain, ComplexVector::Zero(arc_count)};
    v.values[arc] = 1.0;
    return v;
}

ArcVector apply_grover(const SymmetricDigraph& g, const ArcVector& psi) {
    require_domain(psi, ArcDomain::full, g.arc_count(), "apply_grover");
    // per-vertex sums of incoming amplitudes
    ComplexVector vertex_sum = ComplexVector::Zero(g.vertex_count());
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        vertex_sum[g.terminus(a)] += psi.values[a];
    }
    ArcVector out{ArcDomain::full, ComplexVector(g.arc_count())};
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        VertexId o = g.origin(a);
        out.values[a] = -psi.values[g.inverse(a)] + (2.0 / g.degree(o)) * vertex_sum[o];
    }
    return out;
}

ArcVector apply_flip(const SymmetricDigraph& g, const ArcVector& psi) {
    if (psi.values.size() != g.arc_count()) {
        throw std::invalid_argument("apply_flip: arc vector domain mismatch");
    }
    ArcVector out{psi.domain, ComplexVector(g.arc_count())};
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        out.values[a] = psi.values[g.inverse(a)];
    }
    return out;
}

VertexVector apply_d1(const InternalGraph& g0, const ArcVector& psi) {
    const SymmetricDigraph& g = g0.graph();
    require_domain(psi, ArcDomain::internal, g.arc_count(), "apply_d1");
    VertexVector f = VertexVector::Zero(g.vertex_count());
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        f[g.terminus(a)] += psi.values[a];
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        f[v] /= std::sqrt(static_cast<double>(g0.ambient_degree(v)));
    }
    return f;
}

ArcVector apply_d1_adjoint(const InternalGraph& g0, const VertexVector& f) {
    const SymmetricDigraph& g = g0.graph();
    if (f.size() != g.vertex_count()) {
        throw std::invalid_argument("apply_d1_adjoint: vertex vector size mismatch");
    }
    ArcVector out{ArcDomain::internal, ComplexVector(g.arc_count())};
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        VertexId t = g.terminus(a);
        out.values[a] = f[t] / std::sqrt(static_cast<double>(g0.ambient_degree(t)));
    }
    return out;
}

ArcVector apply_boundary2(const InternalGraph& g0, const CycleBasis& basis,
                          const ComplexVector& cycle_coefficients) {
    if (cycle_coefficients.size() != static_cast<Eigen::Index>(basis.cycles.size())) {
        throw std::invalid_argument("apply_boundary2: coefficient count mismatch");
    }
    ArcVector out{ArcDomain::internal, ComplexVector::Zero(g0.arc_count())};
    for (std::size_t c = 0; c < basis.cycles.size(); ++c) {
        for (ArcId a : basis.cycles[c].arcs) {
            out.values[a] += cycle_coefficients[static_cast<Eigen::Index>(c)];
        }
    }
    return out;
}

ComplexVector apply_boundary2_adjoint(const InternalGraph& g0, const CycleBasis& basis,
                                      const ArcVector& psi) {
    require_domain(psi, ArcDomain::internal, g0.arc_count(), "apply_boundary2_adjoint");
    ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(basis.cycles.size()));
    for (std::size_t c = 0; c < basis.cycles.size(); ++c) {
        for (ArcId a : basis.cycles[c].arcs) {
            out[static_cast<Eigen::Index>(c)] += psi.values[a];
        }
    }
    return out;
}

ComplexMatrix build_grover_matrix(const SymmetricDigraph& g) {
    ComplexMatrix u = ComplexMatrix::Zero(g.arc_count(), g.arc_count());
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        VertexId o = g.origin(a);
        double coin = 2.0 / g.degree(o);
        for (ArcId b = 0; b < g.arc_count(); ++b) {
            if (g.terminus(b) == o) u(a, b) += coin;
        }
        u(a, g.inverse(a)) -= 1.0;
    }
    return u;
}

ComplexMatrix build_flip_matrix(const SymmetricDigraph& g) {
    ComplexMatrix s = ComplexMatrix::Zero(g.arc_count(), g.arc_count());
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        s(a, g.inverse(a)) = 1.0;
    }
    return s;
}

ComplexMatrix build_E(const InternalGraph& g0) {
    const SymmetricDigraph& g = g0.graph();
    ComplexMatrix e = ComplexMatrix::Zero(g.arc_count(), g.arc_count());
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        VertexId o = g.origin(a);
        double coin = 2.0 / g0.ambient_degree(o);
        for (ArcId b = 0; b < g.arc_count(); ++b) {
            if (g.terminus(b) == o) e(a, b) += coin;
        }
        e(a, g.inverse(a)) -= 1.0;
    }
    return e;
}

ComplexMatrix build_E(const SymmetricDigraph& g, const std::vector<VertexId>& sinks) {
    return build_E(remove_sinks(g, sinks));
}

RealMatrix build_T(const InternalGraph& g0) {
    const SymmetricDigraph& g = g0.graph();
    RealMatrix t = RealMatrix::Zero(g.vertex_count(), g.vertex_count());
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        VertexId o = g.origin(a), u = g.terminus(a);
        t(u, o) += 1.0 / std::sqrt(static_cast<double>(g0.ambient_degree(u)) *
                                   static_cast<double>(g0.ambient_degree(o)));
    }
    return t;
}

RealMatrix build_dirichlet_transition(const InternalGraph& g0) {
    const SymmetricDigraph& g = g0.graph();
    RealMatrix t = build_T(g0);
    RealMatrix p(g.vertex_count(), g.vertex_count());
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            p(u, v) = t(u, v) * std::sqrt(static_cast<double>(g0.ambient_degree(v)) /
                                          static_cast<double>(g0.ambient_degree(u)));
        }
    }
    return p;
}

RealMatrix build_d1_matrix(const InternalGraph& g0) {
    const SymmetricDigraph& g = g0.graph();
    RealMatrix d = RealMatrix::Zero(g.vertex_count(), g.arc_count());
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        VertexId t = g.terminus(a);
        d(t, a) += 1.0 / std::sqrt(static_cast<double>(g0.ambient_degree(t)));
    }
    return d;
}

RealMatrix build_boundary2_matrix(const InternalGraph& g0, const CycleBasis& basis) {
    RealMatrix b = RealMatrix::Zero(g0.arc_count(), static_cast<Eigen::Index>(basis.cycles.size()));
    for (std::size_t c = 0; c < basis.cycles.size(); ++c) {
        for (ArcId a : basis.cycles[c].arcs) {
            b(a, static_cast<Eigen::Index>(c)) += 1.0;
        }
    }
    return b;
}

double check_chain_condition(const InternalGraph& g0, const CycleBasis& basis) {
    if (basis.cycles.empty()) return 0.0;
    RealMatrix d1 = build_d1_matrix(g0);
    RealMatrix b2 = build_boundary2_matrix(g0, basis);
    RealMatrix s = build_flip_matrix(g0.graph()).real();
    RealMatrix composite =
        d1 * (RealMatrix::Identity(g0.arc_count(), g0.arc_count()) - s) * b2;
    double worst = 0.0;
    for (Eigen::Index c = 0; c < composite.cols(); ++c) {
        worst = std::max(worst, composite.col(c).norm());
    }
    return worst;
}

}  // namespace sinkwalk
