#pragma once

#include <string>
#include <vector>

#include "sinkwalk/graph.hpp"

namespace sinkwalk {

/// Tolerances for the cross-check bundle; defaults are the contract values.
struct Tolerances {
    double unitarity = 1e-12;
    double chain_condition = 1e-12;
    double spectral_radius_slack = 1e-10;
    double submatrix_identity = 1e-12;
    double eigen_residual = 1e-10;
    double dims_eig_tol = 1e-8;
    double projector_distance = 1e-8;
    double projector_idempotent = 1e-10;
    double commutes_with_e = 1e-10;
    double norm_accounting = 1e-10;
    double survival_agreement = 1e-8;
    double kirchhoff_residual = 1e-12;
    double tail_fixed_point = 1e-10;
    double rw_survival = 1e-6;
    double unit_circle = 1e-8;  // |lambda| >= 1 - unit_circle classifies as unit
};

struct CheckResult {
    std::string name;
    double value;      // measured residual / distance
    double tolerance;
    bool pass;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool pass = true;

    void add(std::string name, double value, double tolerance);
};

/// Runs every independent cross-check on one sinked graph: structural
/// operator identities, combinatorial vs numeric attractor data, survival
/// agreement across the three routes, norm accounting over a run, the
/// random-walk contrast, and the Kirchhoff tail solve.
VerifyReport verify_graph(const SymmetricDigraph& g, const std::vector<VertexId>& sinks,
                          const Tolerances& tol = {});

}  // namespace sinkwalk
