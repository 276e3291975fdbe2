#pragma once

#include <vector>

#include "sinkwalk/operators.hpp"

namespace sinkwalk {

struct SpectrumReport {
    ComplexVector eigenvalues;        // descending modulus
    std::vector<int> unit_circle;     // indices with |lambda| >= 1 - unit_tol
    double spectral_radius;
    double r_max;                     // largest modulus strictly below the cut; 0 if none
    std::vector<int> defective;       // unit clusters whose nullity undershoots multiplicity
    double unit_tol;
};

/// Full eigendecomposition of E (Schur-based, as Eigen computes it for
/// non-normal matrices). Unit-circle classification at |lambda| >= 1 - unit_tol.
SpectrumReport numeric_spectrum(const ComplexMatrix& e, double unit_tol = 1e-8);

/// Orthogonal projector onto the span of unit-modulus eigenvectors, built
/// per eigenvalue cluster from SVD null spaces of (E - lambda I).
ComplexMatrix numeric_attractor_projector(const ComplexMatrix& e, double unit_tol = 1e-8);

/// Operator-norm distance between two projectors (largest singular value
/// of the difference = sine of the largest principal angle).
double subspace_distance(const ComplexMatrix& p1, const ComplexMatrix& p2);

/// Survival probability as || P_numeric phi0 ||^2.
double brute_force_survival(const ComplexMatrix& e, const ComplexVector& phi0,
                            double unit_tol = 1e-8);

}  // namespace sinkwalk
