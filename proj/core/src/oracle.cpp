#include "sinkwalk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace sinkwalk {

namespace {

// Unit-modulus eigenvalues grouped into clusters of nearby values.
std::vector<std::vector<int>> unit_clusters(const ComplexVector& eigenvalues,
                                            const std::vector<int>& unit, double tol) {
    std::vector<std::vector<int>> clusters;
    std::vector<int> remaining = unit;
    while (!remaining.empty()) {
        Complex centre = eigenvalues[remaining.front()];
        std::vector<int> cluster;
        std::vector<int> rest;
        for (int i : remaining) {
            if (std::abs(eigenvalues[i] - centre) <= tol) {
                cluster.push_back(i);
            } else {
                rest.push_back(i);
            }
        }
        clusters.push_back(std::move(cluster));
        remaining = std::move(rest);
    }
    return clusters;
}

}  // namespace

SpectrumReport numeric_spectrum(const ComplexMatrix& e, double unit_tol) {
    if (e.rows() != e.cols()) {
        throw std::invalid_argument("numeric_spectrum: matrix must be square");
    }
    SpectrumReport report;
    report.unit_tol = unit_tol;
    report.spectral_radius = 0.0;
    report.r_max = 0.0;
    if (e.rows() == 0) {
        report.eigenvalues = ComplexVector(0);
        return report;
    }
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(e, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("numeric_spectrum: eigensolver failed");
    }
    ComplexVector w = solver.eigenvalues();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(w.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        double ma = std::abs(w[a]), mb = std::abs(w[b]);
        if (ma != mb) return ma > mb;
        if (w[a].real() != w[b].real()) return w[a].real() > w[b].real();
        return w[a].imag() > w[b].imag();
    });
    report.eigenvalues = ComplexVector(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) report.eigenvalues[i] = w[order[static_cast<std::size_t>(i)]];

    for (int i = 0; i < report.eigenvalues.size(); ++i) {
        double m = std::abs(report.eigenvalues[i]);
        report.spectral_radius = std::max(report.spectral_radius, m);
        if (m >= 1.0 - unit_tol) {
            report.unit_circle.push_back(i);
        } else {
            report.r_max = std::max(report.r_max, m);
        }
    }

    // geometric multiplicity per unit cluster via SVD nullity
    auto clusters = unit_clusters(report.eigenvalues, report.unit_circle, 10 * unit_tol);
    for (const auto& cluster : clusters) {
        Complex centre = 0.0;
        for (int i : cluster) centre += report.eigenvalues[i];
        centre /= static_cast<double>(cluster.size());
        ComplexMatrix shifted = e - centre * ComplexMatrix::Identity(e.rows(), e.cols());
        Eigen::JacobiSVD<ComplexMatrix> svd(shifted);
        int nullity = 0;
        for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
            if (svd.singularValues()[k] <= unit_tol) ++nullity;
        }
        if (nullity < static_cast<int>(cluster.size())) {
            report.defective.insert(report.defective.end(), cluster.begin(), cluster.end());
        }
    }
    return report;
}

ComplexMatrix numeric_attractor_projector(const ComplexMatrix& e, double unit_tol) {
    SpectrumReport report = numeric_spectrum(e, unit_tol);
    ComplexMatrix stacked(e.rows(), static_cast<Eigen::Index>(report.unit_circle.size()));
    Eigen::Index col = 0;

    auto clusters = unit_clusters(report.eigenvalues, report.unit_circle, 10 * unit_tol);
    for (const auto& cluster : clusters) {
        Complex centre = 0.0;
        for (int i : cluster) centre += report.eigenvalues[i];
        centre /= static_cast<double>(cluster.size());
        ComplexMatrix shifted = e - centre * ComplexMatrix::Identity(e.rows(), e.cols());
        Eigen::JacobiSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
        Eigen::Index nullity = 0;
        for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
            if (svd.singularValues()[k] <= unit_tol) ++nullity;
        }
        if (nullity != static_cast<Eigen::Index>(cluster.size())) {
            throw std::runtime_error(
                "numeric_attractor_projector: defective unit eigenvalue cluster");
        }
        stacked.middleCols(col, nullity) = svd.matrixV().rightCols(nullity);
        col += nullity;
    }
    if (col == 0) {
        return ComplexMatrix::Zero(e.rows(), e.cols());
    }
    // cross-cluster vectors are orthogonal up to numerics; one QR tidies them
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(stacked.leftCols(col));
    if (qr.rank() < col) {
        throw std::runtime_error("numeric_attractor_projector: ill-conditioned eigenbasis, rank " +
                                 std::to_string(qr.rank()) + " of " + std::to_string(col));
    }
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(e.rows(), col);
    return q * q.adjoint();
}

double subspace_distance(const ComplexMatrix& p1, const ComplexMatrix& p2) {
    if (p1.rows() != p2.rows() || p1.cols() != p2.cols()) {
        throw std::invalid_argument("subspace_distance: dimension mismatch");
    }
    if (p1.rows() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(p1 - p2);
    return svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
}

double brute_force_survival(const ComplexMatrix& e, const ComplexVector& phi0, double unit_tol) {
    if (phi0.size() != e.rows()) {
        throw std::invalid_argument("brute_force_survival: state dimension mismatch");
    }
    if (e.rows() == 0) return 0.0;
    ComplexMatrix p = numeric_attractor_projector(e, unit_tol);
    return (p * phi0).squaredNorm();
}

}  // namespace sinkwalk
