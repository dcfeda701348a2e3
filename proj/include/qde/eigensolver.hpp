#pragma once

#include "qde/matrix.hpp"

namespace qde {

/**
 * @brief Eigen-decomposition of a dense complex matrix at working precision.
 *
 * Computed with a shifted QR iteration on the Hessenberg form followed by
 * Schur back-substitution for the eigenvectors. Eigenvalues are returned in
 * a deterministic order (ascending magnitude, then ascending argument) and
 * every pair is certified by the relative residual ||A v - lambda v|| / ||v||.
 */
struct EigenResult {
    std::vector<MpComplex> values;  // deterministic order
    Mat<MpComplex> vectors;         // matching columns, unit 2-norm
    MpReal max_residual;            // largest certified residual
};

EigenResult eigen_decompose(const Mat<MpComplex>& a);

/// Smallest pairwise distance |lambda_i - lambda_j| over i < j.
MpReal eigenvalue_gap(const std::vector<MpComplex>& values);

}  // namespace qde
