#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <functional>

#include "odholo/errors.hpp"

namespace odholo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Relative singular-value cutoff used for all rank decisions.
/// Rank cutoffs are relative (s_i > relative_cutoff * s_max) so that rank
/// decisions stay scale-free for long, norm-shrinking sigma products.
struct RankTolerance {
    double relative_cutoff = 1e-10;
};

struct SvdResult {
    ComplexMatrix u;               // columns orthonormal
    RealVector singular_values;    // descending
    ComplexMatrix v;               // columns orthonormal, M = u * diag(s) * v^dag
};

bool is_finite(const ComplexMatrix& m);

/// Largest |entry|; zero for empty matrices.
double max_abs(const ComplexMatrix& m);

/// Full SVD, M = U diag(s) V^dag. Throws KernelError on non-convergence or
/// non-finite input.
SvdResult svd(const ComplexMatrix& m);

/// Polar (partial-isometry) factor of a square matrix:
///   Z = U diag(s) V^dag  ->  U diag(1 if s_i > cut else 0) V^dag,
/// with cut = tol.relative_cutoff * s_max. The zero matrix maps to the zero
/// matrix; a vanished input is reported through rank 0 downstream, never as
/// an error. Rejects rectangular input.
ComplexMatrix phi_map(const ComplexMatrix& z, RankTolerance tol = {});

/// Number of singular values above the relative cutoff; 0 for the zero matrix.
std::size_t numerical_rank(const ComplexMatrix& m, RankTolerance tol = {});

/// max|M^dag M - I| <= eps. Rejects rectangular input.
bool is_unitary(const ComplexMatrix& m, double eps);

/// exp(A) for anti-Hermitian A, exactly unitary by construction
/// (eigendecomposition of -iA).
ComplexMatrix exp_antihermitian(const ComplexMatrix& a);

/// exp(-i t H) for Hermitian H.
ComplexMatrix exp_minus_i_hermitian(const ComplexMatrix& h, double t);

/// Adaptive Simpson quadrature; recursion depth capped, absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12);

}  // namespace odholo
