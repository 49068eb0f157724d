#include "odholo/numkernel.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace odholo {

bool is_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

double max_abs(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

namespace {

std::string shape_of(const ComplexMatrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols();
    return os.str();
}

}  // namespace

SvdResult svd(const ComplexMatrix& m) {
    if (!is_finite(m)) {
        throw KernelError("svd: non-finite entries in " + shape_of(m) + " matrix");
    }
    Eigen::JacobiSVD<ComplexMatrix> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (dec.info() != Eigen::Success) {
        throw KernelError("svd: decomposition of " + shape_of(m) + " matrix did not converge");
    }
    return SvdResult{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

ComplexMatrix phi_map(const ComplexMatrix& z, RankTolerance tol) {
    if (z.rows() != z.cols()) {
        throw ValidationError("phi_map: input must be square, got " + shape_of(z));
    }
    if (z.size() == 0) return z;
    SvdResult dec = svd(z);
    const double smax = dec.singular_values.size() > 0 ? dec.singular_values(0) : 0.0;
    const double cut = tol.relative_cutoff * smax;
    ComplexMatrix w = ComplexMatrix::Zero(z.rows(), z.cols());
    for (Eigen::Index i = 0; i < dec.singular_values.size(); ++i) {
        if (dec.singular_values(i) > cut && dec.singular_values(i) > 0.0) {
            w += dec.u.col(i) * dec.v.col(i).adjoint();
        }
    }
    return w;
}

std::size_t numerical_rank(const ComplexMatrix& m, RankTolerance tol) {
    if (m.size() == 0) return 0;
    SvdResult dec = svd(m);
    const double smax = dec.singular_values.size() > 0 ? dec.singular_values(0) : 0.0;
    if (smax == 0.0) return 0;
    const double cut = tol.relative_cutoff * smax;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < dec.singular_values.size(); ++i) {
        if (dec.singular_values(i) > cut) ++r;
    }
    return r;
}

bool is_unitary(const ComplexMatrix& m, double eps) {
    if (m.rows() != m.cols()) {
        throw ValidationError("is_unitary: input must be square, got " + shape_of(m));
    }
    ComplexMatrix defect = m.adjoint() * m - ComplexMatrix::Identity(m.cols(), m.cols());
    return max_abs(defect) <= eps;
}

ComplexMatrix exp_antihermitian(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) {
        throw ValidationError("exp_antihermitian: input must be square, got " + shape_of(a));
    }
    const Complex mi(0.0, -1.0);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ComplexMatrix(mi * a));
    if (es.info() != Eigen::Success) {
        throw KernelError("exp_antihermitian: eigendecomposition failed for " + shape_of(a));
    }
    ComplexVector phases(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::exp(Complex(0.0, es.eigenvalues()(k)));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix exp_minus_i_hermitian(const ComplexMatrix& h, double t) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    if (es.info() != Eigen::Success) {
        throw KernelError("exp_minus_i_hermitian: eigendecomposition failed for " + shape_of(h));
    }
    ComplexVector phases(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::exp(Complex(0.0, -t * es.eigenvalues()(k)));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                   double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson(a, fa, b, fb, fm);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

}  // namespace odholo
