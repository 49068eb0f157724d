#pragma once

#include <random>

#include "odholo/holonomy.hpp"
#include "odholo/subspaces.hpp"

namespace odholo::testing {

/// eta = 3, all n_l = 2; sigma^{13}, sigma^{21}, sigma^{32} vanish and the
/// remaining off-diagonal blocks equal E = [[0,0],[1,0]] with the diagonal
/// blocks its adjoint. S_tot is exactly unitary, every diagonal block has
/// rank 1, and every strictly off-diagonal gamma product vanishes exactly.
inline SigmaTable counterexample_table() {
    ComplexMatrix e(2, 2), z(2, 2);
    e << 0, 0, 1, 0;
    z.setZero();
    ComplexMatrix ed = e.adjoint();
    std::vector<std::vector<ComplexMatrix>> blocks = {
        {ed, e, z},
        {z, ed, e},
        {e, z, ed},
    };
    return SigmaTable::from_blocks({2, 2, 2}, std::move(blocks), 1e-12);
}

inline ComplexMatrix random_complex(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    ComplexMatrix g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) g(i, j) = Complex(nd(rng), nd(rng));
    }
    return g;
}

inline ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    ComplexMatrix q = phi_map(random_complex(n, n, rng));
    return q;
}

/// Random unitary with all diagonal blocks zero, by alternating projections
/// (zero the blocks, restore unitarity with the polar factor). Converges in
/// a few dozen iterations for the dimension patterns used here.
inline SigmaTable random_zero_diagonal_table(const std::vector<std::size_t>& dims,
                                             std::mt19937_64& rng) {
    std::size_t n = 0;
    for (std::size_t d : dims) n += d;
    for (int attempt = 0; attempt < 8; ++attempt) {
        ComplexMatrix u = random_unitary(n, rng);
        for (int it = 0; it < 2000; ++it) {
            double diag_norm = 0.0;
            std::size_t off = 0;
            for (std::size_t d : dims) {
                diag_norm = std::max(diag_norm, max_abs(ComplexMatrix(u.block(off, off, d, d))));
                u.block(off, off, d, d).setZero();
                off += d;
            }
            u = phi_map(u);
            if (diag_norm < 1e-12) {
                std::vector<std::vector<ComplexMatrix>> blocks(dims.size());
                std::size_t row = 0;
                for (std::size_t k = 0; k < dims.size(); ++k) {
                    std::size_t col = 0;
                    for (std::size_t l = 0; l < dims.size(); ++l) {
                        ComplexMatrix blk = u.block(row, col, dims[k], dims[l]);
                        if (k == l) blk.setZero();
                        blocks[k].push_back(std::move(blk));
                        col += dims[l];
                    }
                    row += dims[k];
                }
                return SigmaTable::from_blocks(dims, std::move(blocks), 1e-9);
            }
        }
    }
    throw InternalConsistencyError("random_zero_diagonal_table: projections did not converge");
}

/// Independent evaluation of all-one-dimensional holonomies: products of
/// endpoint overlaps and connection-integral phase factors, normalized.
/// Connection integrals come from adaptive quadrature of finite-difference
/// derivatives of the curve generator; nothing is shared with the sigma
/// machinery. Integrals are precomputed once per subspace.
class AbelianOracle {
public:
    explicit AbelianOracle(const CurveFamily& c) : curve_(&c) {
        const std::size_t eta = c.eta();
        integrals_.resize(eta);
        for (std::size_t l = 0; l < eta; ++l) {
            integrals_[l] = connection_integral(l);
        }
        overlaps_.resize(eta, std::vector<Complex>(eta));
        for (std::size_t k = 0; k < eta; ++k) {
            for (std::size_t l = 0; l < eta; ++l) {
                overlaps_[k][l] = (column(k, 0.0).adjoint() * column(l, 1.0))(0, 0);
            }
        }
    }

    /// Phi of sigma^{l1 lk} sigma^{lk lk-1} ... sigma^{l2 l1} with
    /// sigma^{kl} = <k(0)|l(1)> exp(-i Int Im <l|dl>).
    Complex holonomy(const std::vector<std::size_t>& seq) const {
        const std::size_t kappa = seq.size();
        Complex z = sigma_scalar(seq[0], seq[kappa - 1]);
        for (std::size_t i = kappa - 1; i >= 1; --i) {
            z *= sigma_scalar(seq[i], seq[i - 1]);
        }
        const double mag = std::abs(z);
        return mag > 1e-12 ? z / mag : Complex(0.0, 0.0);
    }

private:
    ComplexVector column(std::size_t l, double s) const {
        return curve_->decomposition_at(s).frame(l).basis().col(0);
    }

    double connection_integral(std::size_t l) const {
        // integral of Im <l | d_s l>; the real part vanishes for normalized
        // states. The tolerance must sit above the finite-difference noise
        // floor (~1e-12) or the adaptive rule can never terminate early.
        const double h = 1e-4;
        auto integrand = [&](double s) {
            ComplexVector fp1 = column(l, s + h), fm1 = column(l, s - h);
            ComplexVector fp2 = column(l, s + 2 * h), fm2 = column(l, s - 2 * h);
            ComplexVector deriv = (8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * h);
            return (column(l, s).adjoint() * deriv)(0, 0).imag();
        };
        return adaptive_simpson(integrand, 0.0, 1.0, 1e-11);
    }

    Complex sigma_scalar(std::size_t k, std::size_t l) const {
        return overlaps_[k][l] * std::exp(Complex(0.0, -integrals_[l]));
    }

    const CurveFamily* curve_;
    std::vector<double> integrals_;
    std::vector<std::vector<Complex>> overlaps_;
};

}  // namespace odholo::testing
