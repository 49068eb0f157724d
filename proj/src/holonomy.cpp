#include "odholo/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace odholo {

namespace {

double spectral_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> dec(m);
    return dec.singularValues().size() > 0 ? dec.singularValues()(0) : 0.0;
}

ComplexMatrix projector_product(const CurveFamily& c, std::size_t l,
                                std::size_t stride) {
    const std::size_t last = c.samples() - 1;
    ComplexMatrix g = projector(c.sample(0).frame(l));
    std::size_t j = 0;
    while (j < last) {
        j = std::min(j + stride, last);
        g = projector(c.sample(j).frame(l)) * g;
    }
    return g;
}

/// Connection matrix [A]_{ij} = <d_s l^i | l^j> from 5-point finite
/// differences of the generator frames; exactly anti-Hermitian by symmetrization.
ComplexMatrix connection_at(const CurveFamily& c, std::size_t l, double s, double d) {
    ComplexMatrix fp1 = c.decomposition_at(s + d).frame(l).basis();
    ComplexMatrix fm1 = c.decomposition_at(s - d).frame(l).basis();
    ComplexMatrix fp2 = c.decomposition_at(s + 2 * d).frame(l).basis();
    ComplexMatrix fm2 = c.decomposition_at(s - 2 * d).frame(l).basis();
    ComplexMatrix deriv = (8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * d);
    ComplexMatrix f = c.decomposition_at(s).frame(l).basis();
    ComplexMatrix a = deriv.adjoint() * f;
    return 0.5 * (a - a.adjoint());
}

constexpr double kGaussOffset = 0.28867513459481287;  // sqrt(3)/6
constexpr double kCf4A1 = (3.0 - 2.0 * 1.7320508075688772) / 12.0;
constexpr double kCf4A2 = (3.0 + 2.0 * 1.7320508075688772) / 12.0;

/// 4th-order commutator-free transport over the curve grid.
ComplexMatrix transport_gauss4(const CurveFamily& c, std::size_t l) {
    const std::size_t n = c.dims()[l];
    ComplexMatrix t = ComplexMatrix::Identity(n, n);
    const double fd_step = 1e-3;
    for (std::size_t j = 0; j + 1 < c.samples(); ++j) {
        const double s0 = c.grid()[j];
        const double h = c.grid()[j + 1] - s0;
        const double d = std::min(fd_step, 0.25 * h);
        ComplexMatrix a1 = connection_at(c, l, s0 + (0.5 - kGaussOffset) * h, d);
        ComplexMatrix a2 = connection_at(c, l, s0 + (0.5 + kGaussOffset) * h, d);
        ComplexMatrix first = exp_antihermitian(ComplexMatrix(h * (kCf4A2 * a1 + kCf4A1 * a2)));
        ComplexMatrix second = exp_antihermitian(ComplexMatrix(h * (kCf4A1 * a1 + kCf4A2 * a2)));
        t = second * (first * t);
    }
    return t;
}

/// Midpoint-connection transport from inter-sample overlaps; each step is
/// exactly unitary. Throws when a per-step generator is too large for the
/// frames to count as smoothly aligned.
ComplexMatrix transport_midpoint(const CurveFamily& c, std::size_t l) {
    const std::size_t n = c.dims()[l];
    ComplexMatrix t = ComplexMatrix::Identity(n, n);
    for (std::size_t j = 0; j + 1 < c.samples(); ++j) {
        ComplexMatrix o = c.sample(j).frame(l).basis().adjoint() * c.sample(j + 1).frame(l).basis();
        ComplexMatrix gen = 0.5 * (o.adjoint() - o);
        if (spectral_norm(gen) > 0.5) {
            std::ostringstream os;
            os << "gamma_kernel_transport: frames of subspace " << l
               << " are not smoothly aligned near s=" << c.grid()[j]
               << "; regenerate the curve (or realign frames) before transporting";
            throw ValidationError(os.str());
        }
        t = exp_antihermitian(gen) * t;
    }
    return t;
}

/// Chained polar alignment: returns the transported frame of subspace l at
/// s=1, i.e. F~(1) with Gamma_l = F~(1) F(0)^dag. Exactly gauge-equivariant.
ComplexMatrix polar_chain_frame(const CurveFamily& c, std::size_t l) {
    ComplexMatrix cur = c.sample(0).frame(l).basis();
    for (std::size_t j = 1; j < c.samples(); ++j) {
        const ComplexMatrix& f = c.sample(j).frame(l).basis();
        cur = f * phi_map(ComplexMatrix(f.adjoint() * cur));
    }
    return cur;
}

/// gamma_kernel_transport evaluates the connection of the given frames, so
/// its automatic fallback is the midpoint rule, which rejects misaligned
/// frames. Table building prefers the polar chain, which accepts any gauge.
TransportScheme resolve_connection_scheme(const CurveFamily& c, TransportScheme scheme) {
    if (scheme != TransportScheme::automatic) return scheme;
    if (c.generator_backed() && c.smooth_frames()) return TransportScheme::gauss4;
    return TransportScheme::midpoint;
}

TransportScheme resolve_table_scheme(const CurveFamily& c, TransportScheme scheme) {
    if (scheme != TransportScheme::automatic) return scheme;
    if (c.generator_backed() && c.smooth_frames()) return TransportScheme::gauss4;
    return TransportScheme::polar_chain;
}

}  // namespace

ComplexMatrix overlap(const CurveFamily& c, std::size_t k, std::size_t l) {
    return c.front().frame(k).basis().adjoint() * c.back().frame(l).basis();
}

GammaKernel gamma_kernel_projector(const CurveFamily& c, std::size_t l) {
    if (l >= c.eta()) throw ValidationError("gamma_kernel_projector: subspace index out of range");
    GammaKernel k;
    k.subspace = l;
    if (c.generator_backed()) {
        CurveFamily fine = c.refined(2);
        ComplexMatrix coarse_op = projector_product(c, l, 1);
        ComplexMatrix fine_op = projector_product(fine, l, 1);
        k.op = coarse_op;
        k.richardson = 2.0 * fine_op - coarse_op;
        k.convergence_estimate = max_abs(ComplexMatrix(fine_op - coarse_op));
    } else {
        // no generator: estimate convergence by dropping to every other sample
        ComplexMatrix full = projector_product(c, l, 1);
        ComplexMatrix half = projector_product(c, l, 2);
        k.op = full;
        k.richardson = 2.0 * full - half;
        k.convergence_estimate = max_abs(ComplexMatrix(full - half));
    }
    k.transport = c.back().frame(l).basis().adjoint() * k.op * c.front().frame(l).basis();
    return k;
}

GammaKernel gamma_kernel_transport(const CurveFamily& c, std::size_t l, TransportScheme scheme) {
    if (l >= c.eta()) throw ValidationError("gamma_kernel_transport: subspace index out of range");
    scheme = resolve_connection_scheme(c, scheme);
    GammaKernel k;
    k.subspace = l;
    switch (scheme) {
        case TransportScheme::gauss4: {
            if (!(c.generator_backed() && c.smooth_frames())) {
                throw ValidationError(
                    "gamma_kernel_transport: gauss4 needs a smooth-frame generator");
            }
            ComplexMatrix t = transport_gauss4(c, l);
            k.transport = t;
            k.op = c.back().frame(l).basis() * t * c.front().frame(l).basis().adjoint();
            break;
        }
        case TransportScheme::midpoint: {
            ComplexMatrix t = transport_midpoint(c, l);
            k.transport = t;
            k.op = c.back().frame(l).basis() * t * c.front().frame(l).basis().adjoint();
            break;
        }
        case TransportScheme::polar_chain: {
            ComplexMatrix transported = polar_chain_frame(c, l);
            k.op = transported * c.front().frame(l).basis().adjoint();
            k.transport = c.back().frame(l).basis().adjoint() * transported;
            break;
        }
        case TransportScheme::automatic:
            break;  // unreachable
    }
    return k;
}

ComplexMatrix sigma(const CurveFamily& c, std::size_t k, std::size_t l, TransportScheme scheme) {
    if (k >= c.eta() || l >= c.eta()) throw ValidationError("sigma: subspace index out of range");
    GammaKernel g = gamma_kernel_transport(c, l, resolve_table_scheme(c, scheme));
    return c.front().frame(k).basis().adjoint() * g.op * c.front().frame(l).basis();
}

std::size_t SigmaTable::total_dim() const {
    std::size_t n = 0;
    for (std::size_t d : dims_) n += d;
    return n;
}

const ComplexMatrix& SigmaTable::block(std::size_t k, std::size_t l) const {
    return blocks_.at(k).at(l);
}

double SigmaTable::unitarity_defect() const {
    const std::size_t n = total_dim();
    return max_abs(ComplexMatrix(s_tot_.adjoint() * s_tot_ -
                                 ComplexMatrix::Identity(n, n)));
}

double SigmaTable::column_sum_defect(std::size_t l) const {
    const std::size_t n = dims_.at(l);
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    for (std::size_t k = 0; k < eta(); ++k) {
        acc += block(k, l).adjoint() * block(k, l);
    }
    return max_abs(ComplexMatrix(acc - ComplexMatrix::Identity(n, n)));
}

double SigmaTable::row_sum_defect(std::size_t l) const {
    const std::size_t n = dims_.at(l);
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    for (std::size_t k = 0; k < eta(); ++k) {
        acc += block(l, k) * block(l, k).adjoint();
    }
    return max_abs(ComplexMatrix(acc - ComplexMatrix::Identity(n, n)));
}

void SigmaTable::assemble(double unitarity_tol) {
    const std::size_t n = total_dim();
    s_tot_ = ComplexMatrix::Zero(n, n);
    std::size_t row = 0;
    for (std::size_t k = 0; k < eta(); ++k) {
        std::size_t col = 0;
        for (std::size_t l = 0; l < eta(); ++l) {
            const ComplexMatrix& b = blocks_[k][l];
            if (static_cast<std::size_t>(b.rows()) != dims_[k] ||
                static_cast<std::size_t>(b.cols()) != dims_[l]) {
                std::ostringstream os;
                os << "SigmaTable: block (" << k << "," << l << ") is " << b.rows() << "x"
                   << b.cols() << ", expected " << dims_[k] << "x" << dims_[l];
                throw ValidationError(os.str());
            }
            s_tot_.block(row, col, dims_[k], dims_[l]) = b;
            col += dims_[l];
        }
        row += dims_[k];
    }
    const double defect = unitarity_defect();
    if (defect > unitarity_tol) {
        std::ostringstream os;
        os << "SigmaTable: S_tot unitarity defect " << defect << " exceeds " << unitarity_tol
           << " (grid likely under-resolved)";
        throw NumericCheckError(os.str());
    }
}

SigmaTable SigmaTable::from_curve(const CurveFamily& c, TransportScheme scheme,
                                  double unitarity_tol) {
    SigmaTable t;
    t.dims_ = c.dims();
    const std::size_t eta = t.dims_.size();
    t.blocks_.assign(eta, std::vector<ComplexMatrix>(eta));
    for (std::size_t l = 0; l < eta; ++l) {
        GammaKernel g = gamma_kernel_transport(c, l, resolve_table_scheme(c, scheme));
        for (std::size_t k = 0; k < eta; ++k) {
            t.blocks_[k][l] =
                c.front().frame(k).basis().adjoint() * g.op * c.front().frame(l).basis();
        }
    }
    t.assemble(unitarity_tol);
    return t;
}

SigmaTable SigmaTable::from_blocks(std::vector<std::size_t> dims,
                                   std::vector<std::vector<ComplexMatrix>> blocks,
                                   double unitarity_tol) {
    SigmaTable t;
    t.dims_ = std::move(dims);
    t.blocks_ = std::move(blocks);
    if (t.blocks_.size() != t.dims_.size()) {
        throw ValidationError("SigmaTable: block row count must equal eta");
    }
    for (const auto& row : t.blocks_) {
        if (row.size() != t.dims_.size()) {
            throw ValidationError("SigmaTable: block column count must equal eta");
        }
    }
    t.assemble(unitarity_tol);
    return t;
}

SigmaTable build_sigma_table(const CurveFamily& c, TransportScheme scheme, double unitarity_tol) {
    return SigmaTable::from_curve(c, scheme, unitarity_tol);
}

ComplexMatrix gamma_product(const SigmaTable& t, const std::vector<std::size_t>& seq) {
    if (seq.empty()) throw ValidationError("gamma_product: empty sequence");
    for (std::size_t l : seq) {
        if (l >= t.eta()) {
            std::ostringstream os;
            os << "gamma_product: index " << l << " out of range (eta=" << t.eta() << ")";
            throw ValidationError(os.str());
        }
    }
    const std::size_t kappa = seq.size();
    ComplexMatrix g = t.block(seq[0], seq[kappa - 1]);
    for (std::size_t i = kappa - 1; i >= 1; --i) {
        g = g * t.block(seq[i], seq[i - 1]);
    }
    return g;
}

std::string to_string(HolonomyStatus s) {
    switch (s) {
        case HolonomyStatus::undefined: return "undefined";
        case HolonomyStatus::partial: return "partial";
        case HolonomyStatus::full: return "full";
    }
    return "unknown";
}

HolonomyResult holonomy_of_order(const SigmaTable& t, const std::vector<std::size_t>& seq,
                                 HolonomyTolerance tol) {
    HolonomyResult r;
    r.seq = seq;
    r.gamma = gamma_product(t, seq);
    SvdResult dec = svd(r.gamma);
    const double smax = dec.singular_values.size() > 0 ? dec.singular_values(0) : 0.0;
    const double cut = std::max(tol.rank_rel * smax, tol.zero_abs);
    r.singular_values.assign(dec.singular_values.data(),
                             dec.singular_values.data() + dec.singular_values.size());
    r.holonomy = ComplexMatrix::Zero(r.gamma.rows(), r.gamma.cols());
    r.rank = 0;
    for (Eigen::Index i = 0; i < dec.singular_values.size(); ++i) {
        if (dec.singular_values(i) > cut) {
            r.holonomy += dec.u.col(i) * dec.v.col(i).adjoint();
            ++r.rank;
        }
    }
    const std::size_t n1 = t.dims().at(seq[0]);
    r.status = (r.rank == 0)   ? HolonomyStatus::undefined
               : (r.rank == n1) ? HolonomyStatus::full
                                : HolonomyStatus::partial;
    return r;
}

std::vector<std::vector<std::size_t>> enumerate_strict_sequences(std::size_t eta,
                                                                 std::size_t kappa) {
    if (kappa < 2 || kappa > eta) {
        std::ostringstream os;
        os << "enumerate_strict_sequences: need 2 <= kappa <= eta, got kappa=" << kappa
           << ", eta=" << eta;
        throw ValidationError(os.str());
    }
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::vector<bool> used(eta, false);
    auto rec = [&](auto&& self) -> void {
        if (cur.size() == kappa) {
            out.push_back(cur);
            return;
        }
        for (std::size_t l = 0; l < eta; ++l) {
            if (used[l]) continue;
            used[l] = true;
            cur.push_back(l);
            self(self);
            cur.pop_back();
            used[l] = false;
        }
    };
    rec(rec);
    return out;
}

bool RankBudgetReport::all_bounds_ok() const {
    for (const RankBudgetEntry& e : entries) {
        if (!(e.col_bound_ok && e.row_bound_ok && e.total_col_bound_ok && e.total_row_bound_ok)) {
            return false;
        }
    }
    return true;
}

RankBudgetReport rank_budget_report(const SigmaTable& t, RankTolerance tol) {
    RankBudgetReport rep;
    const std::size_t eta = t.eta();
    for (std::size_t l = 0; l < eta; ++l) {
        RankBudgetEntry e;
        e.subspace = l;
        e.dim = t.dims()[l];
        e.diag_rank = numerical_rank(t.block(l, l), tol);
        e.deficiency = e.dim - std::min(e.dim, e.diag_rank);
        for (std::size_t k = 0; k < eta; ++k) {
            if (k == l) continue;
            e.offdiag_col_rank_sum += numerical_rank(t.block(k, l), tol);
            e.offdiag_row_rank_sum += numerical_rank(t.block(l, k), tol);
        }
        e.col_bound_ok = e.offdiag_col_rank_sum >= e.deficiency;
        e.row_bound_ok = e.offdiag_row_rank_sum >= e.deficiency;
        e.total_col_bound_ok = e.offdiag_col_rank_sum + e.diag_rank >= e.dim;
        e.total_row_bound_ok = e.offdiag_row_rank_sum + e.diag_rank >= e.dim;
        rep.entries.push_back(e);
    }
    // trace identity Tr(S^nu) = sum over all length-nu index sequences of Tr gamma
    ComplexMatrix power = t.s_tot();
    for (std::size_t nu = 1; nu <= 4; ++nu) {
        TraceDiagnostic d;
        d.power = nu;
        d.trace_s_tot = power.trace();
        std::vector<std::size_t> seq(nu, 0);
        Complex acc(0.0, 0.0);
        while (true) {
            acc += gamma_product(t, seq).trace();
            std::size_t pos = 0;
            while (pos < nu) {
                if (++seq[pos] < eta) break;
                seq[pos] = 0;
                ++pos;
            }
            if (pos == nu) break;
        }
        d.gamma_trace_sum = acc;
        d.deviation = std::abs(d.trace_s_tot - d.gamma_trace_sum);
        rep.traces.push_back(d);
        power = power * t.s_tot();
    }
    return rep;
}

std::vector<std::size_t> nonzero_existence_check(const SigmaTable& t, HolonomyTolerance tol) {
    const double scale = spectral_norm(t.s_tot());
    for (std::size_t l = 0; l < t.eta(); ++l) {
        if (spectral_norm(t.block(l, l)) >= 1e-8 * scale) {
            std::ostringstream os;
            os << "nonzero_existence_check: diagonal block " << l
               << " is not numerically zero; precondition unmet";
            throw ValidationError(os.str());
        }
    }
    for (std::size_t kappa = 2; kappa <= t.eta(); ++kappa) {
        for (const auto& seq : enumerate_strict_sequences(t.eta(), kappa)) {
            HolonomyResult r = holonomy_of_order(t, seq, tol);
            if (r.rank > 0) return seq;
        }
    }
    throw InternalConsistencyError(
        "nonzero_existence_check: every strictly off-diagonal gamma vanished although all "
        "diagonal blocks are zero; this contradicts unitarity of S_tot");
}

}  // namespace odholo
