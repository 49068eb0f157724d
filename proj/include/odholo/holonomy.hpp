#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "odholo/subspaces.hpp"

namespace odholo {

/// How the path-ordered transport along one subspace curve is discretized.
///
/// - gauss4: 4th-order commutator-free scheme; connection evaluated at the
///   two Gauss nodes of each interval by finite differences of the generator
///   frames. Needs a generator with a smooth frame gauge.
/// - midpoint: per-interval exponential of the midpoint connection built from
///   inter-sample overlaps; unitary each step. Needs smoothly aligned frames.
/// - polar_chain: per-interval polar alignment of successive frames. Works
///   for arbitrary sample gauges and is exactly gauge-equivariant.
/// - automatic: gauss4 when the curve can support it, else polar_chain.
enum class TransportScheme { automatic, gauss4, midpoint, polar_chain };

/// Transport data for one subspace curve: the N x N operator mapping
/// H_l(0) into H_l(1), plus its frame-matrix factor.
struct GammaKernel {
    std::size_t subspace = 0;
    ComplexMatrix op;                  // N x N
    ComplexMatrix transport;           // n_l x n_l, in the curve's endpoint frames
    double convergence_estimate = 0.0; // one-refinement-step Richardson difference
    ComplexMatrix richardson;          // extrapolated op when available, else empty
};

/// (F^k_0|F^l_1): entries <k^i(0)|l^j(1)>.
ComplexMatrix overlap(const CurveFamily& c, std::size_t k, std::size_t l);

/// Gamma_l as the ordered product of projectors over the grid (latest s
/// leftmost), with a convergence estimate from one refinement step.
GammaKernel gamma_kernel_projector(const CurveFamily& c, std::size_t l);

/// Gamma_l from the Wilczek-Zee connection of the curve's own frames.
/// Throws if the frames are not smoothly aligned (per-step connection
/// exceeds the smoothness bound) with advice to regenerate.
GammaKernel gamma_kernel_transport(const CurveFamily& c, std::size_t l,
                                   TransportScheme scheme = TransportScheme::automatic);

/// sigma^{kl}: n_k x n_l matrix <k^i(0)| Gamma_l |l^j(0)>.
ComplexMatrix sigma(const CurveFamily& c, std::size_t k, std::size_t l,
                    TransportScheme scheme = TransportScheme::automatic);

/// The eta x eta table of sigma blocks and the assembled N x N S_tot.
class SigmaTable {
public:
    static SigmaTable from_curve(const CurveFamily& c,
                                 TransportScheme scheme = TransportScheme::automatic,
                                 double unitarity_tol = 1e-6);
    static SigmaTable from_blocks(std::vector<std::size_t> dims,
                                  std::vector<std::vector<ComplexMatrix>> blocks,
                                  double unitarity_tol = 1e-6);

    std::size_t eta() const { return dims_.size(); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t total_dim() const;
    const ComplexMatrix& block(std::size_t k, std::size_t l) const;
    const ComplexMatrix& s_tot() const { return s_tot_; }

    /// max|S^dag S - I|.
    double unitarity_defect() const;
    /// max|sum_k sigma^{kl dag} sigma^{kl} - I| for column l.
    double column_sum_defect(std::size_t l) const;
    /// max|sum_k sigma^{lk} sigma^{lk dag} - I| for row l.
    double row_sum_defect(std::size_t l) const;

private:
    SigmaTable() = default;
    void assemble(double unitarity_tol);

    std::vector<std::size_t> dims_;
    std::vector<std::vector<ComplexMatrix>> blocks_;
    ComplexMatrix s_tot_;
};

/// Same as SigmaTable::from_curve; spec-facing name.
SigmaTable build_sigma_table(const CurveFamily& c,
                             TransportScheme scheme = TransportScheme::automatic,
                             double unitarity_tol = 1e-6);

/// gamma^{l1...lk} = sigma^{l1 lk} sigma^{lk lk-1} ... sigma^{l2 l1};
/// k = 1 degenerates to sigma^{l1 l1}. Result is n_{l1} x n_{l1}.
ComplexMatrix gamma_product(const SigmaTable& t, const std::vector<std::size_t>& seq);

enum class HolonomyStatus { undefined, partial, full };

std::string to_string(HolonomyStatus s);

/// Rank and zero decisions for holonomy results. rank_rel separates the
/// nonzero singular values; zero_abs is the absolute floor below which a
/// singular value counts as zero. The absolute scale is meaningful because
/// sigma-block singular values never exceed 1 (S_tot is unitary).
struct HolonomyTolerance {
    double rank_rel = 1e-10;
    double zero_abs = 1e-8;
};

struct HolonomyResult {
    std::vector<std::size_t> seq;
    ComplexMatrix gamma;
    ComplexMatrix holonomy;              // partial isometry Phi[gamma]
    std::size_t rank = 0;
    std::vector<double> singular_values; // of gamma, descending
    HolonomyStatus status = HolonomyStatus::undefined;
};

HolonomyResult holonomy_of_order(const SigmaTable& t, const std::vector<std::size_t>& seq,
                                 HolonomyTolerance tol = {});

/// All injective sequences of length kappa over {0..eta-1}, lexicographic.
/// Requires 2 <= kappa <= eta. Count is eta!/(eta-kappa)!.
std::vector<std::vector<std::size_t>> enumerate_strict_sequences(std::size_t eta,
                                                                 std::size_t kappa);

struct RankBudgetEntry {
    std::size_t subspace = 0;
    std::size_t dim = 0;
    std::size_t diag_rank = 0;
    std::size_t deficiency = 0;            // n_l - R(sigma^{ll})
    std::size_t offdiag_col_rank_sum = 0;  // sum_{k!=l} R(sigma^{kl})
    std::size_t offdiag_row_rank_sum = 0;  // sum_{k!=l} R(sigma^{lk})
    bool col_bound_ok = false;             // offdiag col sum >= deficiency
    bool row_bound_ok = false;
    bool total_col_bound_ok = false;       // sum_k R(sigma^{kl}) >= n_l
    bool total_row_bound_ok = false;
};

struct TraceDiagnostic {
    std::size_t power = 0;
    Complex trace_s_tot;
    Complex gamma_trace_sum;   // sum over all length-nu sequences
    double deviation = 0.0;
};

struct RankBudgetReport {
    std::vector<RankBudgetEntry> entries;
    std::vector<TraceDiagnostic> traces;   // powers 1..4
    bool all_bounds_ok() const;
};

RankBudgetReport rank_budget_report(const SigmaTable& t, RankTolerance tol = {});

/// With every diagonal block numerically zero, returns a strictly
/// off-diagonal sequence whose gamma has nonzero rank (one must exist).
/// Throws ValidationError if a diagonal block is not zero, and
/// InternalConsistencyError if the exhaustive search finds nothing.
std::vector<std::size_t> nonzero_existence_check(const SigmaTable& t,
                                                 HolonomyTolerance tol = {});

}  // namespace odholo
