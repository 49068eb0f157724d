#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "odholo/numkernel.hpp"

namespace odholo {

/// Orthonormal basis of one subspace: an N x n column-orthonormal matrix.
class Frame {
public:
    explicit Frame(ComplexMatrix basis, double ortho_tol = 1e-10);

    std::size_t ambient_dim() const { return static_cast<std::size_t>(basis_.rows()); }
    std::size_t sub_dim() const { return static_cast<std::size_t>(basis_.cols()); }
    const ComplexMatrix& basis() const { return basis_; }

private:
    ComplexMatrix basis_;
};

/// P = F F^dag; Hermitian, idempotent, trace n.
ComplexMatrix projector(const Frame& f);

/// A complete decomposition H = H_1 + ... + H_eta at one parameter value:
/// pairwise-orthogonal frames whose dimensions sum to N.
class Decomposition {
public:
    explicit Decomposition(std::vector<Frame> frames, double ortho_tol = 1e-10);

    std::size_t eta() const { return frames_.size(); }
    std::size_t ambient_dim() const { return frames_.front().ambient_dim(); }
    std::vector<std::size_t> dims() const;
    const Frame& frame(std::size_t l) const { return frames_.at(l); }
    const std::vector<Frame>& frames() const { return frames_; }

private:
    std::vector<Frame> frames_;
};

/// Per-subspace, per-grid-point unitary change of frames.
struct GaugeTransform {
    /// blocks[sample][subspace] is the n_l x n_l unitary U_l(s_j).
    std::vector<std::vector<ComplexMatrix>> blocks;

    void validate(const std::vector<std::size_t>& dims, std::size_t n_samples,
                  double unitary_tol = 1e-10) const;
};

enum class Provenance {
    explicit_samples,     // only the stored grid samples exist
    generator,            // decomposition_at(s) callable anywhere in [0,1]
    hamiltonian_eigen,    // eigenspace clusters of an s-dependent Hamiltonian
    schrodinger,          // initial decomposition propagated under H(s)
};

/// Eigenvalues within degeneracy_scale * ||H|| of each other form one cluster.
/// The scale is loose enough that an exact degeneracy survives roundoff.
struct EigenClusterRule {
    double degeneracy_scale = 1e-8;
};

std::vector<double> uniform_grid(std::size_t segments);

/// A smoothly parameterized decomposition sampled on a grid s_0=0 < ... < s_M=1.
/// Immutable after construction; all queries are const and thread-safe.
class CurveFamily {
public:
    using Generator = std::function<Decomposition(double)>;
    using HamiltonianPath = std::function<ComplexMatrix(double)>;

    /// Default-constructed curves are empty placeholders; every factory
    /// returns a validated curve. samples() == 0 identifies the former.
    CurveFamily() = default;

    static CurveFamily from_samples(std::vector<double> grid, std::vector<Decomposition> samples);

    /// Generator-backed curve. smooth_frames declares that the generator's
    /// frame gauge is smooth in s (true for analytic frame formulas, false
    /// for anything involving a pointwise eigensolver).
    static CurveFamily from_generator(Generator gen, std::vector<double> grid,
                                      bool smooth_frames);

    /// Instantaneous eigenspace clusters of H(s), frames aligned along the
    /// grid by the polar factor of the inter-sample overlap. Throws if the
    /// cluster dimensions change along the grid (level crossing), naming the
    /// offending sample.
    static CurveFamily from_hamiltonian_path(HamiltonianPath h, std::vector<double> grid,
                                             EigenClusterRule rule = {});

    /// The s=0 decomposition propagated under i d/ds psi = H(s) psi, with
    /// substeps midpoint-exponential steps per grid interval.
    static CurveFamily from_schrodinger_evolution(HamiltonianPath h, Decomposition initial,
                                                  std::vector<double> grid,
                                                  std::size_t substeps = 4);

    /// Same curve, each grid interval split into `factor` equal parts.
    /// Requires generator-backed provenance.
    CurveFamily refined(std::size_t factor) const;

    const std::vector<double>& grid() const { return grid_; }
    std::size_t samples() const { return samples_.size(); }
    const Decomposition& sample(std::size_t j) const { return samples_.at(j); }
    const Decomposition& front() const { return samples_.front(); }
    const Decomposition& back() const { return samples_.back(); }

    std::size_t eta() const { return samples_.front().eta(); }
    std::size_t ambient_dim() const { return samples_.front().ambient_dim(); }
    std::vector<std::size_t> dims() const { return samples_.front().dims(); }

    Provenance provenance() const { return provenance_; }
    bool generator_backed() const { return static_cast<bool>(generator_); }
    bool smooth_frames() const { return smooth_frames_; }

    /// Evaluate the generator off-grid; throws for explicit-sample curves.
    Decomposition decomposition_at(double s) const;

    /// Recorded constant C with ||P_l(s_{j+1}) - P_l(s_j)||_2 <= C (s_{j+1}-s_j).
    double smoothness_constant() const { return smoothness_constant_; }

    /// H_l(1) == H_l(0) for every l, to the given projector tolerance.
    bool is_cyclic(double tol = 1e-10) const;

private:
    void finalize_invariants();

    std::vector<double> grid_;
    std::vector<Decomposition> samples_;
    Provenance provenance_ = Provenance::explicit_samples;
    Generator generator_;
    bool smooth_frames_ = false;
    double smoothness_constant_ = 0.0;
};

/// Frames replaced by F_l(s_j) U_l(s_j); projectors unchanged at every sample.
/// The result is an explicit-sample curve.
CurveFamily apply_gauge(const CurveFamily& c, const GaugeTransform& g);

/// Haar-ish random gauge (QR of Ginibre blocks), deterministic in seed.
GaugeTransform random_gauge(const CurveFamily& c, std::uint64_t seed);

/// Random smooth curve: frames are column blocks of U(s) = exp(K(s)) with
/// K(s) a low-order Fourier sum of bounded anti-Hermitian coefficients.
/// K(1) = 0 when cyclic, so the curve closes exactly. Smooth frame gauge.
CurveFamily random_unitary_curve(const std::vector<std::size_t>& dims,
                                 std::vector<double> grid, std::uint64_t seed,
                                 bool cyclic = false);

}  // namespace odholo
