#include "odholo/subspaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

namespace odholo {

namespace {

double spectral_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> dec(m);
    return dec.singularValues().size() > 0 ? dec.singularValues()(0) : 0.0;
}

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            g(i, j) = Complex(nd(rng), nd(rng));
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    // fix the phase convention so the draw is Haar rather than QR-skewed
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t j = 0; j < n; ++j) {
        Complex d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

}  // namespace

Frame::Frame(ComplexMatrix basis, double ortho_tol) : basis_(std::move(basis)) {
    if (basis_.rows() == 0 || basis_.cols() == 0 || basis_.cols() > basis_.rows()) {
        std::ostringstream os;
        os << "Frame: bad shape " << basis_.rows() << "x" << basis_.cols();
        throw ValidationError(os.str());
    }
    if (!is_finite(basis_)) throw ValidationError("Frame: non-finite entries");
    ComplexMatrix gram = basis_.adjoint() * basis_;
    double defect = max_abs(gram - ComplexMatrix::Identity(basis_.cols(), basis_.cols()));
    if (defect > ortho_tol) {
        std::ostringstream os;
        os << "Frame: columns not orthonormal (defect " << defect << " > " << ortho_tol << ")";
        throw ValidationError(os.str());
    }
}

ComplexMatrix projector(const Frame& f) {
    return f.basis() * f.basis().adjoint();
}

Decomposition::Decomposition(std::vector<Frame> frames, double ortho_tol)
    : frames_(std::move(frames)) {
    if (frames_.empty()) throw ValidationError("Decomposition: no frames");
    const std::size_t n = frames_.front().ambient_dim();
    std::size_t total = 0;
    for (const Frame& f : frames_) {
        if (f.ambient_dim() != n) {
            throw ValidationError("Decomposition: frames disagree on ambient dimension");
        }
        total += f.sub_dim();
    }
    if (total != n) {
        std::ostringstream os;
        os << "Decomposition: subspace dimensions sum to " << total << ", ambient is " << n;
        throw ValidationError(os.str());
    }
    for (std::size_t k = 0; k < frames_.size(); ++k) {
        for (std::size_t l = k + 1; l < frames_.size(); ++l) {
            double overlap = max_abs(frames_[k].basis().adjoint() * frames_[l].basis());
            if (overlap > ortho_tol) {
                std::ostringstream os;
                os << "Decomposition: subspaces " << k << " and " << l
                   << " not orthogonal (overlap " << overlap << ")";
                throw ValidationError(os.str());
            }
        }
    }
}

std::vector<std::size_t> Decomposition::dims() const {
    std::vector<std::size_t> d;
    d.reserve(frames_.size());
    for (const Frame& f : frames_) d.push_back(f.sub_dim());
    return d;
}

void GaugeTransform::validate(const std::vector<std::size_t>& dims, std::size_t n_samples,
                              double unitary_tol) const {
    if (blocks.size() != n_samples) {
        throw ValidationError("GaugeTransform: sample count mismatch");
    }
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        if (blocks[j].size() != dims.size()) {
            throw ValidationError("GaugeTransform: subspace count mismatch");
        }
        for (std::size_t l = 0; l < dims.size(); ++l) {
            const ComplexMatrix& u = blocks[j][l];
            if (static_cast<std::size_t>(u.rows()) != dims[l] ||
                static_cast<std::size_t>(u.cols()) != dims[l]) {
                std::ostringstream os;
                os << "GaugeTransform: block (" << j << "," << l << ") is " << u.rows() << "x"
                   << u.cols() << ", expected " << dims[l] << "x" << dims[l];
                throw ValidationError(os.str());
            }
            if (!is_unitary(u, unitary_tol)) {
                std::ostringstream os;
                os << "GaugeTransform: block (" << j << "," << l << ") not unitary";
                throw ValidationError(os.str());
            }
        }
    }
}

std::vector<double> uniform_grid(std::size_t segments) {
    if (segments == 0) throw ValidationError("uniform_grid: need at least one segment");
    std::vector<double> g(segments + 1);
    for (std::size_t j = 0; j <= segments; ++j) {
        g[j] = static_cast<double>(j) / static_cast<double>(segments);
    }
    g.back() = 1.0;
    return g;
}

void CurveFamily::finalize_invariants() {
    if (grid_.size() < 2 || grid_.size() != samples_.size()) {
        throw ValidationError("CurveFamily: grid and samples must agree and hold >= 2 points");
    }
    if (std::abs(grid_.front()) > 1e-15 || std::abs(grid_.back() - 1.0) > 1e-15) {
        throw ValidationError("CurveFamily: grid must run from 0 to 1");
    }
    for (std::size_t j = 1; j < grid_.size(); ++j) {
        if (!(grid_[j] > grid_[j - 1])) {
            throw ValidationError("CurveFamily: grid not strictly increasing");
        }
    }
    const std::vector<std::size_t> d0 = samples_.front().dims();
    for (std::size_t j = 1; j < samples_.size(); ++j) {
        if (samples_[j].dims() != d0) {
            std::ostringstream os;
            os << "CurveFamily: subspace dimensions change at sample " << j << " (s="
               << grid_[j] << ")";
            throw ValidationError(os.str());
        }
    }
    double c = 0.0;
    for (std::size_t j = 0; j + 1 < samples_.size(); ++j) {
        const double ds = grid_[j + 1] - grid_[j];
        for (std::size_t l = 0; l < d0.size(); ++l) {
            ComplexMatrix dp = projector(samples_[j + 1].frame(l)) - projector(samples_[j].frame(l));
            c = std::max(c, spectral_norm(dp) / ds);
        }
    }
    smoothness_constant_ = c;
}

CurveFamily CurveFamily::from_samples(std::vector<double> grid, std::vector<Decomposition> samples) {
    CurveFamily c;
    c.grid_ = std::move(grid);
    c.samples_ = std::move(samples);
    c.provenance_ = Provenance::explicit_samples;
    c.finalize_invariants();
    return c;
}

CurveFamily CurveFamily::from_generator(Generator gen, std::vector<double> grid,
                                        bool smooth_frames) {
    if (!gen) throw ValidationError("from_generator: empty generator");
    CurveFamily c;
    c.grid_ = std::move(grid);
    c.samples_.reserve(c.grid_.size());
    for (double s : c.grid_) c.samples_.push_back(gen(s));
    c.provenance_ = Provenance::generator;
    c.generator_ = std::move(gen);
    c.smooth_frames_ = smooth_frames;
    c.finalize_invariants();
    return c;
}

namespace {

/// Eigen-decompose h(s), cluster eigenvalues, return frames ordered by
/// ascending cluster mean. Gauge is whatever the eigensolver produced.
Decomposition eigen_clusters_at(const CurveFamily::HamiltonianPath& h, double s,
                                const EigenClusterRule& rule) {
    ComplexMatrix hs = h(s);
    if (hs.rows() != hs.cols()) throw ValidationError("from_hamiltonian_path: H not square");
    if (max_abs(hs - hs.adjoint()) > 1e-10 * std::max(1.0, max_abs(hs))) {
        throw ValidationError("from_hamiltonian_path: H not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hs);
    if (es.info() != Eigen::Success) {
        throw KernelError("from_hamiltonian_path: eigendecomposition failed");
    }
    const double scale = std::max(max_abs(hs), 1e-300);
    const double tol = rule.degeneracy_scale * scale;
    const Eigen::Index n = es.eigenvalues().size();
    std::vector<Frame> frames;
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= n; ++i) {
        if (i == n || es.eigenvalues()(i) - es.eigenvalues()(i - 1) > tol) {
            frames.emplace_back(ComplexMatrix(es.eigenvectors().middleCols(start, i - start)));
            start = i;
        }
    }
    return Decomposition(std::move(frames));
}

/// Re-gauge `raw` so each frame maximally overlaps `prev` (orthogonal
/// Procrustes via the polar factor of the inter-sample overlap).
Decomposition align_to(const Decomposition& prev, const Decomposition& raw) {
    std::vector<Frame> frames;
    frames.reserve(raw.eta());
    for (std::size_t l = 0; l < raw.eta(); ++l) {
        ComplexMatrix m = raw.frame(l).basis().adjoint() * prev.frame(l).basis();
        ComplexMatrix q = phi_map(m);
        frames.emplace_back(ComplexMatrix(raw.frame(l).basis() * q));
    }
    return Decomposition(std::move(frames));
}

}  // namespace

CurveFamily CurveFamily::from_hamiltonian_path(HamiltonianPath h, std::vector<double> grid,
                                               EigenClusterRule rule) {
    if (!h) throw ValidationError("from_hamiltonian_path: empty Hamiltonian path");
    CurveFamily c;
    c.grid_ = std::move(grid);
    c.samples_.reserve(c.grid_.size());
    for (std::size_t j = 0; j < c.grid_.size(); ++j) {
        Decomposition raw = eigen_clusters_at(h, c.grid_[j], rule);
        if (j == 0) {
            c.samples_.push_back(std::move(raw));
        } else {
            if (raw.dims() != c.samples_.front().dims()) {
                std::ostringstream os;
                os << "from_hamiltonian_path: eigenvalue group dimensions change at sample " << j
                   << " (s=" << c.grid_[j] << "): level crossing";
                throw ValidationError(os.str());
            }
            c.samples_.push_back(align_to(c.samples_.back(), raw));
        }
    }
    c.provenance_ = Provenance::hamiltonian_eigen;
    c.generator_ = [h, rule](double s) { return eigen_clusters_at(h, s, rule); };
    c.smooth_frames_ = false;
    c.finalize_invariants();
    return c;
}

CurveFamily CurveFamily::from_schrodinger_evolution(HamiltonianPath h, Decomposition initial,
                                                    std::vector<double> grid,
                                                    std::size_t substeps) {
    if (!h) throw ValidationError("from_schrodinger_evolution: empty Hamiltonian path");
    if (substeps == 0) substeps = 1;
    CurveFamily c;
    c.grid_ = std::move(grid);

    const std::size_t n = initial.ambient_dim();
    auto propagate = [h, substeps](double s0, double s1, const ComplexMatrix& u0) {
        ComplexMatrix u = u0;
        const double hstep = (s1 - s0) / static_cast<double>(substeps);
        for (std::size_t k = 0; k < substeps; ++k) {
            const double mid = s0 + (static_cast<double>(k) + 0.5) * hstep;
            u = exp_minus_i_hermitian(h(mid), hstep) * u;
        }
        return u;
    };

    ComplexMatrix u = ComplexMatrix::Identity(n, n);
    c.samples_.push_back(initial);
    for (std::size_t j = 1; j < c.grid_.size(); ++j) {
        u = propagate(c.grid_[j - 1], c.grid_[j], u);
        std::vector<Frame> frames;
        frames.reserve(initial.eta());
        for (std::size_t l = 0; l < initial.eta(); ++l) {
            frames.emplace_back(ComplexMatrix(u * initial.frame(l).basis()));
        }
        c.samples_.emplace_back(std::move(frames));
    }
    c.provenance_ = Provenance::schrodinger;
    c.generator_ = [h, initial, substeps, propagate, n](double s) {
        if (s <= 0.0) return initial;
        // integrate from scratch with a step budget proportional to s
        std::size_t steps = std::max<std::size_t>(1, static_cast<std::size_t>(s * 256) * substeps);
        ComplexMatrix u = ComplexMatrix::Identity(n, n);
        const double hstep = s / static_cast<double>(steps);
        for (std::size_t k = 0; k < steps; ++k) {
            const double mid = (static_cast<double>(k) + 0.5) * hstep;
            u = exp_minus_i_hermitian(h(mid), hstep) * u;
        }
        std::vector<Frame> frames;
        for (std::size_t l = 0; l < initial.eta(); ++l) {
            frames.emplace_back(ComplexMatrix(u * initial.frame(l).basis()));
        }
        return Decomposition(std::move(frames));
    };
    c.smooth_frames_ = false;
    c.finalize_invariants();
    return c;
}

CurveFamily CurveFamily::refined(std::size_t factor) const {
    if (factor == 0) throw ValidationError("refined: factor must be >= 1");
    if (!generator_backed()) {
        throw ValidationError("refined: explicit-sample curves cannot refine");
    }
    if (factor == 1) return *this;
    std::vector<double> fine;
    fine.reserve((grid_.size() - 1) * factor + 1);
    for (std::size_t j = 0; j + 1 < grid_.size(); ++j) {
        for (std::size_t k = 0; k < factor; ++k) {
            fine.push_back(grid_[j] +
                           (grid_[j + 1] - grid_[j]) * static_cast<double>(k) /
                               static_cast<double>(factor));
        }
    }
    fine.push_back(1.0);
    switch (provenance_) {
        case Provenance::hamiltonian_eigen: {
            // realign over the fine grid from the pointwise generator
            CurveFamily c;
            c.grid_ = std::move(fine);
            c.samples_.reserve(c.grid_.size());
            for (std::size_t j = 0; j < c.grid_.size(); ++j) {
                Decomposition raw = generator_(c.grid_[j]);
                if (j == 0) {
                    c.samples_.push_back(std::move(raw));
                } else {
                    c.samples_.push_back(align_to(c.samples_.back(), raw));
                }
            }
            c.provenance_ = provenance_;
            c.generator_ = generator_;
            c.smooth_frames_ = smooth_frames_;
            c.finalize_invariants();
            return c;
        }
        default: {
            CurveFamily c;
            c.grid_ = std::move(fine);
            c.samples_.reserve(c.grid_.size());
            for (double s : c.grid_) c.samples_.push_back(generator_(s));
            c.provenance_ = provenance_;
            c.generator_ = generator_;
            c.smooth_frames_ = smooth_frames_;
            c.finalize_invariants();
            return c;
        }
    }
}

Decomposition CurveFamily::decomposition_at(double s) const {
    if (!generator_) {
        throw ValidationError("decomposition_at: curve has no generator");
    }
    return generator_(s);
}

bool CurveFamily::is_cyclic(double tol) const {
    for (std::size_t l = 0; l < eta(); ++l) {
        if (max_abs(projector(front().frame(l)) - projector(back().frame(l))) > tol) {
            return false;
        }
    }
    return true;
}

CurveFamily apply_gauge(const CurveFamily& c, const GaugeTransform& g) {
    g.validate(c.dims(), c.samples());
    std::vector<Decomposition> gauged;
    gauged.reserve(c.samples());
    for (std::size_t j = 0; j < c.samples(); ++j) {
        std::vector<Frame> frames;
        frames.reserve(c.eta());
        for (std::size_t l = 0; l < c.eta(); ++l) {
            frames.emplace_back(ComplexMatrix(c.sample(j).frame(l).basis() * g.blocks[j][l]));
        }
        gauged.emplace_back(std::move(frames));
    }
    return CurveFamily::from_samples(c.grid(), std::move(gauged));
}

GaugeTransform random_gauge(const CurveFamily& c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    GaugeTransform g;
    g.blocks.resize(c.samples());
    const auto dims = c.dims();
    for (std::size_t j = 0; j < c.samples(); ++j) {
        g.blocks[j].reserve(dims.size());
        for (std::size_t l = 0; l < dims.size(); ++l) {
            g.blocks[j].push_back(random_unitary(dims[l], rng));
        }
    }
    return g;
}

CurveFamily random_unitary_curve(const std::vector<std::size_t>& dims,
                                 std::vector<double> grid, std::uint64_t seed, bool cyclic) {
    std::size_t n = 0;
    for (std::size_t d : dims) n += d;
    if (n == 0) throw ValidationError("random_unitary_curve: empty dims");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    auto random_antihermitian = [&](double scale) {
        ComplexMatrix g(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) g(i, j) = Complex(nd(rng), nd(rng));
        }
        ComplexMatrix a = 0.5 * (g - g.adjoint());
        return ComplexMatrix(scale * a);
    };

    const int modes = 3;
    std::vector<ComplexMatrix> xs;
    ComplexMatrix x0 = random_antihermitian(cyclic ? 0.0 : 0.9 / std::sqrt(double(n)));
    for (int m = 1; m <= modes; ++m) {
        xs.push_back(random_antihermitian(0.5 / (double(m) * double(m) * std::sqrt(double(n)))));
    }

    auto gen = [dims, x0, xs, n](double s) {
        ComplexMatrix k = s * x0;
        for (std::size_t m = 0; m < xs.size(); ++m) {
            k += std::sin(M_PI * double(m + 1) * s) * xs[m];
        }
        ComplexMatrix u = exp_antihermitian(k);
        std::vector<Frame> frames;
        std::size_t offset = 0;
        for (std::size_t d : dims) {
            frames.emplace_back(ComplexMatrix(u.middleCols(offset, d)));
            offset += d;
        }
        return Decomposition(std::move(frames));
    };
    return CurveFamily::from_generator(gen, std::move(grid), /*smooth_frames=*/true);
}

}  // namespace odholo
