#include "odholo/interferometer.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace odholo {

namespace {

constexpr double kCrossCheckTol = 1e-10;

ComplexMatrix block_of(const ComplexMatrix& op, const Frame& f) {
    return f.basis().adjoint() * op * f.basis();
}

void check_admissible_v(const ComplexMatrix& v, const Decomposition& d0, double tol = 1e-10) {
    const std::size_t n = d0.ambient_dim();
    if (static_cast<std::size_t>(v.rows()) != n || static_cast<std::size_t>(v.cols()) != n) {
        throw ValidationError("V has wrong shape for the internal space");
    }
    if (!is_unitary(v, 1e-8)) throw ValidationError("V is not unitary");
    for (std::size_t l = 0; l < d0.eta(); ++l) {
        ComplexMatrix p = projector(d0.frame(l));
        if (max_abs(ComplexMatrix(v * p - p * v)) > tol) {
            std::ostringstream os;
            os << "V does not commute with P_" << l << "(0)";
            throw ValidationError(os.str());
        }
    }
}

double formula_p(const ComplexMatrix& gamma, const ComplexMatrix& v_block, std::size_t n1,
                 double phase) {
    const Complex ph(std::cos(phase), std::sin(phase));
    const double tr_gg = (gamma * gamma.adjoint()).trace().real();
    const Complex tr_gv = (gamma * v_block.adjoint()).trace();
    return 0.25 + tr_gg / (4.0 * static_cast<double>(n1)) +
           (ph * tr_gv).real() / (2.0 * static_cast<double>(n1));
}

}  // namespace

TwoPathState TwoPathState::prepare(const Decomposition& d0, std::size_t l1) {
    if (l1 >= d0.eta()) throw ValidationError("TwoPathState::prepare: subspace out of range");
    const std::size_t n = d0.ambient_dim();
    TwoPathState st;
    st.p00_ = projector(d0.frame(l1)) / static_cast<double>(d0.frame(l1).sub_dim());
    st.p01_ = ComplexMatrix::Zero(n, n);
    st.p10_ = ComplexMatrix::Zero(n, n);
    st.p11_ = ComplexMatrix::Zero(n, n);
    return st;
}

void TwoPathState::beam_splitter() {
    ComplexMatrix a = 0.5 * (p00_ + p01_ + p10_ + p11_);
    ComplexMatrix b = 0.5 * (p00_ - p01_ + p10_ - p11_);
    ComplexMatrix c = 0.5 * (p00_ + p01_ - p10_ - p11_);
    ComplexMatrix d = 0.5 * (p00_ - p01_ - p10_ + p11_);
    p00_ = std::move(a);
    p01_ = std::move(b);
    p10_ = std::move(c);
    p11_ = std::move(d);
}

void TwoPathState::apply_path0(const ComplexMatrix& a) {
    p00_ = a * p00_ * a.adjoint();
    p01_ = a * p01_;
    p10_ = p10_ * a.adjoint();
}

void TwoPathState::apply_path1(const ComplexMatrix& v) {
    p11_ = v * p11_ * v.adjoint();
    p01_ = p01_ * v.adjoint();
    p10_ = v * p10_;
}

void TwoPathState::filter_path0(const ComplexMatrix& projector) {
    apply_path0(projector);
}

double TwoPathState::path0_weight() const {
    return p00_.trace().real();
}

double TwoPathState::total_weight() const {
    return p00_.trace().real() + p11_.trace().real();
}

void TwoPathState::validate(double tol) const {
    const std::size_t n = static_cast<std::size_t>(p00_.rows());
    ComplexMatrix rho(2 * n, 2 * n);
    rho.topLeftCorner(n, n) = p00_;
    rho.topRightCorner(n, n) = p01_;
    rho.bottomLeftCorner(n, n) = p10_;
    rho.bottomRightCorner(n, n) = p11_;
    if (max_abs(ComplexMatrix(rho - rho.adjoint())) > tol) {
        throw NumericCheckError("TwoPathState: not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
    if (es.eigenvalues().minCoeff() < -tol) {
        throw NumericCheckError("TwoPathState: not positive semidefinite");
    }
    const double tr = rho.trace().real();
    if (tr < -tol || tr > 1.0 + 1e-10) {
        throw NumericCheckError("TwoPathState: trace outside [0, 1]");
    }
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::adiabatic: return "adiabatic";
        case Strategy::filtering: return "filtering";
        case Strategy::nonadiabatic: return "nonadiabatic";
    }
    return "unknown";
}

ComplexMatrix adiabatic_u(const CurveFamily& c,
                          const std::function<double(std::size_t, double)>& energies) {
    if (!energies) throw ValidationError("adiabatic_u: missing energies");
    const std::size_t n = c.ambient_dim();
    ComplexMatrix u = ComplexMatrix::Zero(n, n);
    for (std::size_t l = 0; l < c.eta(); ++l) {
        const double phi =
            adaptive_simpson([&](double s) { return energies(l, s); }, 0.0, 1.0, 1e-12);
        GammaKernel g = gamma_kernel_transport(c, l);
        u += Complex(std::cos(phi), std::sin(phi)) * g.op;
    }
    return u;
}

std::vector<ComplexMatrix> filtering_u_sequence(const CurveFamily& c,
                                                const std::vector<std::size_t>& seq,
                                                std::size_t segments) {
    if (segments == 0) throw ValidationError("filtering_u_sequence: segments must be >= 1");
    if (seq.empty()) throw ValidationError("filtering_u_sequence: empty sequence");
    for (std::size_t l : seq) {
        if (l >= c.eta()) throw ValidationError("filtering_u_sequence: index out of range");
    }
    const bool off_grid = !c.generator_backed();
    if (off_grid && segments + 1 != c.samples()) {
        throw ValidationError(
            "filtering_u_sequence: explicit-sample curves only support the curve's own grid");
    }
    std::vector<ComplexMatrix> filters;
    filters.reserve(seq.size() * (segments + 1));
    for (std::size_t l : seq) {
        for (std::size_t j = 0; j <= segments; ++j) {
            if (off_grid) {
                filters.push_back(projector(c.sample(j).frame(l)));
            } else {
                const double s = static_cast<double>(j) / static_cast<double>(segments);
                filters.push_back(projector(c.decomposition_at(s).frame(l)));
            }
        }
    }
    return filters;
}

ComplexMatrix nonadiabatic_u(const std::function<ComplexMatrix(double)>& h,
                             const CurveFamily& c, double tol) {
    if (!h) throw ValidationError("nonadiabatic_u: missing Hamiltonian");
    if (c.provenance() != Provenance::schrodinger) {
        throw ValidationError(
            "nonadiabatic_u: the curve must be the Schroedinger evolution of its initial "
            "decomposition (from_schrodinger_evolution)");
    }
    const std::size_t n = c.ambient_dim();

    // [Hbar, P_l] = [H, P_l] is an identity for orthogonal decompositions;
    // verify it at the grid samples as a sanity check on the curve.
    for (std::size_t j = 0; j < c.samples(); j += std::max<std::size_t>(1, c.samples() / 8)) {
        ComplexMatrix hs = h(c.grid()[j]);
        ComplexMatrix k = ComplexMatrix::Zero(n, n);
        for (std::size_t l = 0; l < c.eta(); ++l) {
            ComplexMatrix p = projector(c.sample(j).frame(l));
            k += p * hs * p;
        }
        double defect = 0.0;
        for (std::size_t l = 0; l < c.eta(); ++l) {
            ComplexMatrix p = projector(c.sample(j).frame(l));
            defect = std::max(defect, max_abs(ComplexMatrix(k * p - p * k)));
        }
        if (defect > 1e-8 * std::max(1.0, max_abs(hs))) {
            throw NumericCheckError(
                "nonadiabatic_u: block-diagonal part of H does not commute with the projectors; "
                "decomposition is not orthogonal");
        }
    }

    auto propagate = [&](std::size_t substeps) {
        ComplexMatrix ubar = ComplexMatrix::Identity(n, n);
        std::vector<ComplexMatrix> frames;
        frames.reserve(c.eta());
        for (std::size_t l = 0; l < c.eta(); ++l) frames.push_back(c.front().frame(l).basis());
        for (std::size_t j = 0; j + 1 < c.samples(); ++j) {
            const double s0 = c.grid()[j], s1 = c.grid()[j + 1];
            const double hstep = (s1 - s0) / static_cast<double>(substeps);
            for (std::size_t k = 0; k < substeps; ++k) {
                const double mid = s0 + (static_cast<double>(k) + 0.5) * hstep;
                ComplexMatrix hm = h(mid);
                ComplexMatrix half = exp_minus_i_hermitian(hm, 0.5 * hstep);
                ComplexMatrix kblock = ComplexMatrix::Zero(n, n);
                for (std::size_t l = 0; l < c.eta(); ++l) {
                    ComplexMatrix fm = half * frames[l];
                    ComplexMatrix p = fm * fm.adjoint();
                    kblock += p * hm * p;
                }
                ubar = exp_minus_i_hermitian(ComplexMatrix(hm - kblock), hstep) * ubar;
                ComplexMatrix full = exp_minus_i_hermitian(hm, hstep);
                for (std::size_t l = 0; l < c.eta(); ++l) frames[l] = full * frames[l];
            }
        }
        return ubar;
    };

    std::size_t substeps = 2;
    ComplexMatrix coarse = propagate(substeps);
    for (int round = 0; round < 7; ++round) {
        substeps *= 2;
        ComplexMatrix fine = propagate(substeps);
        const double err = max_abs(ComplexMatrix(fine - coarse)) / 3.0;  // 2nd-order estimate
        if (err <= tol) return fine;
        coarse = std::move(fine);
    }
    std::ostringstream os;
    os << "nonadiabatic_u: integrator tolerance " << tol << " not met";
    throw NumericCheckError(os.str());
}

namespace {

/// Path-0 evolution for one strategy; returns the realized operator list and
/// the realized gamma matrix in the l1 frame.
struct Path0Plan {
    std::vector<ComplexMatrix> operations;  // applied in order to path 0
    ComplexMatrix realized_gamma;           // n1 x n1
    double phase = 0.0;                     // sum of dynamical phases (adiabatic)
};

Path0Plan build_path0_plan(const ProtocolSpec& spec) {
    const Decomposition& d0 = spec.curve.front();
    const std::size_t kappa = spec.seq.size();
    Path0Plan plan;
    switch (spec.strategy) {
        case Strategy::adiabatic: {
            if (!spec.energies) throw ValidationError("run_protocol: adiabatic needs energies");
            ComplexMatrix u = adiabatic_u(spec.curve, spec.energies);
            for (std::size_t k = 0; k < kappa; ++k) {
                plan.operations.push_back(u);
                const std::size_t next = (k + 1 < kappa) ? spec.seq[k + 1] : spec.seq[0];
                plan.operations.push_back(projector(d0.frame(next)));
            }
            for (std::size_t k = 0; k < kappa; ++k) {
                plan.phase += adaptive_simpson(
                    [&](double s) { return spec.energies(spec.seq[k], s); }, 0.0, 1.0, 1e-12);
            }
            break;
        }
        case Strategy::filtering: {
            if (spec.filtering_segments == 0) {
                throw ValidationError("run_protocol: filtering needs a filtering grid");
            }
            plan.operations =
                filtering_u_sequence(spec.curve, spec.seq, spec.filtering_segments);
            plan.operations.push_back(projector(d0.frame(spec.seq[0])));
            break;
        }
        case Strategy::nonadiabatic: {
            if (!spec.hamiltonian) {
                throw ValidationError("run_protocol: nonadiabatic needs a Hamiltonian");
            }
            ComplexMatrix u = nonadiabatic_u(spec.hamiltonian, spec.curve, spec.integrator_tol);
            for (std::size_t k = 0; k < kappa; ++k) {
                plan.operations.push_back(u);
                const std::size_t next = (k + 1 < kappa) ? spec.seq[k + 1] : spec.seq[0];
                plan.operations.push_back(projector(d0.frame(next)));
            }
            break;
        }
    }
    const std::size_t n = spec.curve.ambient_dim();
    ComplexMatrix a = ComplexMatrix::Identity(n, n);
    for (const ComplexMatrix& op : plan.operations) a = op * a;
    // strip the dynamical phase so realized_gamma is the geometric part
    const Complex unphase(std::cos(-plan.phase), std::sin(-plan.phase));
    plan.realized_gamma = unphase * block_of(a, d0.frame(spec.seq[0]));
    return plan;
}

}  // namespace

ProtocolResult run_protocol(const ProtocolSpec& spec) {
    if (spec.curve.samples() == 0) throw ValidationError("run_protocol: spec has no curve");
    if (spec.seq.empty()) throw ValidationError("run_protocol: empty sequence");
    for (std::size_t l : spec.seq) {
        if (l >= spec.curve.eta()) throw ValidationError("run_protocol: index out of range");
    }
    const Decomposition& d0 = spec.curve.front();
    check_admissible_v(spec.v, d0);

    Path0Plan plan = build_path0_plan(spec);

    TwoPathState st = TwoPathState::prepare(d0, spec.seq[0]);
    st.beam_splitter();
    st.apply_path1(spec.v);
    for (const ComplexMatrix& op : plan.operations) st.apply_path0(op);
    const double surviving = st.total_weight();
    st.validate();
    st.beam_splitter();

    ProtocolResult r;
    r.p = st.path0_weight();
    r.post_selection_weight = surviving;

    const std::size_t n1 = d0.frame(spec.seq[0]).sub_dim();
    ComplexMatrix v_block = block_of(spec.v, d0.frame(spec.seq[0]));
    r.p_closed_form = formula_p(plan.realized_gamma, v_block, n1, plan.phase);

    SigmaTable table = build_sigma_table(spec.curve);
    ComplexMatrix gamma_ideal = gamma_product(table, spec.seq);
    r.p_ideal = formula_p(gamma_ideal, v_block, n1, plan.phase);

    r.cross_check_error = std::abs(r.p - r.p_closed_form);
    if (r.cross_check_error > kCrossCheckTol) {
        std::ostringstream os;
        os << "run_protocol: simulated p deviates from the closed form by "
           << r.cross_check_error;
        throw NumericCheckError(os.str());
    }
    return r;
}

ExtractResult extract_holonomy(const ProtocolSpec& spec) {
    if (spec.curve.samples() == 0) throw ValidationError("extract_holonomy: spec has no curve");
    if (spec.seq.empty()) throw ValidationError("extract_holonomy: empty sequence");
    const Decomposition& d0 = spec.curve.front();
    const std::size_t n = spec.curve.ambient_dim();
    const std::size_t l1 = spec.seq[0];
    const std::size_t n1 = d0.frame(l1).sub_dim();

    SigmaTable table = build_sigma_table(spec.curve);
    ComplexMatrix gamma = gamma_product(table, spec.seq);
    SvdResult dec = svd(gamma);

    ExtractResult r;
    const double smax = dec.singular_values.size() > 0 ? dec.singular_values(0) : 0.0;
    const double cut = std::max(1e-10 * smax, 1e-8);
    double sum_sv = 0.0;
    for (Eigen::Index i = 0; i < dec.singular_values.size(); ++i) {
        if (dec.singular_values(i) > cut) ++r.rank;
        sum_sv += dec.singular_values(i);
    }
    r.holonomy_undefined = (r.rank == 0);
    r.unique_on_support = (r.rank == n1);

    if (r.holonomy_undefined) {
        r.v_star_block = ComplexMatrix::Identity(n1, n1);
    } else {
        // polar factor with the null block filled by the SVD completion
        r.v_star_block = dec.u * dec.v.adjoint();
    }

    if (spec.strategy == Strategy::adiabatic) {
        if (!spec.energies) throw ValidationError("extract_holonomy: adiabatic needs energies");
        for (std::size_t k = 0; k < spec.seq.size(); ++k) {
            r.dynamical_phase += adaptive_simpson(
                [&](double s) { return spec.energies(spec.seq[k], s); }, 0.0, 1.0, 1e-12);
        }
        r.v_star_block =
            Complex(std::cos(r.dynamical_phase), std::sin(r.dynamical_phase)) * r.v_star_block;
    }

    r.v_star = ComplexMatrix::Zero(n, n);
    for (std::size_t l = 0; l < d0.eta(); ++l) {
        if (l == l1) {
            r.v_star += d0.frame(l).basis() * r.v_star_block * d0.frame(l).basis().adjoint();
        } else {
            r.v_star += projector(d0.frame(l));
        }
    }

    const double tr_gg = (gamma * gamma.adjoint()).trace().real();
    r.p_max = 0.25 + tr_gg / (4.0 * static_cast<double>(n1)) +
              sum_sv / (2.0 * static_cast<double>(n1));

    // maximality sweep: no unitary perturbation of V* may beat p_max
    std::mt19937_64 rng(0x5eedULL);
    std::normal_distribution<double> nd;
    ComplexMatrix w_block = dec.u * dec.v.adjoint();  // phase-free optimizer
    for (int trial = 0; trial < 64; ++trial) {
        ComplexMatrix g(n1, n1);
        for (std::size_t i = 0; i < n1; ++i) {
            for (std::size_t j = 0; j < n1; ++j) g(i, j) = Complex(nd(rng), nd(rng));
        }
        ComplexMatrix k = 0.5 * (g - g.adjoint());
        const double eps = (trial % 2 == 0) ? 0.05 : 0.7;
        ComplexMatrix v_try = w_block * exp_antihermitian(ComplexMatrix(eps * k));
        const double p_try = formula_p(gamma, v_try, n1, 0.0);
        if (p_try > r.p_max + 1e-9) {
            throw InternalConsistencyError(
                "extract_holonomy: a perturbed V beat the analytic maximum");
        }
    }
    return r;
}

ComplexMatrix random_admissible_v(const Decomposition& d0, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    const std::size_t n = d0.ambient_dim();
    ComplexMatrix v = ComplexMatrix::Zero(n, n);
    for (std::size_t l = 0; l < d0.eta(); ++l) {
        const std::size_t nl = d0.frame(l).sub_dim();
        ComplexMatrix g(nl, nl);
        for (std::size_t i = 0; i < nl; ++i) {
            for (std::size_t j = 0; j < nl; ++j) g(i, j) = Complex(nd(rng), nd(rng));
        }
        Eigen::HouseholderQR<ComplexMatrix> qr(g);
        ComplexMatrix q = qr.householderQ();
        ComplexMatrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
        for (std::size_t j = 0; j < nl; ++j) {
            Complex d = rr(j, j);
            if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
        }
        v += d0.frame(l).basis() * q * d0.frame(l).basis().adjoint();
    }
    return v;
}

}  // namespace odholo
