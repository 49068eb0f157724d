#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "odholo/holonomy.hpp"
#include "odholo/subspaces.hpp"

namespace odholo {

/// Unnormalized two-path density operator on (path qubit) x (internal space),
/// kept as four N x N blocks; trace is the surviving probability weight.
class TwoPathState {
public:
    /// |0><0| (x) P_{l1}(0) / n_{l1}.
    static TwoPathState prepare(const Decomposition& d0, std::size_t l1);

    /// Symmetric splitter |0> -> (|0>+|1>)/sqrt2, |1> -> (|0>-|1>)/sqrt2,
    /// identity on the internal space.
    void beam_splitter();

    /// Apply a (not necessarily unitary) internal operator on path 0 / path 1.
    void apply_path0(const ComplexMatrix& a);
    void apply_path1(const ComplexMatrix& v);

    /// Projective filter |0><0| (x) P + |1><1| (x) 1.
    void filter_path0(const ComplexMatrix& projector);

    double path0_weight() const;
    double total_weight() const;

    /// Hermiticity/positivity/trace checks; throws on violation.
    void validate(double tol = 1e-10) const;

    const ComplexMatrix& block00() const { return p00_; }
    const ComplexMatrix& block11() const { return p11_; }

private:
    TwoPathState() = default;
    ComplexMatrix p00_, p01_, p10_, p11_;
};

enum class Strategy { adiabatic, filtering, nonadiabatic };

std::string to_string(Strategy s);

/// One interferometer run: sequence, strategy, curve, the strategy's
/// dynamical data and the variable block-diagonal unitary V.
struct ProtocolSpec {
    std::vector<std::size_t> seq;
    Strategy strategy = Strategy::filtering;
    CurveFamily curve;

    /// adiabatic: E_l(s) (phase units, phi_l = int_0^1 E_l ds)
    std::function<double(std::size_t, double)> energies;
    /// nonadiabatic: H(s); the curve must be its Schroedinger evolution
    std::function<ComplexMatrix(double)> hamiltonian;
    /// filtering: number of filter segments per leg
    std::size_t filtering_segments = 0;

    /// N x N unitary with [V, P_l(0)] = 0 for every l
    ComplexMatrix v;

    double integrator_tol = 1e-9;
};

struct ProtocolResult {
    double p = 0.0;               // simulated detection probability, path 0
    double p_closed_form = 0.0;   // formula evaluated with the realized gamma
    double p_ideal = 0.0;         // formula evaluated with the transport gamma
    double cross_check_error = 0.0;
    double post_selection_weight = 1.0;  // surviving trace before recombination
};

/// U = sum_l e^{i phi_l} Gamma_l with phi_l = int_0^1 E_l(s) ds.
/// For noncyclic curves the Gamma_l need not be co-isometric, so U can fail
/// to be unitary; it is used as written and handled as a general linear map.
ComplexMatrix adiabatic_u(const CurveFamily& c,
                          const std::function<double(std::size_t, double)>& energies);

/// Ordered projective-filter list realizing legs l_1 .. l_k at resolution
/// segments (filters P_l(j/segments), j = 0..segments, per leg, in time order).
std::vector<ComplexMatrix> filtering_u_sequence(const CurveFamily& c,
                                                const std::vector<std::size_t>& seq,
                                                std::size_t segments);

/// Propagator of the modified Hamiltonian Hbar(s) = H(s) - sum_l P_l H P_l
/// over [0,1]. The curve must be the Schroedinger evolution of its s=0
/// decomposition under the same H. Step-doubling until the result is stable
/// to tol; throws NumericCheckError if the tolerance cannot be met.
/// Note: the per-subspace propagator this realizes is not gauge covariant;
/// only the assembled sum over subspaces (= sum_l Gamma_l) is geometric.
ComplexMatrix nonadiabatic_u(const std::function<ComplexMatrix(double)>& h,
                             const CurveFamily& c, double tol = 1e-9);

/// Drive the full circuit: prepare, split, V on path 1, the strategy's
/// evolution and filterings on path 0, final filter, recombine, read p.
/// Every run cross-checks the simulated p against the closed-form
/// expression for the realized gamma (1e-10) and throws on mismatch.
ProtocolResult run_protocol(const ProtocolSpec& spec);

struct ExtractResult {
    ComplexMatrix v_star;        // N x N block-diagonal optimizer
    ComplexMatrix v_star_block;  // its l1 block (includes e^{i sum phi} when adiabatic)
    double p_max = 0.0;
    double dynamical_phase = 0.0;  // sum of phi_{l_k}; 0 unless adiabatic
    std::size_t rank = 0;
    bool holonomy_undefined = false;
    bool unique_on_support = true;  // false when rank < n_{l1} (null-block freedom)
};

/// Analytic maximizer of p over admissible V: the polar factor of gamma,
/// completed to a unitary with identity weight on the null block, and
/// p_max = 1/4 + Tr(gamma gamma^dag)/(4 n) + sum_i s_i / (2 n).
/// A sweep over random unitary perturbations of V* verifies maximality.
ExtractResult extract_holonomy(const ProtocolSpec& spec);

/// Random block-diagonal unitary commuting with every P_l(0).
ComplexMatrix random_admissible_v(const Decomposition& d0, std::uint64_t seed);

}  // namespace odholo
