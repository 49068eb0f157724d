#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "odholo/holonomy.hpp"
#include "odholo/subspaces.hpp"

namespace odholo {

/// Tripod subspace labels used throughout: 0 = bright+, 1 = bright-, 2 = dark.
inline constexpr std::size_t kBrightPlus = 0;
inline constexpr std::size_t kBrightMinus = 1;
inline constexpr std::size_t kDark = 2;

/// Parameter-space path (0,0) -> (theta1, phi1) for the four-state tripod.
/// theta(s) = a0 s + sum_m a_m sin(pi m s) and likewise phi(s), so the
/// endpoint is fixed by the leading coefficient and higher modes deform the
/// path without moving it. Paths carry their derivative analytically.
class TripodPath {
public:
    static TripodPath linear(double theta1, double phi1, double omega = 1.0);
    static TripodPath fourier(std::vector<double> theta_coeffs, std::vector<double> phi_coeffs,
                              double omega = 1.0);
    /// Truncated Fourier path with bounded random coefficients.
    static TripodPath random_smooth(std::uint64_t seed, double omega = 1.0);

    double theta(double s) const;
    double phi(double s) const;
    double theta_dot(double s) const;
    double phi_dot(double s) const;

    double theta1() const;
    double phi1() const;
    double omega() const { return omega_; }

    const std::vector<double>& theta_coeffs() const { return theta_coeffs_; }
    const std::vector<double>& phi_coeffs() const { return phi_coeffs_; }

private:
    TripodPath(std::vector<double> t, std::vector<double> p, double omega);

    std::vector<double> theta_coeffs_;
    std::vector<double> phi_coeffs_;
    double omega_ = 1.0;
};

/// H(s) = omega |e>(sin th cos ph <0| + sin th sin ph <1| + cos th <a|) + h.c.
/// in basis order (e, 0, 1, a). Eigenvalues are {+omega, -omega, 0, 0}.
ComplexMatrix tripod_hamiltonian(const TripodPath& p, double s);

/// The bright/dark eigenframes (B+, B-, (D1, D2)), dims (1, 1, 2), real.
Decomposition tripod_frames(const TripodPath& p, double s);

/// Generator-backed curve of the tripod eigenframes; smooth frame gauge.
CurveFamily tripod_curve(const TripodPath& p, std::vector<double> grid);

/// Z = int_0^1 cos(theta(s)) phi_dot(s) ds by adaptive quadrature (< 1e-10).
double tripod_z(const TripodPath& p);

struct TripodOracleEntry {
    std::string label;                // e.g. "U2[d,+]"
    std::vector<std::size_t> seq;     // tripod subspace labels
    ComplexMatrix gamma;              // closed-form gamma matrix
    ComplexMatrix holonomy;           // closed-form Phi[gamma]
    std::size_t rank = 0;
    HolonomyStatus status = HolonomyStatus::undefined;
};

/// Closed-form values and statuses of every first-, second- and third-order
/// holonomy of the tripod, evaluated from endpoint data and Z alone.
/// Statuses use the same tolerance structure as holonomy_of_order so that a
/// correct engine agrees with the oracle bit-for-bit on clear-of-boundary
/// paths.
struct TripodOracle {
    double z = 0.0;
    double theta1 = 0.0;
    double phi1 = 0.0;
    std::vector<TripodOracleEntry> entries;

    const TripodOracleEntry& entry(const std::vector<std::size_t>& seq) const;
    const TripodOracleEntry& entry(const std::string& label) const;
};

TripodOracle tripod_oracle(const TripodPath& p, HolonomyTolerance tol = {1e-6, 1e-6});

}  // namespace odholo
