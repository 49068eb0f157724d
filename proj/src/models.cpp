#include "odholo/models.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <utility>

namespace odholo {

namespace {

double eval_path(const std::vector<double>& coeffs, double s) {
    if (coeffs.empty()) return 0.0;
    double v = coeffs[0] * s;
    for (std::size_t m = 1; m < coeffs.size(); ++m) {
        v += coeffs[m] * std::sin(M_PI * static_cast<double>(m) * s);
    }
    return v;
}

double eval_path_dot(const std::vector<double>& coeffs, double s) {
    if (coeffs.empty()) return 0.0;
    double v = coeffs[0];
    for (std::size_t m = 1; m < coeffs.size(); ++m) {
        v += coeffs[m] * M_PI * static_cast<double>(m) *
             std::cos(M_PI * static_cast<double>(m) * s);
    }
    return v;
}

}  // namespace

TripodPath::TripodPath(std::vector<double> t, std::vector<double> p, double omega)
    : theta_coeffs_(std::move(t)), phi_coeffs_(std::move(p)), omega_(omega) {
    if (theta_coeffs_.empty()) theta_coeffs_.push_back(0.0);
    if (phi_coeffs_.empty()) phi_coeffs_.push_back(0.0);
}

TripodPath TripodPath::linear(double theta1, double phi1, double omega) {
    return TripodPath({theta1}, {phi1}, omega);
}

TripodPath TripodPath::fourier(std::vector<double> theta_coeffs, std::vector<double> phi_coeffs,
                               double omega) {
    return TripodPath(std::move(theta_coeffs), std::move(phi_coeffs), omega);
}

TripodPath TripodPath::random_smooth(std::uint64_t seed, double omega) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<double> t(4), p(4);
    t[0] = 0.25 + (M_PI - 0.5) * u01(rng);
    p[0] = -M_PI + 2.0 * M_PI * u01(rng);
    for (std::size_t m = 1; m < 4; ++m) {
        const double scale = 0.4 / (static_cast<double>(m) * static_cast<double>(m));
        t[m] = scale * (2.0 * u01(rng) - 1.0);
        p[m] = scale * (2.0 * u01(rng) - 1.0);
    }
    return TripodPath(std::move(t), std::move(p), omega);
}

double TripodPath::theta(double s) const { return eval_path(theta_coeffs_, s); }
double TripodPath::phi(double s) const { return eval_path(phi_coeffs_, s); }
double TripodPath::theta_dot(double s) const { return eval_path_dot(theta_coeffs_, s); }
double TripodPath::phi_dot(double s) const { return eval_path_dot(phi_coeffs_, s); }
double TripodPath::theta1() const { return theta_coeffs_[0]; }
double TripodPath::phi1() const { return phi_coeffs_[0]; }

ComplexMatrix tripod_hamiltonian(const TripodPath& p, double s) {
    const double th = p.theta(s), ph = p.phi(s);
    Eigen::Vector3d b(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
    ComplexMatrix h = ComplexMatrix::Zero(4, 4);
    for (int j = 0; j < 3; ++j) {
        h(0, j + 1) = p.omega() * b(j);
        h(j + 1, 0) = p.omega() * b(j);
    }
    return h;
}

Decomposition tripod_frames(const TripodPath& p, double s) {
    const double th = p.theta(s), ph = p.phi(s);
    const double st = std::sin(th), ct = std::cos(th);
    const double sp = std::sin(ph), cp = std::cos(ph);
    const double r2 = std::sqrt(2.0);

    ComplexMatrix bplus(4, 1), bminus(4, 1), dark(4, 2);
    bplus << 1.0 / r2, st * cp / r2, st * sp / r2, ct / r2;
    bminus << 1.0 / r2, -st * cp / r2, -st * sp / r2, -ct / r2;
    dark.col(0) << 0.0, ct * cp, ct * sp, -st;
    dark.col(1) << 0.0, -sp, cp, 0.0;

    std::vector<Frame> frames;
    frames.emplace_back(std::move(bplus));
    frames.emplace_back(std::move(bminus));
    frames.emplace_back(std::move(dark));
    return Decomposition(std::move(frames));
}

CurveFamily tripod_curve(const TripodPath& p, std::vector<double> grid) {
    return CurveFamily::from_generator([p](double s) { return tripod_frames(p, s); },
                                       std::move(grid), /*smooth_frames=*/true);
}

double tripod_z(const TripodPath& p) {
    return adaptive_simpson([&p](double s) { return std::cos(p.theta(s)) * p.phi_dot(s); }, 0.0,
                            1.0, 1e-12);
}

namespace {

struct EntryBuilder {
    HolonomyTolerance tol;
    std::vector<TripodOracleEntry>* out;

    void add(std::string label, std::vector<std::size_t> seq, ComplexMatrix gamma) {
        TripodOracleEntry e;
        e.label = std::move(label);
        e.seq = std::move(seq);
        e.gamma = std::move(gamma);
        SvdResult dec = svd(e.gamma);
        const double smax = dec.singular_values.size() > 0 ? dec.singular_values(0) : 0.0;
        const double cut = std::max(tol.rank_rel * smax, tol.zero_abs);
        e.holonomy = ComplexMatrix::Zero(e.gamma.rows(), e.gamma.cols());
        for (Eigen::Index i = 0; i < dec.singular_values.size(); ++i) {
            if (dec.singular_values(i) > cut) {
                e.holonomy += dec.u.col(i) * dec.v.col(i).adjoint();
                ++e.rank;
            }
        }
        const std::size_t n1 = static_cast<std::size_t>(e.gamma.rows());
        e.status = (e.rank == 0)    ? HolonomyStatus::undefined
                   : (e.rank == n1) ? HolonomyStatus::full
                                    : HolonomyStatus::partial;
        out->push_back(std::move(e));
    }
};

ComplexMatrix scalar1x1(double v) {
    ComplexMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

}  // namespace

const TripodOracleEntry& TripodOracle::entry(const std::vector<std::size_t>& seq) const {
    for (const TripodOracleEntry& e : entries) {
        if (e.seq == seq) return e;
    }
    throw ValidationError("TripodOracle: no entry for requested sequence");
}

const TripodOracleEntry& TripodOracle::entry(const std::string& label) const {
    for (const TripodOracleEntry& e : entries) {
        if (e.label == label) return e;
    }
    throw ValidationError("TripodOracle: no entry labelled " + label);
}

TripodOracle tripod_oracle(const TripodPath& p, HolonomyTolerance tol) {
    TripodOracle o;
    o.z = tripod_z(p);
    o.theta1 = p.theta1();
    o.phi1 = p.phi1();

    const double c1 = std::cos(o.theta1);
    const double s1 = std::sin(o.theta1);
    const double cz = std::cos(o.z), sz = std::sin(o.z);
    const double cp1 = std::cos(o.phi1), sp1 = std::sin(o.phi1);
    const double cd = std::cos(o.phi1 - o.z);

    const double diag_bright = (1.0 + c1) / 2.0;   // sigma^{++} = sigma^{--}
    const double cross_bright = (1.0 - c1) / 2.0;  // sigma^{+-} = sigma^{-+}
    const double half_s2 = s1 * s1 / 2.0;

    // sigma^{dd} = (F^d_0|F^d_1) T_d with T_d the rotation by Z
    Eigen::Matrix2d dark_overlap;
    dark_overlap << c1 * cp1, -sp1, c1 * sp1, cp1;
    Eigen::Matrix2d t_dark;
    t_dark << cz, sz, -sz, cz;
    ComplexMatrix sigma_dd = (dark_overlap * t_dark).cast<Complex>();

    // rank-1 carriers of the dark-first families
    Eigen::Matrix2d vw;
    vw << cp1 * cz, cp1 * sz, sp1 * cz, sp1 * sz;

    EntryBuilder b{tol, &o.entries};

    b.add("U1[+]", {kBrightPlus}, scalar1x1(diag_bright));
    b.add("U1[-]", {kBrightMinus}, scalar1x1(diag_bright));
    b.add("U1[d]", {kDark}, sigma_dd);

    b.add("U2[+,-]", {kBrightPlus, kBrightMinus}, scalar1x1(cross_bright * cross_bright));
    b.add("U2[-,+]", {kBrightMinus, kBrightPlus}, scalar1x1(cross_bright * cross_bright));

    b.add("U2[+,d]", {kBrightPlus, kDark}, scalar1x1(-half_s2 * cd));
    b.add("U2[-,d]", {kBrightMinus, kDark}, scalar1x1(-half_s2 * cd));
    b.add("U2[d,+]", {kDark, kBrightPlus}, ComplexMatrix((-half_s2 * vw).cast<Complex>()));
    b.add("U2[d,-]", {kDark, kBrightMinus}, ComplexMatrix((-half_s2 * vw).cast<Complex>()));

    b.add("U3[+,-,d]", {kBrightPlus, kBrightMinus, kDark},
          scalar1x1(half_s2 * cd * cross_bright));
    b.add("U3[-,+,d]", {kBrightMinus, kBrightPlus, kDark},
          scalar1x1(half_s2 * cd * cross_bright));
    b.add("U3[+,d,-]", {kBrightPlus, kDark, kBrightMinus},
          scalar1x1(half_s2 * cd * cross_bright));
    b.add("U3[-,d,+]", {kBrightMinus, kDark, kBrightPlus},
          scalar1x1(half_s2 * cd * cross_bright));
    b.add("U3[d,+,-]", {kDark, kBrightPlus, kBrightMinus},
          ComplexMatrix((cross_bright * half_s2 * vw).cast<Complex>()));
    b.add("U3[d,-,+]", {kDark, kBrightMinus, kBrightPlus},
          ComplexMatrix((cross_bright * half_s2 * vw).cast<Complex>()));

    return o;
}

}  // namespace odholo
