#include <doctest.h>

#include "../support/test_support.hpp"
#include "odholo/models.hpp"

using namespace odholo;

TEST_CASE("tripod hamiltonian structure") {
    TripodPath p = TripodPath::linear(0.0, 0.0, 2.5);
    ComplexMatrix h0 = tripod_hamiltonian(p, 0.0);
    // at (theta, phi) = (0, 0): omega (|e><a| + |a><e|), basis (e, 0, 1, a)
    CHECK(std::abs(h0(0, 3) - Complex(2.5, 0.0)) < 1e-15);
    CHECK(std::abs(h0(3, 0) - Complex(2.5, 0.0)) < 1e-15);
    CHECK(max_abs(ComplexMatrix(h0 - h0.adjoint())) == 0.0);
    CHECK(std::abs(h0.trace()) == 0.0);

    TripodPath q = TripodPath::fourier({1.2, 0.3}, {0.7, -0.1}, 1.7);
    for (double s : {0.0, 0.3, 0.8, 1.0}) {
        ComplexMatrix h = tripod_hamiltonian(q, s);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
        CHECK(std::abs(es.eigenvalues()(0) + 1.7) < 1e-12);
        CHECK(std::abs(es.eigenvalues()(1)) < 1e-12);
        CHECK(std::abs(es.eigenvalues()(2)) < 1e-12);
        CHECK(std::abs(es.eigenvalues()(3) - 1.7) < 1e-12);
        CHECK(std::abs(h.trace()) < 1e-14);
    }
}

TEST_CASE("tripod frames") {
    TripodPath p = TripodPath::linear(0.0, 0.0, 1.0);
    Decomposition d = tripod_frames(p, 0.0);
    REQUIRE(d.dims() == std::vector<std::size_t>{1, 1, 2});
    const double r2 = std::sqrt(2.0);
    ComplexMatrix bplus = d.frame(kBrightPlus).basis();
    CHECK(std::abs(bplus(0, 0) - Complex(1 / r2, 0)) < 1e-15);
    CHECK(std::abs(bplus(3, 0) - Complex(1 / r2, 0)) < 1e-15);
    ComplexMatrix dark = d.frame(kDark).basis();
    CHECK(std::abs(dark(1, 0) - Complex(1, 0)) < 1e-15);  // D1 = |0>
    CHECK(std::abs(dark(2, 1) - Complex(1, 0)) < 1e-15);  // D2 = |1>

    TripodPath q = TripodPath::fourier({1.1, -0.2}, {0.4, 0.3}, 1.0);
    for (double s : {0.1, 0.5, 0.95}) {
        Decomposition ds = tripod_frames(q, s);  // constructor enforces orthonormality 1e-10
        ComplexMatrix h = tripod_hamiltonian(q, s);
        ComplexMatrix pd = projector(ds.frame(kDark));
        CHECK(max_abs(ComplexMatrix(h * pd - pd * h)) < 1e-12);
        CHECK(max_abs(ComplexMatrix(h * pd)) < 1e-12);  // dark states carry zero energy
        // bright states carry +-omega
        CHECK(max_abs(ComplexMatrix(h * ds.frame(kBrightPlus).basis() -
                                    ds.frame(kBrightPlus).basis())) < 1e-12);
    }
}

TEST_CASE("tripod Z integral") {
    SUBCASE("phi == 0 gives Z = 0") {
        TripodPath p = TripodPath::linear(1.3, 0.0, 1.0);
        CHECK(std::abs(tripod_z(p)) < 1e-12);
    }
    SUBCASE("quarter-turn linear path gives Z = 1") {
        TripodPath p = TripodPath::linear(M_PI / 2.0, M_PI / 2.0, 1.0);
        CHECK(std::abs(tripod_z(p) - 1.0) < 1e-10);
    }
    SUBCASE("Z is path dependent at fixed endpoints") {
        TripodPath a = TripodPath::linear(M_PI / 2, 0.9, 1.0);
        TripodPath b = TripodPath::fourier({M_PI / 2}, {0.9, 0.8}, 1.0);
        CHECK(a.theta1() == b.theta1());
        CHECK(a.phi1() == b.phi1());
        CHECK(std::abs(tripod_z(a) - tripod_z(b)) > 1e-3);
    }
}

TEST_CASE("tripod oracle statuses and closed forms") {
    SUBCASE("phi == 0: bright-dark holonomy is -1 inside (0, pi)") {
        for (double theta1 : {0.4, 1.2, 2.4}) {
            TripodPath p = TripodPath::linear(theta1, 0.0, 1.0);
            TripodOracle o = tripod_oracle(p);
            CHECK(std::abs(o.z) < 1e-12);
            const auto& e = o.entry("U2[+,d]");
            CHECK(e.status == HolonomyStatus::full);
            CHECK(std::abs(e.holonomy(0, 0) - Complex(-1, 0)) < 1e-12);
        }
    }
    SUBCASE("undefined at sin(theta1) = 0 for dark-involving sequences") {
        for (double theta1 : {0.0, M_PI}) {
            TripodPath p = TripodPath::linear(theta1, 0.5, 1.0);
            TripodOracle o = tripod_oracle(p);
            CHECK(o.entry("U2[+,d]").status == HolonomyStatus::undefined);
            CHECK(o.entry("U2[d,+]").status == HolonomyStatus::undefined);
            CHECK(o.entry("U3[d,+,-]").status == HolonomyStatus::undefined);
        }
        // U1[+-] undefined only at theta1 = pi; U2[+,-] only at theta1 = 0
        TripodOracle at_pi = tripod_oracle(TripodPath::linear(M_PI, 0.5, 1.0));
        CHECK(at_pi.entry("U1[+]").status == HolonomyStatus::undefined);
        CHECK(at_pi.entry("U2[+,-]").status == HolonomyStatus::full);
        TripodOracle at_zero = tripod_oracle(TripodPath::linear(0.0, 0.5, 1.0));
        CHECK(at_zero.entry("U1[+]").status == HolonomyStatus::full);
        CHECK(at_zero.entry("U2[+,-]").status == HolonomyStatus::undefined);
    }
    SUBCASE("nodal points sit where cos(phi1 - Z) = 0 and are path dependent") {
        // linear path: Z = (2/pi) * phi1 for theta(s) = (pi/2) s
        const double phi1 = (M_PI / 2.0) / (1.0 - 2.0 / M_PI);
        TripodPath nodal = TripodPath::linear(M_PI / 2.0, phi1, 1.0);
        CHECK(std::abs(std::cos(phi1 - tripod_z(nodal))) < 1e-10);
        TripodOracle o = tripod_oracle(nodal);
        CHECK(o.entry("U2[+,d]").status == HolonomyStatus::undefined);
        CHECK(o.entry("U3[+,-,d]").status == HolonomyStatus::undefined);
        // the dark-first family stays a nonzero partial isometry
        CHECK(o.entry("U2[d,+]").status == HolonomyStatus::partial);

        // same endpoints, different Z: the node moves away
        TripodPath detour = TripodPath::fourier({M_PI / 2.0}, {phi1, 0.9}, 1.0);
        TripodOracle od = tripod_oracle(detour);
        CHECK(od.entry("U2[+,d]").status == HolonomyStatus::full);
    }
    SUBCASE("dark U1 becomes partial exactly at theta1 = pi/2") {
        CHECK(tripod_oracle(TripodPath::linear(M_PI / 2.0, 0.3, 1.0)).entry("U1[d]").rank == 1);
        CHECK(tripod_oracle(TripodPath::linear(M_PI / 2.0 - 1e-3, 0.3, 1.0)).entry("U1[d]").rank ==
              2);
        CHECK(tripod_oracle(TripodPath::linear(M_PI / 2.0 + 1e-3, 0.3, 1.0)).entry("U1[d]").rank ==
              2);
        // inside the 1e-6 window the drop is already detected
        CHECK(tripod_oracle(TripodPath::linear(M_PI / 2.0 + 1e-7, 0.3, 1.0)).entry("U1[d]").rank ==
              1);
    }
    SUBCASE("sign relations between orders hold identically") {
        for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
            TripodPath p = TripodPath::random_smooth(seed);
            TripodOracle o = tripod_oracle(p);
            CHECK(max_abs(ComplexMatrix(o.entry("U2[+,d]").holonomy +
                                        o.entry("U3[+,-,d]").holonomy)) < 1e-12);
            CHECK(max_abs(ComplexMatrix(o.entry("U2[+,d]").holonomy +
                                        o.entry("U3[+,d,-]").holonomy)) < 1e-12);
            CHECK(max_abs(ComplexMatrix(o.entry("U2[d,+]").holonomy +
                                        o.entry("U3[d,+,-]").holonomy)) < 1e-12);
            CHECK(max_abs(ComplexMatrix(o.entry("U1[+]").holonomy -
                                        o.entry("U1[-]").holonomy)) < 1e-12);
        }
    }
}

TEST_CASE("engine matches the oracle on a random path") {
    TripodPath p = TripodPath::random_smooth(7);
    TripodOracle o = tripod_oracle(p);
    CurveFamily c = tripod_curve(p, uniform_grid(300));
    SigmaTable t = build_sigma_table(c);
    for (const auto& e : o.entries) {
        HolonomyResult r = holonomy_of_order(t, e.seq, HolonomyTolerance{1e-6, 1e-6});
        CHECK(r.rank == e.rank);
        CHECK(r.status == e.status);
        CHECK(max_abs(ComplexMatrix(r.holonomy - e.holonomy)) < 1e-6);
    }
}

TEST_CASE("dark sigma rank drops across the pi/2 window in the engine") {
    auto engine_rank = [](double theta1) {
        TripodPath p = TripodPath::linear(theta1, 0.3, 1.0);
        CurveFamily c = tripod_curve(p, uniform_grid(150));
        SigmaTable t = build_sigma_table(c);
        return holonomy_of_order(t, {kDark}, HolonomyTolerance{1e-6, 1e-6}).rank;
    };
    CHECK(engine_rank(M_PI / 2.0) == 1);
    CHECK(engine_rank(M_PI / 2.0 + 1e-7) == 1);
    CHECK(engine_rank(M_PI / 2.0 - 1e-3) == 2);
    CHECK(engine_rank(M_PI / 2.0 + 1e-3) == 2);
}
