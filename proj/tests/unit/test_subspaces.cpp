#include <doctest.h>

#include <random>

#include "../support/test_support.hpp"
#include "odholo/models.hpp"
#include "odholo/subspaces.hpp"

using namespace odholo;

namespace {

ComplexMatrix unit_column(std::size_t n, std::size_t i) {
    ComplexMatrix e = ComplexMatrix::Zero(n, 1);
    e(i, 0) = 1.0;
    return e;
}

}  // namespace

TEST_CASE("projector on pinned frames") {
    Frame e1(unit_column(2, 0));
    ComplexMatrix p = projector(e1);
    CHECK(p(0, 0) == Complex(1, 0));
    CHECK(p(1, 1) == Complex(0, 0));

    ComplexMatrix two = ComplexMatrix::Zero(3, 2);
    two(0, 0) = 1.0;
    two(1, 1) = 1.0;
    ComplexMatrix p2 = projector(Frame(two));
    CHECK(p2(0, 0) == Complex(1, 0));
    CHECK(p2(1, 1) == Complex(1, 0));
    CHECK(p2(2, 2) == Complex(0, 0));

    ComplexMatrix diag(2, 1);
    diag << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    ComplexMatrix pd = projector(Frame(diag));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) CHECK(std::abs(pd(i, j) - Complex(0.5, 0)) < 1e-14);
    }
}

TEST_CASE("projector is Hermitian idempotent with trace n") {
    std::mt19937_64 rng(3);
    ComplexMatrix q = testing::random_unitary(5, rng);
    Frame f(ComplexMatrix(q.leftCols(2)));
    ComplexMatrix p = projector(f);
    CHECK(max_abs(ComplexMatrix(p - p.adjoint())) < 1e-13);
    CHECK(max_abs(ComplexMatrix(p * p - p)) < 1e-13);
    CHECK(std::abs(p.trace().real() - 2.0) < 1e-12);
}

TEST_CASE("frame and decomposition invariants are enforced") {
    ComplexMatrix bad(2, 1);
    bad << 1.0, 1.0;  // not normalized
    CHECK_THROWS_AS(Frame{bad}, ValidationError);

    // dimensions must sum to N
    CHECK_THROWS_AS(Decomposition({Frame(unit_column(3, 0)), Frame(unit_column(3, 1))}),
                    ValidationError);

    // frames must be orthogonal
    ComplexMatrix overlap(2, 1);
    overlap << 1.0, 0.0;
    CHECK_THROWS_AS(Decomposition({Frame(overlap), Frame(overlap)}), ValidationError);
}

TEST_CASE("apply_gauge leaves projectors untouched") {
    TripodPath p = TripodPath::fourier({1.1, 0.2}, {0.6, -0.1}, 1.0);
    CurveFamily c = tripod_curve(p, uniform_grid(24));

    SUBCASE("identity gauge") {
        GaugeTransform g;
        g.blocks.resize(c.samples());
        for (std::size_t j = 0; j < c.samples(); ++j) {
            for (std::size_t d : c.dims()) g.blocks[j].push_back(ComplexMatrix::Identity(d, d));
        }
        CurveFamily gc = apply_gauge(c, g);
        for (std::size_t j = 0; j < c.samples(); ++j) {
            for (std::size_t l = 0; l < c.eta(); ++l) {
                CHECK(max_abs(ComplexMatrix(gc.sample(j).frame(l).basis() -
                                            c.sample(j).frame(l).basis())) < 1e-15);
            }
        }
    }

    SUBCASE("constant global phase on a one-dimensional subspace") {
        GaugeTransform g;
        g.blocks.resize(c.samples());
        const Complex phase = std::exp(Complex(0.0, 0.77));
        for (std::size_t j = 0; j < c.samples(); ++j) {
            for (std::size_t l = 0; l < c.eta(); ++l) {
                const std::size_t d = c.dims()[l];
                ComplexMatrix u = ComplexMatrix::Identity(d, d);
                if (l == 0) u *= phase;
                g.blocks[j].push_back(u);
            }
        }
        CurveFamily gc = apply_gauge(c, g);
        for (std::size_t j = 0; j < c.samples(); ++j) {
            CHECK(max_abs(ComplexMatrix(projector(gc.sample(j).frame(0)) -
                                        projector(c.sample(j).frame(0)))) < 1e-13);
        }
    }

    SUBCASE("random block unitaries") {
        GaugeTransform g = random_gauge(c, 99);
        CurveFamily gc = apply_gauge(c, g);
        for (std::size_t j = 0; j < c.samples(); ++j) {
            for (std::size_t l = 0; l < c.eta(); ++l) {
                CHECK(max_abs(ComplexMatrix(projector(gc.sample(j).frame(l)) -
                                            projector(c.sample(j).frame(l)))) < 1e-12);
            }
        }
    }

    SUBCASE("block size mismatch is rejected") {
        GaugeTransform g;
        g.blocks.resize(c.samples());
        for (std::size_t j = 0; j < c.samples(); ++j) {
            for (std::size_t l = 0; l < c.eta(); ++l) {
                g.blocks[j].push_back(ComplexMatrix::Identity(3, 3));
            }
        }
        CHECK_THROWS_AS(apply_gauge(c, g), ValidationError);
    }
}

TEST_CASE("decomposition completeness along curves") {
    CurveFamily c = random_unitary_curve({1, 1, 2}, uniform_grid(16), 5);
    for (std::size_t j = 0; j < c.samples(); ++j) {
        ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
        for (std::size_t l = 0; l < c.eta(); ++l) sum += projector(c.sample(j).frame(l));
        CHECK(max_abs(ComplexMatrix(sum - ComplexMatrix::Identity(4, 4))) < 1e-10);
    }
    // smoothness constant bounds every projector step
    for (std::size_t j = 0; j + 1 < c.samples(); ++j) {
        const double ds = c.grid()[j + 1] - c.grid()[j];
        for (std::size_t l = 0; l < c.eta(); ++l) {
            ComplexMatrix dp = projector(c.sample(j + 1).frame(l)) - projector(c.sample(j).frame(l));
            Eigen::JacobiSVD<ComplexMatrix> dec(dp);
            CHECK(dec.singularValues()(0) <= c.smoothness_constant() * ds * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("from_hamiltonian_path clusters tripod eigenspaces") {
    TripodPath p = TripodPath::fourier({0.9, 0.1}, {0.5, 0.2}, 1.0);
    auto h = [p](double s) { return tripod_hamiltonian(p, s); };
    CurveFamily c = CurveFamily::from_hamiltonian_path(h, uniform_grid(40));

    // ascending eigenvalue order: (-w), (0,0), (+w)
    REQUIRE(c.eta() == 3);
    CHECK(c.dims() == std::vector<std::size_t>{1, 2, 1});
    // as a multiset this is the bright/bright/dark split {1,1,2}
    for (std::size_t j = 0; j < c.samples(); j += 13) {
        ComplexMatrix hs = h(c.grid()[j]);
        for (std::size_t l = 0; l < 3; ++l) {
            ComplexMatrix pr = projector(c.sample(j).frame(l));
            CHECK(max_abs(ComplexMatrix(hs * pr - pr * hs)) < 1e-8);
        }
        // middle cluster is the zero-energy (dark) pair
        ComplexMatrix dark = c.sample(j).frame(1).basis();
        CHECK(max_abs(ComplexMatrix(hs * dark)) < 1e-8);
    }
}

TEST_CASE("from_hamiltonian_path on a constant diagonal Hamiltonian") {
    auto h = [](double) {
        ComplexMatrix m = ComplexMatrix::Zero(3, 3);
        m(0, 0) = 1.0;
        m(1, 1) = 2.0;
        m(2, 2) = 3.0;
        return m;
    };
    CurveFamily c = CurveFamily::from_hamiltonian_path(h, uniform_grid(8));
    CHECK(c.dims() == std::vector<std::size_t>{1, 1, 1});
    for (std::size_t j = 0; j < c.samples(); ++j) {
        for (std::size_t l = 0; l < 3; ++l) {
            CHECK(max_abs(ComplexMatrix(projector(c.sample(j).frame(l)) -
                                        projector(c.sample(0).frame(l)))) < 1e-12);
        }
    }
}

TEST_CASE("from_hamiltonian_path rejects level crossings") {
    auto h = [](double s) {
        ComplexMatrix m = ComplexMatrix::Zero(3, 3);
        m(0, 0) = 2.0 * (s - 0.5);
        m(1, 1) = -2.0 * (s - 0.5);
        m(2, 2) = 5.0;
        return m;
    };
    CHECK_THROWS_WITH_AS(CurveFamily::from_hamiltonian_path(h, uniform_grid(10)),
                         doctest::Contains("level crossing"), ValidationError);
}

TEST_CASE("refine keeps endpoints, sample count and smoothness") {
    TripodPath p = TripodPath::fourier({1.3, -0.2}, {0.4, 0.1}, 1.0);
    CurveFamily c = tripod_curve(p, uniform_grid(20));

    CurveFamily same = c.refined(1);
    CHECK(same.samples() == c.samples());

    CurveFamily fine = c.refined(2);
    CHECK(fine.samples() == 2 * 20 + 1);
    CHECK(fine.grid().front() == 0.0);
    CHECK(fine.grid().back() == 1.0);
    CHECK(max_abs(ComplexMatrix(fine.front().frame(2).basis() - c.front().frame(2).basis())) <
          1e-15);
    CHECK(max_abs(ComplexMatrix(fine.back().frame(2).basis() - c.back().frame(2).basis())) <
          1e-15);
    // a refined smooth curve keeps essentially the same smoothness constant
    CHECK(fine.smoothness_constant() <= 1.5 * c.smoothness_constant() + 1e-9);

    CurveFamily explicit_curve = apply_gauge(c, random_gauge(c, 1));
    CHECK_THROWS_AS(explicit_curve.refined(2), ValidationError);
}

TEST_CASE("schrodinger evolution keeps dimensions and starts at the seed") {
    TripodPath p = TripodPath::linear(1.0, 0.5, 1.0);
    auto h = [p](double s) { return tripod_hamiltonian(p, s); };
    CurveFamily c =
        CurveFamily::from_schrodinger_evolution(h, tripod_frames(p, 0.0), uniform_grid(50));
    CHECK(c.provenance() == Provenance::schrodinger);
    CHECK(c.dims() == std::vector<std::size_t>{1, 1, 2});
    CHECK(max_abs(ComplexMatrix(c.front().frame(2).basis() -
                                tripod_frames(p, 0.0).frame(2).basis())) < 1e-15);
    // projectors evolve unitarily, so pairwise orthogonality is kept (checked
    // by the Decomposition constructor at every sample)
    CHECK(c.samples() == 51);
}

TEST_CASE("cyclic random curves close exactly") {
    CurveFamily c = random_unitary_curve({2, 2}, uniform_grid(12), 8, /*cyclic=*/true);
    CHECK(c.is_cyclic(1e-13));
    CurveFamily open_curve = random_unitary_curve({2, 2}, uniform_grid(12), 8, false);
    CHECK_FALSE(open_curve.is_cyclic(1e-6));
}
