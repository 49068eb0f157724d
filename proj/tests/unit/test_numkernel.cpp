#include <doctest.h>

#include <random>

#include "../support/test_support.hpp"
#include "odholo/numkernel.hpp"

using namespace odholo;

TEST_CASE("svd reproduces the input and sorts singular values") {
    ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    SvdResult r = svd(id);
    CHECK(r.singular_values(0) == doctest::Approx(1.0));
    CHECK(r.singular_values(1) == doctest::Approx(1.0));
    CHECK(max_abs(ComplexMatrix(r.u * r.v.adjoint() - id)) < 1e-14);

    ComplexMatrix z(2, 2);
    z << 0, 0, 1, 0;
    r = svd(z);
    CHECK(r.singular_values(0) == doctest::Approx(1.0));
    CHECK(r.singular_values(1) == doctest::Approx(0.0));

    ComplexMatrix d(2, 2);
    d << 2, 0, 0, 0;
    r = svd(d);
    CHECK(r.singular_values(0) == doctest::Approx(2.0));
    CHECK(r.singular_values(1) == doctest::Approx(0.0));

    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        ComplexMatrix m = testing::random_complex(4, 3, rng);
        SvdResult s = svd(m);
        ComplexMatrix recon =
            s.u.leftCols(3) * s.singular_values.asDiagonal().toDenseMatrix().cast<Complex>() *
            s.v.adjoint();
        CHECK(max_abs(ComplexMatrix(recon - m)) < 1e-12);
        for (int i = 1; i < s.singular_values.size(); ++i) {
            CHECK(s.singular_values(i - 1) >= s.singular_values(i));
        }
    }
}

TEST_CASE("svd rejects non-finite input") {
    ComplexMatrix m(1, 1);
    m(0, 0) = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(svd(m), KernelError);
}

TEST_CASE("phi_map on pinned cases") {
    ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    CHECK(max_abs(ComplexMatrix(phi_map(id) - id)) < 1e-14);

    ComplexMatrix d(2, 2);
    d << 2, 0, 0, 0;
    ComplexMatrix expect(2, 2);
    expect << 1, 0, 0, 0;
    CHECK(max_abs(ComplexMatrix(phi_map(d) - expect)) < 1e-14);

    ComplexMatrix z(2, 2);
    z << 0, 0, 1, 0;
    CHECK(max_abs(ComplexMatrix(phi_map(z) - z)) < 1e-14);

    ComplexMatrix zero = ComplexMatrix::Zero(3, 3);
    CHECK(max_abs(phi_map(zero)) == 0.0);

    CHECK_THROWS_AS(phi_map(ComplexMatrix::Zero(2, 3)), ValidationError);
}

TEST_CASE("phi_map yields partial isometries, unitaries for invertible input") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 2 + t % 3;
        ComplexMatrix z = testing::random_complex(n, n, rng);
        if (t % 2 == 0) {
            // force rank deficiency
            z.col(0) = z.col(n - 1);
            z = z * z.adjoint() * z;
        }
        ComplexMatrix w = phi_map(z);
        CHECK(max_abs(ComplexMatrix(w * w.adjoint() * w - w)) < 1e-12);
    }
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + t % 3;
        ComplexMatrix z = testing::random_complex(n, n, rng);
        z += 3.0 * ComplexMatrix::Identity(n, n);  // comfortably invertible
        CHECK(is_unitary(phi_map(z), 1e-10));
    }
}

TEST_CASE("phi_map transforms covariantly under unitaries") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 3;
        ComplexMatrix z = testing::random_complex(n, n, rng);
        ComplexMatrix u = testing::random_unitary(n, rng);
        ComplexMatrix v = testing::random_unitary(n, rng);
        ComplexMatrix lhs = phi_map(ComplexMatrix(u * z * v));
        ComplexMatrix rhs = u * phi_map(z) * v;
        CHECK(max_abs(ComplexMatrix(lhs - rhs)) < 1e-10);
    }
}

TEST_CASE("numerical_rank counts relative to the largest singular value") {
    CHECK(numerical_rank(ComplexMatrix::Zero(3, 3)) == 0);
    CHECK(numerical_rank(ComplexMatrix::Identity(3, 3)) == 3);
    ComplexMatrix ones(2, 2);
    ones << 1, 1, 1, 1;
    CHECK(numerical_rank(ones) == 1);

    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        ComplexMatrix a = testing::random_complex(4, 2, rng);
        ComplexMatrix b = testing::random_complex(2, 4, rng);
        ComplexMatrix m = a * b;  // rank <= 2
        const std::size_t r = numerical_rank(m);
        CHECK(r <= 2);
        ComplexMatrix u = testing::random_unitary(4, rng);
        CHECK(numerical_rank(ComplexMatrix(u * m)) == r);
        CHECK(numerical_rank(ComplexMatrix(m * u)) == r);
    }
}

TEST_CASE("is_unitary") {
    CHECK(is_unitary(ComplexMatrix::Identity(3, 3), 1e-12));
    ComplexMatrix d(2, 2);
    d << 1, 0, 0, 0.5;
    CHECK_FALSE(is_unitary(d, 1e-6));
    const double a = 0.83;
    ComplexMatrix rot(2, 2);
    rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    CHECK(is_unitary(rot, 1e-12));
    CHECK_THROWS_AS(is_unitary(ComplexMatrix::Zero(2, 3), 1e-6), ValidationError);
}

TEST_CASE("exp_antihermitian is exactly unitary") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 10; ++t) {
        ComplexMatrix g = testing::random_complex(3, 3, rng);
        ComplexMatrix a = 0.5 * (g - g.adjoint());
        CHECK(is_unitary(exp_antihermitian(a), 1e-13));
    }
    CHECK(max_abs(ComplexMatrix(exp_antihermitian(ComplexMatrix::Zero(2, 2)) -
                                ComplexMatrix::Identity(2, 2))) < 1e-15);
    // 2x2 real antisymmetric generator gives the rotation matrix
    ComplexMatrix j(2, 2);
    j << 0, 1.3, -1.3, 0;
    ComplexMatrix r = exp_antihermitian(j);
    CHECK(std::abs(r(0, 0).real() - std::cos(1.3)) < 1e-14);
    CHECK(std::abs(r(0, 1).real() - std::sin(1.3)) < 1e-14);
}

TEST_CASE("adaptive_simpson") {
    const double z = adaptive_simpson(
        [](double s) { return std::cos(M_PI * s / 2.0) * M_PI / 2.0; }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(z - 1.0) < 1e-11);
    const double osc =
        adaptive_simpson([](double s) { return std::sin(20.0 * s) * 20.0; }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(osc - (1.0 - std::cos(20.0))) < 1e-10);
}
