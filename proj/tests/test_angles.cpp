#include <doctest.h>

#include <cmath>

#include "hqgrass/angles.hpp"
#include "hqgrass/lab.hpp"
#include "test_util.hpp"

using namespace hqgrass;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("principal angles") {
    HQSpace space(8);
    lab::Rng rng(1);
    SUBCASE("coincident subspaces give zeros") {
        const Frame U = lab::random_subspace(space, 4, rng);
        CHECK(principal_angles(U, U).thetas.maxCoeff() < 1e-7);
    }
    SUBCASE("a line against its I-image is orthogonal") {
        const Eigen::VectorXd e1 = space.e(0);
        const auto pa = principal_angles(Frame::span_of(e1),
                                         Frame::span_of(space.apply_I(e1)));
        CHECK(std::abs(pa.thetas[0] - kPi / 2.0) < 1e-14);
    }
    SUBCASE("a generated complex 4-plane is equiangular with its K-image") {
        const double theta = 0.8;
        const StructureCoeffs I = lab::random_structure(rng);
        const Frame U = lab::make_complex4(space, I, theta, 0);
        const AdmissibleBasis ad = adapted_basis(I);
        const Frame KU = Frame::orthonormalize(space.apply(ad.K(), U.basis()));
        const auto pa = principal_angles(U, KU);
        REQUIRE(pa.count() == 4);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(pa.thetas[i] - theta) < 1e-12);
        // cross-check cos theta = hypot(<X,KY>, <X,JY>) on an I-orthonormal pair
        const Eigen::VectorXd X = U.col(0);
        const Eigen::VectorXd Y =
            complement_in(U, Frame::span_of(X, space.apply(I, X))).col(0);
        const double a = X.dot(space.apply(ad.K(), Y));
        const double b = X.dot(space.apply(ad.J(), Y));
        CHECK(std::abs(std::hypot(a, b) - std::cos(theta)) < 1e-12);
    }
    SUBCASE("symmetric and re-orthonormalization invariant") {
        const Frame U = lab::random_subspace(space, 3, rng);
        const Frame W = lab::random_subspace(space, 5, rng);
        const auto ab = principal_angles(U, W);
        const auto ba = principal_angles(W, U);
        CHECK((ab.thetas - ba.thetas).cwiseAbs().maxCoeff() < 1e-12);
        Eigen::MatrixXd shuffled(space.dim(), 3);
        shuffled.col(0) = U.col(2) + 0.3 * U.col(0);
        shuffled.col(1) = U.col(1) - U.col(2);
        shuffled.col(2) = U.col(0);
        const auto again = principal_angles(Frame::orthonormalize(shuffled), W);
        CHECK((ab.thetas - again.thetas).cwiseAbs().maxCoeff() < 1e-9);
    }
    SUBCASE("related principal vectors pair non-negatively") {
        const Frame U = lab::random_subspace(space, 3, rng);
        const Frame W = lab::random_subspace(space, 4, rng);
        const auto pa = principal_angles(U, W);
        for (int i = 0; i < pa.count(); ++i) {
            CHECK(pa.left.col(i).dot(pa.right.col(i)) >= -1e-12);
            CHECK(std::abs(pa.left.col(i).dot(pa.right.col(i)) - pa.cosines[i]) < 1e-12);
        }
    }
    SUBCASE("zero-dimensional input rejected") {
        const Frame U = lab::random_subspace(space, 2, rng);
        CHECK_THROWS_AS(principal_angles(U, Frame(space.dim())), std::invalid_argument);
    }
}

TEST_CASE("subspace angle via product of cosines") {
    HQSpace space(8);
    lab::Rng rng(2);
    SUBCASE("identical and orthogonal cases") {
        const Frame U = lab::random_subspace(space, 3, rng);
        CHECK(subspace_angle(U, U) < 1e-7);
        // a subspace containing a direction orthogonal to W has angle pi/2
        Eigen::MatrixXd cols(space.dim(), 2);
        cols.col(0) = space.e(0);
        cols.col(1) = space.e(1);
        const Frame W = Frame::orthonormalize(cols);
        Eigen::MatrixXd cols2(space.dim(), 2);
        cols2.col(0) = space.apply_J(space.e(0));
        cols2.col(1) = space.e(1);
        const Frame A = Frame::orthonormalize(cols2);
        CHECK(std::abs(subspace_angle(A, W) - kPi / 2.0) < 1e-12);
    }
    SUBCASE("agrees with the Gram-determinant oracle") {
        for (int t = 0; t < 50; ++t) {
            const int p = 1 + static_cast<int>(rng.next_u64() % 4);
            const int q = p + static_cast<int>(rng.next_u64() % 3);
            const Frame U = lab::random_subspace(space, p, rng);
            const Frame W = lab::random_subspace(space, q, rng);
            CHECK(std::abs(std::cos(subspace_angle(U, W)) -
                           std::cos(lab::oracle_subspace_angle(U, W))) < 1e-9);
        }
    }
    SUBCASE("dimension precondition") {
        const Frame U = lab::random_subspace(space, 3, rng);
        const Frame W = lab::random_subspace(space, 2, rng);
        CHECK_THROWS_AS(subspace_angle(U, W), std::invalid_argument);
    }
}

TEST_CASE("Kaehler angle of an oriented plane") {
    HQSpace space(2);
    lab::Rng rng(3);
    const Eigen::VectorXd X = lab::random_unit_vector(space, rng);
    SUBCASE("holomorphic plane has angle 0") {
        const Eigen::VectorXd Y = -space.apply_I(X);
        CHECK(kaehler_angle(space, StructureCoeffs::I(), X, Y) < 1e-12);
    }
    SUBCASE("real coordinate plane has angle pi/2 for every structure") {
        for (int t = 0; t < 5; ++t) {
            const StructureCoeffs A = lab::random_structure(rng);
            CHECK(std::abs(kaehler_angle(space, A, space.e(0), space.e(1)) - kPi / 2.0) <
                  1e-12);
        }
    }
    SUBCASE("orientation reversal negates the cosine") {
        const Eigen::VectorXd Y = lab::random_unit_vector(space, rng);
        const StructureCoeffs A = lab::random_structure(rng);
        CHECK(std::abs(std::cos(kaehler_angle(space, A, X, Y)) +
                       std::cos(kaehler_angle(space, A, Y, X))) < 1e-12);
    }
    SUBCASE("parallel generators rejected") {
        CHECK_THROWS_AS(kaehler_angle(space, StructureCoeffs::I(), X, 2.0 * X),
                        std::invalid_argument);
    }
}

TEST_CASE("characteristic and Hermitian angles") {
    HQSpace space(4);
    lab::Rng rng(4);
    SUBCASE("same quaternionic line") {
        const Eigen::VectorXd L = lab::random_unit_vector(space, rng);
        const Eigen::VectorXd M = space.right_multiply(L, lab::random_sp1(5));
        CHECK(hermitian_angle(space, L, M) < 1e-7);
        CHECK(characteristic_angle(space, L, M) < 1e-7);
    }
    SUBCASE("H-orthogonal lines") {
        CHECK(std::abs(hermitian_angle(space, space.e(0), space.e(1)) - kPi / 2.0) <
              1e-12);
        CHECK(std::abs(characteristic_angle(space, space.e(0), space.e(1)) - kPi / 2.0) <
              1e-12);
    }
    SUBCASE("cos theta = cos^4 theta_h and matches the quaternionic-line angle") {
        for (int t = 0; t < 20; ++t) {
            const Eigen::VectorXd L = lab::random_unit_vector(space, rng);
            const Eigen::VectorXd M = lab::random_unit_vector(space, rng);
            const double th = hermitian_angle(space, L, M);
            const double tc = characteristic_angle(space, L, M);
            CHECK(std::abs(std::cos(tc) - std::pow(std::cos(th), 4)) < 1e-12);
            const Frame QL = quaternionify(space, Frame::span_of(L));
            const Frame QM = quaternionify(space, Frame::span_of(M));
            CHECK(std::abs(std::cos(tc) - std::cos(subspace_angle(QL, QM))) < 1e-9);
        }
    }
    SUBCASE("zero vectors rejected") {
        CHECK_THROWS_AS(hermitian_angle(space, Eigen::VectorXd::Zero(space.dim()),
                                        space.e(0)),
                        std::invalid_argument);
    }
}

TEST_CASE("isoclinicity detection") {
    HQSpace space(8);
    lab::Rng rng(5);
    SUBCASE("every 2-plane is isoclinic with its images") {
        for (int t = 0; t < 10; ++t) {
            const Frame U = lab::random_subspace(space, 2, rng);
            const StructureCoeffs A = lab::random_structure(rng);
            CHECK(isoclinicity(space, A, U).isoclinic);
        }
    }
    SUBCASE("generated complex 4-planes: closed form for every structure") {
        const StructureCoeffs I = lab::random_structure(rng);
        const double theta = 1.1;
        const Frame U = lab::make_complex4(space, I, theta, 0);
        const AdmissibleBasis ad = adapted_basis(I);
        for (int t = 0; t < 25; ++t) {
            const StructureCoeffs c = lab::random_structure(rng);
            const StructureCoeffs A = StructureCoeffs::from_vec(ad.C * c.vec());
            const auto rep = isoclinicity(space, A, U);
            CHECK(rep.isoclinic);
            const double expect = std::sqrt(c.alpha * c.alpha +
                                            (1.0 - c.alpha * c.alpha) *
                                                std::cos(theta) * std::cos(theta));
            CHECK(std::abs(std::cos(rep.angle) - expect) < 1e-12);
        }
    }
    SUBCASE("random 6-dimensional subspaces are generically not isoclinic") {
        int isoclinic_hits = 0;
        for (int t = 0; t < 10; ++t) {
            const Frame U = lab::random_subspace(space, 6, rng);
            const StructureCoeffs A = lab::random_structure(rng);
            if (isoclinicity(space, A, U).isoclinic) ++isoclinic_hits;
        }
        CHECK(isoclinic_hits == 0);
    }
    SUBCASE("odd-dimensional isoclinic subspaces are strictly orthogonal to images") {
        const Frame R = lab::make_rhps(space, 3, 0);
        for (int t = 0; t < 5; ++t) {
            const StructureCoeffs A = lab::random_structure(rng);
            const auto rep = isoclinicity(space, A, R);
            CHECK(rep.isoclinic);
            CHECK(std::abs(rep.angle - kPi / 2.0) < 1e-12);
        }
    }
}

TEST_CASE("trace formula for the angle of isoclinicity") {
    HQSpace space(8);
    lab::Rng rng(6);
    SUBCASE("quaternionic subspaces have angle 0") {
        const Frame Q = lab::make_quaternionic(space, 4, 0);
        const StructureCoeffs A = lab::random_structure(rng);
        CHECK(std::cos(isoclinic_angle_trace(space, A, Q)) > 1.0 - 1e-12);
    }
    SUBCASE("totally complex against an anticommuting structure gives pi/2") {
        const Frame U = lab::make_complex4(space, StructureCoeffs::I(), kPi / 2.0, 0);
        CHECK(std::cos(isoclinic_angle_trace(space, StructureCoeffs::J(), U)) < 1e-12);
    }
    SUBCASE("worked combination 1/3 I + 2/3 J + 2/3 K") {
        const double theta = 0.6;
        const Frame U = lab::make_complex4(space, StructureCoeffs::I(), theta, 0);
        const StructureCoeffs A{1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0};
        const double c = std::cos(isoclinic_angle_trace(space, A, U));
        const double expect2 = 1.0 / 9.0 + (8.0 / 9.0) * std::cos(theta) * std::cos(theta);
        CHECK(std::abs(c * c - expect2) < 1e-12);
        CHECK(std::abs(c - std::cos(isoclinicity(space, A, U).angle)) < 1e-9);
    }
    SUBCASE("non-4-dimensional input rejected") {
        const Frame R = lab::make_rhps(space, 3, 0);
        CHECK_THROWS_AS(isoclinic_angle_trace(space, StructureCoeffs::I(), R),
                        std::invalid_argument);
    }
}

TEST_CASE("sum of squared cosines is admissible-basis independent") {
    HQSpace space(4);
    lab::Rng rng(7);
    SUBCASE("for 2-planes") {
        const Frame U = lab::random_subspace(space, 2, rng);
        auto sum_for = [&](const AdmissibleBasis& basis) {
            double s = 0.0;
            for (const auto& A : {basis.I(), basis.J(), basis.K()}) {
                const double c = std::cos(isoclinicity(space, A, U).angle);
                s += c * c;
            }
            return s;
        };
        const double ref = sum_for(AdmissibleBasis{});
        for (int t = 0; t < 10; ++t) {
            CHECK(std::abs(sum_for(lab::random_admissible_basis(rng)) - ref) < 1e-9);
        }
    }
    SUBCASE("for isoclinic 4-dimensional subspaces") {
        const Frame U = lab::make_complex4(space, lab::random_structure(rng), 0.7, 0);
        auto sum_for = [&](const AdmissibleBasis& basis) {
            double s = 0.0;
            for (const auto& A : {basis.I(), basis.J(), basis.K()}) {
                const double c = std::cos(isoclinic_angle_trace(space, A, U));
                s += c * c;
            }
            return s;
        };
        const double ref = sum_for(AdmissibleBasis{});
        for (int t = 0; t < 10; ++t) {
            CHECK(std::abs(sum_for(lab::random_admissible_basis(rng)) - ref) < 1e-9);
        }
    }
}
