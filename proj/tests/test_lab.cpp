#include <doctest.h>

#include <cmath>

#include "hqgrass/lab.hpp"
#include "hqgrass/orbit.hpp"
#include "test_util.hpp"

using namespace hqgrass;
using hqtest::max_abs;
using hqtest::subspace_gap;

namespace {
constexpr double kPi = 3.14159265358979323846;
const AdmissibleBasis kStd{};
}  // namespace

TEST_CASE("splittable rng") {
    lab::Rng a(42), b(42);
    for (int t = 0; t < 100; ++t) CHECK(a.next_u64() == b.next_u64());
    lab::Rng c(42);
    lab::Rng s1 = c.split(1), s2 = c.split(2);
    CHECK(s1.next_u64() != s2.next_u64());
    // splitting does not disturb the parent stream
    lab::Rng d(42);
    for (int t = 0; t < 100; ++t) CHECK(c.next_u64() == d.next_u64());
    lab::Rng g(7);
    double mean = 0.0;
    for (int t = 0; t < 4000; ++t) mean += g.gaussian();
    CHECK(std::abs(mean / 4000.0) < 0.1);
}

TEST_CASE("make_complex4 postconditions") {
    HQSpace space(8);
    lab::Rng rng(29);
    SUBCASE("the planted angle is the I-perp Kaehler angle") {
        for (int t = 0; t < 10; ++t) {
            const StructureCoeffs I = lab::random_structure(rng);
            const double theta = rng.uniform(0.05, kPi / 2);
            const Frame U = lab::make_complex4(space, I, theta, 0);
            CHECK(U.dim() == 4);
            CHECK(std::abs(i_perp_kaehler_angle(space, I, U) - theta) < 1e-10);
        }
    }
    SUBCASE("theta 0 degenerates to a quaternionic line") {
        const Frame U = lab::make_complex4(space, lab::random_structure(rng), 0.0, 0);
        CHECK(classify(space, U).cls == SubspaceClass::Quaternionic);
    }
    SUBCASE("theta pi/2 is totally complex") {
        const StructureCoeffs I = lab::random_structure(rng);
        const Frame U = lab::make_complex4(space, I, kPi / 2, 0);
        const AdmissibleBasis ad = adapted_basis(I);
        const Frame KU = Frame::orthonormalize(space.apply(ad.K(), U.basis()));
        CHECK(principal_angles(U, KU).cosines.maxCoeff() < 1e-12);
    }
    SUBCASE("principal angles of (U, KU) all equal the parameter") {
        const StructureCoeffs I = lab::random_structure(rng);
        const Frame U = lab::make_complex4(space, I, kPi / 3, 0);
        const AdmissibleBasis ad = adapted_basis(I);
        const Frame KU = Frame::orthonormalize(space.apply(ad.K(), U.basis()));
        const auto pa = principal_angles(U, KU);
        for (int i = 0; i < pa.count(); ++i) CHECK(std::abs(pa.thetas[i] - kPi / 3) < 1e-10);
    }
    SUBCASE("insufficient slots rejected") {
        CHECK_THROWS_AS(lab::make_complex4(space, StructureCoeffs::I(), 0.5, 7),
                        std::invalid_argument);
    }
}

TEST_CASE("generators round-trip through classification") {
    HQSpace space(8);
    lab::Rng rng(30);
    SUBCASE("two-plane with prescribed measure") {
        const Quaternion im{0.0, 0.2, -0.5, 0.6};
        const Frame U = lab::make_two_plane(space, im, 0);
        const OrbitInvariant inv = orbit_invariant(space, kStd, U);
        const auto& t = std::get<TwoPlaneInvariant>(inv.data);
        CHECK(std::min(dist(t.im, im), dist(t.im, -im)) < 1e-12);
    }
    SUBCASE("complex even") {
        const StructureCoeffs I = lab::random_structure(rng);
        const std::vector<double> multi{0.3, 1.0};
        const Frame U = lab::make_complex_even(space, I, multi, 4, 0);
        CHECK(U.dim() == 8);
        const OrbitInvariant inv = orbit_invariant(space, kStd, U);
        const auto& c = std::get<ComplexInvariant>(inv.data);
        CHECK(dist_up_to_sign(c.I, I) < 1e-9);
        REQUIRE(c.multiangle.size() == 2);
        CHECK(std::abs(c.multiangle[0] - 0.3) < 1e-9);
        CHECK(std::abs(c.multiangle[1] - 1.0) < 1e-9);
    }
    SUBCASE("quaternionic is fixed by all three structures") {
        const Frame Q = lab::make_quaternionic(space, 8, 0);
        for (const auto& A :
             {StructureCoeffs::I(), StructureCoeffs::J(), StructureCoeffs::K()}) {
            CHECK(subspace_gap(Q, Frame::orthonormalize(space.apply(A, Q.basis()))) <
                  1e-10);
        }
        CHECK(std::get<QuaternionicInvariant>(orbit_invariant(space, kStd, Q).data).dim ==
              8);
    }
    SUBCASE("r.h.p.s. has real pairwise products") {
        const Frame R = lab::make_rhps(space, 3, 0);
        for (int r = 0; r < 3; ++r) {
            for (int s = 0; s < 3; ++s) {
                CHECK(space.hermitian_product(R.col(r), R.col(s)).im_norm() < 1e-14);
            }
        }
    }
    SUBCASE("generators on disjoint slots are Hermitian-orthogonal") {
        const Frame A = lab::make_complex4(space, lab::random_structure(rng), 0.4, 0);
        const Frame B = lab::make_complex4(space, lab::random_structure(rng), 1.2, 2);
        const Frame C = lab::make_rhps(space, 2, 4);
        CHECK(is_hermitian_orthogonal(space, A, B));
        CHECK(is_hermitian_orthogonal(space, A, C));
        CHECK(is_hermitian_orthogonal(space, B, C));
    }
    SUBCASE("invalid multiangle shapes rejected") {
        CHECK_THROWS_AS(lab::make_complex_even(space, StructureCoeffs::I(), {0.5}, 4, 0),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            lab::make_complex_even(space, StructureCoeffs::I(), {0.5, 0.7}, 3, 0),
            std::invalid_argument);
        CHECK_THROWS_AS(lab::make_quaternionic(space, 6, 0), std::invalid_argument);
        CHECK_THROWS_AS(lab::make_two_plane(space, Quaternion{0, 2, 0, 0}, 0),
                        std::invalid_argument);
    }
}

TEST_CASE("random Sp(n) elements") {
    HQSpace space(6);
    SUBCASE("reproducible per seed") {
        const Eigen::MatrixXd a = lab::random_sp_n(space, 123);
        const Eigen::MatrixXd b = lab::random_sp_n(space, 123);
        CHECK(max_abs(a - b) == 0.0);
        const Eigen::MatrixXd c = lab::random_sp_n(space, 124);
        CHECK(max_abs(a - c) > 1e-3);
    }
    SUBCASE("orthogonal and commuting with the structures") {
        const Eigen::MatrixXd g = lab::random_sp_n(space, 5);
        CHECK(max_abs(g.transpose() * g -
                      Eigen::MatrixXd::Identity(space.dim(), space.dim())) < 1e-10);
        for (const auto& A :
             {StructureCoeffs::I(), StructureCoeffs::J(), StructureCoeffs::K()}) {
            const Eigen::MatrixXd S = space.structure_matrix(A);
            CHECK(max_abs(g * S - S * g) < 1e-10);
        }
    }
    SUBCASE("acts as an isometry on principal angles") {
        lab::Rng rng(31);
        for (int t = 0; t < 10; ++t) {
            const Frame U = lab::random_subspace(space, 3, rng);
            const Frame W = lab::random_subspace(space, 4, rng);
            const auto before = principal_angles(U, W);
            const Eigen::MatrixXd g = lab::random_sp_n(space, rng.next_u64());
            const auto after =
                principal_angles(Frame::orthonormalize(g * U.basis(), 1e-10),
                                 Frame::orthonormalize(g * W.basis(), 1e-10));
            CHECK((before.thetas - after.thetas).cwiseAbs().maxCoeff() < 1e-9);
        }
    }
}

TEST_CASE("Sp(1) homotheties") {
    HQSpace space(6);
    lab::Rng rng(32);
    const Frame U = lab::random_subspace(space, 3, rng);
    SUBCASE("unit and -i") {
        CHECK(subspace_gap(lab::act_sp1(space, U, Quaternion::one()), U) < 1e-12);
        const Frame IU = Frame::orthonormalize(space.apply_I(U.basis()));
        CHECK(subspace_gap(lab::act_sp1(space, U, -Quaternion::i()), IU) < 1e-12);
    }
    SUBCASE("characteristic deviation is preserved") {
        const double ref = characteristic_deviation(space, U);
        for (int t = 0; t < 10; ++t) {
            const Quaternion q = lab::random_sp1(rng.next_u64());
            CHECK(std::abs(characteristic_deviation(space, lab::act_sp1(space, U, q)) -
                           ref) < 1e-9);
        }
    }
    SUBCASE("imaginary measure conjugates") {
        const Frame P = lab::make_two_plane(space, Quaternion{0, 0.1, 0.6, -0.3}, 0);
        const Quaternion before = imaginary_measure(space, P.col(0), P.col(1));
        const Quaternion q = lab::random_sp1(rng.next_u64());
        const Frame Pq = lab::act_sp1(space, P, q);
        // act_sp1 re-orthonormalizes; recompute on the carried basis to keep
        // the orientation
        const Quaternion after =
            imaginary_measure(space, space.right_multiply(P.col(0), q),
                              space.right_multiply(P.col(1), q));
        const Quaternion expect = q.conj() * before * q;
        CHECK(dist(after, expect) < 1e-12);
        CHECK(std::abs(after.norm() - before.norm()) < 1e-12);
        // for the frame route only the pair {+,-} is pinned down
        const Quaternion frame_im = imaginary_measure(space, Pq.col(0), Pq.col(1));
        CHECK(std::min(dist(frame_im, expect), dist(frame_im, -expect)) < 1e-12);
    }
    SUBCASE("non-unit quaternion rejected") {
        CHECK_THROWS_AS(lab::act_sp1(space, U, Quaternion{2, 0, 0, 0}),
                        std::invalid_argument);
    }
}

TEST_CASE("principal-angle oracle cross-validation") {
    HQSpace space(8);
    lab::Rng rng(33);
    SUBCASE("coincident subspaces") {
        const Frame U = lab::random_subspace(space, 4, rng);
        CHECK(lab::oracle_principal_angles(U, U).thetas.maxCoeff() < 1e-6);
    }
    SUBCASE("orthogonal image") {
        const Eigen::VectorXd e1 = space.e(0);
        const auto pa = lab::oracle_principal_angles(
            Frame::span_of(e1), Frame::span_of(space.apply_I(e1)));
        CHECK(std::abs(pa.thetas[0] - kPi / 2) < 1e-12);
    }
    SUBCASE("matches the SVD engine on random pairs") {
        for (int t = 0; t < 25; ++t) {
            const Frame U = lab::random_subspace(space, 3, rng);
            const Frame W = lab::random_subspace(space, 5, rng);
            const auto engine = principal_angles(U, W);
            const auto oracle = lab::oracle_principal_angles(U, W);
            CHECK((engine.thetas - oracle.thetas).cwiseAbs().maxCoeff() < 1e-9);
        }
    }
}
