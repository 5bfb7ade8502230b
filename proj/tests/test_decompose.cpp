#include <doctest.h>

#include <cmath>

#include "hqgrass/decompose.hpp"
#include "hqgrass/lab.hpp"
#include "test_util.hpp"

using namespace hqgrass;
using hqtest::subspace_gap;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("maximal quaternionic subspace") {
    HQSpace space(8);
    SUBCASE("a quaternionic line is fixed") {
        const Frame Q = quaternionify(space, Frame::span_of(space.e(0)));
        CHECK(subspace_gap(maximal_quaternionic(space, Q), Q) < 1e-10);
    }
    SUBCASE("totally real input gives zero") {
        CHECK(maximal_quaternionic(space, lab::make_rhps(space, 4, 0)).dim() == 0);
    }
    SUBCASE("mixed input keeps the quaternionic part") {
        const Frame Q = lab::make_quaternionic(space, 4, 0);
        const Eigen::VectorXd e2 = space.e(1);
        Eigen::MatrixXd cols(space.dim(), 6);
        cols.leftCols(4) = Q.basis();
        cols.col(4) = e2;
        cols.col(5) = space.apply_I(e2);
        const Frame U = Frame::orthonormalize(cols);
        const Frame got = maximal_quaternionic(space, U);
        CHECK(subspace_gap(got, Q) < 1e-9);
    }
}

TEST_CASE("find_complex_structure") {
    HQSpace space(8);
    lab::Rng rng(14);
    SUBCASE("recovers the structure of a holomorphic plane") {
        for (int t = 0; t < 5; ++t) {
            const StructureCoeffs A = lab::random_structure(rng);
            const Eigen::VectorXd X = lab::random_unit_vector(space, rng);
            const Frame W = Frame::orthonormalize(space.dim(), {X, space.apply(A, X)});
            const auto found = find_complex_structure(space, W);
            REQUIRE(found.has_value());
            CHECK(dist_up_to_sign(*found, A) < 1e-9);
        }
    }
    SUBCASE("r.h.p.s. input has none") {
        CHECK_FALSE(find_complex_structure(space, lab::make_rhps(space, 4, 0)).has_value());
    }
    SUBCASE("a tilted real 2-plane has none") {
        const Eigen::VectorXd e1 = space.e(0);
        const Eigen::VectorXd v =
            (space.apply_I(e1) + space.e(1)) / std::sqrt(2.0);
        const Frame W = Frame::orthonormalize(space.dim(), {e1, v});
        CHECK_FALSE(find_complex_structure(space, W).has_value());
    }
}

TEST_CASE("full_decompose") {
    HQSpace space(8);
    lab::Rng rng(15);
    SUBCASE("mixed three-part example") {
        Eigen::MatrixXd cols(space.dim(), 7);
        cols.leftCols(4) = lab::make_quaternionic(space, 4, 0).basis();
        const Eigen::VectorXd e2 = space.e(1);
        cols.col(4) = e2;
        cols.col(5) = space.apply_I(e2);
        cols.col(6) = space.e(2);
        const Frame U = Frame::orthonormalize(cols);
        const Decomposition d = full_decompose(space, U);
        CHECK(d.U_Q.dim() == 4);
        REQUIRE(d.sigma.size() == 1);
        CHECK(d.sigma[0].U.dim() == 2);
        CHECK(dist_up_to_sign(d.sigma[0].I, StructureCoeffs::I()) < 1e-9);
        CHECK(d.U_R.dim() == 1);
        // the real residual must avoid the quaternionification of U_Q
        CHECK(intersect(quaternionify(space, d.U_R), d.U_Q).dim() == 0);
    }
    SUBCASE("totally real input") {
        const Frame R = lab::make_rhps(space, 5, 0);
        const Decomposition d = full_decompose(space, R);
        CHECK(d.U_Q.dim() == 0);
        CHECK(d.sigma.empty());
        CHECK(d.U_R.dim() == 5);
    }
    SUBCASE("sigma-complex structures are recovered with dims preserved") {
        const StructureCoeffs I1 = StructureCoeffs{1, 0, 0};
        const StructureCoeffs I2 = StructureCoeffs{1, 1, 0}.normalized();
        const std::vector<lab::SigmaSpecItem> items{{I1, {0.5}, 2}, {I2, {0.7, kPi / 2}, 3}};
        const Frame U = lab::make_sigma(space, items, 0);
        const Decomposition d = full_decompose(space, U);
        CHECK(d.U_Q.dim() == 0);
        CHECK(d.U_R.dim() == 0);
        REQUIRE(d.sigma.size() == 2);
        // lexicographic order after canonical sign
        bool found1 = false, found2 = false;
        for (const auto& addend : d.sigma) {
            if (dist_up_to_sign(addend.I, I1) < 1e-7) {
                found1 = true;
                CHECK(addend.U.dim() == 4);
            }
            if (dist_up_to_sign(addend.I, I2) < 1e-7) {
                found2 = true;
                CHECK(addend.U.dim() == 6);
            }
        }
        CHECK(found1);
        CHECK(found2);
    }
    SUBCASE("idempotent on its own addends") {
        const StructureCoeffs I = lab::random_structure(rng);
        const Frame U = lab::make_complex4(space, I, 0.8, 0);
        Eigen::MatrixXd cols(space.dim(), 5);
        cols.leftCols(4) = U.basis();
        cols.col(4) = space.e(3);
        const Decomposition d = full_decompose(space, Frame::orthonormalize(cols));
        REQUIRE(d.sigma.size() == 1);
        const Decomposition dd = full_decompose(space, d.sigma[0].U);
        CHECK(dd.U_Q.dim() == 0);
        REQUIRE(dd.sigma.size() == 1);
        CHECK(dd.U_R.dim() == 0);
        CHECK(dist_up_to_sign(dd.sigma[0].I, d.sigma[0].I) < 1e-9);
        const Decomposition dr = full_decompose(space, d.U_R);
        CHECK(dr.U_R.dim() == d.U_R.dim());
        CHECK(dr.sigma.empty());
    }
}

TEST_CASE("decompose_complex") {
    HQSpace space(8);
    lab::Rng rng(16);
    SUBCASE("two Hermitian-orthogonal 4-planes come back sorted") {
        const StructureCoeffs I = lab::random_structure(rng);
        const Frame U = lab::make_complex_even(space, I, {0.5, 1.2}, 4, 0);
        const auto parts = decompose_complex(space, I, U);
        REQUIRE(parts.size() == 2);
        CHECK(std::abs(parts[0].first - 0.5) < 1e-9);
        CHECK(std::abs(parts[1].first - 1.2) < 1e-9);
        CHECK(parts[0].second.dim() == 4);
        CHECK(parts[1].second.dim() == 4);
        CHECK(is_hermitian_orthogonal(space, parts[0].second, parts[1].second));
    }
    SUBCASE("totally complex of dim 6") {
        const StructureCoeffs I = lab::random_structure(rng);
        const Frame U = lab::make_complex_even(space, I, {kPi / 2, kPi / 2}, 3, 0);
        const auto parts = decompose_complex(space, I, U);
        REQUIRE(parts.size() == 2);
        CHECK(parts[0].second.dim() == 4);
        CHECK(parts[1].second.dim() == 2);
        CHECK(std::abs(parts[0].first - kPi / 2) < 1e-9);
        CHECK(std::abs(parts[1].first - kPi / 2) < 1e-9);
    }
    SUBCASE("a 4-dimensional subspace is already atomic") {
        const StructureCoeffs I = lab::random_structure(rng);
        const Frame U = lab::make_complex4(space, I, 0.9, 0);
        const auto parts = decompose_complex(space, I, U);
        REQUIRE(parts.size() == 1);
        CHECK(subspace_gap(parts[0].second, U) < 1e-10);
    }
    SUBCASE("preconditions") {
        const Frame R = lab::make_rhps(space, 4, 0);
        CHECK_THROWS_AS(decompose_complex(space, StructureCoeffs::I(), R),
                        std::invalid_argument);
        const Frame Q = lab::make_quaternionic(space, 4, 0);
        CHECK_THROWS_AS(decompose_complex(space, StructureCoeffs::I(), Q),
                        std::invalid_argument);
    }
}

TEST_CASE("kaehler_multiangle") {
    HQSpace space(8);
    lab::Rng rng(17);
    SUBCASE("generated triple round-trips") {
        const StructureCoeffs I = lab::random_structure(rng);
        const std::vector<double> multi{0.3, 0.9, kPi / 2};
        const Frame U = lab::make_complex_even(space, I, multi, 5, 0);
        const auto got = kaehler_multiangle(space, I, U);
        REQUIRE(got.size() == 3);
        for (size_t i = 0; i < 3; ++i) CHECK(std::abs(got[i] - multi[i]) < 1e-9);
    }
    SUBCASE("independent of the decomposition path") {
        const StructureCoeffs I = lab::random_structure(rng);
        const Frame U = lab::make_complex_even(space, I, {0.6, 0.6}, 4, 0);
        const auto ref = kaehler_multiangle(space, I, U);
        for (int t = 0; t < 10; ++t) {
            Eigen::MatrixXd O(8, 8);
            for (int r = 0; r < 8; ++r) {
                for (int c = 0; c < 8; ++c) O(r, c) = rng.gaussian();
            }
            const Eigen::HouseholderQR<Eigen::MatrixXd> qr(O);
            const Frame V = Frame::from_orthonormal(
                U.basis() * Eigen::MatrixXd(qr.householderQ()));
            const auto got = kaehler_multiangle(space, I, V);
            REQUIRE(got.size() == ref.size());
            for (size_t i = 0; i < got.size(); ++i) {
                CHECK(std::abs(got[i] - ref[i]) < 1e-8);
            }
        }
    }
    SUBCASE("totally complex multiangle is all pi/2") {
        const StructureCoeffs I = lab::random_structure(rng);
        const Frame U = lab::make_complex_even(space, I, {kPi / 2, kPi / 2}, 4, 0);
        for (double v : kaehler_multiangle(space, I, U)) {
            CHECK(std::abs(v - kPi / 2) < 1e-9);
        }
    }
}

TEST_CASE("decomposition is stable under the group action") {
    HQSpace space(8);
    lab::Rng rng(18);
    const StructureCoeffs I1 = StructureCoeffs{0, 1, 0};
    const StructureCoeffs I2 = StructureCoeffs{3, 0, 4}.normalized();
    const std::vector<lab::SigmaSpecItem> items{{I1, {0.4}, 2}, {I2, {1.0}, 2}};
    const Frame U = lab::make_sigma(space, items, 0);
    for (int t = 0; t < 5; ++t) {
        const Eigen::MatrixXd g = lab::random_sp_n(space, rng.next_u64());
        const Frame gU = Frame::orthonormalize(g * U.basis(), 1e-10);
        const Decomposition d = full_decompose(space, gU);
        REQUIRE(d.sigma.size() == 2);
        CHECK(d.U_Q.dim() == 0);
        CHECK(d.U_R.dim() == 0);
        double d1 = 1e9, d2 = 1e9;
        for (const auto& addend : d.sigma) {
            d1 = std::min(d1, dist_up_to_sign(addend.I, I1));
            d2 = std::min(d2, dist_up_to_sign(addend.I, I2));
        }
        CHECK(d1 < 1e-7);
        CHECK(d2 < 1e-7);
    }
}
