#include <doctest.h>

#include "hqgrass/json_io.hpp"
#include "hqgrass/lab.hpp"
#include "test_util.hpp"

using namespace hqgrass;
using hqtest::subspace_gap;

TEST_CASE("frame JSON round trip") {
    HQSpace space(3);
    lab::Rng rng(40);
    const Frame U = lab::random_subspace(space, 4, rng);
    const json j = frame_to_json(space, U);
    const LoadedFrame back = frame_from_json(j);
    CHECK(back.space.n() == 3);
    CHECK(back.frame.dim() == 4);
    CHECK(back.orthonormality_residual < 1e-12);
    CHECK(subspace_gap(back.frame, U) < 1e-12);
}

TEST_CASE("loader orthonormalizes and records the residual") {
    HQSpace space(2);
    json j;
    j["n"] = 2;
    json c1 = json::array(), c2 = json::array();
    for (int r = 0; r < 8; ++r) {
        c1.push_back(r == 0 ? 2.0 : 0.0);             // 2 e1
        c2.push_back(r == 0 ? 1.0 : (r == 4 ? 1.0 : 0.0));  // e1 + e2
    }
    j["columns"] = json::array({c1, c2});
    const LoadedFrame lf = frame_from_json(j);
    CHECK(lf.frame.dim() == 2);
    CHECK(lf.frame.orthonormality_residual() < 1e-12);
    CHECK(lf.orthonormality_residual > 1.0);  // far from orthonormal on input
}

TEST_CASE("malformed frame JSON rejected") {
    CHECK_THROWS_AS(frame_from_json(json::parse("{\"columns\": []}")),
                    std::invalid_argument);
    CHECK_THROWS_AS(frame_from_json(json::parse("{\"n\": 0, \"columns\": []}")),
                    std::invalid_argument);
    CHECK_THROWS_AS(frame_from_json(json::parse("{\"n\": 2, \"columns\": [[1, 0]]}")),
                    std::invalid_argument);
}

TEST_CASE("generator specs") {
    HQSpace space(8);
    SUBCASE("every class parses and generates") {
        const std::vector<std::string> specs = {
            R"({"class":"two_plane","im":[0.1,0.2,-0.3]})",
            R"({"class":"complex4","structure":[1,0,0],"theta":0.5})",
            R"({"class":"complex_even","structure":[0,1,0],"multiangle":[0.5,1.0],"dim":8})",
            R"({"class":"sigma","items":[{"structure":[1,0,0],"multiangle":[0.4],"dim":4},{"structure":[0,0,1],"multiangle":[0.9],"dim":4}]})",
            R"({"class":"quaternionic","dim":8})",
            R"({"class":"rhps","dim":3})",
        };
        const std::vector<int> dims = {2, 4, 8, 8, 8, 3};
        for (size_t i = 0; i < specs.size(); ++i) {
            const Frame U = generate_from_spec(space, json::parse(specs[i]));
            CHECK(U.dim() == dims[i]);
        }
    }
    SUBCASE("scrambling preserves the orbit invariant") {
        const json spec = json::parse(
            R"({"class":"complex4","structure":[0,1,0],"theta":0.8})");
        json scrambled = spec;
        scrambled["scramble_seed"] = 17;
        const Frame U = generate_from_spec(space, spec);
        const Frame W = generate_from_spec(space, scrambled);
        CHECK(subspace_gap(U, W) > 1e-3);  // actually moved
        CHECK(same_orbit(space, AdmissibleBasis{}, U, W));
    }
    SUBCASE("invalid specs rejected") {
        CHECK_THROWS_AS(generate_from_spec(space, json::parse(R"({"class":"swizzle"})")),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            generate_from_spec(
                space, json::parse(R"({"class":"complex4","structure":[2,0,0],"theta":0.5})")),
            std::invalid_argument);
    }
}

TEST_CASE("report shapes") {
    HQSpace space(8);
    lab::Rng rng(41);
    SUBCASE("invariant report") {
        const Frame U = lab::make_complex4(space, StructureCoeffs::I(), 0.4, 0);
        const OrbitInvariant inv = orbit_invariant(space, AdmissibleBasis{}, U);
        const json rep = invariant_report(inv, 1e-8, 1e-6);
        CHECK(rep.at("class") == "complex");
        CHECK(rep.at("data").contains("structure"));
        CHECK(rep.at("data").contains("multiangle"));
        CHECK(rep.at("tolerances").at("tol_snap") == 1e-8);
    }
    SUBCASE("decomposition report") {
        Eigen::MatrixXd cols(space.dim(), 5);
        cols.leftCols(4) = lab::make_quaternionic(space, 4, 0).basis();
        cols.col(4) = space.e(1);
        const Frame U = Frame::orthonormalize(cols);
        const Decomposition d = full_decompose(space, U);
        const json rep = decomposition_report(space, U, d, 1e-8);
        CHECK(rep.at("U_Q_dim") == 4);
        CHECK(rep.at("U_R_dim") == 1);
        CHECK(rep.at("residuals").at("span_max_principal_angle").get<double>() < 1e-6);
    }
    SUBCASE("witness report") {
        const Frame U = lab::make_rhps(space, 2, 0);
        const Eigen::MatrixXd g = lab::random_sp_n(space, rng.next_u64());
        const Frame W = Frame::orthonormalize(g * U.basis(), 1e-10);
        const auto wit = sp_n_witness(space, AdmissibleBasis{}, U, W);
        REQUIRE(wit.has_value());
        const json rep = witness_report(*wit);
        CHECK(rep.at("g").size() == 32);
        CHECK(rep.at("verification").at("commutator_norms").size() == 3);
    }
}
