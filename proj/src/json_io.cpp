#include "hqgrass/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace hqgrass {

json frame_to_json(const HQSpace& space, const Frame& U) {
    json cols = json::array();
    for (int c = 0; c < U.dim(); ++c) {
        json col = json::array();
        for (int r = 0; r < U.ambient_dim(); ++r) col.push_back(U.basis()(r, c));
        cols.push_back(std::move(col));
    }
    return json{{"n", space.n()}, {"columns", std::move(cols)}};
}

LoadedFrame frame_from_json(const json& j, double tol_rank) {
    if (!j.is_object() || !j.contains("n") || !j.contains("columns")) {
        throw std::invalid_argument("frame JSON needs fields \"n\" and \"columns\"");
    }
    const int n = j.at("n").get<int>();
    if (n <= 0) throw std::invalid_argument("frame JSON: n must be positive");
    HQSpace space(n);
    const auto& cols = j.at("columns");
    if (!cols.is_array()) throw std::invalid_argument("frame JSON: columns must be an array");
    Eigen::MatrixXd B(space.dim(), cols.size());
    int c = 0;
    for (const auto& col : cols) {
        if (!col.is_array() || static_cast<int>(col.size()) != space.dim()) {
            throw std::invalid_argument("frame JSON: column " + std::to_string(c) +
                                        " must hold exactly 4n reals");
        }
        for (int r = 0; r < space.dim(); ++r) B(r, c) = col[r].get<double>();
        ++c;
    }
    LoadedFrame out{space, Frame(space.dim()), 0.0};
    if (c > 0) {
        const Eigen::MatrixXd gram = B.transpose() * B;
        out.orthonormality_residual =
            (gram - Eigen::MatrixXd::Identity(c, c)).cwiseAbs().maxCoeff();
        out.frame = Frame::orthonormalize(B, tol_rank);
    }
    return out;
}

LoadedFrame load_frame_file(const std::string& path, double tol_rank) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open frame file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("JSON parse error in " + path + ": " + e.what());
    }
    return frame_from_json(j, tol_rank);
}

json quaternion_to_json(const Quaternion& q) {
    return json::array({q.w, q.x, q.y, q.z});
}

json structure_to_json(const StructureCoeffs& A) {
    return json::array({A.alpha, A.beta, A.gamma});
}

json matrix_to_json(const Eigen::MatrixXd& M) {
    json rows = json::array();
    for (int r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json decomposition_report(const HQSpace& space, const Frame& U, const Decomposition& d,
                          double tol) {
    json sigma = json::array();
    double herm_residual = 0.0;
    for (size_t i = 0; i < d.sigma.size(); ++i) {
        const auto& addend = d.sigma[i];
        json item{{"structure", structure_to_json(addend.I)},
                  {"dim", addend.U.dim()},
                  {"multiangle", kaehler_multiangle(space, addend.I, addend.U, tol)}};
        sigma.push_back(std::move(item));
        for (size_t k = i + 1; k < d.sigma.size(); ++k) {
            const Eigen::MatrixXd M = quaternionify(space, addend.U).basis().transpose() *
                                      quaternionify(space, d.sigma[k].U).basis();
            if (M.size() > 0) {
                herm_residual = std::max(herm_residual, M.cwiseAbs().maxCoeff());
            }
        }
    }
    // reconstruction residual: the parts must sum back to U
    Frame sum = d.U_Q;
    for (const auto& addend : d.sigma) sum = subspace_sum(sum, addend.U);
    sum = subspace_sum(sum, d.U_R);
    double span_residual = 1.0;
    if (sum.dim() == U.dim() && U.dim() > 0) {
        span_residual = principal_angles(sum, U).thetas.maxCoeff();
    } else if (U.dim() == 0) {
        span_residual = 0.0;
    }
    return json{{"U_Q_dim", d.U_Q.dim()},
                {"sigma", std::move(sigma)},
                {"U_R_dim", d.U_R.dim()},
                {"residuals",
                 {{"span_max_principal_angle", span_residual},
                  {"hermitian_orthogonality", herm_residual}}}};
}

json invariant_report(const OrbitInvariant& inv, double tol_snap, double tol_compare) {
    json data;
    switch (inv.cls()) {
        case SubspaceClass::TwoPlane: {
            const auto& t = std::get<TwoPlaneInvariant>(inv.data);
            data = {{"imaginary_measure", quaternion_to_json(t.im)}};
            break;
        }
        case SubspaceClass::Ic4: {
            const auto& i = std::get<Ic4Invariant>(inv.data).inv;
            data = {{"theta", json::array({i.theta_I, i.theta_J, i.theta_K})},
                    {"xi", i.xi},
                    {"chi", i.chi},
                    {"eta", i.eta},
                    {"Gamma", i.Gamma},
                    {"Delta", i.Delta},
                    {"C_IJ", matrix_to_json(i.C_IJ)},
                    {"C_IK", matrix_to_json(i.C_IK)}};
            break;
        }
        case SubspaceClass::Quaternionic:
            data = {{"dim", std::get<QuaternionicInvariant>(inv.data).dim}};
            break;
        case SubspaceClass::PureComplex: {
            const auto& c = std::get<ComplexInvariant>(inv.data);
            data = {{"structure", structure_to_json(c.I)}, {"multiangle", c.multiangle}};
            break;
        }
        case SubspaceClass::SigmaComplex: {
            json items = json::array();
            for (const auto& it : std::get<SigmaComplexInvariant>(inv.data).items) {
                items.push_back({{"structure", structure_to_json(it.I)},
                                 {"multiangle", it.multiangle}});
            }
            data = {{"items", std::move(items)}};
            break;
        }
        default:
            data = {{"dim", std::get<RhpsInvariant>(inv.data).dim}};
            break;
    }
    return json{{"class", to_string(inv.cls())},
                {"data", std::move(data)},
                {"tolerances", {{"tol_snap", tol_snap}, {"tol_compare", tol_compare}}}};
}

json witness_report(const SpnWitness& wit) {
    return json{{"g", matrix_to_json(wit.g)},
                {"verification",
                 {{"max_principal_angle", wit.max_principal_angle},
                  {"commutator_norms",
                   json::array({wit.commutator_norms[0], wit.commutator_norms[1],
                                wit.commutator_norms[2]})},
                  {"orthogonality_residual", wit.orthogonality_residual}}}};
}

namespace {

StructureCoeffs structure_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) {
        throw std::invalid_argument("structure must be an [alpha,beta,gamma] triple");
    }
    StructureCoeffs A{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    if (std::abs(A.norm() - 1.0) > 1e-6) {
        throw std::invalid_argument("structure coefficients must lie on the unit sphere");
    }
    return A.normalized();
}

}  // namespace

int spec_ambient_n(const json& spec, int fallback) {
    return spec.contains("n") ? spec.at("n").get<int>() : fallback;
}

Frame generate_from_spec(const HQSpace& space, const json& spec) {
    const std::string cls = spec.at("class").get<std::string>();
    Frame out(space.dim());
    if (cls == "two_plane") {
        const auto& im = spec.at("im");
        out = lab::make_two_plane(
            space, Quaternion{0.0, im[0].get<double>(), im[1].get<double>(), im[2].get<double>()},
            0);
    } else if (cls == "complex4") {
        out = lab::make_complex4(space, structure_from_json(spec.at("structure")),
                                 spec.at("theta").get<double>(), 0);
    } else if (cls == "complex_even") {
        const int dim = spec.at("dim").get<int>();
        if (dim % 2 != 0) throw std::invalid_argument("complex_even: dim must be even");
        out = lab::make_complex_even(space, structure_from_json(spec.at("structure")),
                                     spec.at("multiangle").get<std::vector<double>>(),
                                     dim / 2, 0);
    } else if (cls == "sigma") {
        std::vector<lab::SigmaSpecItem> items;
        for (const auto& it : spec.at("items")) {
            const int dim = it.at("dim").get<int>();
            if (dim % 2 != 0) throw std::invalid_argument("sigma item: dim must be even");
            items.push_back({structure_from_json(it.at("structure")),
                             it.at("multiangle").get<std::vector<double>>(), dim / 2});
        }
        out = lab::make_sigma(space, items, 0);
    } else if (cls == "quaternionic") {
        out = lab::make_quaternionic(space, spec.at("dim").get<int>(), 0);
    } else if (cls == "rhps") {
        out = lab::make_rhps(space, spec.at("dim").get<int>(), 0);
    } else {
        throw std::invalid_argument("unknown generator class: " + cls);
    }
    if (spec.contains("scramble_seed")) {
        const Eigen::MatrixXd g =
            lab::random_sp_n(space, spec.at("scramble_seed").get<std::uint64_t>());
        out = Frame::orthonormalize(g * out.basis(), 1e-10);
    }
    return out;
}

}  // namespace hqgrass
