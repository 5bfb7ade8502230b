#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hqgrass/json_io.hpp"
#include "hqgrass/selftest.hpp"

namespace py = pybind11;
using namespace hqgrass;

namespace {

HQSpace space_for(const Eigen::MatrixXd& basis) {
    if (basis.rows() % 4 != 0 || basis.rows() == 0) {
        throw std::invalid_argument("frame rows must be a positive multiple of 4");
    }
    return HQSpace(static_cast<int>(basis.rows()) / 4);
}

Frame frame_for(const Eigen::MatrixXd& basis) {
    return Frame::orthonormalize(basis);
}

StructureCoeffs structure_for(const std::array<double, 3>& a) {
    StructureCoeffs s{a[0], a[1], a[2]};
    if (std::abs(s.norm() - 1.0) > 1e-6) {
        throw std::invalid_argument("structure coefficients must lie on the unit sphere");
    }
    return s.normalized();
}

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null: return py::none();
        case json::value_t::boolean: return py::bool_(j.get<bool>());
        case json::value_t::number_integer: return py::int_(j.get<long long>());
        case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case json::value_t::number_float: return py::float_(j.get<double>());
        case json::value_t::string: return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it) {
                out[py::str(it.key())] = json_to_py(it.value());
            }
            return out;
        }
        default: return py::none();
    }
}

json py_to_json(const py::handle& obj) {
    if (obj.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
    if (py::isinstance<py::int_>(obj)) return obj.cast<long long>();
    if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
    if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
    if (py::isinstance<py::dict>(obj)) {
        json out = json::object();
        for (auto item : obj.cast<py::dict>()) {
            out[item.first.cast<std::string>()] = py_to_json(item.second);
        }
        return out;
    }
    if (py::isinstance<py::sequence>(obj)) {
        json out = json::array();
        for (auto item : obj.cast<py::sequence>()) out.push_back(py_to_json(item));
        return out;
    }
    throw std::invalid_argument("unsupported value in generator spec");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sp(n)-orbit invariants of subspaces of a quaternionic Hermitian space";

    m.def(
        "apply_structure",
        [](const std::array<double, 3>& A, const Eigen::VectorXd& X) {
            if (X.size() % 4 != 0 || X.size() == 0) {
                throw std::invalid_argument("vector length must be a positive multiple of 4");
            }
            const HQSpace space(static_cast<int>(X.size()) / 4);
            return space.apply(structure_for(A), X);
        },
        py::arg("structure"), py::arg("x"),
        "Apply alpha I + beta J + gamma K to a real 4n-vector.");

    m.def(
        "hermitian_product",
        [](const Eigen::VectorXd& L, const Eigen::VectorXd& M) {
            if (L.size() != M.size() || L.size() % 4 != 0 || L.size() == 0) {
                throw std::invalid_argument("vectors must share a length divisible by 4");
            }
            const HQSpace space(static_cast<int>(L.size()) / 4);
            const Quaternion q = space.hermitian_product(L, M);
            return std::array<double, 4>{q.w, q.x, q.y, q.z};
        },
        py::arg("l"), py::arg("m"),
        "Quaternion-valued Hermitian product as (w, x, y, z).");

    m.def(
        "principal_angles",
        [](const Eigen::MatrixXd& U, const Eigen::MatrixXd& W) {
            const Eigen::VectorXd t =
                principal_angles(frame_for(U), frame_for(W)).thetas;
            return t;
        },
        py::arg("u"), py::arg("w"),
        "Ascending principal angles between the column spans.");

    m.def(
        "classify",
        [](const Eigen::MatrixXd& U) {
            return to_string(classify(space_for(U), frame_for(U)).cls);
        },
        py::arg("u"), "Subspace class tag.");

    m.def(
        "orbit_invariant",
        [](const Eigen::MatrixXd& U) {
            const HQSpace space = space_for(U);
            const OrbitInvariant inv =
                orbit_invariant(space, AdmissibleBasis{}, frame_for(U));
            return json_to_py(invariant_report(inv, kSnapTol, kDefaultCompareTol));
        },
        py::arg("u"), "Orbit invariant report as a dict.");

    m.def(
        "decompose",
        [](const Eigen::MatrixXd& U) {
            const HQSpace space = space_for(U);
            const Frame f = frame_for(U);
            const Decomposition d = full_decompose(space, f);
            return json_to_py(decomposition_report(space, f, d, kSnapTol));
        },
        py::arg("u"), "Quaternionic / complex / totally real decomposition report.");

    m.def(
        "same_orbit",
        [](const Eigen::MatrixXd& U, const Eigen::MatrixXd& W, double tol) {
            const HQSpace space = space_for(U);
            return same_orbit(space, AdmissibleBasis{}, frame_for(U), frame_for(W), tol);
        },
        py::arg("u"), py::arg("w"), py::arg("tol") = kDefaultCompareTol,
        "Whether the two spans lie in the same Sp(n)-orbit.");

    m.def(
        "witness",
        [](const Eigen::MatrixXd& U, const Eigen::MatrixXd& W) -> py::object {
            const HQSpace space = space_for(U);
            const auto wit =
                sp_n_witness(space, AdmissibleBasis{}, frame_for(U), frame_for(W));
            if (!wit) return py::none();
            py::dict out;
            out["g"] = wit->g;
            out["max_principal_angle"] = wit->max_principal_angle;
            out["orthogonality_residual"] = wit->orthogonality_residual;
            out["commutator_norms"] = std::vector<double>{wit->commutator_norms[0],
                                                          wit->commutator_norms[1],
                                                          wit->commutator_norms[2]};
            return out;
        },
        py::arg("u"), py::arg("w"),
        "Explicit Sp(n) matrix carrying span(u) onto span(w), with verification data.");

    m.def(
        "generate",
        [](const py::dict& spec, int n) {
            const HQSpace space(n);
            return generate_from_spec(space, py_to_json(spec)).basis();
        },
        py::arg("spec"), py::arg("n") = 8,
        "Generate a frame from a generator-spec dict.");

    m.def(
        "random_sp_n",
        [](int n, std::uint64_t seed) { return lab::random_sp_n(HQSpace(n), seed); },
        py::arg("n"), py::arg("seed"),
        "Random quaternionic unitary as a real 4n x 4n matrix.");

    m.def(
        "selftest",
        [](std::uint64_t seed, int n) {
            SelfTestOptions opt;
            opt.seed = seed;
            opt.n = n;
            py::list out;
            for (const auto& r : run_selftest(opt)) {
                py::dict item;
                item["index"] = r.index;
                item["name"] = r.name;
                item["pass"] = r.pass;
                item["worst"] = r.worst;
                item["threshold"] = r.threshold;
                out.append(item);
            }
            return out;
        },
        py::arg("seed") = 1, py::arg("n") = 8,
        "Run the acceptance sweep; returns one record per criterion.");

#ifdef VERSION_INFO
#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
