#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "hqgrass/health.hpp"
#include "hqgrass/json_io.hpp"
#include "hqgrass/selftest.hpp"

namespace {

using namespace hqgrass;

struct Options {
    double tol_rank = 1e-8;
    double tol_snap = 1e-8;
    double tol_compare = 1e-6;
    std::uint64_t seed = 1;
    bool json_out = false;
    std::vector<double> basis_flat;
};

constexpr double kRadToDeg = 57.29577951308232;

AdmissibleBasis basis_from(const Options& opt) {
    if (opt.basis_flat.empty()) return AdmissibleBasis{};
    Eigen::Matrix3d C;
    for (int c = 0; c < 3; ++c) {
        for (int r = 0; r < 3; ++r) C(r, c) = opt.basis_flat[3 * c + r];
    }
    return AdmissibleBasis(C);  // throws unless SO(3)
}

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--tol-rank", opt.tol_rank, "singular-value tolerance for rank decisions");
    cmd->add_option("--tol-snap", opt.tol_snap, "snap tolerance for 0/1 cosine dispatch");
    cmd->add_option("--tol-compare", opt.tol_compare, "tolerance for invariant comparison");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_flag("--json", opt.json_out, "emit JSON (angles in radians)");
    cmd->add_option("--basis", opt.basis_flat,
                    "admissible basis override: 9 reals, three coefficient triples")
        ->expected(9);
}

std::string fmt_deg(double rad) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << rad * kRadToDeg;
    return os.str();
}

json angles_summary(const HQSpace& space, const AdmissibleBasis& basis, const Frame& U,
                    const Options& opt) {
    json out;
    const char* names[3] = {"I", "J", "K"};
    const StructureCoeffs structs[3] = {basis.I(), basis.J(), basis.K()};
    for (int i = 0; i < 3; ++i) {
        const Frame img = Frame::orthonormalize(space.apply(structs[i], U.basis()), 1e-10);
        const PrincipalAngles pa = principal_angles(U, img);
        const IsoclinicReport iso = isoclinicity(space, structs[i], U, opt.tol_snap);
        out[names[i]] = {{"principal_angles", std::vector<double>(
                                                  pa.thetas.data(),
                                                  pa.thetas.data() + pa.thetas.size())},
                         {"isoclinic", iso.isoclinic},
                         {"isoclinic_angle", iso.angle},
                         {"isoclinic_deviation", iso.deviation}};
    }
    if (U.dim() >= 2) out["characteristic_deviation"] = characteristic_deviation(space, U);
    return out;
}

int cmd_analyze(const std::string& path, const Options& opt) {
    const LoadedFrame lf = load_frame_file(path, opt.tol_rank);
    const AdmissibleBasis basis = basis_from(opt);
    const Classification cls = classify(lf.space, lf.frame, opt.tol_snap);
    json report{{"input",
                 {{"n", lf.space.n()},
                  {"dim", lf.frame.dim()},
                  {"orthonormality_residual", lf.orthonormality_residual}}},
                {"class", to_string(cls.cls)},
                {"rhps", cls.rhps}};
    report["angles"] = angles_summary(lf.space, basis, lf.frame, opt);
    try {
        const OrbitInvariant inv = orbit_invariant(lf.space, basis, lf.frame, opt.tol_snap);
        report["invariant"] = invariant_report(inv, opt.tol_snap, opt.tol_compare);
    } catch (const std::invalid_argument& e) {
        report["invariant"] = nullptr;
        report["invariant_note"] = e.what();
    }
    if (opt.json_out) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "class: " << report["class"].get<std::string>()
                  << (cls.rhps ? " (real Hermitian products)" : "") << "\n";
        std::cout << "dim: " << lf.frame.dim() << "  ambient: 4n = " << lf.space.dim()
                  << "  load residual: " << lf.orthonormality_residual << "\n";
        for (const char* name : {"I", "J", "K"}) {
            const auto& blk = report["angles"][name];
            std::cout << "theta^" << name << " (deg):";
            for (double v : blk["principal_angles"]) std::cout << " " << fmt_deg(v);
            std::cout << (blk["isoclinic"].get<bool>() ? "  [isoclinic]" : "") << "\n";
        }
        if (report["angles"].contains("characteristic_deviation")) {
            std::cout << "characteristic deviation: " << std::setprecision(12)
                      << report["angles"]["characteristic_deviation"].get<double>() << "\n";
        }
        if (!report["invariant"].is_null()) {
            std::cout << "invariant: " << report["invariant"].dump() << "\n";
        } else {
            std::cout << "invariant: unsupported (" << report["invariant_note"].get<std::string>()
                      << ")\n";
        }
    }
    return 0;
}

int cmd_decompose(const std::string& path, const Options& opt) {
    const LoadedFrame lf = load_frame_file(path, opt.tol_rank);
    const Decomposition d = full_decompose(lf.space, lf.frame, opt.tol_snap);
    const json report = decomposition_report(lf.space, lf.frame, d, opt.tol_snap);
    if (opt.json_out) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "U_Q dim: " << report["U_Q_dim"] << "\n";
        for (const auto& item : report["sigma"]) {
            std::cout << "complex addend dim " << item["dim"] << "  structure ["
                      << item["structure"][0].get<double>() << ", "
                      << item["structure"][1].get<double>() << ", "
                      << item["structure"][2].get<double>() << "]  multiangle (deg):";
            for (double v : item["multiangle"]) std::cout << " " << fmt_deg(v);
            std::cout << "\n";
        }
        std::cout << "U_R dim: " << report["U_R_dim"] << "\n";
        std::cout << "residuals: " << report["residuals"].dump() << "\n";
    }
    return 0;
}

int cmd_same_orbit(const std::string& pa, const std::string& pb, const Options& opt) {
    const LoadedFrame a = load_frame_file(pa, opt.tol_rank);
    const LoadedFrame b = load_frame_file(pb, opt.tol_rank);
    if (a.space.n() != b.space.n()) {
        throw std::invalid_argument("frames live in different ambient spaces");
    }
    const AdmissibleBasis basis = basis_from(opt);
    const OrbitInvariant ia = orbit_invariant(a.space, basis, a.frame, opt.tol_snap);
    const OrbitInvariant ib = orbit_invariant(b.space, basis, b.frame, opt.tol_snap);
    const bool same = a.frame.dim() == b.frame.dim() &&
                      invariant_distance(ia, ib) <= opt.tol_compare;
    if (opt.json_out) {
        std::cout << json{{"same_orbit", same},
                          {"invariant_a", invariant_report(ia, opt.tol_snap, opt.tol_compare)},
                          {"invariant_b", invariant_report(ib, opt.tol_snap, opt.tol_compare)}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << (same ? "same orbit" : "different orbits") << "\n";
    }
    return 0;
}

int cmd_witness(const std::string& pa, const std::string& pb, const Options& opt) {
    const LoadedFrame a = load_frame_file(pa, opt.tol_rank);
    const LoadedFrame b = load_frame_file(pb, opt.tol_rank);
    if (a.space.n() != b.space.n()) {
        throw std::invalid_argument("frames live in different ambient spaces");
    }
    const AdmissibleBasis basis = basis_from(opt);
    if (a.frame.dim() != b.frame.dim() ||
        !same_orbit(a.space, basis, a.frame, b.frame, opt.tol_compare, opt.tol_snap)) {
        std::cerr << "witness refused: the subspaces are not in the same orbit\n";
        return 1;
    }
    const auto wit = sp_n_witness(a.space, basis, a.frame, b.frame);
    if (!wit) {
        std::cerr << "witness verification failed (numerical health)\n";
        return 1;
    }
    if (opt.json_out) {
        std::cout << witness_report(*wit).dump(2) << "\n";
    } else {
        std::cout << "witness found: max principal angle "
                  << wit->max_principal_angle << ", orthogonality residual "
                  << wit->orthogonality_residual << ", commutators "
                  << wit->commutator_norms.transpose() << "\n";
    }
    return 0;
}

int cmd_generate(const std::string& spec_path, const std::string& out_path,
                 const Options& opt) {
    std::ifstream in(spec_path);
    if (!in) throw std::invalid_argument("cannot open generator spec: " + spec_path);
    json spec;
    try {
        in >> spec;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
    }
    const HQSpace space(spec_ambient_n(spec, 8));
    const Frame U = generate_from_spec(space, spec);
    const json out = frame_to_json(space, U);
    if (out_path.empty() || out_path == "-") {
        std::cout << out.dump(2) << "\n";
    } else {
        std::ofstream os(out_path);
        os << out.dump(2) << "\n";
        std::cout << "wrote " << out_path << " (dim " << U.dim() << ")\n";
    }
    return 0;
}

int cmd_selftest(int size, double tol_inject, const Options& opt) {
    SelfTestOptions sopt;
    sopt.seed = opt.seed;
    sopt.n = size;
    sopt.tol_inject = tol_inject;
    const auto results = run_selftest(sopt);
    const bool ok = report_selftest(results, std::cout);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sp(n)-orbit invariants of subspaces of a quaternionic Hermitian space"};
    app.require_subcommand(1);
    Options opt;

    std::string file_a, file_b, out_path = "-";
    int st_size = 8;
    double st_inject = 0.0;

    auto* analyze = app.add_subcommand("analyze", "classify a frame and report its invariants");
    analyze->add_option("frame", file_a, "frame JSON file")->required();
    add_common(analyze, opt);

    auto* decompose = app.add_subcommand("decompose", "quaternionic/complex/real splitting");
    decompose->add_option("frame", file_a, "frame JSON file")->required();
    add_common(decompose, opt);

    auto* same = app.add_subcommand("same-orbit", "decide Sp(n)-equivalence of two frames");
    same->add_option("frame_a", file_a, "first frame JSON file")->required();
    same->add_option("frame_b", file_b, "second frame JSON file")->required();
    add_common(same, opt);

    auto* witness = app.add_subcommand("witness", "explicit Sp(n) element mapping one onto the other");
    witness->add_option("frame_a", file_a, "first frame JSON file")->required();
    witness->add_option("frame_b", file_b, "second frame JSON file")->required();
    add_common(witness, opt);

    auto* generate = app.add_subcommand("generate", "emit a frame from a generator spec");
    generate->add_option("spec", file_a, "generator spec JSON file")->required();
    generate->add_option("-o,--output", out_path, "output frame file (default stdout)");
    add_common(generate, opt);

    auto* selftest = app.add_subcommand("selftest", "run the acceptance sweep");
    selftest->add_option("--size", st_size, "ambient quaternionic dimension n");
    selftest->add_option("--inject-tol", st_inject,
                         "override every criterion tolerance (testing hook)");
    add_common(selftest, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        int rc = 0;
        if (*analyze) rc = cmd_analyze(file_a, opt);
        else if (*decompose) rc = cmd_decompose(file_a, opt);
        else if (*same) rc = cmd_same_orbit(file_a, file_b, opt);
        else if (*witness) rc = cmd_witness(file_a, file_b, opt);
        else if (*generate) rc = cmd_generate(file_a, out_path, opt);
        else if (*selftest) rc = cmd_selftest(st_size, st_inject, opt);
        if (rc == 0 && hqgrass::health::warning_count() > 0 && !*selftest) {
            std::cerr << hqgrass::health::warning_count()
                      << " numerical-health warning(s); see stderr above\n";
            return 1;
        }
        return rc;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
