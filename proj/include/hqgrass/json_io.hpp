#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "hqgrass/lab.hpp"
#include "hqgrass/orbit.hpp"

namespace hqgrass {

using nlohmann::json;

// Frame file: {"n": int, "columns": [[4n reals], ...]}. Columns need not be
// orthonormal; the loader orthonormalizes and records the residual.
struct LoadedFrame {
    HQSpace space;
    Frame frame;
    double orthonormality_residual = 0.0;
};

json frame_to_json(const HQSpace& space, const Frame& U);
LoadedFrame frame_from_json(const json& j, double tol_rank = kDefaultRankTol);
LoadedFrame load_frame_file(const std::string& path, double tol_rank = kDefaultRankTol);

json quaternion_to_json(const Quaternion& q);
json structure_to_json(const StructureCoeffs& A);
json matrix_to_json(const Eigen::MatrixXd& M);  // nested row-major

json decomposition_report(const HQSpace& space, const Frame& U, const Decomposition& d,
                          double tol);
json invariant_report(const OrbitInvariant& inv, double tol_snap, double tol_compare);
json witness_report(const SpnWitness& wit);

// Generator spec JSON mirroring the lab generators:
//   {"class":"two_plane","im":[x,y,z]}
//   {"class":"complex4","structure":[a,b,g],"theta":t}
//   {"class":"complex_even","structure":[a,b,g],"multiangle":[...],"dim":2m}
//   {"class":"sigma","items":[{"structure":..,"multiangle":..,"dim":..},...]}
//   {"class":"quaternionic","dim":4k} | {"class":"rhps","dim":k}
// plus optional "n" (ambient quaternionic dimension) and "scramble_seed".
Frame generate_from_spec(const HQSpace& space, const json& spec);
int spec_ambient_n(const json& spec, int fallback);

}  // namespace hqgrass
