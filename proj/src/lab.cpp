#include "hqgrass/lab.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace hqgrass::lab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::uint64_t Rng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::next_double() {
    return (next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

double Rng::gaussian() {
    double u1 = next_double();
    while (u1 <= 1e-300) u1 = next_double();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

Rng Rng::split(std::uint64_t stream) const {
    Rng child(state_ ^ (0x6a09e667f3bcc909ull + stream * 0x9e3779b97f4a7c15ull));
    child.next_u64();
    return child;
}

Eigen::VectorXd random_unit_vector(const HQSpace& space, Rng& rng) {
    Eigen::VectorXd v(space.dim());
    for (int i = 0; i < v.size(); ++i) v[i] = rng.gaussian();
    return v.normalized();
}

Frame random_subspace(const HQSpace& space, int dim, Rng& rng) {
    Eigen::MatrixXd cols(space.dim(), dim);
    for (int c = 0; c < dim; ++c) {
        for (int r = 0; r < cols.rows(); ++r) cols(r, c) = rng.gaussian();
    }
    Frame f = Frame::orthonormalize(cols);
    if (f.dim() != dim) throw std::runtime_error("random subspace came out rank-deficient");
    return f;
}

StructureCoeffs random_structure(Rng& rng) {
    Eigen::Vector3d v;
    do {
        v = {rng.gaussian(), rng.gaussian(), rng.gaussian()};
    } while (v.norm() < 1e-6);
    return StructureCoeffs::from_vec(v.normalized());
}

AdmissibleBasis random_admissible_basis(Rng& rng) {
    const Eigen::Vector3d a = random_structure(rng).vec();
    Eigen::Vector3d b;
    do {
        b = {rng.gaussian(), rng.gaussian(), rng.gaussian()};
        b -= a.dot(b) * a;
    } while (b.norm() < 1e-6);
    b.normalize();
    Eigen::Matrix3d C;
    C.col(0) = a;
    C.col(1) = b;
    C.col(2) = a.cross(b);
    return AdmissibleBasis(C);
}

Frame make_complex4(const HQSpace& space, const StructureCoeffs& I, double theta, int slot) {
    if (slot + 1 >= space.n()) {
        throw std::invalid_argument("make_complex4 needs two free quaternionic coordinates");
    }
    const AdmissibleBasis adapted = adapted_basis(I);
    const Eigen::VectorXd X = space.e(slot);
    const Eigen::VectorXd Z = std::cos(theta) * (-space.apply(adapted.K(), X)) +
                              std::sin(theta) * space.e(slot + 1);
    Eigen::MatrixXd cols(space.dim(), 4);
    cols.col(0) = X;
    cols.col(1) = space.apply(I, X);
    cols.col(2) = Z;
    cols.col(3) = space.apply(I, Z);
    return Frame::orthonormalize(cols, 1e-10);
}

Frame make_complex_even(const HQSpace& space, const StructureCoeffs& I,
                        const std::vector<double>& multiangle, int half_dim,
                        int first_slot) {
    const int expected = (half_dim + 1) / 2;
    if (static_cast<int>(multiangle.size()) != expected) {
        throw std::invalid_argument("multiangle length must be ceil(half_dim / 2)");
    }
    const bool odd = half_dim % 2 != 0;
    if (odd && std::abs(multiangle.back() - kPi / 2.0) > 1e-12) {
        throw std::invalid_argument("odd half-dimension requires a trailing pi/2 entry");
    }
    std::vector<Eigen::VectorXd> cols;
    int slot = first_slot;
    const int fours = odd ? expected - 1 : expected;
    for (int i = 0; i < fours; ++i) {
        const Frame f = make_complex4(space, I, multiangle[i], slot);
        for (int c = 0; c < 4; ++c) cols.push_back(f.col(c));
        slot += 2;
    }
    if (odd) {
        if (slot >= space.n()) throw std::invalid_argument("not enough quaternionic slots");
        cols.push_back(space.e(slot));
        cols.push_back(space.apply(I, space.e(slot)));
        slot += 1;
    }
    return Frame::orthonormalize(space.dim(), cols, 1e-10);
}

Frame make_sigma(const HQSpace& space, const std::vector<SigmaSpecItem>& items,
                 int first_slot) {
    std::vector<Eigen::VectorXd> cols;
    int slot = first_slot;
    for (const auto& item : items) {
        const Frame f = make_complex_even(space, item.I, item.multiangle, item.half_dim, slot);
        for (int c = 0; c < f.dim(); ++c) cols.push_back(f.col(c));
        slot += 2 * ((item.half_dim + 1) / 2);
    }
    return Frame::orthonormalize(space.dim(), cols, 1e-10);
}

Frame make_quaternionic(const HQSpace& space, int dim, int first_slot) {
    if (dim % 4 != 0) throw std::invalid_argument("quaternionic dimension must be 4k");
    std::vector<Eigen::VectorXd> cols;
    for (int q = 0; q < dim / 4; ++q) {
        const Eigen::VectorXd e = space.e(first_slot + q);
        cols.push_back(e);
        cols.push_back(space.apply_I(e));
        cols.push_back(space.apply_J(e));
        cols.push_back(space.apply_K(e));
    }
    return Frame::orthonormalize(space.dim(), cols, 1e-10);
}

Frame make_rhps(const HQSpace& space, int dim, int first_slot) {
    std::vector<Eigen::VectorXd> cols;
    for (int q = 0; q < dim; ++q) cols.push_back(space.e(first_slot + q));
    return Frame::orthonormalize(space.dim(), cols, 1e-10);
}

Frame make_two_plane(const HQSpace& space, const Quaternion& im, int first_slot) {
    if (std::abs(im.re()) > 1e-12 || im.norm() > 1.0 + 1e-12) {
        throw std::invalid_argument("imaginary measure must be pure imaginary with |im| <= 1");
    }
    if (first_slot + 1 >= space.n()) {
        throw std::invalid_argument("make_two_plane needs two free quaternionic coordinates");
    }
    const Eigen::VectorXd L = space.e(first_slot);
    const double s = std::sqrt(std::max(0.0, 1.0 - im.norm_sq()));
    const Eigen::VectorXd M =
        space.right_multiply(L, im) + s * space.e(first_slot + 1);
    return Frame::orthonormalize(space.dim(), {L, M}, 1e-10);
}

Eigen::MatrixXd random_sp_n(const HQSpace& space, std::uint64_t seed) {
    Rng rng(seed);
    const int n = space.n();
    // columns of a Gaussian quaternion matrix, then quaternionic Gram-Schmidt
    std::vector<Eigen::VectorXd> cols;
    for (int c = 0; c < n; ++c) {
        Eigen::VectorXd v(space.dim());
        for (int r = 0; r < v.size(); ++r) v[r] = rng.gaussian();
        cols.push_back(v);
    }
    HFrame hf = h_orthonormalize(space, cols, 1e-10);
    while (hf.size() < n) {
        // astronomically unlikely; resample the missing directions
        Eigen::VectorXd v(space.dim());
        for (int r = 0; r < v.size(); ++r) v[r] = rng.gaussian();
        cols.push_back(v);
        hf = h_orthonormalize(space, cols, 1e-10);
    }
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(space.dim(), space.dim());
    for (int q = 0; q < n; ++q) {
        const Eigen::VectorXd& u = hf.cols[q];
        const Eigen::VectorXd e = space.e(q);
        g += u * e.transpose();
        g += space.apply_I(u) * space.apply_I(e).transpose();
        g += space.apply_J(u) * space.apply_J(e).transpose();
        g += space.apply_K(u) * space.apply_K(e).transpose();
    }
    return g;
}

Quaternion random_sp1(std::uint64_t seed) {
    Rng rng(seed);
    Quaternion q;
    do {
        q = {rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
    } while (q.norm() < 1e-6);
    return q.normalized();
}

Frame act_sp1(const HQSpace& space, const Frame& U, const Quaternion& q) {
    if (std::abs(q.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("act_sp1 needs a unit quaternion");
    }
    // R_q is a rotation, so the rotated frame is already orthonormal
    return Frame::orthonormalize(space.right_multiply(U.basis(), q), 1e-10);
}

PrincipalAngles oracle_principal_angles(const Frame& U, const Frame& W) {
    if (U.dim() == 0 || W.dim() == 0) {
        throw std::invalid_argument("principal angles need nonzero-dimensional subspaces");
    }
    const Eigen::MatrixXd M = U.basis().transpose() * W.basis();
    const Eigen::MatrixXd S = M * M.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S);
    const int k = std::min(U.dim(), W.dim());
    PrincipalAngles out;
    out.cosines.resize(k);
    out.thetas.resize(k);
    // eigenvalues ascending = squared cosines ascending = angles descending
    const int total = static_cast<int>(eig.eigenvalues().size());
    for (int i = 0; i < k; ++i) {
        const double c = std::sqrt(std::min(1.0, std::max(0.0, eig.eigenvalues()[total - 1 - i])));
        out.cosines[i] = c;
        out.thetas[i] = std::acos(c);
    }
    return out;
}

double oracle_subspace_angle(const Frame& U, const Frame& W) {
    if (U.dim() > W.dim()) {
        throw std::invalid_argument("oracle_subspace_angle requires dim U <= dim W");
    }
    const Eigen::MatrixXd P = W.basis().transpose() * U.basis();  // coords of projections
    const Eigen::MatrixXd G = P.transpose() * P;
    const double det = G.determinant();
    const double c = std::sqrt(std::min(1.0, std::max(0.0, det)));
    return std::acos(c);
}

}  // namespace hqgrass::lab
