#pragma once

#include <Eigen/Dense>
#include <tuple>

#include "hqgrass/quaternion.hpp"

namespace hqgrass {

// Point (alpha, beta, gamma) on the unit sphere of compatible complex
// structures: names A = alpha*I + beta*J + gamma*K.
struct StructureCoeffs {
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 0.0;

    constexpr StructureCoeffs() = default;
    constexpr StructureCoeffs(double a, double b, double g) : alpha(a), beta(b), gamma(g) {}

    static constexpr StructureCoeffs I() { return {1.0, 0.0, 0.0}; }
    static constexpr StructureCoeffs J() { return {0.0, 1.0, 0.0}; }
    static constexpr StructureCoeffs K() { return {0.0, 0.0, 1.0}; }

    Eigen::Vector3d vec() const { return {alpha, beta, gamma}; }
    static StructureCoeffs from_vec(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }

    double norm() const { return vec().norm(); }
    StructureCoeffs normalized() const { return from_vec(vec().normalized()); }
    StructureCoeffs operator-() const { return {-alpha, -beta, -gamma}; }

    // The spheres identifies A with -A for complex subspaces; the canonical
    // representative makes the first coefficient above 1e-9 positive.
    StructureCoeffs canonical_sign() const;

    bool lex_less(const StructureCoeffs& o) const;
};

double dist(const StructureCoeffs& a, const StructureCoeffs& b);
// min distance to {+b, -b}
double dist_up_to_sign(const StructureCoeffs& a, const StructureCoeffs& b);

// Admissible hypercomplex basis (I', J', K') = (I, J, K) C with C in SO(3);
// column c of C holds the coefficients of the c-th rotated structure.
struct AdmissibleBasis {
    Eigen::Matrix3d C = Eigen::Matrix3d::Identity();

    AdmissibleBasis() = default;
    explicit AdmissibleBasis(const Eigen::Matrix3d& mat);  // throws if not SO(3)

    StructureCoeffs I() const { return StructureCoeffs::from_vec(C.col(0)); }
    StructureCoeffs J() const { return StructureCoeffs::from_vec(C.col(1)); }
    StructureCoeffs K() const { return StructureCoeffs::from_vec(C.col(2)); }

    static bool is_so3(const Eigen::Matrix3d& mat, double tol = 1e-10);
};

std::tuple<StructureCoeffs, StructureCoeffs, StructureCoeffs>
rotate_basis(const AdmissibleBasis& C);

// Deterministic completion of A to an admissible basis (A, J', K').
AdmissibleBasis adapted_basis(const StructureCoeffs& A);

// H^n realized as R^{4n}: quaternionic coordinate a occupies real slots
// 4a..4a+3 in order (1, i, j, k). The structure maps are the right
// multiplications I = R_{-i}, J = R_{-j}, K = R_{-k}, acting per 4-slot as
//   I: (a,b,c,d) -> ( b,-a,-d, c)
//   J: (a,b,c,d) -> ( c, d,-a,-b)
//   K: (a,b,c,d) -> ( d,-c, b,-a)
class HQSpace {
public:
    explicit HQSpace(int n);

    int n() const { return n_; }
    int dim() const { return 4 * n_; }

    Eigen::VectorXd apply_I(const Eigen::VectorXd& x) const;
    Eigen::VectorXd apply_J(const Eigen::VectorXd& x) const;
    Eigen::VectorXd apply_K(const Eigen::VectorXd& x) const;

    // (alpha I + beta J + gamma K) x
    Eigen::VectorXd apply(const StructureCoeffs& A, const Eigen::VectorXd& x) const;
    // column-wise action
    Eigen::MatrixXd apply(const StructureCoeffs& A, const Eigen::MatrixXd& cols) const;
    Eigen::MatrixXd apply_I(const Eigen::MatrixXd& cols) const;
    Eigen::MatrixXd apply_J(const Eigen::MatrixXd& cols) const;
    Eigen::MatrixXd apply_K(const Eigen::MatrixXd& cols) const;

    // Dense 4n x 4n matrix of A, materialized on demand (witness output only).
    Eigen::MatrixXd structure_matrix(const StructureCoeffs& A) const;

    // L . M = <L,M> + <L,IM> i + <L,JM> j + <L,KM> k
    Quaternion hermitian_product(const Eigen::VectorXd& L, const Eigen::VectorXd& M) const;
    // Independent coordinate route: sum over quaternionic slots of conj(h) h'.
    Quaternion hermitian_product_coord(const Eigen::VectorXd& L, const Eigen::VectorXd& M) const;

    // X q per quaternionic coordinate (the Sp(1) homothety R_q).
    Eigen::VectorXd right_multiply(const Eigen::VectorXd& x, const Quaternion& q) const;
    Eigen::MatrixXd right_multiply(const Eigen::MatrixXd& cols, const Quaternion& q) const;

    // slot accessors for quaternionic coordinates
    Quaternion slot(const Eigen::VectorXd& x, int a) const;
    void set_slot(Eigen::VectorXd& x, int a, const Quaternion& q) const;
    // standard H-basis vector e_a (real unit vector at slot a, component 1)
    Eigen::VectorXd e(int a) const;

private:
    void check_dim(const Eigen::VectorXd& x) const;
    int n_;
};

}  // namespace hqgrass
