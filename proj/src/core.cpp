#include "core.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace wgqed {

void validate_config(const system_config& cfg) {
    if (cfg.n_qubits < 1)
        throw wq_error(1, "n_qubits must be >= 1");
    if (cfg.n_qubits > 5)
        throw wq_error(4, "n_qubits > 5 is not supported");
    if (!(cfg.gamma > 0.0) || !std::isfinite(cfg.gamma))
        throw wq_error(1, "gamma must be positive and finite");
    if (!(cfg.omega > 0.0) || !std::isfinite(cfg.omega))
        throw wq_error(1, "omega must be positive and finite");
    if ((int)cfg.phases.size() != cfg.n_qubits)
        throw wq_error(1, "phases must have exactly n_qubits entries");
    for (double p : cfg.phases)
        if (!std::isfinite(p))
            throw wq_error(1, "phases must be finite");
}

Mat op_on(int n, int N, const Eigen::Matrix2cd& op) {
    if (n < 0 || n >= N)
        throw wq_error(2, "qubit index out of range");
    Mat out = Mat::Identity(1, 1);
    for (int k = 0; k < N; ++k) {
        Mat factor = (k == n) ? Mat(op) : Mat(Mat::Identity(2, 2));
        Mat next(out.rows() * 2, out.cols() * 2);
        for (int i = 0; i < out.rows(); ++i)
            for (int j = 0; j < out.cols(); ++j)
                next.block(2 * i, 2 * j, 2, 2) = out(i, j) * factor;
        out = std::move(next);
    }
    return out;
}

namespace {
Eigen::Matrix2cd sm_1q() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = 1.0; // |g><e| on basis (g, e)
    return m;
}
Eigen::Matrix2cd sp_1q() { return sm_1q().adjoint(); }
Eigen::Matrix2cd sz_1q() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    return m;
}
} // namespace

Mat sigma_minus(int n, int N) { return op_on(n, N, sm_1q()); }
Mat sigma_plus(int n, int N) { return op_on(n, N, sp_1q()); }
Mat sigma_z(int n, int N) { return op_on(n, N, sz_1q()); }

const Mat& bell_matrix() {
    static const Mat U = [] {
        Mat u = Mat::Zero(4, 4);
        const double r = 1.0 / std::sqrt(2.0);
        u(0, GIDX) = 1.0;          // |G> = |gg>
        u(3, EIDX) = 1.0;          // |E> = |ee>
        u(1, SIDX) = r; u(2, SIDX) = r;  // |S> = (|ge> + |eg>)/sqrt(2)
        u(1, AIDX) = r; u(2, AIDX) = -r; // |A> = (|ge> - |eg>)/sqrt(2)
        return u;
    }();
    return U;
}

Mat product_to_bell(const Mat& rho_product) {
    const Mat& U = bell_matrix();
    return U.adjoint() * rho_product * U;
}

Mat bell_to_product(const Mat& rho_bell) {
    const Mat& U = bell_matrix();
    return U * rho_bell * U.adjoint();
}

Vec bell_state(const std::string& tag) {
    Vec v = Vec::Zero(4);
    const double r = 1.0 / std::sqrt(2.0);
    if (tag == "G") v(GIDX) = 1.0;
    else if (tag == "E") v(EIDX) = 1.0;
    else if (tag == "S") v(SIDX) = 1.0;
    else if (tag == "A") v(AIDX) = 1.0;
    else if (tag == "eg") { v(SIDX) = r; v(AIDX) = -r; }
    else if (tag == "ge") { v(SIDX) = r; v(AIDX) = r; }
    else if (tag == "s1g2") { v(GIDX) = r; v(SIDX) = 0.5; v(AIDX) = -0.5; }
    else if (tag == "s1e2") { v(EIDX) = r; v(SIDX) = 0.5; v(AIDX) = 0.5; }
    else if (tag == "s1s2") { v(GIDX) = 0.5; v(EIDX) = 0.5; v(SIDX) = r; }
    else throw wq_error(1, "unknown two-qubit initial tag '" + tag + "'");
    return v;
}

Vec one_qubit_state(const std::string& tag) {
    Vec v = Vec::Zero(2);
    const double r = 1.0 / std::sqrt(2.0);
    if (tag == "g") v(0) = 1.0;
    else if (tag == "e") v(1) = 1.0;
    else if (tag == "s") { v(0) = r; v(1) = r; }
    else throw wq_error(1, "unknown one-qubit initial tag '" + tag + "'");
    return v;
}

Mat density_from_pure(const Vec& v) {
    double n = v.norm();
    if (n < 1e-12)
        throw wq_error(1, "cannot build a density matrix from the zero vector");
    Vec u = v / n;
    return u * u.adjoint();
}

bool known_tag(const system_config& cfg, const std::string& tag) {
    if (cfg.n_qubits == 1)
        return tag == "g" || tag == "e" || tag == "s";
    if (cfg.n_qubits == 2)
        return tag == "G" || tag == "E" || tag == "S" || tag == "A" ||
               tag == "eg" || tag == "ge" || tag == "s1g2" || tag == "s1e2" ||
               tag == "s1s2";
    return false;
}

Mat initial_density(const system_config& cfg, const std::string& tag) {
    if (cfg.n_qubits == 1)
        return density_from_pure(one_qubit_state(tag));
    if (cfg.n_qubits == 2) {
        Vec prod = bell_matrix() * bell_state(tag);
        return density_from_pure(prod);
    }
    throw wq_error(4, "tagged initial states are defined for n_qubits <= 2");
}

void check_density(const Mat& rho) {
    if (rho.rows() != rho.cols())
        throw wq_error(2, "density matrix must be square");
    if (!rho.allFinite())
        throw wq_error(1, "density matrix has non-finite entries");
    double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12)
        throw wq_error(1, "density matrix is not Hermitian (deviation " +
                              std::to_string(herm) + ")");
    double tr = std::abs(rho.trace() - cd(1.0, 0.0));
    if (tr > 1e-12)
        throw wq_error(1, "density matrix trace differs from 1 by " +
                              std::to_string(tr));
    Eigen::SelfAdjointEigenSolver<Mat> es(((rho + rho.adjoint()) / 2.0));
    double lam = es.eigenvalues().minCoeff();
    if (lam < -1e-10)
        throw wq_error(1, "density matrix has negative eigenvalue " +
                              std::to_string(lam));
}

Mat density_bridge(const Mat& field, const Mat& rho0) {
    const int D = (int)rho0.rows();
    Mat out(D, D);
    for (int l = 0; l < D; ++l)
        for (int m = 0; m < D; ++m) {
            cd acc = 0.0;
            for (int n = 0; n < D; ++n)
                for (int q = 0; q < D; ++q)
                    acc += rho0(n, q) * field(pair_index(D, q, n), pair_index(D, m, l));
            out(l, m) = acc;
        }
    return out;
}

} // namespace wgqed
