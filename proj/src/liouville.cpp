#include "liouville.hpp"

#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace wgqed {

rate_matrices pairwise_rates(const system_config& cfg) {
    validate_config(cfg);
    const int N = cfg.n_qubits;
    rate_matrices out;
    out.gamma_nm.resize(N, N);
    out.alpha_nm.resize(N, N);
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < N; ++m) {
            double dnm = std::abs(cfg.phases[n] - cfg.phases[m]);
            out.gamma_nm(n, m) = cfg.gamma * std::cos(dnm);
            out.alpha_nm(n, m) = (n == m) ? 0.0 : -(cfg.gamma / 2.0) * std::sin(dnm);
        }
    return out;
}

Mat build_generator(const system_config& cfg) {
    validate_config(cfg);
    const int N = cfg.n_qubits;
    const int D = cfg.dim();
    rate_matrices r = pairwise_rates(cfg);
    std::vector<Mat> sp(N), sm(N), sz(N);
    for (int n = 0; n < N; ++n) {
        sp[n] = sigma_plus(n, N);
        sm[n] = sigma_minus(n, N);
        sz[n] = sigma_z(n, N);
    }
    const Mat I = Mat::Identity(D, D);
    Mat L = Mat::Zero(D * D, D * D);
    const cd iu(0.0, 1.0);
    for (int n = 0; n < N; ++n)
        L += iu * (cfg.omega / 2.0) *
             (kroneckerProduct(sz[n], I) - kroneckerProduct(I, sz[n].transpose())).eval();
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < N; ++m) {
            Mat pm = sp[m] * sm[n];
            L += (r.gamma_nm(n, m) / 2.0) *
                 (2.0 * kroneckerProduct(sp[m], sm[n].transpose()) -
                  kroneckerProduct(pm, I) - kroneckerProduct(I, pm.transpose()))
                     .eval();
            L += iu * r.alpha_nm(n, m) *
                 (kroneckerProduct(I, pm.transpose()) - kroneckerProduct(pm, I)).eval();
        }
    return L;
}

Mat generator_to_bell(const Mat& L) {
    if (L.rows() != 16 || L.cols() != 16)
        throw wq_error(2, "Bell conjugation requires a two-qubit operator space");
    const Mat& U = bell_matrix();
    Mat T = kroneckerProduct(U.adjoint(), U.transpose());
    Mat Ti = kroneckerProduct(U, U.conjugate());
    return T * L * Ti;
}

Mat field_to_product(const Mat& F_bell) {
    if (F_bell.rows() != 16 || F_bell.cols() != 16)
        throw wq_error(2, "Bell conjugation requires a two-qubit operator space");
    const Mat& U = bell_matrix();
    Mat K = kroneckerProduct(U, U.conjugate());
    return K * F_bell * K.adjoint();
}

} // namespace wgqed
