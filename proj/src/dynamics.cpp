#include "dynamics.hpp"
#include "liouville.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

namespace wgqed {
namespace dyn {

namespace {
const cd iu(0.0, 1.0);

Mat unvec(const Vec& y, int D) {
    Mat M(D, D);
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b)
            M(a, b) = y(pair_index(D, a, b));
    return M;
}

Vec vec_of(const Mat& M) {
    const int D = (int)M.rows();
    Vec y(D * D);
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b)
            y(pair_index(D, a, b)) = M(a, b);
    return y;
}

int grid_points(double t, double dt) {
    double steps = t / dt;
    int n = (int)std::llround(steps);
    if (std::abs(steps - n) > 1e-6)
        throw wq_error(1, "t does not fall on the dt grid");
    if (n < 0)
        throw wq_error(1, "t must be >= 0");
    return n + 1;
}

// one grid-step map of classical RK4 (degree-4 Taylor map of the linear
// system), substepped to keep accumulated truncation below ~2e-9
Mat rk4_step_map(const Mat& gen, double dt, double t_total, double omega,
                 double gamma) {
    const int DD = (int)gen.rows();
    const double lambda = 2.0 * omega + 3.0 * gamma;
    const double budget = 2e-9;
    double h_max = std::pow(120.0 * budget /
                                (std::max(t_total, dt) * std::pow(lambda, 5)),
                            0.25);
    int n_sub = std::max(1, (int)std::ceil(dt / h_max));
    double h = dt / n_sub;
    Mat A = h * gen;
    Mat I = Mat::Identity(DD, DD);
    Mat M = I + A * (I + (A / 2.0) * (I + (A / 3.0) * (I + A / 4.0)));
    Mat step = M;
    for (int k = 1; k < n_sub; ++k)
        step = M * step;
    return step;
}

} // namespace

double max_dt(const system_config& cfg) {
    return std::min(0.05 / cfg.gamma, 0.02 * 2.0 * M_PI / (2.0 * cfg.omega));
}

void validate_dt(const system_config& cfg, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw wq_error(1, "dt must be positive and finite");
    if (dt > max_dt(cfg) * (1.0 + 1e-12))
        throw wq_error(1, "dt exceeds the stability/phase-resolution bound "
                          "min(0.05/gamma, 0.02*2pi/(2*omega))");
}

field_series evolve_field_rk4(const system_config& cfg, const Mat& gen,
                              double t_max, double dt) {
    validate_config(cfg);
    validate_dt(cfg, dt);
    if (!(t_max >= 0.0) || !std::isfinite(t_max))
        throw wq_error(1, "t_max must be >= 0 and finite");
    const int DD = cfg.dim() * cfg.dim();
    if (gen.rows() != DD || gen.cols() != DD)
        throw wq_error(2, "generator dimension does not match the configuration");
    const int nt = (int)std::llround(t_max / dt) + 1;
    Mat step = rk4_step_map(gen, dt, t_max, cfg.omega, cfg.gamma);
    field_series out;
    out.dt = dt;
    out.phi.reserve(nt);
    out.phi.push_back(Mat::Identity(DD, DD));
    for (int k = 1; k < nt; ++k)
        out.phi.push_back(step * out.phi.back());
    if (!out.phi.back().allFinite())
        throw wq_error(3, "field integration produced non-finite values");
    return out;
}

Mat propagator_expm(const Mat& gen, double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw wq_error(1, "propagator time must be >= 0 and finite");
    Mat Lt = gen * t;
    return Lt.exp();
}

field_series evolve_field_expm(const system_config& cfg, const Mat& gen,
                               double t_max, double dt) {
    validate_config(cfg);
    validate_dt(cfg, dt);
    const int DD = cfg.dim() * cfg.dim();
    if (gen.rows() != DD || gen.cols() != DD)
        throw wq_error(2, "generator dimension does not match the configuration");
    const int nt = (int)std::llround(t_max / dt) + 1;
    Mat E1 = propagator_expm(gen, dt);
    field_series out;
    out.dt = dt;
    out.phi.reserve(nt);
    out.phi.push_back(Mat::Identity(DD, DD));
    for (int k = 1; k < nt; ++k)
        out.phi.push_back(E1 * out.phi.back());
    if (!out.phi.back().allFinite())
        throw wq_error(3, "field integration produced non-finite values");
    return out;
}

Mat density_at(const Mat& phi_t, const Mat& rho0) {
    return density_bridge(phi_t, rho0);
}

cd two_time_correlator(const system_config& cfg, const Mat& rho0, int n, int m,
                       double tau, double tau_prime) {
    validate_config(cfg);
    const int N = cfg.n_qubits;
    if (n < 0 || n >= N || m < 0 || m >= N)
        throw wq_error(2, "qubit index out of range");
    if (!(tau >= 0.0) || !(tau_prime >= 0.0))
        throw wq_error(1, "correlator times must be >= 0");
    if (tau < tau_prime)
        return std::conj(two_time_correlator(cfg, rho0, m, n, tau_prime, tau));
    const int D = cfg.dim();
    Mat L = build_generator(cfg);
    Mat rho_tp = density_bridge(propagator_expm(L, tau_prime), rho0);
    Vec y = propagator_expm(L, tau - tau_prime) * vec_of(sigma_plus(n, N));
    Mat Mn = unvec(y, D);
    return (rho_tp * Mn * sigma_minus(m, N)).trace();
}

std::vector<double> spectrum_quadrature(const system_config& cfg, const Mat& rho0,
                                        const std::vector<double>& omegas,
                                        double t, double dt, bool resonant_phase) {
    validate_config(cfg);
    validate_dt(cfg, dt);
    check_density(rho0);
    const int N = cfg.n_qubits;
    const int D = cfg.dim();
    const int nt = grid_points(t, dt);
    Mat L = build_generator(cfg);
    Mat E1 = propagator_expm(L, dt);
    Mat E1T = E1.transpose();

    std::vector<Mat> sm(N), sp(N);
    for (int q = 0; q < N; ++q) {
        sp[q] = sigma_plus(q, N);
        sm[q] = sigma_minus(q, N);
    }

    // march vec(rho^T) and vec(sigma_+^n evolved) on the grid
    Vec s(D * D);
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b)
            s(pair_index(D, a, b)) = rho0(b, a);
    std::vector<Vec> mp(N);
    for (int q = 0; q < N; ++q)
        mp[q] = vec_of(sp[q]);

    // per-qubit kernels; combined with separation phases afterwards
    std::vector<std::vector<Mat>> Mp(N), B(N);
    for (int q = 0; q < N; ++q) {
        Mp[q].reserve(nt);
        B[q].reserve(nt);
    }
    double herm_residue = 0.0;
    for (int k = 0; k < nt; ++k) {
        Mat rho_k(D, D);
        for (int a = 0; a < D; ++a)
            for (int b = 0; b < D; ++b)
                rho_k(a, b) = s(pair_index(D, b, a));
        herm_residue = std::max(
            herm_residue, (rho_k - rho_k.adjoint()).cwiseAbs().maxCoeff());
        for (int q = 0; q < N; ++q) {
            Mp[q].push_back(unvec(mp[q], D));
            B[q].push_back(sm[q] * rho_k);
            mp[q] = E1 * mp[q];
        }
        s = E1T * s;
    }
    if (herm_residue > 1e-8)
        throw wq_error(3, "density-matrix Hermiticity residue exceeds 1e-8 "
                          "during quadrature");

    std::vector<double> wtr(nt, 1.0);
    if (nt > 1) { wtr[0] = 0.5; wtr[nt - 1] = 0.5; }
    const double omega0 = cfg.omega;

    std::vector<Mat> Mpc(nt, Mat::Zero(D, D)), Bc(nt, Mat::Zero(D, D));
    auto combine = [&](double scale) {
        for (int k = 0; k < nt; ++k) {
            Mpc[k].setZero();
            Bc[k].setZero();
            for (int q = 0; q < N; ++q) {
                cd phn = std::exp(-iu * scale * cfg.phases[q]);
                Mpc[k] += phn * Mp[q][k];
                Bc[k] += std::conj(phn) * B[q][k];
            }
        }
    };
    if (resonant_phase) combine(1.0);

    std::vector<Mat> pref(nt, Mat::Zero(D, D));
    std::vector<double> out(omegas.size());
    for (size_t iw = 0; iw < omegas.size(); ++iw) {
        double w = omegas[iw];
        if (!resonant_phase) combine(w / omega0);
        // prefix integrals int_0^{u} e^{-i w u'} Mpc(u') du'
        Mat fprev = Mpc[0]; // e^{-iw*0} = 1
        pref[0].setZero();
        for (int k = 1; k < nt; ++k) {
            Mat fk = std::exp(-iu * w * (k * dt)) * Mpc[k];
            pref[k] = pref[k - 1] + (dt / 2.0) * (fprev + fk);
            fprev = fk;
        }
        cd tot = 0.0;
        for (int k = 0; k < nt; ++k) {
            const Mat& rev = pref[nt - 1 - k];
            cd tr = (Bc[k].transpose().cwiseProduct(rev)).sum();
            tot += wtr[k] * tr;
        }
        tot *= dt;
        double val = 2.0 * (cfg.gamma * tot).real();
        if (!std::isfinite(val))
            throw wq_error(3, "non-finite value in spectrum quadrature");
        out[iw] = val;
    }
    return out;
}

double emission_rate_from_density(const system_config& cfg, const Mat& rho_t) {
    validate_config(cfg);
    const int N = cfg.n_qubits;
    cd tot = 0.0;
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < N; ++m) {
            cd ph = std::exp(-iu * (cfg.phases[n] - cfg.phases[m]));
            tot += ph * (rho_t * sigma_plus(n, N) * sigma_minus(m, N)).trace();
        }
    return (cfg.gamma / 2.0) * tot.real();
}

double emission_rate_numeric(const system_config& cfg, const Mat& rho0, double t) {
    Mat L = build_generator(cfg);
    Mat rho_t = density_bridge(propagator_expm(L, t), rho0);
    return emission_rate_from_density(cfg, rho_t);
}

std::vector<cd> photon_mean_numeric(const system_config& cfg, const Mat& rho0,
                                    const std::vector<double>& omegas, double t,
                                    double dt) {
    validate_config(cfg);
    validate_dt(cfg, dt);
    check_density(rho0);
    const int N = cfg.n_qubits;
    const int D = cfg.dim();
    const int nt = grid_points(t, dt);
    if (nt < 2) return std::vector<cd>(omegas.size(), 0.0);
    Mat L = build_generator(cfg);
    Mat E1T = propagator_expm(L, dt).transpose();
    std::vector<Mat> sm(N);
    for (int q = 0; q < N; ++q)
        sm[q] = sigma_minus(q, N);

    // sig[q][k] = Tr[rho(t_k) sigma_-^q], marched once for all omegas
    Vec s(D * D);
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b)
            s(pair_index(D, a, b)) = rho0(b, a);
    std::vector<std::vector<cd>> sig(N, std::vector<cd>(nt));
    for (int k = 0; k < nt; ++k) {
        Mat rho_k(D, D);
        for (int a = 0; a < D; ++a)
            for (int b = 0; b < D; ++b)
                rho_k(a, b) = s(pair_index(D, b, a));
        for (int q = 0; q < N; ++q)
            sig[q][k] = (rho_k * sm[q]).trace();
        s = E1T * s;
    }

    std::vector<cd> out(omegas.size());
    for (size_t iw = 0; iw < omegas.size(); ++iw) {
        double w = omegas[iw];
        cd tot = 0.0;
        for (int q = 0; q < N; ++q) {
            cd acc = 0.0;
            for (int k = 0; k < nt; ++k) {
                double wk = (k == 0 || k == nt - 1) ? 0.5 : 1.0;
                acc += wk * std::exp(iu * w * (k * dt)) * sig[q][k];
            }
            tot += std::exp(-iu * cfg.phases[q]) * acc * dt;
        }
        out[iw] = -iu * std::sqrt(cfg.gamma) * std::exp(-iu * w * t) * tot;
    }
    return out;
}

} // namespace dyn
} // namespace wgqed
