#include "oracle.hpp"

#include <cmath>

namespace wgqed {
namespace ww {

namespace {
const cd iu(0.0, 1.0);
}

ww_oracle::ww_oracle(const system_config& cfg, const bath_config& bath)
    : cfg_(cfg), bath_(bath) {
    validate_config(cfg);
    if (!(bath.band > 0.0) || !std::isfinite(bath.band))
        throw wq_error(1, "band_halfwidth must be positive");
    if (!(bath.mode_spacing > 0.0) || !std::isfinite(bath.mode_spacing))
        throw wq_error(1, "mode_spacing must be positive");
    if (!(bath.dt > 0.0) || bath.dt > 0.1 / bath.band * (1.0 + 1e-12))
        throw wq_error(1, "bath dt must satisfy 0 < dt <= 0.1/band_halfwidth");
    m2_ = (int)std::llround(2.0 * bath.band / bath.mode_spacing) + 1;
    if (m2_ > 2000000)
        throw wq_error(1, "mode count exceeds 2e6; coarsen mode_spacing");
    const int N = cfg.n_qubits;
    const int M = 2 * m2_;
    det_.resize(M);
    Eigen::VectorXd k(M);
    for (int j = 0; j < m2_; ++j) {
        double d = -bath.band + j * bath.mode_spacing;
        det_(j) = d;
        det_(m2_ + j) = d;
        k(j) = cfg.omega + d;          // right movers
        k(m2_ + j) = -(cfg.omega + d); // left movers
    }
    phase_.resize(M, N);
    for (int j = 0; j < M; ++j) {
        double win = 1.0;
        if (bath.taper) {
            double u = std::abs(det_(j)) / bath.band;
            if (u > 0.7) {
                double arg = (M_PI / 2.0) * (u - 0.7) / 0.3;
                win = std::cos(arg) * std::cos(arg);
            }
        }
        double sw = std::sqrt(win);
        for (int n = 0; n < N; ++n) {
            double x = cfg.phases[n] / cfg.omega; // physical position, v_g = 1
            phase_(j, n) = sw * std::exp(iu * k(j) * x);
        }
    }
}

void ww_oracle::run(const Vec& b0, double t_final) {
    const int N = cfg_.n_qubits;
    const int M = 2 * m2_;
    if ((int)b0.size() != N)
        throw wq_error(2, "initial amplitudes must have one entry per qubit");
    double n0 = b0.squaredNorm();
    if (n0 > 1.0 + 1e-9)
        throw wq_error(1, "initial amplitudes carry more than one excitation "
                          "(sum |amps|^2 > 1)");
    if (!(n0 > 1e-12))
        throw wq_error(1, "initial amplitudes are all zero");
    if (!(t_final > 0.0) || !std::isfinite(t_final))
        throw wq_error(1, "t_final must be positive and finite");
    double recurrence = 2.0 * M_PI / bath_.mode_spacing;
    if (t_final >= recurrence)
        throw wq_error(1, "horizon exceeds the bath recurrence time 2pi/mode_spacing");

    const double dt = bath_.dt;
    const int nt = (int)std::llround(t_final / dt);
    const double g = std::sqrt(cfg_.gamma * bath_.mode_spacing / (4.0 * M_PI));

    Vec b = b0;
    Vec c = Vec::Zero(M);
    // interaction-picture factors e^{-i det t}, advanced multiplicatively in
    // half steps and periodically resynced against exact exponentials
    Vec ey(M), estep(M);
    for (int j = 0; j < M; ++j) {
        ey(j) = 1.0;
        estep(j) = std::exp(-iu * det_(j) * (dt / 2.0));
    }
    const Mat phaseT = phase_.transpose();
    const Mat phaseC = phase_.conjugate();

    auto rhs = [&](const Vec& bv, const Vec& cv, const Vec& e, Vec& db, Vec& dc) {
        Vec ce = cv.cwiseProduct(e);
        db = -iu * g * (phaseT * ce);
        dc = (-iu * g) * e.conjugate().cwiseProduct(phaseC * bv);
    };

    ts_.clear();
    bs_.clear();
    ts_.reserve(nt + 1);
    bs_.reserve(nt + 1);
    Vec k1b(N), k2b(N), k3b(N), k4b(N);
    Vec k1c(M), k2c(M), k3c(M), k4c(M);
    for (int i = 0; i < nt; ++i) {
        ts_.push_back(i * dt);
        bs_.push_back(b);
        if (i % 1024 == 0) {
            double t = i * dt;
            for (int j = 0; j < M; ++j)
                ey(j) = std::exp(-iu * det_(j) * t);
        }
        Vec e1 = ey.cwiseProduct(estep);  // at t + dt/2
        Vec e2 = e1.cwiseProduct(estep);  // at t + dt
        rhs(b, c, ey, k1b, k1c);
        rhs(b + (dt / 2.0) * k1b, c + (dt / 2.0) * k1c, e1, k2b, k2c);
        rhs(b + (dt / 2.0) * k2b, c + (dt / 2.0) * k2c, e1, k3b, k3c);
        rhs(b + dt * k3b, c + dt * k3c, e2, k4b, k4c);
        b += (dt / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        c += (dt / 6.0) * (k1c + 2.0 * k2c + 2.0 * k3c + k4c);
        ey = e2;
    }
    ts_.push_back(nt * dt);
    bs_.push_back(b);
    c_ = c;
    norm_error_ = std::abs(b.squaredNorm() + c.squaredNorm() - n0);
    if (!(norm_error_ < 1e-6))
        throw wq_error(3, "bath norm conservation violated beyond 1e-6");
    has_run_ = true;
}

void ww_oracle::fit(const Vec& proj, double t0, double t1, double* rate,
                    double* shift) const {
    if (!has_run_)
        throw wq_error(1, "oracle has not been run");
    if ((int)proj.size() != cfg_.n_qubits)
        throw wq_error(2, "projector must have one entry per qubit");
    if (!(t1 > t0))
        throw wq_error(1, "fit window must have t1 > t0");
    std::vector<double> t, lg, ph;
    double prev_arg = 0.0;
    bool first = true;
    for (size_t k = 0; k < ts_.size(); ++k) {
        if (ts_[k] < t0 || ts_[k] > t1) continue;
        cd a = proj.adjoint() * bs_[k];
        double p2 = std::norm(a);
        if (!(p2 > 1e-300))
            throw wq_error(1, "projected amplitude vanishes inside the fit window");
        double arg = std::arg(a);
        if (!first) {
            while (arg - prev_arg > M_PI) arg -= 2.0 * M_PI;
            while (arg - prev_arg < -M_PI) arg += 2.0 * M_PI;
        }
        first = false;
        prev_arg = arg;
        t.push_back(ts_[k]);
        lg.push_back(std::log(p2));
        ph.push_back(arg);
    }
    if (t.size() < 10)
        throw wq_error(1, "fit window contains fewer than 10 samples");
    double ratio = std::exp(lg.front() - lg.back());
    if (ratio < 1.0001)
        throw wq_error(1, "projected amplitude is not decaying over the window");
    if (ratio < 10.0 * (1.0 - 1e-3))
        throw wq_error(1, "fit window spans less than a decade of decay");
    auto slope = [&](const std::vector<double>& y) {
        double tm = 0.0, ym = 0.0;
        for (size_t k = 0; k < t.size(); ++k) { tm += t[k]; ym += y[k]; }
        tm /= t.size(); ym /= t.size();
        double num = 0.0, den = 0.0;
        for (size_t k = 0; k < t.size(); ++k) {
            num += (t[k] - tm) * (y[k] - ym);
            den += (t[k] - tm) * (t[k] - tm);
        }
        return num / den;
    };
    if (rate) *rate = -slope(lg);
    if (shift) *shift = -slope(ph);
}

void ww_oracle::spectrum(std::vector<double>& omegas, std::vector<double>& right,
                         std::vector<double>& left) const {
    if (!has_run_)
        throw wq_error(1, "oracle has not been run");
    omegas.resize(m2_);
    right.resize(m2_);
    left.resize(m2_);
    const double scale = 2.0 * M_PI / bath_.mode_spacing;
    for (int j = 0; j < m2_; ++j) {
        omegas[j] = cfg_.omega + det_(j);
        right[j] = scale * std::norm(c_(j));
        left[j] = scale * std::norm(c_(m2_ + j));
    }
}

} // namespace ww
} // namespace wgqed
