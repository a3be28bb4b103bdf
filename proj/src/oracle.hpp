#pragma once

#include "core.hpp"

namespace wgqed {
namespace ww {

struct bath_config {
    double band = 50.0;        // half-width of the detuning window (units gamma)
    double mode_spacing = 0.02; // delta-omega between adjacent modes
    double dt = 0.002;          // integrator step, must satisfy dt <= 0.1/band
    bool taper = true;          // cos^2 coupling roll-off near the band edges
};

// brute-force single-excitation dynamics: qubits + discretized left/right
// photon branches, integrated in the interaction picture with RK4.
// Deterministic, no RNG anywhere.
class ww_oracle {
public:
    ww_oracle(const system_config& cfg, const bath_config& bath);

    // b0: one complex amplitude per qubit, unit norm (single excitation)
    void run(const Vec& b0, double t_final);

    int n_qubits() const { return cfg_.n_qubits; }
    int num_times() const { return (int)ts_.size(); }
    double time_at(int k) const { return ts_.at(k); }
    const std::vector<Vec>& amplitudes() const { return bs_; }
    double norm_error() const { return norm_error_; }

    // least-squares fit of -d log|<proj|b>|^2/dt and -d arg<proj|b>/dt over
    // [t0, t1]; requires at least a decade of decay inside the window
    void fit(const Vec& proj, double t0, double t1, double* rate,
             double* shift) const;

    int modes_per_branch() const { return m2_; }
    // per-branch occupation density 2*pi*|c|^2/delta-omega on omega = Omega + detuning
    void spectrum(std::vector<double>& omegas, std::vector<double>& right,
                  std::vector<double>& left) const;

private:
    system_config cfg_;
    bath_config bath_;
    int m2_ = 0;                 // modes per branch
    Eigen::VectorXd det_;        // detunings, both branches stacked
    Mat phase_;                  // sqrt(win_j) e^{i k_j x_n}, (modes, qubits)
    std::vector<double> ts_;
    std::vector<Vec> bs_;
    Vec c_;
    double norm_error_ = 0.0;
    bool has_run_ = false;
};

} // namespace ww
} // namespace wgqed
