#pragma once

#include "core.hpp"

namespace wgqed {
namespace dyn {

// largest admissible recording step: min(0.05/gamma, 0.02*2pi/(2*omega))
double max_dt(const system_config& cfg);
void validate_dt(const system_config& cfg, double dt);

// propagators Phi(t_k) of the coefficient ODEs on a uniform grid t_k = k*dt
struct field_series {
    double dt = 0.0;
    std::vector<Mat> phi;
    int size() const { return (int)phi.size(); }
    double time(int k) const { return k * dt; }
};

// classical fixed-step RK4 (one-step degree-4 Taylor map of the linear
// system), internally substepped so the accumulated truncation error stays
// below ~2e-9 over the whole run
field_series evolve_field_rk4(const system_config& cfg, const Mat& gen,
                              double t_max, double dt);
// independent path: scaling-and-squaring matrix exponential
Mat propagator_expm(const Mat& gen, double t);
field_series evolve_field_expm(const system_config& cfg, const Mat& gen,
                               double t_max, double dt);

// rho(t) from a propagator and rho(0), same basis as the generator
Mat density_at(const Mat& phi_t, const Mat& rho0);

// <sigma_+^n(tau) sigma_-^m(tau')> for a product-basis rho0; evaluated with
// exact-time propagators, branch split at tau = tau'
cd two_time_correlator(const system_config& cfg, const Mat& rho0, int n, int m,
                       double tau, double tau_prime);

// radiation spectrum by double quadrature of the correlator kernel;
// resonant_phase picks e^{-i k0 (x_n - x_m)} separation factors (matching the
// closed forms), otherwise k is evaluated at omega (v_g = 1)
std::vector<double> spectrum_quadrature(const system_config& cfg, const Mat& rho0,
                                        const std::vector<double>& omegas,
                                        double t, double dt, bool resonant_phase);

// W(t) = (gamma/2) Re sum_nm e^{-i k0 (x_n - x_m)} Tr[rho(t) sp_n sm_m]
double emission_rate_from_density(const system_config& cfg, const Mat& rho_t);
double emission_rate_numeric(const system_config& cfg, const Mat& rho0, double t);

// <a_k(t)> by single time quadrature; one march serves the whole omega sweep
std::vector<cd> photon_mean_numeric(const system_config& cfg, const Mat& rho0,
                                    const std::vector<double>& omegas, double t,
                                    double dt);

} // namespace dyn
} // namespace wgqed
