#pragma once

#include "core.hpp"

namespace wgqed {
namespace cf {

// Shifted frequencies and collective rates for two qubits.  make_params snaps
// cos/sin onto the degenerate values when |1 -+ cos k0d| < 1e-6 so the
// analytic limit branches take over; make_params_raw keeps the generic trig
// (used by the continuity tests).
struct two_qubit_params {
    double gamma = 1.0;
    double omega = 20.0;
    double c = 0.0, s = 0.0;          // cos k0d, sin k0d
    double gamma_p = 0.0, gamma_m = 0.0; // gamma*(1 +- c)
    double omega_p = 0.0, omega_m = 0.0; // omega +- gamma*s/2
};
two_qubit_params make_params(double omega, double gamma, double k0d);
two_qubit_params make_params_raw(double omega, double gamma, double k0d);

// ---- transition-operator coefficient fields ------------------------------
// 4x4 matrix over pairs (i,j) columns / (m,n) rows; basis (g, e)
Mat one_qubit_field(double t, double omega, double gamma);
// 16x16 in the Bell operator basis
Mat two_qubit_field(double t, const two_qubit_params& p);
Mat two_qubit_field(double t, double omega, double gamma, double k0d);
// same field conjugated to the product basis
Mat two_qubit_field_product(double t, double omega, double gamma, double k0d);

// ---- transition probabilities --------------------------------------------
double one_qubit_probability(const std::string& initial, const std::string& final_tag,
                             double t, double omega, double gamma);
double two_qubit_probability(const std::string& initial, const std::string& final_tag,
                             double t, double omega, double gamma, double k0d);

// ---- spectra ---------------------------------------------------------------
// t = INFINITY gives the long-time spectral density
double spectrum(const std::string& tag, double w, double t,
                const two_qubit_params& p);
double spectrum(const std::string& tag, double w, double t, double omega,
                double gamma, double k0d);
double one_qubit_spectrum(double w, double t, double omega, double gamma,
                          double rho_ee0);
double one_qubit_spectral_density(double w, double omega, double gamma);

// (1/2pi) integral of the long-time spectrum, adaptive Simpson over
// line-adapted segments plus tan-mapped tails
double spectrum_norm(const std::string& tag, double omega, double gamma,
                     double k0d);
double one_qubit_spectrum_norm(double t, double omega, double gamma);

// slowest decay rate above 1e-6*gamma; 12/rate realizes "infinite time"
double slowest_rate(double gamma, double k0d);

// ---- emission rates ---------------------------------------------------------
double emission_rate(const std::string& tag, double t, double gamma, double k0d);
double one_qubit_emission_rate(double t, double gamma, double rho_ee0);

// ---- one-photon means -------------------------------------------------------
cd photon_mean(const std::string& tag, double w, double t, double omega,
               double gamma, double k0d);
cd one_qubit_photon_mean(double w, double t, double omega, double gamma,
                         cd rho_eg0);

} // namespace cf
} // namespace wgqed
