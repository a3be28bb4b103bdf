/* wgqed: N-qubit spontaneous decay in a 1D open waveguide.
 *
 * C interface to the simulation library.  Conventions used throughout:
 *   - gamma sets the time unit (default 1), v_g = 1, spectra are reported in
 *     the v_g/2L = 1 normalization.
 *   - qubit positions are passed as dimensionless phases k0*x_n; for two
 *     qubits the separation phase is k0d = phases[0] - phases[1] with
 *     x1 = +d/2, x2 = -d/2.
 *   - complex arrays are interleaved doubles (re, im); matrices are row-major.
 *   - product-basis ordering: qubit 1 is the most significant bit
 *     (N = 2: gg, ge, eg, ee).  Bell ordering for N = 2: G, E, S, A with
 *     S = (|ge> + |eg>)/sqrt(2), A = (|ge> - |eg>)/sqrt(2).
 *   - operator-space coordinates are row-major over (k, l), i.e. the
 *     coefficient of |k><l| sits at index D*k + l.
 *
 * All functions return wq_status; on failure wq_last_error() holds a
 * human-readable message for the calling thread.
 */
#ifndef WGQED_H
#define WGQED_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct wq_system wq_system;
typedef struct wq_oracle wq_oracle;

typedef enum wq_status {
    WQ_OK = 0,
    WQ_ERR_INVALID_ARG = 1,
    WQ_ERR_DIMENSION = 2,
    WQ_ERR_NUMERIC = 3,
    WQ_ERR_UNSUPPORTED = 4
} wq_status;

enum { WQ_ENGINE_CLOSED_FORM = 0, WQ_ENGINE_ODE = 1 };
enum { WQ_PHASE_RESONANT = 0, WQ_PHASE_OMEGA = 1 };

const char* wq_version(void);
const char* wq_status_message(wq_status status);
const char* wq_last_error(void);

/* ---- system configuration -------------------------------------------- */

/* phases: array of n_qubits dimensionless positions k0*x_n. */
wq_status wq_system_create(int n_qubits, double omega, double gamma,
                           const double* phases, wq_system** out);
void wq_system_destroy(wq_system* sys);
int wq_system_dim(const wq_system* sys); /* 2^N, or 0 for NULL */

/* ---- states and bases -------------------------------------------------- */

/* Known tags: N = 1: "g", "e", "s"; N = 2: "G", "E", "S", "A", "eg", "ge",
 * "s1g2", "s1e2", "s1s2".  rho_out: D*D complex, product basis. */
wq_status wq_initial_from_tag(const wq_system* sys, const char* tag,
                              double* rho_out);
/* Hermiticity (1e-12), unit trace (1e-12), eigenvalues >= -1e-10. */
wq_status wq_validate_density(const wq_system* sys, const double* rho);
/* Basis change of a D x D matrix; N = 2 only. */
wq_status wq_product_to_bell(const wq_system* sys, const double* in, double* out);
wq_status wq_bell_to_product(const wq_system* sys, const double* in, double* out);

/* ---- equation-of-motion generator -------------------------------------- */

/* gamma_nm, alpha_nm: N*N real, row-major. */
wq_status wq_pairwise_rates(const wq_system* sys, double* gamma_nm,
                            double* alpha_nm);
/* out: D^2 x D^2 complex, row-major over operator-space pairs.  Column
 * (i,j) holds d<P_ij>/dt expanded over the |k><l| coordinates.  bell_basis
 * (N = 2 only) conjugates into the Bell operator basis. */
wq_status wq_generator(const wq_system* sys, int bell_basis, double* out);

/* ---- dynamics ----------------------------------------------------------- */

/* Largest admissible integrator step: min(0.05/gamma, 0.02*pi/omega). */
wq_status wq_max_dt(const wq_system* sys, double* out);

/* Transition probabilities into every basis state.  ts: nt uniformly spaced
 * times starting at 0.  engine: WQ_ENGINE_CLOSED_FORM (N <= 2) or
 * WQ_ENGINE_ODE.  bell_finals (N = 2): report <f|rho|f> over G,E,S,A instead
 * of the product basis.  out: nt x D, row-major. */
wq_status wq_probability_series(const wq_system* sys, const double* rho0,
                                const double* ts, int nt, int engine,
                                int bell_finals, double* out);
/* rho(t) for a single time; rho0, rho_out: D*D complex, product basis. */
wq_status wq_density_at(const wq_system* sys, const double* rho0, double t,
                        int engine, double* rho_out);
/* <sigma_+^(n)(tau) sigma_-^(m)(tau_prime)> for the given initial state. */
wq_status wq_correlator(const wq_system* sys, const double* rho0, int n, int m,
                        double tau, double tau_prime, double* out_reim);

/* ---- spectra, emission rates, photon means ------------------------------ */

/* Closed-form spectrum for a tagged initial state; t = INFINITY selects the
 * long-time spectral density.  out: nw reals. */
wq_status wq_spectrum_closed(const wq_system* sys, const char* tag,
                             const double* omegas, int nw, double t,
                             double* out);
/* Double-quadrature spectrum for an arbitrary initial density matrix.
 * phase_convention: WQ_PHASE_RESONANT evaluates interference phases at k0,
 * WQ_PHASE_OMEGA at k = omega (v_g = 1). */
wq_status wq_spectrum_quadrature(const wq_system* sys, const double* rho0,
                                 const double* omegas, int nw, double t,
                                 double dt, int phase_convention, double* out);
/* (1/2pi) integral of the long-time closed-form spectrum over all omega. */
wq_status wq_spectrum_norm(const wq_system* sys, const char* tag, double* out);
/* Slowest nonvanishing decay rate (rates below 1e-6*gamma are skipped);
 * 12/out is the "infinite time" horizon. */
wq_status wq_slowest_rate(const wq_system* sys, double* out);

wq_status wq_emission_rate_closed(const wq_system* sys, const char* tag,
                                  const double* ts, int nt, double* out);
wq_status wq_emission_rate_numeric(const wq_system* sys, const double* rho0,
                                   const double* ts, int nt, double* out);

/* <a_k(t)> at fixed t over a frequency sweep; out: nw complex.
 * <a_k^dag(t)> is the complex conjugate. */
wq_status wq_photon_mean_closed(const wq_system* sys, const char* tag,
                                const double* omegas, int nw, double t,
                                double* out_reim);
wq_status wq_photon_mean_numeric(const wq_system* sys, const double* rho0,
                                 const double* omegas, int nw, double t,
                                 double dt, double* out_reim);

/* ---- mode-discretized waveguide oracle ---------------------------------- */

/* Two branches of modes k = +-(omega + delta), delta in [-band, band] with
 * spacing mode_spacing; per-mode coupling g = sqrt(gamma*mode_spacing/4pi).
 * taper != 0 applies a cos^2 rolloff to the outer 30% of each band edge. */
wq_status wq_oracle_create(const wq_system* sys, double band_halfwidth,
                           double mode_spacing, double dt, int taper,
                           wq_oracle** out);
void wq_oracle_destroy(wq_oracle* oracle);
/* amps_reim: N complex qubit amplitudes, at most one excitation total
 * (sum |amps|^2 <= 1; the remainder is a spectator ground amplitude). */
wq_status wq_oracle_run(wq_oracle* oracle, const double* amps_reim,
                        double t_final);
int wq_oracle_num_times(const wq_oracle* oracle);
wq_status wq_oracle_times(const wq_oracle* oracle, double* out);
/* out: num_times x N complex qubit amplitudes. */
wq_status wq_oracle_amplitudes(const wq_oracle* oracle, double* out_reim);
wq_status wq_oracle_norm_error(const wq_oracle* oracle, double* out);
/* Least-squares decay rate of |<proj|b(t)>|^2 and frequency shift from the
 * phase drift, over the window [t0, t1]. */
wq_status wq_oracle_fit(const wq_oracle* oracle, const double* proj_reim,
                        double t0, double t1, double* rate, double* shift);
int wq_oracle_modes_per_branch(const wq_oracle* oracle);
/* Mode occupation per branch rescaled to the v_g/2L = 1 convention:
 * 2pi |c|^2 / mode_spacing on omegas = omega + delta.  Arrays of
 * modes_per_branch entries; any of them may be NULL. */
wq_status wq_oracle_spectrum(const wq_oracle* oracle, double* omegas,
                             double* right, double* left);

#ifdef __cplusplus
}
#endif

#endif /* WGQED_H */
