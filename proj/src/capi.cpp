#include "wgqed.h"

#include "closed_form.hpp"
#include "core.hpp"
#include "dynamics.hpp"
#include "liouville.hpp"
#include "oracle.hpp"

#include <cmath>
#include <cstring>
#include <string>

using namespace wgqed;

struct wq_system {
    system_config cfg;
};

struct wq_oracle {
    ww::ww_oracle impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename F>
wq_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return WQ_OK;
    } catch (const wq_error& e) {
        set_error(e.what());
        int c = e.code;
        if (c < 1 || c > 4) c = WQ_ERR_NUMERIC;
        return (wq_status)c;
    } catch (const std::exception& e) {
        set_error(e.what());
        return WQ_ERR_NUMERIC;
    } catch (...) {
        set_error("unknown failure");
        return WQ_ERR_NUMERIC;
    }
}

void require(bool ok, const char* msg) {
    if (!ok) throw wq_error(WQ_ERR_INVALID_ARG, msg);
}

const system_config& config_of(const wq_system* sys) {
    require(sys != nullptr, "system handle is NULL");
    return sys->cfg;
}

Mat read_cmat(const double* p, int D) {
    Mat M(D, D);
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) {
            int k = 2 * (a * D + b);
            M(a, b) = cd(p[k], p[k + 1]);
        }
    return M;
}

void write_cmat(const Mat& M, double* p) {
    const int R = (int)M.rows(), C = (int)M.cols();
    for (int a = 0; a < R; ++a)
        for (int b = 0; b < C; ++b) {
            int k = 2 * (a * C + b);
            p[k] = M(a, b).real();
            p[k + 1] = M(a, b).imag();
        }
}

Mat read_density(const wq_system* sys, const double* rho) {
    require(rho != nullptr, "density-matrix pointer is NULL");
    Mat m = read_cmat(rho, config_of(sys).dim());
    check_density(m);
    return m;
}

double tag_rho_ee(const std::string& tag) {
    Mat rho = density_from_pure(one_qubit_state(tag));
    return rho(1, 1).real();
}

cd tag_rho_eg(const std::string& tag) {
    Mat rho = density_from_pure(one_qubit_state(tag));
    return rho(1, 0);
}

void check_times(const double* ts, int nt) {
    require(ts != nullptr, "time array is NULL");
    require(nt >= 1, "need at least one time point");
    require(std::abs(ts[0]) < 1e-12, "time grid must start at 0");
    if (nt >= 2) {
        double dt = ts[1] - ts[0];
        require(dt > 0.0, "time grid must be increasing");
        for (int k = 1; k < nt; ++k)
            require(std::abs(ts[k] - k * dt) < 1e-9 * std::max(1.0, std::abs(ts[k])),
                    "time grid must be uniformly spaced");
    }
}

// probabilities <f|rho(t)|f> for a single evolved density matrix
void diag_probs(const system_config& cfg, const Mat& rho_t, int bell_finals,
                double* out) {
    const int D = cfg.dim();
    if (bell_finals) {
        require(cfg.n_qubits == 2, "Bell-basis finals need n_qubits = 2");
        Mat rb = product_to_bell(rho_t);
        for (int f = 0; f < D; ++f) out[f] = rb(f, f).real();
    } else {
        for (int f = 0; f < D; ++f) out[f] = rho_t(f, f).real();
    }
}

} // namespace

extern "C" {

const char* wq_version(void) { return "1.0.0"; }

const char* wq_status_message(wq_status status) {
    switch (status) {
        case WQ_OK: return "ok";
        case WQ_ERR_INVALID_ARG: return "invalid argument";
        case WQ_ERR_DIMENSION: return "dimension mismatch";
        case WQ_ERR_NUMERIC: return "numeric failure";
        case WQ_ERR_UNSUPPORTED: return "unsupported configuration";
    }
    return "unknown status";
}

const char* wq_last_error(void) { return g_last_error.c_str(); }

wq_status wq_system_create(int n_qubits, double omega, double gamma,
                           const double* phases, wq_system** out) {
    return guarded([&] {
        require(out != nullptr, "output pointer is NULL");
        require(phases != nullptr, "phases pointer is NULL");
        system_config cfg;
        cfg.n_qubits = n_qubits;
        cfg.omega = omega;
        cfg.gamma = gamma;
        cfg.phases.assign(phases, phases + (n_qubits > 0 ? n_qubits : 0));
        validate_config(cfg);
        *out = new wq_system{cfg};
    });
}

void wq_system_destroy(wq_system* sys) { delete sys; }

int wq_system_dim(const wq_system* sys) { return sys ? sys->cfg.dim() : 0; }

wq_status wq_initial_from_tag(const wq_system* sys, const char* tag,
                              double* rho_out) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(tag != nullptr, "tag is NULL");
        require(rho_out != nullptr, "output pointer is NULL");
        write_cmat(initial_density(cfg, tag), rho_out);
    });
}

wq_status wq_validate_density(const wq_system* sys, const double* rho) {
    return guarded([&] { read_density(sys, rho); });
}

wq_status wq_product_to_bell(const wq_system* sys, const double* in, double* out) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(in != nullptr && out != nullptr, "matrix pointer is NULL");
        if (cfg.n_qubits != 2)
            throw wq_error(WQ_ERR_UNSUPPORTED, "Bell basis is defined for n_qubits = 2");
        write_cmat(product_to_bell(read_cmat(in, 4)), out);
    });
}

wq_status wq_bell_to_product(const wq_system* sys, const double* in, double* out) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(in != nullptr && out != nullptr, "matrix pointer is NULL");
        if (cfg.n_qubits != 2)
            throw wq_error(WQ_ERR_UNSUPPORTED, "Bell basis is defined for n_qubits = 2");
        write_cmat(bell_to_product(read_cmat(in, 4)), out);
    });
}

wq_status wq_pairwise_rates(const wq_system* sys, double* gamma_nm,
                            double* alpha_nm) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(gamma_nm != nullptr && alpha_nm != nullptr,
                "rate-matrix pointer is NULL");
        rate_matrices r = pairwise_rates(cfg);
        const int N = cfg.n_qubits;
        for (int n = 0; n < N; ++n)
            for (int m = 0; m < N; ++m) {
                gamma_nm[n * N + m] = r.gamma_nm(n, m);
                alpha_nm[n * N + m] = r.alpha_nm(n, m);
            }
    });
}

wq_status wq_generator(const wq_system* sys, int bell_basis, double* out) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(out != nullptr, "output pointer is NULL");
        Mat L = build_generator(cfg);
        if (bell_basis) {
            if (cfg.n_qubits != 2)
                throw wq_error(WQ_ERR_UNSUPPORTED,
                               "Bell operator basis is defined for n_qubits = 2");
            L = generator_to_bell(L);
        }
        write_cmat(L, out);
    });
}

wq_status wq_max_dt(const wq_system* sys, double* out) {
    return guarded([&] {
        require(out != nullptr, "output pointer is NULL");
        *out = dyn::max_dt(config_of(sys));
    });
}

wq_status wq_probability_series(const wq_system* sys, const double* rho0,
                                const double* ts, int nt, int engine,
                                int bell_finals, double* out) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(out != nullptr, "output pointer is NULL");
        require(engine == WQ_ENGINE_CLOSED_FORM || engine == WQ_ENGINE_ODE,
                "engine must be WQ_ENGINE_CLOSED_FORM or WQ_ENGINE_ODE");
        Mat r0 = read_density(sys, rho0);
        check_times(ts, nt);
        const int D = cfg.dim();
        if (engine == WQ_ENGINE_CLOSED_FORM) {
            if (cfg.n_qubits > 2)
                throw wq_error(WQ_ERR_UNSUPPORTED,
                               "closed forms cover n_qubits <= 2");
            for (int k = 0; k < nt; ++k) {
                Mat field = (cfg.n_qubits == 1)
                                ? cf::one_qubit_field(ts[k], cfg.omega, cfg.gamma)
                                : cf::two_qubit_field_product(ts[k], cfg.omega,
                                                              cfg.gamma, cfg.k0d());
                diag_probs(cfg, density_bridge(field, r0), bell_finals,
                           out + (size_t)k * D);
            }
        } else {
            Mat L = build_generator(cfg);
            if (nt == 1) {
                diag_probs(cfg, r0, bell_finals, out);
                return;
            }
            double dt = ts[1] - ts[0];
            dyn::field_series fs = dyn::evolve_field_rk4(cfg, L, ts[nt - 1], dt);
            require(fs.size() >= nt, "time grid and field series disagree");
            for (int k = 0; k < nt; ++k)
                diag_probs(cfg, density_bridge(fs.phi[k], r0), bell_finals,
                           out + (size_t)k * D);
        }
    });
}

wq_status wq_density_at(const wq_system* sys, const double* rho0, double t,
                        int engine, double* rho_out) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(rho_out != nullptr, "output pointer is NULL");
        require(engine == WQ_ENGINE_CLOSED_FORM || engine == WQ_ENGINE_ODE,
                "engine must be WQ_ENGINE_CLOSED_FORM or WQ_ENGINE_ODE");
        require(t >= 0.0 && std::isfinite(t), "t must be >= 0 and finite");
        Mat r0 = read_density(sys, rho0);
        Mat field;
        if (engine == WQ_ENGINE_CLOSED_FORM) {
            if (cfg.n_qubits > 2)
                throw wq_error(WQ_ERR_UNSUPPORTED, "closed forms cover n_qubits <= 2");
            field = (cfg.n_qubits == 1)
                        ? cf::one_qubit_field(t, cfg.omega, cfg.gamma)
                        : cf::two_qubit_field_product(t, cfg.omega, cfg.gamma,
                                                      cfg.k0d());
        } else {
            field = dyn::propagator_expm(build_generator(cfg), t);
        }
        write_cmat(density_bridge(field, r0), rho_out);
    });
}

wq_status wq_correlator(const wq_system* sys, const double* rho0, int n, int m,
                        double tau, double tau_prime, double* out_reim) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(out_reim != nullptr, "output pointer is NULL");
        Mat r0 = read_density(sys, rho0);
        cd v = dyn::two_time_correlator(cfg, r0, n, m, tau, tau_prime);
        out_reim[0] = v.real();
        out_reim[1] = v.imag();
    });
}

wq_status wq_spectrum_closed(const wq_system* sys, const char* tag,
                             const double* omegas, int nw, double t,
                             double* out) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(tag != nullptr, "tag is NULL");
        require(omegas != nullptr && out != nullptr, "array pointer is NULL");
        require(nw >= 1, "need at least one frequency");
        require(t >= 0.0, "t must be >= 0 (INFINITY allowed)");
        if (cfg.n_qubits > 2)
            throw wq_error(WQ_ERR_UNSUPPORTED, "closed forms cover n_qubits <= 2");
        if (!known_tag(cfg, tag))
            throw wq_error(WQ_ERR_INVALID_ARG,
                           "unknown initial tag '" + std::string(tag) + "'");
        if (cfg.n_qubits == 1) {
            double ree = tag_rho_ee(tag);
            for (int k = 0; k < nw; ++k)
                out[k] = cf::one_qubit_spectrum(omegas[k], t, cfg.omega,
                                                cfg.gamma, ree);
        } else {
            cf::two_qubit_params p =
                cf::make_params(cfg.omega, cfg.gamma, cfg.k0d());
            for (int k = 0; k < nw; ++k)
                out[k] = cf::spectrum(tag, omegas[k], t, p);
        }
    });
}

wq_status wq_spectrum_quadrature(const wq_system* sys, const double* rho0,
                                 const double* omegas, int nw, double t,
                                 double dt, int phase_convention, double* out) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(omegas != nullptr && out != nullptr, "array pointer is NULL");
        require(nw >= 1, "need at least one frequency");
        require(phase_convention == WQ_PHASE_RESONANT ||
                    phase_convention == WQ_PHASE_OMEGA,
                "phase_convention must be WQ_PHASE_RESONANT or WQ_PHASE_OMEGA");
        Mat r0 = read_density(sys, rho0);
        std::vector<double> ws(omegas, omegas + nw);
        std::vector<double> vals = dyn::spectrum_quadrature(
            cfg, r0, ws, t, dt, phase_convention == WQ_PHASE_RESONANT);
        for (int k = 0; k < nw; ++k) out[k] = vals[k];
    });
}

wq_status wq_spectrum_norm(const wq_system* sys, const char* tag, double* out) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(tag != nullptr, "tag is NULL");
        require(out != nullptr, "output pointer is NULL");
        if (cfg.n_qubits > 2)
            throw wq_error(WQ_ERR_UNSUPPORTED, "closed forms cover n_qubits <= 2");
        if (!known_tag(cfg, tag))
            throw wq_error(WQ_ERR_INVALID_ARG,
                           "unknown initial tag '" + std::string(tag) + "'");
        if (cfg.n_qubits == 1)
            *out = cf::one_qubit_spectrum_norm(INFINITY, cfg.omega, cfg.gamma) *
                   tag_rho_ee(tag);
        else
            *out = cf::spectrum_norm(tag, cfg.omega, cfg.gamma, cfg.k0d());
    });
}

wq_status wq_slowest_rate(const wq_system* sys, double* out) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(out != nullptr, "output pointer is NULL");
        if (cfg.n_qubits == 1)
            *out = cfg.gamma;
        else if (cfg.n_qubits == 2)
            *out = cf::slowest_rate(cfg.gamma, cfg.k0d());
        else
            throw wq_error(WQ_ERR_UNSUPPORTED,
                           "decay-rate table covers n_qubits <= 2");
    });
}

wq_status wq_emission_rate_closed(const wq_system* sys, const char* tag,
                                  const double* ts, int nt, double* out) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(tag != nullptr, "tag is NULL");
        require(ts != nullptr && out != nullptr, "array pointer is NULL");
        require(nt >= 1, "need at least one time point");
        if (cfg.n_qubits > 2)
            throw wq_error(WQ_ERR_UNSUPPORTED, "closed forms cover n_qubits <= 2");
        if (!known_tag(cfg, tag))
            throw wq_error(WQ_ERR_INVALID_ARG,
                           "unknown initial tag '" + std::string(tag) + "'");
        if (cfg.n_qubits == 1) {
            double ree = tag_rho_ee(tag);
            for (int k = 0; k < nt; ++k)
                out[k] = cf::one_qubit_emission_rate(ts[k], cfg.gamma, ree);
        } else {
            for (int k = 0; k < nt; ++k)
                out[k] = cf::emission_rate(tag, ts[k], cfg.gamma, cfg.k0d());
        }
    });
}

wq_status wq_emission_rate_numeric(const wq_system* sys, const double* rho0,
                                   const double* ts, int nt, double* out) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(ts != nullptr && out != nullptr, "array pointer is NULL");
        require(nt >= 1, "need at least one time point");
        Mat r0 = read_density(sys, rho0);
        Mat L = build_generator(cfg);
        bool uniform_from_zero = std::abs(ts[0]) < 1e-12 && nt >= 2;
        if (uniform_from_zero) {
            double dt = ts[1] - ts[0];
            for (int k = 1; k < nt && uniform_from_zero; ++k)
                if (std::abs(ts[k] - k * dt) >
                    1e-9 * std::max(1.0, std::abs(ts[k])))
                    uniform_from_zero = false;
            if (uniform_from_zero && dt > 0.0) {
                Mat E1 = dyn::propagator_expm(L, dt);
                Mat phi = Mat::Identity(L.rows(), L.cols());
                for (int k = 0; k < nt; ++k) {
                    out[k] = dyn::emission_rate_from_density(
                        cfg, density_bridge(phi, r0));
                    if (k + 1 < nt) phi = E1 * phi;
                }
                return;
            }
        }
        for (int k = 0; k < nt; ++k) {
            require(ts[k] >= 0.0, "times must be >= 0");
            out[k] = dyn::emission_rate_from_density(
                cfg, density_bridge(dyn::propagator_expm(L, ts[k]), r0));
        }
    });
}

wq_status wq_photon_mean_closed(const wq_system* sys, const char* tag,
                                const double* omegas, int nw, double t,
                                double* out_reim) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(tag != nullptr, "tag is NULL");
        require(omegas != nullptr && out_reim != nullptr, "array pointer is NULL");
        require(nw >= 1, "need at least one frequency");
        require(t >= 0.0 && std::isfinite(t), "t must be >= 0 and finite");
        if (cfg.n_qubits > 2)
            throw wq_error(WQ_ERR_UNSUPPORTED, "closed forms cover n_qubits <= 2");
        if (!known_tag(cfg, tag))
            throw wq_error(WQ_ERR_INVALID_ARG,
                           "unknown initial tag '" + std::string(tag) + "'");
        for (int k = 0; k < nw; ++k) {
            cd v;
            if (cfg.n_qubits == 1)
                v = cf::one_qubit_photon_mean(omegas[k], t, cfg.omega, cfg.gamma,
                                              tag_rho_eg(tag));
            else
                v = cf::photon_mean(tag, omegas[k], t, cfg.omega, cfg.gamma,
                                    cfg.k0d());
            out_reim[2 * k] = v.real();
            out_reim[2 * k + 1] = v.imag();
        }
    });
}

wq_status wq_photon_mean_numeric(const wq_system* sys, const double* rho0,
                                 const double* omegas, int nw, double t,
                                 double dt, double* out_reim) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(omegas != nullptr && out_reim != nullptr, "array pointer is NULL");
        require(nw >= 1, "need at least one frequency");
        Mat r0 = read_density(sys, rho0);
        std::vector<double> ws(omegas, omegas + nw);
        std::vector<cd> vals = dyn::photon_mean_numeric(cfg, r0, ws, t, dt);
        for (int k = 0; k < nw; ++k) {
            out_reim[2 * k] = vals[k].real();
            out_reim[2 * k + 1] = vals[k].imag();
        }
    });
}

wq_status wq_oracle_create(const wq_system* sys, double band_halfwidth,
                           double mode_spacing, double dt, int taper,
                           wq_oracle** out) {
    return guarded([&] {
        const system_config& cfg = config_of(sys);
        require(out != nullptr, "output pointer is NULL");
        ww::bath_config bath;
        bath.band = band_halfwidth;
        bath.mode_spacing = mode_spacing;
        bath.dt = dt;
        bath.taper = taper != 0;
        *out = new wq_oracle{ww::ww_oracle(cfg, bath)};
    });
}

void wq_oracle_destroy(wq_oracle* oracle) { delete oracle; }

wq_status wq_oracle_run(wq_oracle* oracle, const double* amps_reim,
                        double t_final) {
    return guarded([&] {
        require(oracle != nullptr, "oracle handle is NULL");
        require(amps_reim != nullptr, "amplitude pointer is NULL");
        const int N = oracle->impl.n_qubits();
        Vec b0(N);
        for (int q = 0; q < N; ++q)
            b0(q) = cd(amps_reim[2 * q], amps_reim[2 * q + 1]);
        oracle->impl.run(b0, t_final);
    });
}

int wq_oracle_num_times(const wq_oracle* oracle) {
    return oracle ? oracle->impl.num_times() : 0;
}

wq_status wq_oracle_times(const wq_oracle* oracle, double* out) {
    return guarded([&] {
        require(oracle != nullptr, "oracle handle is NULL");
        require(out != nullptr, "output pointer is NULL");
        for (int k = 0; k < oracle->impl.num_times(); ++k)
            out[k] = oracle->impl.time_at(k);
    });
}

wq_status wq_oracle_amplitudes(const wq_oracle* oracle, double* out_reim) {
    return guarded([&] {
        require(oracle != nullptr, "oracle handle is NULL");
        require(out_reim != nullptr, "output pointer is NULL");
        const auto& bs = oracle->impl.amplitudes();
        size_t idx = 0;
        for (const Vec& b : bs)
            for (int q = 0; q < (int)b.size(); ++q) {
                out_reim[idx++] = b(q).real();
                out_reim[idx++] = b(q).imag();
            }
    });
}

wq_status wq_oracle_norm_error(const wq_oracle* oracle, double* out) {
    return guarded([&] {
        require(oracle != nullptr, "oracle handle is NULL");
        require(out != nullptr, "output pointer is NULL");
        *out = oracle->impl.norm_error();
    });
}

wq_status wq_oracle_fit(const wq_oracle* oracle, const double* proj_reim,
                        double t0, double t1, double* rate, double* shift) {
    return guarded([&] {
        require(oracle != nullptr, "oracle handle is NULL");
        require(proj_reim != nullptr, "projector pointer is NULL");
        const int N = oracle->impl.n_qubits();
        Vec proj(N);
        for (int q = 0; q < N; ++q)
            proj(q) = cd(proj_reim[2 * q], proj_reim[2 * q + 1]);
        oracle->impl.fit(proj, t0, t1, rate, shift);
    });
}

int wq_oracle_modes_per_branch(const wq_oracle* oracle) {
    return oracle ? oracle->impl.modes_per_branch() : 0;
}

wq_status wq_oracle_spectrum(const wq_oracle* oracle, double* omegas,
                             double* right, double* left) {
    return guarded([&] {
        require(oracle != nullptr, "oracle handle is NULL");
        std::vector<double> w, r, l;
        oracle->impl.spectrum(w, r, l);
        for (size_t k = 0; k < w.size(); ++k) {
            if (omegas) omegas[k] = w[k];
            if (right) right[k] = r[k];
            if (left) left[k] = l[k];
        }
    });
}

} // extern "C"
