// command-line front end over the shared-library C API; emits deterministic
// CSV/JSON tables (one command per process, exit 0 ok / 1 cross-check miss /
// 2 validation / 3 numeric)
#include "wgqed.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <sys/stat.h>
#include <vector>

using json = nlohmann::ordered_json;
using cd = std::complex<double>;

namespace {

struct options {
    std::string command;
    int n = 2;
    std::string initial;
    bool initial_set = false;
    bool format_set = false;
    double k0d = 1.5707963267948966;
    double gamma_over_omega = 0.05;
    double t_max = std::nan("");
    bool t_max_set = false;
    double dt = 1e-3;
    double omega_min = std::nan(""), omega_max = std::nan("");
    int omega_count = 0;
    std::string engine = "closed-form";
    std::string output = "-";
    std::string format = "csv";
    std::string phase_convention = "resonant";
    double band = 50.0;
    double mode_spacing = 0.02;
    double bath_dt = 0.002;
    bool taper = true;
};

struct table {
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

[[noreturn]] void fail(int code, const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    std::exit(code);
}

// map library statuses onto the CLI exit convention
void check(wq_status st, const std::string& context) {
    if (st == WQ_OK) return;
    int code = (st == WQ_ERR_NUMERIC) ? 3 : 2;
    fail(code, context + ": " + wq_last_error());
}

void write_table(const table& tb, const options& o) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (o.output != "-") {
        file.open(o.output, std::ios::binary);
        if (!file) fail(2, "cannot open --output path '" + o.output + "'");
        os = &file;
    }
    if (o.format == "csv") {
        for (const auto& kv : tb.header)
            *os << "# " << kv.first << "=" << kv.second << "\n";
        *os << "# columns=";
        for (size_t k = 0; k < tb.columns.size(); ++k)
            *os << (k ? "," : "") << tb.columns[k];
        *os << "\n";
        for (const auto& row : tb.rows) {
            for (size_t k = 0; k < row.size(); ++k)
                *os << (k ? "," : "") << fmt_g(row[k]);
            *os << "\n";
        }
    } else {
        json j;
        json hdr;
        for (const auto& kv : tb.header) hdr[kv.first] = kv.second;
        j["header"] = hdr;
        j["columns"] = tb.columns;
        j["rows"] = tb.rows;
        *os << j.dump(2) << "\n";
    }
}

bool file_exists(const std::string& path) {
    struct stat st{};
    return stat(path.c_str(), &st) == 0 && S_ISREG(st.st_mode);
}

cd json_complex(const json& v, const char* what) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail(2, std::string(what) + " entries must be [re, im] pairs (--initial)");
    return cd(v[0].get<double>(), v[1].get<double>());
}

// density matrix as interleaved (re, im), row-major, product basis
std::vector<double> parse_initial(wq_system* sys, const options& o) {
    const int D = wq_system_dim(sys);
    std::vector<double> rho(2 * D * D, 0.0);
    if (!file_exists(o.initial)) {
        check(wq_initial_from_tag(sys, o.initial.c_str(), rho.data()),
              "--initial");
        return rho;
    }
    std::ifstream in(o.initial);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(2, "--initial file is not valid JSON: " + std::string(e.what()));
    }
    std::string basis = j.value("basis", std::string("product"));
    if (basis != "product" && basis != "bell")
        fail(2, "--initial basis must be \"product\" or \"bell\"");
    if (j.contains("rho")) {
        const json& m = j["rho"];
        if (!m.is_array() || (int)m.size() != D)
            fail(2, "--initial rho must be a " + std::to_string(D) + "x" +
                        std::to_string(D) + " matrix");
        for (int a = 0; a < D; ++a) {
            if (!m[a].is_array() || (int)m[a].size() != D)
                fail(2, "--initial rho must be square");
            for (int b = 0; b < D; ++b) {
                cd v = json_complex(m[a][b], "rho");
                rho[2 * (a * D + b)] = v.real();
                rho[2 * (a * D + b) + 1] = v.imag();
            }
        }
    } else if (j.contains("state")) {
        const json& s = j["state"];
        if (!s.is_array() || (int)s.size() != D)
            fail(2, "--initial state must have " + std::to_string(D) +
                        " components");
        std::vector<cd> v(D);
        double norm = 0.0;
        for (int a = 0; a < D; ++a) {
            v[a] = json_complex(s[a], "state");
            norm += std::norm(v[a]);
        }
        if (norm <= 0.0) fail(2, "--initial state has zero norm");
        norm = std::sqrt(norm);
        for (int a = 0; a < D; ++a)
            for (int b = 0; b < D; ++b) {
                cd e = (v[a] / norm) * std::conj(v[b] / norm);
                rho[2 * (a * D + b)] = e.real();
                rho[2 * (a * D + b) + 1] = e.imag();
            }
    } else {
        fail(2, "--initial JSON needs a \"rho\" or \"state\" field");
    }
    if (basis == "bell") {
        std::vector<double> prod(rho.size());
        check(wq_bell_to_product(sys, rho.data(), prod.data()), "--initial");
        rho.swap(prod);
    }
    check(wq_validate_density(sys, rho.data()), "--initial");
    return rho;
}

// single-excitation qubit amplitudes for the mode-discretized oracle
std::vector<double> oracle_amplitudes(const options& o) {
    const double r = 1.0 / std::sqrt(2.0);
    if (o.n == 1) {
        if (o.initial == "e") return {1.0, 0.0};
        fail(2, "--initial: the oracle engine needs a single-excitation tag "
                "(n=1: e)");
    }
    if (o.n == 2) {
        if (o.initial == "eg") return {1.0, 0.0, 0.0, 0.0};
        if (o.initial == "ge") return {0.0, 0.0, 1.0, 0.0};
        if (o.initial == "S") return {r, 0.0, r, 0.0};
        if (o.initial == "A") return {r, 0.0, -r, 0.0};
        fail(2, "--initial: the oracle engine needs a single-excitation tag "
                "(n=2: eg, ge, S, A)");
    }
    fail(2, "--initial: oracle tags are defined for n <= 2");
}

std::vector<double> phases_for(const options& o) {
    // chain with uniform nearest-neighbour separation phase k0d,
    // centred at the origin; n = 2 gives (+k0d/2, -k0d/2)
    std::vector<double> ph(o.n);
    for (int j = 0; j < o.n; ++j) ph[j] = 0.5 * (o.n - 1 - 2 * j) * o.k0d;
    return ph;
}

void push_common_header(table& tb, const options& o, double omega) {
    tb.header.push_back({"command", o.command});
    if (o.command != "cross-check" && o.command != "generator")
        tb.header.push_back({"engine", o.engine});
    tb.header.push_back({"n", std::to_string(o.n)});
    if (!o.initial.empty()) tb.header.push_back({"initial", o.initial});
    tb.header.push_back({"gamma", "1"});
    tb.header.push_back({"gamma_over_omega", fmt_g(o.gamma_over_omega)});
    tb.header.push_back({"omega", fmt_g(omega)});
    if (o.n >= 2) tb.header.push_back({"k0d", fmt_g(o.k0d)});
    tb.header.push_back(
        {"units", "Gamma=1; time in 1/Gamma; frequency in Gamma; v_g/2L=1"});
}

double default_long_time(wq_system* sys) {
    double rate = 0.0;
    check(wq_slowest_rate(sys, &rate), "--t-max");
    // cap keeps quadrature grids bounded when the slowest rate is tiny
    return std::min(12.0 / rate, 200.0);
}

std::vector<double> time_grid(const options& o) {
    if (!(o.dt > 0.0)) fail(2, "--dt must be > 0");
    if (!(o.t_max >= 0.0) || !std::isfinite(o.t_max))
        fail(2, "--t-max must be finite and >= 0");
    int nt = (int)std::floor(o.t_max / o.dt + 1e-9) + 1;
    std::vector<double> ts(nt);
    for (int k = 0; k < nt; ++k) ts[k] = k * o.dt;
    return ts;
}

std::vector<double> omega_grid(const options& o) {
    if (o.omega_count < 1) fail(2, "--omega-count must be >= 1");
    if (!(o.omega_max >= o.omega_min))
        fail(2, "--omega-max must be >= --omega-min");
    std::vector<double> ws(o.omega_count);
    for (int k = 0; k < o.omega_count; ++k)
        ws[k] = (o.omega_count == 1)
                    ? o.omega_min
                    : o.omega_min + (o.omega_max - o.omega_min) * k /
                                        (o.omega_count - 1);
    return ws;
}

void push_omega_header(table& tb, const options& o) {
    tb.header.push_back({"omega_min", fmt_g(o.omega_min)});
    tb.header.push_back({"omega_max", fmt_g(o.omega_max)});
    tb.header.push_back({"omega_count", std::to_string(o.omega_count)});
}

void push_bath_header(table& tb, const options& o) {
    tb.header.push_back({"band", fmt_g(o.band)});
    tb.header.push_back({"mode_spacing", fmt_g(o.mode_spacing)});
    tb.header.push_back({"bath_dt", fmt_g(o.bath_dt)});
    tb.header.push_back({"taper", o.taper ? "1" : "0"});
}

std::string product_label(int state, int n) {
    std::string s = "W_";
    for (int q = n - 1; q >= 0; --q) s += ((state >> q) & 1) ? 'e' : 'g';
    return s;
}

int run_probabilities(wq_system* sys, const options& o) {
    const int D = wq_system_dim(sys);
    table tb;
    push_common_header(tb, o, 1.0 / o.gamma_over_omega);
    tb.header.push_back({"t_max", fmt_g(o.t_max)});
    tb.header.push_back({"dt", fmt_g(o.dt)});
    tb.header.push_back({"quantity", "transition probabilities"});

    if (o.engine == "oracle") {
        std::vector<double> amps = oracle_amplitudes(o);
        wq_oracle* oracle = nullptr;
        check(wq_oracle_create(sys, o.band, o.mode_spacing, o.bath_dt,
                               o.taper ? 1 : 0, &oracle),
              "--band/--mode-spacing/--bath-dt");
        push_bath_header(tb, o);
        check(wq_oracle_run(oracle, amps.data(), o.t_max), "oracle run");
        int nt = wq_oracle_num_times(oracle);
        std::vector<double> ts(nt), bs(2 * (size_t)nt * o.n);
        check(wq_oracle_times(oracle, ts.data()), "oracle times");
        check(wq_oracle_amplitudes(oracle, bs.data()), "oracle amplitudes");
        wq_oracle_destroy(oracle);
        long stride = std::max(1L, std::lround(o.dt / o.bath_dt));
        if (o.n == 1) {
            tb.columns = {"t", "W_g", "W_e", "W_s"};
            for (int k = 0; k < nt; k += (int)stride) {
                cd b(bs[2 * (size_t)k], bs[2 * (size_t)k + 1]);
                double we = std::norm(b);
                tb.rows.push_back({ts[k], 1.0 - we, we, 0.5});
            }
        } else {
            tb.columns = {"t",    "W_G",  "W_E",  "W_S", "W_A",
                          "W_gg", "W_ge", "W_eg", "W_ee"};
            for (int k = 0; k < nt; k += (int)stride) {
                cd b1(bs[4 * (size_t)k], bs[4 * (size_t)k + 1]);
                cd b2(bs[4 * (size_t)k + 2], bs[4 * (size_t)k + 3]);
                double weg = std::norm(b1), wge = std::norm(b2);
                double wgg = std::max(0.0, 1.0 - weg - wge);
                double ws = 0.5 * std::norm(b1 + b2);
                double wa = 0.5 * std::norm(b1 - b2);
                tb.rows.push_back({ts[k], wgg, 0.0, ws, wa, wgg, wge, weg, 0.0});
            }
        }
        write_table(tb, o);
        return 0;
    }

    int engine = (o.engine == "ode") ? WQ_ENGINE_ODE : WQ_ENGINE_CLOSED_FORM;
    std::vector<double> rho0 = parse_initial(sys, o);
    std::vector<double> ts = time_grid(o);
    const int nt = (int)ts.size();

    if (o.n == 1) {
        tb.columns = {"t", "W_g", "W_e", "W_s"};
        std::vector<double> rho(2 * D * D);
        for (int k = 0; k < nt; ++k) {
            check(wq_density_at(sys, rho0.data(), ts[k], engine, rho.data()),
                  "density evolution");
            double wg = rho[0], we = rho[2 * 3];
            double ws = 0.5 * (wg + we) + rho[2 * 1]; // Re <g|rho|e>
            tb.rows.push_back({ts[k], wg, we, ws});
        }
    } else if (o.n == 2) {
        tb.columns = {"t",    "W_G",  "W_E",  "W_S", "W_A",
                      "W_gg", "W_ge", "W_eg", "W_ee"};
        std::vector<double> bell((size_t)nt * D), prod((size_t)nt * D);
        check(wq_probability_series(sys, rho0.data(), ts.data(), nt, engine, 1,
                                    bell.data()),
              "probability series");
        check(wq_probability_series(sys, rho0.data(), ts.data(), nt, engine, 0,
                                    prod.data()),
              "probability series");
        for (int k = 0; k < nt; ++k) {
            const double* b = bell.data() + (size_t)k * D;
            const double* p = prod.data() + (size_t)k * D;
            tb.rows.push_back(
                {ts[k], b[0], b[1], b[2], b[3], p[0], p[1], p[2], p[3]});
        }
    } else {
        if (o.engine != "ode")
            fail(2, "--engine: closed forms cover n <= 2; use --engine ode");
        tb.columns = {"t"};
        for (int f = 0; f < D; ++f) tb.columns.push_back(product_label(f, o.n));
        std::vector<double> prod((size_t)nt * D);
        check(wq_probability_series(sys, rho0.data(), ts.data(), nt, engine, 0,
                                    prod.data()),
              "probability series");
        for (int k = 0; k < nt; ++k) {
            std::vector<double> row{ts[k]};
            for (int f = 0; f < D; ++f) row.push_back(prod[(size_t)k * D + f]);
            tb.rows.push_back(row);
        }
    }
    write_table(tb, o);
    return 0;
}

int run_spectrum(wq_system* sys, const options& o) {
    table tb;
    push_common_header(tb, o, 1.0 / o.gamma_over_omega);
    tb.header.push_back({"quantity", "radiation spectrum"});

    if (o.engine == "oracle") {
        std::vector<double> amps = oracle_amplitudes(o);
        wq_oracle* oracle = nullptr;
        check(wq_oracle_create(sys, o.band, o.mode_spacing, o.bath_dt,
                               o.taper ? 1 : 0, &oracle),
              "--band/--mode-spacing/--bath-dt");
        tb.header.push_back({"t_max", fmt_g(o.t_max)});
        push_bath_header(tb, o);
        check(wq_oracle_run(oracle, amps.data(), o.t_max), "oracle run");
        int m = wq_oracle_modes_per_branch(oracle);
        std::vector<double> ws(m), right(m), left(m);
        check(wq_oracle_spectrum(oracle, ws.data(), right.data(), left.data()),
              "oracle spectrum");
        wq_oracle_destroy(oracle);
        tb.columns = {"omega", "S", "S_right", "S_left"};
        for (int k = 0; k < m; ++k)
            tb.rows.push_back({ws[k], right[k] + left[k], right[k], left[k]});
        write_table(tb, o);
        return 0;
    }

    std::vector<double> ws = omega_grid(o);
    std::vector<double> vals(ws.size());
    tb.header.push_back({"t_max", fmt_g(o.t_max)});
    push_omega_header(tb, o);
    if (o.engine == "closed-form") {
        if (file_exists(o.initial))
            fail(2, "--initial: the closed-form spectrum takes tags only; use "
                    "--engine quadrature for a density-matrix file");
        check(wq_spectrum_closed(sys, o.initial.c_str(), ws.data(),
                                 (int)ws.size(), o.t_max, vals.data()),
              "closed-form spectrum");
    } else {
        std::vector<double> rho0 = parse_initial(sys, o);
        tb.header.push_back({"dt", fmt_g(o.dt)});
        tb.header.push_back({"phase_convention", o.phase_convention});
        int pc = (o.phase_convention == "omega") ? WQ_PHASE_OMEGA
                                                 : WQ_PHASE_RESONANT;
        if (!std::isfinite(o.t_max))
            fail(2, "--t-max must be finite for the quadrature engine");
        check(wq_spectrum_quadrature(sys, rho0.data(), ws.data(),
                                     (int)ws.size(), o.t_max, o.dt, pc,
                                     vals.data()),
              "--t-max/--dt (quadrature spectrum)");
    }
    tb.columns = {"omega", "S"};
    for (size_t k = 0; k < ws.size(); ++k) tb.rows.push_back({ws[k], vals[k]});
    write_table(tb, o);
    return 0;
}

int run_emission_rate(wq_system* sys, const options& o) {
    table tb;
    push_common_header(tb, o, 1.0 / o.gamma_over_omega);
    tb.header.push_back({"t_max", fmt_g(o.t_max)});
    tb.header.push_back({"dt", fmt_g(o.dt)});
    tb.header.push_back({"quantity", "photon emission rate"});
    std::vector<double> ts = time_grid(o);
    std::vector<double> vals(ts.size());
    if (o.engine == "closed-form") {
        if (file_exists(o.initial))
            fail(2, "--initial: the closed-form emission rate takes tags only; "
                    "use --engine ode for a density-matrix file");
        check(wq_emission_rate_closed(sys, o.initial.c_str(), ts.data(),
                                      (int)ts.size(), vals.data()),
              "closed-form emission rate");
    } else {
        std::vector<double> rho0 = parse_initial(sys, o);
        check(wq_emission_rate_numeric(sys, rho0.data(), ts.data(),
                                       (int)ts.size(), vals.data()),
              "numeric emission rate");
    }
    tb.columns = {"t", "W"};
    for (size_t k = 0; k < ts.size(); ++k) tb.rows.push_back({ts[k], vals[k]});
    write_table(tb, o);
    return 0;
}

int run_photon_mean(wq_system* sys, const options& o) {
    table tb;
    push_common_header(tb, o, 1.0 / o.gamma_over_omega);
    tb.header.push_back({"t_max", fmt_g(o.t_max)});
    push_omega_header(tb, o);
    tb.header.push_back({"quantity", "one-photon mode mean <a_k>"});
    if (!std::isfinite(o.t_max)) fail(2, "--t-max must be finite");
    std::vector<double> ws = omega_grid(o);
    std::vector<double> reim(2 * ws.size());
    if (o.engine == "closed-form") {
        if (file_exists(o.initial))
            fail(2, "--initial: the closed-form photon mean takes tags only; "
                    "use --engine quadrature for a density-matrix file");
        check(wq_photon_mean_closed(sys, o.initial.c_str(), ws.data(),
                                    (int)ws.size(), o.t_max, reim.data()),
              "closed-form photon mean");
    } else {
        std::vector<double> rho0 = parse_initial(sys, o);
        tb.header.push_back({"dt", fmt_g(o.dt)});
        check(wq_photon_mean_numeric(sys, rho0.data(), ws.data(),
                                     (int)ws.size(), o.t_max, o.dt,
                                     reim.data()),
              "--t-max/--dt (numeric photon mean)");
    }
    tb.columns = {"omega", "re", "im", "abs"};
    for (size_t k = 0; k < ws.size(); ++k) {
        cd v(reim[2 * k], reim[2 * k + 1]);
        tb.rows.push_back({ws[k], v.real(), v.imag(), std::abs(v)});
    }
    write_table(tb, o);
    return 0;
}

int run_cross_check(wq_system* sys, const options& o) {
    if (file_exists(o.initial))
        fail(2, "--initial: cross-check compares tagged closed forms; pass a "
                "tag");
    std::vector<double> ws = omega_grid(o);
    std::vector<double> cf(ws.size()), quad(ws.size());
    check(wq_spectrum_closed(sys, o.initial.c_str(), ws.data(), (int)ws.size(),
                             o.t_max, cf.data()),
          "closed-form spectrum");
    const int D = wq_system_dim(sys);
    std::vector<double> rho0(2 * D * D);
    check(wq_initial_from_tag(sys, o.initial.c_str(), rho0.data()),
          "--initial");
    check(wq_spectrum_quadrature(sys, rho0.data(), ws.data(), (int)ws.size(),
                                 o.t_max, o.dt, WQ_PHASE_RESONANT, quad.data()),
          "--t-max/--dt (quadrature spectrum)");
    double peak = 0.0, dev = 0.0;
    for (size_t k = 0; k < ws.size(); ++k)
        peak = std::max(peak, std::abs(cf[k]));
    for (size_t k = 0; k < ws.size(); ++k)
        dev = std::max(dev, std::abs(quad[k] - cf[k]));
    double rel = (peak > 0.0) ? dev / peak : dev;
    bool pass = rel < 1e-3;

    if (o.output != "-") {
        table tb;
        push_common_header(tb, o, 1.0 / o.gamma_over_omega);
        tb.header.push_back({"t_max", fmt_g(o.t_max)});
        tb.header.push_back({"dt", fmt_g(o.dt)});
        push_omega_header(tb, o);
        tb.header.push_back({"quantity", "spectrum cross-check"});
        tb.header.push_back({"max_relative_deviation", fmt_g(rel)});
        tb.columns = {"omega", "closed_form", "quadrature"};
        for (size_t k = 0; k < ws.size(); ++k)
            tb.rows.push_back({ws[k], cf[k], quad[k]});
        write_table(tb, o);
    }
    std::cout << "cross-check max relative deviation: " << fmt_g(rel)
              << " (tolerance 0.001) -> " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

json complex_matrix_json(const std::vector<double>& reim, int rows, int cols) {
    json m = json::array();
    for (int a = 0; a < rows; ++a) {
        json r = json::array();
        for (int b = 0; b < cols; ++b) {
            int k = 2 * (a * cols + b);
            r.push_back({reim[k], reim[k + 1]});
        }
        m.push_back(r);
    }
    return m;
}

int run_generator(wq_system* sys, const options& o) {
    if (o.format != "json")
        fail(2, "--format: the generator dump is JSON only");
    const int D = wq_system_dim(sys);
    const int M = D * D;
    json j;
    j["command"] = "generator";
    j["n"] = o.n;
    j["gamma"] = 1.0;
    j["omega"] = 1.0 / o.gamma_over_omega;
    if (o.n >= 2) j["k0d"] = o.k0d;
    j["phases"] = phases_for(o);
    double mdt = 0.0;
    check(wq_max_dt(sys, &mdt), "max dt");
    j["max_dt"] = mdt;
    std::vector<double> g((size_t)o.n * o.n), a((size_t)o.n * o.n);
    check(wq_pairwise_rates(sys, g.data(), a.data()), "pairwise rates");
    json gj = json::array(), aj = json::array();
    for (int r = 0; r < o.n; ++r) {
        json gr = json::array(), ar = json::array();
        for (int c = 0; c < o.n; ++c) {
            gr.push_back(g[(size_t)r * o.n + c]);
            ar.push_back(a[(size_t)r * o.n + c]);
        }
        gj.push_back(gr);
        aj.push_back(ar);
    }
    j["gamma_nm"] = gj;
    j["alpha_nm"] = aj;
    std::vector<double> L(2 * (size_t)M * M);
    check(wq_generator(sys, 0, L.data()), "generator");
    j["generator_product"] = complex_matrix_json(L, M, M);
    if (o.n == 2) {
        check(wq_generator(sys, 1, L.data()), "generator");
        j["generator_bell"] = complex_matrix_json(L, M, M);
    }
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (o.output != "-") {
        file.open(o.output, std::ios::binary);
        if (!file) fail(2, "cannot open --output path '" + o.output + "'");
        os = &file;
    }
    *os << j.dump(2) << "\n";
    return 0;
}

void add_system_flags(CLI::App* cmd, options& o) {
    cmd->add_option("--n", o.n, "number of qubits")->check(CLI::Range(1, 5));
    cmd->add_option("--k0d", o.k0d,
                    "dimensionless separation phase k0*d between neighbours");
    cmd->add_option("--gamma-over-omega", o.gamma_over_omega,
                    "decay rate over qubit frequency (sets omega; gamma = 1)");
    cmd->add_option("--output", o.output, "output path ('-' = stdout)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->each([&o](const std::string&) { o.format_set = true; });
}

void add_initial_flag(CLI::App* cmd, options& o) {
    cmd->add_option("--initial", o.initial,
                    "initial state tag or JSON density-matrix file")
        ->each([&o](const std::string&) { o.initial_set = true; });
}

void add_tmax_flag(CLI::App* cmd, options& o, const char* help) {
    cmd->add_option("--t-max", o.t_max, help)->each([&o](const std::string&) {
        o.t_max_set = true;
    });
}

void add_bath_flags(CLI::App* cmd, options& o) {
    cmd->add_option("--band", o.band, "oracle bath half-width in Gamma");
    cmd->add_option("--mode-spacing", o.mode_spacing,
                    "oracle bath mode spacing in Gamma");
    cmd->add_option("--bath-dt", o.bath_dt, "oracle integrator step");
    cmd->add_flag("--taper,!--no-taper", o.taper,
                  "cos^2 roll-off of the bath couplings near the band edges");
}

} // namespace

int main(int argc, char** argv) {
    options o;
    CLI::App app{"waveguide-QED decay toolkit: transition probabilities, "
                 "spectra, emission rates and one-photon means for N qubits "
                 "coupled to a 1D photon continuum"};
    app.require_subcommand(1);
    app.set_version_flag("--version", wq_version());

    CLI::App* probs = app.add_subcommand(
        "probabilities", "transition probabilities vs time");
    add_system_flags(probs, o);
    add_initial_flag(probs, o);
    add_tmax_flag(probs, o, "end of the time grid (default 5)");
    probs->add_option("--dt", o.dt, "time grid step");
    probs->add_option("--engine", o.engine, "computation engine")
        ->check(CLI::IsMember({"closed-form", "ode", "oracle"}));
    add_bath_flags(probs, o);

    CLI::App* spec = app.add_subcommand("spectrum", "radiation spectrum S(omega)");
    add_system_flags(spec, o);
    add_initial_flag(spec, o);
    add_tmax_flag(spec, o,
                  "evolution time (default: closed-form inf, else 12/slowest "
                  "rate)");
    spec->add_option("--dt", o.dt, "quadrature time step");
    spec->add_option("--omega-min", o.omega_min, "sweep start (default omega-30)");
    spec->add_option("--omega-max", o.omega_max, "sweep end (default omega+30)");
    spec->add_option("--omega-count", o.omega_count, "sweep points (default 4001)");
    spec->add_option("--engine", o.engine, "computation engine")
        ->check(CLI::IsMember({"closed-form", "quadrature", "oracle"}));
    spec->add_option("--phase-convention", o.phase_convention,
                     "separation phases at the resonant k0 or scaled to k=omega")
        ->check(CLI::IsMember({"resonant", "omega"}));
    add_bath_flags(spec, o);

    CLI::App* rate = app.add_subcommand("emission-rate",
                                        "photon emission rate W(t)");
    add_system_flags(rate, o);
    add_initial_flag(rate, o);
    add_tmax_flag(rate, o, "end of the time grid (default 5)");
    rate->add_option("--dt", o.dt, "time grid step");
    rate->add_option("--engine", o.engine, "computation engine")
        ->check(CLI::IsMember({"closed-form", "ode"}));

    CLI::App* photon = app.add_subcommand(
        "photon-mean", "one-photon mode mean <a_k(t)> vs omega at fixed t");
    add_system_flags(photon, o);
    add_initial_flag(photon, o);
    add_tmax_flag(photon, o, "evolution time (default 12/slowest rate)");
    photon->add_option("--dt", o.dt, "quadrature time step");
    photon->add_option("--omega-min", o.omega_min, "sweep start (default omega-30)");
    photon->add_option("--omega-max", o.omega_max, "sweep end (default omega+30)");
    photon->add_option("--omega-count", o.omega_count,
                       "sweep points (default 4001)");
    photon->add_option("--engine", o.engine, "computation engine")
        ->check(CLI::IsMember({"closed-form", "quadrature"}));

    CLI::App* xchk = app.add_subcommand(
        "cross-check",
        "closed-form vs quadrature spectrum deviation (exit 1 on mismatch)");
    add_system_flags(xchk, o);
    add_initial_flag(xchk, o);
    add_tmax_flag(xchk, o, "evolution time (default 12/slowest rate)");
    xchk->add_option("--dt", o.dt, "quadrature time step");
    xchk->add_option("--omega-min", o.omega_min, "sweep start (default omega-30)");
    xchk->add_option("--omega-max", o.omega_max, "sweep end (default omega+30)");
    xchk->add_option("--omega-count", o.omega_count,
                     "sweep points (default 801)");

    CLI::App* gen = app.add_subcommand(
        "generator", "JSON dump of the Liouvillian generator and rate tables");
    add_system_flags(gen, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    o.command = app.get_subcommands().front()->get_name();
    if (o.command == "generator" && !o.format_set) o.format = "json";
    if (!o.initial_set) o.initial = (o.n == 1) ? "e" : "E";

    double gamma = 1.0;
    if (!(o.gamma_over_omega > 0.0) || !std::isfinite(o.gamma_over_omega))
        fail(2, "--gamma-over-omega must be finite and > 0");
    double omega = gamma / o.gamma_over_omega;

    std::vector<double> phases = phases_for(o);
    wq_system* sys = nullptr;
    check(wq_system_create(o.n, omega, gamma, phases.data(), &sys),
          "--n/--k0d/--gamma-over-omega");

    if (std::isnan(o.omega_min)) o.omega_min = omega - 30.0 * gamma;
    if (std::isnan(o.omega_max)) o.omega_max = omega + 30.0 * gamma;
    if (o.omega_count == 0)
        o.omega_count = (o.command == "cross-check") ? 801 : 4001;

    if (!o.t_max_set) {
        if (o.command == "probabilities" || o.command == "emission-rate")
            o.t_max = 5.0;
        else if (o.command == "spectrum" && o.engine == "closed-form")
            o.t_max = INFINITY;
        else if (o.command != "generator") {
            // quadratures need t on the dt grid; round the default up onto it
            if (!(o.dt > 0.0)) fail(2, "--dt must be > 0");
            o.t_max = std::ceil(default_long_time(sys) / o.dt - 1e-9) * o.dt;
        }
    }

    int code = 0;
    if (o.command == "probabilities") code = run_probabilities(sys, o);
    else if (o.command == "spectrum") code = run_spectrum(sys, o);
    else if (o.command == "emission-rate") code = run_emission_rate(sys, o);
    else if (o.command == "photon-mean") code = run_photon_mean(sys, o);
    else if (o.command == "cross-check") code = run_cross_check(sys, o);
    else if (o.command == "generator") code = run_generator(sys, o);
    wq_system_destroy(sys);
    return code;
}
