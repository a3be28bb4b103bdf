#include "closed_form.hpp"
#include "liouville.hpp"

#include <cmath>
#include <algorithm>
#include <functional>
#include <set>

namespace wgqed {
namespace cf {

namespace {
const cd iu(0.0, 1.0);

bool infinite_time(double t) { return std::isinf(t); }
} // namespace

two_qubit_params make_params_raw(double omega, double gamma, double k0d) {
    two_qubit_params p;
    p.gamma = gamma;
    p.omega = omega;
    p.c = std::cos(k0d);
    p.s = std::sin(k0d);
    p.gamma_p = gamma * (1.0 + p.c);
    p.gamma_m = gamma * (1.0 - p.c);
    p.omega_p = omega + gamma * p.s / 2.0;
    p.omega_m = omega - gamma * p.s / 2.0;
    return p;
}

two_qubit_params make_params(double omega, double gamma, double k0d) {
    two_qubit_params p = make_params_raw(omega, gamma, k0d);
    if (std::abs(1.0 - p.c) < 1e-6) { p.c = 1.0; p.s = 0.0; }
    else if (std::abs(1.0 + p.c) < 1e-6) { p.c = -1.0; p.s = 0.0; }
    else return p;
    p.gamma_p = gamma * (1.0 + p.c);
    p.gamma_m = gamma * (1.0 - p.c);
    p.omega_p = omega;
    p.omega_m = omega;
    return p;
}

// ---- fields -----------------------------------------------------------------
// layout matches expm of the generator: entry (pair(m,n), pair(i,j)) is the
// |m><n| coefficient of the evolved P_ij(t)

Mat one_qubit_field(double t, double omega, double gamma) {
    Mat M = Mat::Zero(4, 4);
    double eg = std::exp(-gamma * t);
    M(0, 0) = 1.0;                                  // P_gg keeps |g><g|
    M(3, 0) = 1.0 - eg;                             // ... and grows |e><e|
    M(1, 1) = std::exp((-iu * omega - gamma / 2.0) * t);
    M(2, 2) = std::exp((iu * omega - gamma / 2.0) * t);
    M(3, 3) = eg;
    return M;
}

Mat two_qubit_field(double t, const two_qubit_params& p) {
    const double g = p.gamma, c = p.c, s = p.s;
    const double Gp = p.gamma_p, Gm = p.gamma_m;
    const double Op = p.omega_p, Om = p.omega_m;
    const double omega = p.omega;
    const double eps = 1e-9;
    auto P = [](int i, int j) { return 4 * i + j; };

    auto feed = [&](double Gx) {
        if (std::abs(2.0 * g - Gx) < eps * g)
            return Gx * t * std::exp(-2.0 * g * t);
        return -(Gx / (2.0 * g - Gx)) * (std::exp(-2.0 * g * t) - std::exp(-Gx * t));
    };
    auto gg_feed = [&](double Gx) {
        if (Gx < eps * g) return 0.0; // dark channel feeds nothing into gg
        if (std::abs(2.0 * g - Gx) < eps * g)
            return 1.0 - std::exp(-2.0 * g * t) - 2.0 * g * t * std::exp(-2.0 * g * t);
        return (Gx * Gx / (2.0 * g - Gx)) *
               ((std::exp(-2.0 * g * t) - 1.0) / (2.0 * g) -
                (std::exp(-Gx * t) - 1.0) / Gx);
    };

    Mat M = Mat::Zero(16, 16);
    // populations
    M(P(EIDX, EIDX), P(EIDX, EIDX)) = std::exp(-2.0 * g * t);
    M(P(SIDX, SIDX), P(SIDX, SIDX)) = std::exp(-Gp * t);
    M(P(EIDX, EIDX), P(SIDX, SIDX)) = feed(Gp);
    M(P(AIDX, AIDX), P(AIDX, AIDX)) = std::exp(-Gm * t);
    M(P(EIDX, EIDX), P(AIDX, AIDX)) = feed(Gm);
    M(P(GIDX, GIDX), P(GIDX, GIDX)) = 1.0;
    M(P(SIDX, SIDX), P(GIDX, GIDX)) = 1.0 - std::exp(-Gp * t);
    M(P(AIDX, AIDX), P(GIDX, GIDX)) = 1.0 - std::exp(-Gm * t);
    M(P(EIDX, EIDX), P(GIDX, GIDX)) = gg_feed(Gp) + gg_feed(Gm);
    // coherences and their conjugate mirrors
    cd ge = std::exp(-(2.0 * iu * omega + g) * t);
    M(P(GIDX, EIDX), P(GIDX, EIDX)) = ge;
    M(P(EIDX, GIDX), P(EIDX, GIDX)) = std::conj(ge);
    cd as = std::exp(-g * (1.0 + iu * s) * t);
    M(P(AIDX, SIDX), P(AIDX, SIDX)) = as;
    M(P(SIDX, AIDX), P(SIDX, AIDX)) = std::conj(as);
    cd ae = std::exp(-(iu * Op + Gm / 2.0 + g) * t);
    M(P(AIDX, EIDX), P(AIDX, EIDX)) = ae;
    M(P(EIDX, AIDX), P(EIDX, AIDX)) = std::conj(ae);
    cd se = std::exp(-(iu * Om + Gp / 2.0 + g) * t);
    M(P(SIDX, EIDX), P(SIDX, EIDX)) = se;
    M(P(EIDX, SIDX), P(EIDX, SIDX)) = std::conj(se);
    cd ga = std::exp(-(iu * Om + Gm / 2.0) * t);
    M(P(GIDX, AIDX), P(GIDX, AIDX)) = ga;
    M(P(AIDX, GIDX), P(AIDX, GIDX)) = std::conj(ga);
    cd ga_ae = ((1.0 - c) / (1.0 + iu * s)) *
               (std::exp(-(iu * Op + Gm / 2.0 + g) * t) -
                std::exp(-(iu * Om + Gm / 2.0) * t));
    M(P(AIDX, EIDX), P(GIDX, AIDX)) = ga_ae;
    M(P(EIDX, AIDX), P(AIDX, GIDX)) = std::conj(ga_ae);
    cd gs = std::exp(-(iu * Op + Gp / 2.0) * t);
    M(P(GIDX, SIDX), P(GIDX, SIDX)) = gs;
    M(P(SIDX, GIDX), P(SIDX, GIDX)) = std::conj(gs);
    cd gs_se = -((1.0 + c) / (1.0 - iu * s)) *
               (std::exp(-(iu * Om + Gp / 2.0 + g) * t) -
                std::exp(-(iu * Op + Gp / 2.0) * t));
    M(P(SIDX, EIDX), P(GIDX, SIDX)) = gs_se;
    M(P(EIDX, SIDX), P(SIDX, GIDX)) = std::conj(gs_se);
    return M;
}

Mat two_qubit_field(double t, double omega, double gamma, double k0d) {
    return two_qubit_field(t, make_params(omega, gamma, k0d));
}

Mat two_qubit_field_product(double t, double omega, double gamma, double k0d) {
    return field_to_product(two_qubit_field(t, omega, gamma, k0d));
}

// ---- probabilities ----------------------------------------------------------

namespace {
double probability_from_field(const Mat& field, const Mat& rho_i, const Mat& rho_f) {
    const int D = (int)rho_i.rows();
    Vec v(D * D);
    for (int m = 0; m < D; ++m)
        for (int n = 0; n < D; ++n)
            v(pair_index(D, m, n)) = rho_f(m, n);
    Vec y = field * v;
    Mat Pf(D, D);
    for (int m = 0; m < D; ++m)
        for (int n = 0; n < D; ++n)
            Pf(m, n) = y(pair_index(D, m, n));
    return (rho_i * Pf).trace().real();
}
} // namespace

double one_qubit_probability(const std::string& initial, const std::string& final_tag,
                             double t, double omega, double gamma) {
    Mat rho_i = density_from_pure(one_qubit_state(initial));
    Mat rho_f = density_from_pure(one_qubit_state(final_tag));
    return probability_from_field(one_qubit_field(t, omega, gamma), rho_i, rho_f);
}

double two_qubit_probability(const std::string& initial, const std::string& final_tag,
                             double t, double omega, double gamma, double k0d) {
    Mat rho_i = density_from_pure(bell_state(initial));
    Mat rho_f = density_from_pure(bell_state(final_tag));
    return probability_from_field(two_qubit_field(t, omega, gamma, k0d), rho_i, rho_f);
}

// ---- spectra ----------------------------------------------------------------

namespace {

cd J(double delta, double G2, double t) {
    cd a = iu * delta + G2;
    if (infinite_time(t)) {
        if (std::abs(a) < 1e-14) return 0.0; // dark line radiates nothing
        return 1.0 / a;
    }
    if (std::abs(a) * t < 1e-6)
        return t * (1.0 - a * t / 2.0 + a * a * t * t / 6.0);
    return (1.0 - std::exp(-a * t)) / a;
}

// int_0^t e^{-a(t-t')} (1 - e^{-b t'})-type double-decay kernel
cd Dint(cd a, double b, double t) {
    if (infinite_time(t)) return 1.0 / (a * b);
    if (std::abs(a - b) < 1e-12)
        return (1.0 / a) * ((1.0 - std::exp(-b * t)) / b - t * std::exp(-a * t));
    return (1.0 / a) * ((1.0 - std::exp(-b * t)) / b -
                        (std::exp(-b * t) - std::exp(-a * t)) / (a - b));
}

cd dDdb(cd a, double b, double t) {
    if (infinite_time(t)) return -1.0 / (a * b * b);
    cd eb = std::exp(-b * t), ea = std::exp(-a * t);
    return (1.0 / a) * ((b * t * eb - 1.0 + eb) / (b * b) +
                        (t * eb * (a - b) - eb + ea) / ((a - b) * (a - b)));
}

double spectrum_E(double w, double t, const two_qubit_params& p) {
    const double g = p.gamma, c = p.c, s = p.s;
    const double Gp = p.gamma_p, Gm = p.gamma_m;
    const double dp = w - p.omega_p, dm = w - p.omega_m;
    if (std::min(std::abs(1.0 - c), std::abs(1.0 + c)) < 1e-8) {
        // k0d near a multiple of pi: both lines merge at omega
        double d = w - p.omega;
        cd val = -2.0 * Dint(iu * d + 2.0 * g, 2.0 * g, t) +
                 4.0 * Dint(iu * d + g, 2.0 * g, t) -
                 4.0 * g * dDdb(iu * d + g, 2.0 * g, t);
        return 2.0 * (g * val).real();
    }
    cd a1 = iu * dm + Gp / 2.0 + g;
    cd a2 = iu * dp + Gp / 2.0;
    cd a3 = iu * dp + Gm / 2.0 + g;
    cd a4 = iu * dm + Gm / 2.0;
    cd T1a = -(1.0 + c) * (Gp / (1.0 + iu * s)) * Dint(a1, 2.0 * g, t);
    cd T2 = (1.0 + c) * Dint(a1, 2.0 * g, t);
    cd T1b = (1.0 + c) * (Gp / (1.0 + iu * s)) * Dint(a2, 2.0 * g, t);
    cd T3a = -(1.0 + c) * (Gp / Gm) * Dint(a2, 2.0 * g, t);
    cd T3b = (1.0 + c) * (Gp / Gm) * Dint(a2, Gp, t);
    cd T4 = (1.0 - c) * Dint(a3, 2.0 * g, t);
    cd T5a = -(1.0 - c) * (Gm / (1.0 - iu * s)) * Dint(a3, 2.0 * g, t);
    cd T5b = (1.0 - c) * (Gm / (1.0 - iu * s)) * Dint(a4, 2.0 * g, t);
    cd T6a = -(1.0 - c) * (Gm / Gp) * Dint(a4, 2.0 * g, t);
    cd T6b = (1.0 - c) * (Gm / Gp) * Dint(a4, Gm, t);
    cd tot = T1a + T2 + T1b + T3a + T3b + T4 + T5a + T5b + T6a + T6b;
    return 2.0 * (g * tot).real();
}

} // namespace

double spectrum(const std::string& tag, double w, double t,
                const two_qubit_params& p) {
    const double g = p.gamma, s = p.s;
    const double dp = w - p.omega_p, dm = w - p.omega_m;
    cd Jp = J(dp, p.gamma_p / 2.0, t);
    cd Jm = J(dm, p.gamma_m / 2.0, t);
    double SS = p.gamma_p * std::norm(Jp);
    double SA = p.gamma_m * std::norm(Jm);
    double inter = g * s * (Jp * std::conj(Jm)).imag();
    if (tag == "S") return SS;
    if (tag == "A") return SA;
    if (tag == "eg") return 0.5 * SS + 0.5 * SA - inter;
    if (tag == "ge") return 0.5 * SS + 0.5 * SA + inter;
    if (tag == "s1g2") return 0.5 * (0.5 * SS + 0.5 * SA - inter);
    if (tag == "E") return spectrum_E(w, t, p);
    if (tag == "s1e2")
        return 0.5 * spectrum_E(w, t, p) + 0.5 * (0.5 * SS + 0.5 * SA + inter);
    if (tag == "s1s2") return 0.25 * spectrum_E(w, t, p) + 0.5 * SS;
    throw wq_error(1, "unknown spectrum tag '" + tag + "'");
}

double spectrum(const std::string& tag, double w, double t, double omega,
                double gamma, double k0d) {
    return spectrum(tag, w, t, make_params(omega, gamma, k0d));
}

double one_qubit_spectrum(double w, double t, double omega, double gamma,
                          double rho_ee0) {
    return gamma * std::norm(J(w - omega, gamma / 2.0, t)) * rho_ee0;
}

double one_qubit_spectral_density(double w, double omega, double gamma) {
    double d = w - omega;
    return gamma / (d * d + gamma * gamma / 4.0);
}

// ---- normalization integrals ------------------------------------------------

namespace {

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) < 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
    if (!(b > a)) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 32);
}

double norm_of(const std::function<double(double)>& S,
               const std::vector<double>& centers,
               const std::vector<double>& widths, double gamma) {
    std::set<double> pts;
    for (double x0 : centers) {
        pts.insert(x0);
        for (double wd : widths)
            for (double mult : {1.0, 3.0, 10.0, 30.0, 100.0}) {
                pts.insert(x0 - wd * mult);
                pts.insert(x0 + wd * mult);
            }
    }
    std::vector<double> bp(pts.begin(), pts.end());
    double total = 0.0;
    for (size_t k = 0; k + 1 < bp.size(); ++k)
        total += adaptive_simpson(S, bp[k], bp[k + 1], 1e-10);
    // tails via x = edge +- W tan(theta)
    const double W = 10.0 * gamma;
    const double x_lo = bp.front(), x_hi = bp.back();
    auto right_tail = [&](double th) {
        double sec = 1.0 / std::cos(th);
        return S(x_hi + W * std::tan(th)) * W * sec * sec;
    };
    auto left_tail = [&](double th) {
        double sec = 1.0 / std::cos(th);
        return S(x_lo - W * std::tan(th)) * W * sec * sec;
    };
    const double th_hi = M_PI / 2.0 - 1e-8;
    total += adaptive_simpson(right_tail, 0.0, th_hi, 1e-10);
    total += adaptive_simpson(left_tail, 0.0, th_hi, 1e-10);
    return total / (2.0 * M_PI);
}

} // namespace

double spectrum_norm(const std::string& tag, double omega, double gamma,
                     double k0d) {
    two_qubit_params p = make_params(omega, gamma, k0d);
    auto S = [&](double w) { return spectrum(tag, w, INFINITY, p); };
    std::vector<double> centers = {p.omega_p, p.omega_m};
    std::vector<double> widths = {std::max(p.gamma_p / 2.0, 1e-8),
                                  std::max(p.gamma_m / 2.0, 1e-8), gamma};
    return norm_of(S, centers, widths, gamma);
}

double one_qubit_spectrum_norm(double t, double omega, double gamma) {
    auto S = [&](double w) { return one_qubit_spectrum(w, t, omega, gamma, 1.0); };
    return norm_of(S, {omega}, {gamma / 2.0, gamma}, gamma);
}

double slowest_rate(double gamma, double k0d) {
    double c = std::cos(k0d);
    double rate = 2.0 * gamma;
    for (double r : {gamma * (1.0 + c), gamma * (1.0 - c)})
        if (r >= 1e-6 * gamma) rate = std::min(rate, r);
    return rate;
}

// ---- emission rates -----------------------------------------------------------

double emission_rate(const std::string& tag, double t, double gamma, double k0d) {
    two_qubit_params p = make_params(1.0, gamma, k0d); // omega drops out
    const double g = gamma, c = p.c, s = p.s;
    const double Gp = p.gamma_p, Gm = p.gamma_m;
    if (tag == "S") return (Gp / 2.0) * std::exp(-Gp * t);
    if (tag == "A") return (Gm / 2.0) * std::exp(-Gm * t);
    if (tag == "eg")
        return (Gp / 4.0) * std::exp(-Gp * t) + (Gm / 4.0) * std::exp(-Gm * t) -
               (g * s / 2.0) * std::exp(-g * t) * std::sin(g * s * t);
    if (tag == "ge")
        return (Gp / 4.0) * std::exp(-Gp * t) + (Gm / 4.0) * std::exp(-Gm * t) +
               (g * s / 2.0) * std::exp(-g * t) * std::sin(g * s * t);
    if (tag == "E") {
        if (std::min(std::abs(1.0 - c), std::abs(1.0 + c)) < 1e-8)
            return (1.0 + 2.0 * g * t) * g * std::exp(-2.0 * g * t);
        return 0.5 * (Gp * Gp / Gm) * std::exp(-Gp * t) +
               0.5 * (Gm * Gm / Gp) * std::exp(-Gm * t) -
               (4.0 * g * c * c / (1.0 - c * c)) * std::exp(-2.0 * g * t);
    }
    if (tag == "s1g2") return 0.5 * emission_rate("eg", t, gamma, k0d);
    if (tag == "s1e2")
        return 0.5 * emission_rate("E", t, gamma, k0d) +
               0.5 * emission_rate("ge", t, gamma, k0d);
    if (tag == "s1s2")
        return 0.25 * emission_rate("E", t, gamma, k0d) +
               0.5 * emission_rate("S", t, gamma, k0d);
    if (tag == "G") return 0.0;
    throw wq_error(1, "unknown emission-rate tag '" + tag + "'");
}

double one_qubit_emission_rate(double t, double gamma, double rho_ee0) {
    return (gamma / 2.0) * std::exp(-gamma * t) * rho_ee0;
}

// ---- one-photon means ----------------------------------------------------------

namespace {
cd K(double delta, double r, double t) {
    cd a = iu * delta - r;
    if (std::abs(a) * t < 1e-6)
        return t * (1.0 + a * t / 2.0 + a * a * t * t / 6.0);
    return (std::exp(a * t) - 1.0) / a;
}
} // namespace

cd photon_mean(const std::string& tag, double w, double t, double omega,
               double gamma, double k0d) {
    if (tag == "G" || tag == "E" || tag == "S" || tag == "A" || tag == "eg" ||
        tag == "ge")
        return 0.0; // no optical coherence between adjacent excitation sectors
    two_qubit_params p = make_params(omega, gamma, k0d);
    const double g = std::sqrt(gamma), c = p.c, s = p.s;
    const double Gp = p.gamma_p, Gm = p.gamma_m;
    const double dp = w - p.omega_p, dm = w - p.omega_m;
    const double half = std::sin(k0d / 2.0), chalf = std::cos(k0d / 2.0);
    const cd pre = -iu * (g / 2.0) * std::exp(-iu * w * t);
    if (tag == "s1g2")
        return pre * (chalf * K(dp, Gp / 2.0, t) - iu * half * K(dm, Gm / 2.0, t));
    cd eikd = std::exp(iu * k0d);
    cd t1 = pre * (chalf / (1.0 - iu * s)) *
            ((1.0 + c) * K(dp, Gp / 2.0, t) - eikd * K(dm, Gp / 2.0 + gamma, t));
    cd t2 = (g / 2.0) * std::exp(-iu * w * t) * (half / (1.0 + iu * s)) *
            ((1.0 - c) * K(dm, Gm / 2.0, t) + eikd * K(dp, Gm / 2.0 + gamma, t));
    if (tag == "s1e2") return t1 - t2;
    if (tag == "s1s2") return t1 + pre * chalf * K(dp, Gp / 2.0, t);
    throw wq_error(1, "unknown photon-mean tag '" + tag + "'");
}

cd one_qubit_photon_mean(double w, double t, double omega, double gamma,
                         cd rho_eg0) {
    return -iu * std::sqrt(gamma) * std::exp(-iu * w * t) * rho_eg0 *
           K(w - omega, gamma / 2.0, t);
}

} // namespace cf
} // namespace wgqed
