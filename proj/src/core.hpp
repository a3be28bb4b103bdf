#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wgqed {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr int GIDX = 0, EIDX = 1, SIDX = 2, AIDX = 3;

// thrown by all modules on contract violations; the C layer maps what() to
// wq_last_error and the code to a wq_status
struct wq_error : std::runtime_error {
    int code; // mirrors wq_status values
    wq_error(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

struct system_config {
    int n_qubits = 2;
    double omega = 20.0;
    double gamma = 1.0;
    std::vector<double> phases; // k0 * x_n per qubit

    int dim() const { return 1 << n_qubits; }
    // separation phase for N = 2, x1 = +d/2, x2 = -d/2
    double k0d() const { return phases.at(0) - phases.at(1); }
};

// throws wq_error on invalid fields
void validate_config(const system_config& cfg);

inline int pair_index(int D, int i, int j) { return D * i + j; }

// single-qubit operator embedded on qubit n (0-based, qubit 1 = MSB)
Mat op_on(int n, int N, const Eigen::Matrix2cd& op);
Mat sigma_minus(int n, int N);
Mat sigma_plus(int n, int N);
Mat sigma_z(int n, int N);

// 4x4 unitary with columns (G, E, S, A) over product rows (gg, ge, eg, ee)
const Mat& bell_matrix();
Mat product_to_bell(const Mat& rho_product);
Mat bell_to_product(const Mat& rho_bell);

// normalized state vectors for tagged initial states
Vec bell_state(const std::string& tag);     // N = 2, Bell components
Vec one_qubit_state(const std::string& tag); // g, e, s
Mat density_from_pure(const Vec& v);
// tagged initial density matrix in the product basis
Mat initial_density(const system_config& cfg, const std::string& tag);
bool known_tag(const system_config& cfg, const std::string& tag);

// throws wq_error(WQ_ERR_INVALID_ARG) unless Hermitian (1e-12),
// unit trace (1e-12) and eigenvalues >= -1e-10
void check_density(const Mat& rho);

// <l|rho(t)|m> = sum_{n,q} <n|rho0|q> c^{ml}_{qn}(t), with
// c^{ij}_{mn} = field(pair(m,n), pair(i,j))
Mat density_bridge(const Mat& field, const Mat& rho0);

} // namespace wgqed
