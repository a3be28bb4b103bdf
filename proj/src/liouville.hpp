#pragma once

#include "core.hpp"

namespace wgqed {

struct rate_matrices {
    Eigen::MatrixXd gamma_nm; // pairwise decay rates
    Eigen::MatrixXd alpha_nm; // pairwise frequency shifts, zero diagonal
};

rate_matrices pairwise_rates(const system_config& cfg);

// D^2 x D^2 matrix of the vacuum-averaged Heisenberg generator: column (i,j)
// holds d<P_ij>/dt expanded over the |k><l| coordinates (row-major pairs).
// A |-> i sum_n (omega/2)[sz_n, A]
//      + sum_nm (G_nm/2)(2 sp_m A sm_n - sp_m sm_n A - A sp_m sm_n)
//      + i sum_nm a_nm (A sp_m sm_n - sp_m sm_n A)
Mat build_generator(const system_config& cfg);

// conjugate an operator-space matrix into the Bell operator basis (N = 2)
Mat generator_to_bell(const Mat& L);
// same transform applied to a propagator/field matrix
inline Mat field_to_bell(const Mat& F) { return generator_to_bell(F); }
Mat field_to_product(const Mat& F_bell);

} // namespace wgqed
