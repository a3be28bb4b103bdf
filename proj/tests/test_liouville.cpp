#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core.hpp"
#include "liouville.hpp"

using namespace wgqed;

namespace {

system_config make_cfg(int n, double k0d) {
    system_config cfg;
    cfg.n_qubits = n;
    cfg.phases.resize(n);
    for (int j = 0; j < n; ++j) cfg.phases[j] = 0.5 * (n - 1 - 2 * j) * k0d;
    return cfg;
}

// component vector of the identity operator sum_k |k><l=k|
Vec identity_components(int D) {
    Vec v = Vec::Zero(D * D);
    for (int k = 0; k < D; ++k) v(pair_index(D, k, k)) = 1.0;
    return v;
}

} // namespace

TEST_CASE("pairwise rates for two qubits") {
    system_config cfg = make_cfg(2, M_PI / 2);
    rate_matrices r = pairwise_rates(cfg);
    CHECK(r.gamma_nm(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.gamma_nm(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(r.gamma_nm(0, 1)) < 1e-15); // cos(pi/2)
    CHECK(r.alpha_nm(0, 0) == 0.0);
    CHECK(r.alpha_nm(0, 1) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(r.alpha_nm(1, 0) == doctest::Approx(-0.5).epsilon(1e-15));

    cfg = make_cfg(2, 1.0);
    r = pairwise_rates(cfg);
    CHECK(r.gamma_nm(0, 1) == doctest::Approx(std::cos(1.0)).epsilon(1e-15));
    CHECK(r.alpha_nm(0, 1) ==
          doctest::Approx(-0.5 * std::sin(1.0)).epsilon(1e-15));
}

TEST_CASE("generator conserves the identity operator") {
    for (double k0d : {0.3, 1.0, M_PI / 2, M_PI, 2 * M_PI}) {
        system_config cfg = make_cfg(2, k0d);
        Mat L = build_generator(cfg);
        CHECK((L * identity_components(4)).cwiseAbs().maxCoeff() < 1e-13);
    }
    system_config three = make_cfg(3, 0.9);
    Mat L3 = build_generator(three);
    CHECK(L3.rows() == 64);
    CHECK((L3 * identity_components(8)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("generator Hermiticity pairing c^(ij)_(mn) = conj(c^(ji)_(nm))") {
    system_config cfg = make_cfg(2, 1.3);
    Mat L = build_generator(cfg);
    const int D = 4;
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            for (int m = 0; m < D; ++m)
                for (int n = 0; n < D; ++n) {
                    cd a = L(pair_index(D, m, n), pair_index(D, i, j));
                    cd b = L(pair_index(D, n, m), pair_index(D, j, i));
                    CHECK(std::abs(a - std::conj(b)) < 1e-13);
                }
}

TEST_CASE("one-qubit generator matches the analytic coefficients") {
    system_config cfg = make_cfg(1, 0.0);
    cfg.omega = 20.0;
    Mat L = build_generator(cfg);
    // pair order (g,g),(g,e),(e,g),(e,e); gamma = 1
    CHECK(std::abs(L(0, 0)) < 1e-15);
    CHECK(std::abs(L(3, 0) - 1.0) < 1e-15); // P_gg grows an ee component
    CHECK(std::abs(L(1, 1) - cd(-0.5, -20.0)) < 1e-13); // coherence ge
    CHECK(std::abs(L(2, 2) - cd(-0.5, +20.0)) < 1e-13); // coherence eg
    CHECK(std::abs(L(3, 3) + 1.0) < 1e-15);             // population ee
    // no other couplings
    Mat mask = L;
    mask(3, 0) = 0;
    mask(1, 1) = 0;
    mask(2, 2) = 0;
    mask(3, 3) = 0;
    CHECK(mask.cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("Bell conjugation is a similarity transform and round-trips") {
    system_config cfg = make_cfg(2, 0.8);
    Mat L = build_generator(cfg);
    Mat Lb = generator_to_bell(L);
    CHECK(std::abs(L.trace() - Lb.trace()) < 1e-12);
    CHECK((field_to_product(Lb) - L).cwiseAbs().maxCoeff() < 1e-13);
    // identity components are invariant under the basis change
    CHECK((Lb * identity_components(4)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("Bell generator block structure at a generic separation") {
    system_config cfg = make_cfg(2, 1.0);
    cfg.omega = 20.0;
    Mat Lb = generator_to_bell(build_generator(cfg));
    const int D = 4;
    const double c = std::cos(1.0), s = std::sin(1.0);
    // at(m,n,i,j): coefficient of the P_mn component in d<P_ij>/dt
    auto at = [&](int m, int n, int i, int j) {
        return Lb(pair_index(D, m, n), pair_index(D, i, j));
    };
    // populations: EE decays at 2 Gamma; SS/AA are fed by EE at Gamma(1 +- c)
    // and GG by SS/AA
    CHECK(std::abs(at(EIDX, EIDX, EIDX, EIDX) - cd(-2.0, 0)) < 1e-13);
    CHECK(std::abs(at(EIDX, EIDX, SIDX, SIDX) - cd(1.0 + c, 0)) < 1e-13);
    CHECK(std::abs(at(EIDX, EIDX, AIDX, AIDX) - cd(1.0 - c, 0)) < 1e-13);
    CHECK(std::abs(at(SIDX, SIDX, GIDX, GIDX) - cd(1.0 + c, 0)) < 1e-13);
    CHECK(std::abs(at(AIDX, AIDX, GIDX, GIDX) - cd(1.0 - c, 0)) < 1e-13);
    // nothing is fed by P_GG: its component row is empty
    for (int k = 0; k < 16; ++k)
        CHECK(std::abs(Lb(pair_index(D, GIDX, GIDX), k)) < 1e-13);
    // (G,E) coherence rotates at 2 Omega and decays at Gamma
    CHECK(std::abs(at(GIDX, EIDX, GIDX, EIDX) - cd(-1.0, -40.0)) < 1e-12);
    // (A,S) coherence: -Gamma(1 + i sin k0d)
    CHECK(std::abs(at(AIDX, SIDX, AIDX, SIDX) - cd(-1.0, -s)) < 1e-13);
}
