#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

#include "ddr/coherent.hpp"
#include "ddr/errors.hpp"
#include "support.hpp"

using namespace ddr;
using ddr::testing::intersection_params;
using ddr::testing::radiative_split_params;

namespace {

std::vector<double> sorted_eigenvalues(const Eigen::Matrix4cd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 4);
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace

TEST_CASE("hamiltonian entries follow the level scheme") {
    SystemParams p;
    p.omega = 1.0;
    p.omega_c = 0.2;
    p.probe = 0.01;
    p.delta0 = 0.0;
    p.delta_c = 1.0;
    const double delta = 0.5;
    auto h = build_hamiltonian(p, delta);

    auto entry = [&](int i, int j) { return h(i, j).real(); };
    CHECK(entry(idx_a, idx_a) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(entry(idx_a, idx_c) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(entry(idx_a, idx_d) == 0.0);
    CHECK(entry(idx_a, idx_b) == doctest::Approx(-0.01).epsilon(1e-15));
    CHECK(entry(idx_c, idx_c) == 0.0);
    CHECK(entry(idx_c, idx_d) == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(entry(idx_c, idx_b) == 0.0);
    CHECK(entry(idx_d, idx_d) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(entry(idx_d, idx_b) == 0.0);
    // b diagonal carries delta0 - delta with the overall sign flip
    CHECK(entry(idx_b, idx_b) == doctest::Approx(0.5).epsilon(1e-15));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(h(i, j).imag() == 0.0);
}

TEST_CASE("hamiltonian is hermitian for generic parameters") {
    SystemParams p;
    p.omega = 0.7;
    p.omega_c = 0.31;
    p.probe = 0.003;
    p.delta0 = -0.4;
    p.delta_c = 0.9;
    auto h = build_hamiltonian(p, -1.3);
    CHECK((h - h.adjoint()).norm() == 0.0);
}

TEST_CASE("probe-free block matches the full hamiltonian") {
    SystemParams p;
    p.omega = 1.2;
    p.omega_c = 0.25;
    p.delta0 = 0.3;
    p.delta_c = -0.8;
    auto h = build_hamiltonian(p, 0.2);
    auto blk = probe_off_block(p);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(blk(i, j) == doctest::Approx(h(i, j).real()).epsilon(1e-15));
}

TEST_CASE("exact dressed set for the symmetric split case") {
    auto s = dressed_exact(radiative_split_params());
    REQUIRE(!s.degenerate);
    CHECK(s.kind == DressedKind::Exact);
    // sqrt(omega^2 + omega_c^2) with the doublet repelled by the weak coupling
    const double split = std::sqrt(1.0 + 0.04);
    CHECK(s.omega_plus == doctest::Approx(-split).epsilon(1e-12));
    CHECK(s.omega_minus == doctest::Approx(split).epsilon(1e-12));
    CHECK(s.omega_zero == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.omega0_sq == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.omega_tilde_sq == doctest::Approx(1.0).epsilon(1e-12));

    // the zero state is mostly |d> with a small |a> admixture and no |c>
    CHECK(std::abs(s.amplitudes(idx_a, 2)) ==
          doctest::Approx(0.1961161351).epsilon(1e-8));
    CHECK(std::abs(s.amplitudes(idx_c, 2)) < 1e-12);
    CHECK(std::abs(s.amplitudes(2, 2)) == doctest::Approx(0.9805806757).epsilon(1e-8));
    // the doublet splits |a> and |c> evenly at this order
    CHECK(std::abs(s.amplitudes(1, 0)) == doctest::Approx(0.7071067812).epsilon(1e-8));
    CHECK(std::abs(s.amplitudes(1, 1)) == doctest::Approx(0.7071067812).epsilon(1e-8));
    CHECK(std::abs(s.amplitudes(0, 0)) == doctest::Approx(0.6933752453).epsilon(1e-8));
    CHECK(std::abs(s.amplitudes(2, 0)) == doctest::Approx(0.1386750491).epsilon(1e-8));
    // exact columns are unit vectors
    for (int j = 0; j < 3; ++j)
        CHECK(s.amplitudes.col(j).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("perturbative dressed set for the symmetric split case") {
    auto s = dressed_perturbative(radiative_split_params());
    CHECK(s.kind == DressedKind::Perturbative);
    CHECK(s.omega_plus == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(s.omega_minus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.omega_zero == doctest::Approx(0.0).epsilon(1e-12));
    // first-order amplitudes as the closed form writes them
    CHECK(s.amplitudes(0, 0).real() == doctest::Approx(0.7071067812).epsilon(1e-8));
    CHECK(s.amplitudes(1, 0).real() == doctest::Approx(0.7071067812).epsilon(1e-8));
    CHECK(s.amplitudes(2, 0).real() == doctest::Approx(0.1414213562).epsilon(1e-8));
    CHECK(s.amplitudes(0, 2).real() == doctest::Approx(-0.2).epsilon(1e-8));
    CHECK(std::abs(s.amplitudes(1, 2)) < 1e-12);
    CHECK(s.amplitudes(2, 2).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("perturbative frequencies track the exact ones while valid") {
    auto p = radiative_split_params();
    for (double oc : {0.01, 0.05, 0.1, 0.2}) {
        p.omega_c = oc;
        auto ex = dressed_exact(p);
        auto pe = dressed_perturbative(p);
        // tighter of the two natural scalings of the second-order error
        const double tol =
            5.0 * oc * oc /
            std::max(std::abs(ex.omega_tilde_sq),
                     std::sqrt(std::abs(ex.omega_tilde_sq)));
        CHECK(std::abs(ex.omega_plus - pe.omega_plus) < tol);
        CHECK(std::abs(ex.omega_minus - pe.omega_minus) < tol);
        CHECK(std::abs(ex.omega_zero - pe.omega_zero) < tol);
    }
}

TEST_CASE("uncoupled limit collapses both constructions onto the bare states") {
    auto p = radiative_split_params();
    p.omega_c = 0.0;
    auto ex = dressed_exact(p);
    auto pe = dressed_perturbative(p);
    CHECK(ex.omega_plus == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ex.omega_minus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ex.omega_zero == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(std::abs(pe.omega_plus - ex.omega_plus) < 1e-13);
    CHECK(std::abs(ex.amplitudes(2, 2)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(pe.amplitudes(2, 2)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(ex.amplitudes(0, 2)) < 1e-12);
    CHECK(std::abs(pe.amplitudes(0, 2)) < 1e-12);
}

TEST_CASE("detuned perturbation moves all three dressed energies") {
    auto s = dressed_exact(intersection_params());
    REQUIRE(!s.degenerate);
    CHECK(s.omega_tilde_sq == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.omega_plus == doctest::Approx(-1.00999975249).epsilon(1e-9));
    CHECK(s.omega_minus == doctest::Approx(0.863842167547).epsilon(1e-9));
    CHECK(s.omega_zero == doctest::Approx(1.14615758495).epsilon(1e-9));
}

TEST_CASE("perturbative construction refuses the intersection regime") {
    // omega^2 = delta_c*(delta_c + delta0) puts the expansion on top of
    // its vanishing denominator
    CHECK_THROWS_AS((void)dressed_perturbative(intersection_params()),
                    ValidityViolated);
}

TEST_CASE("coincident eigenvalues raise the degenerate flag") {
    SystemParams p;
    p.delta_c = 0.7; // no couplings: levels a and c sit at the same energy
    auto s = dressed_exact(p);
    CHECK(s.degenerate);
    CHECK(!s.flags.empty());
    // frequencies come back in ascending order when unlabeled
    CHECK(s.omega_plus <= s.omega_minus);
    CHECK(s.omega_minus <= s.omega_zero);
}

TEST_CASE("upper doublet change of basis preserves the spectrum") {
    auto p = radiative_split_params();
    const double delta = 0.37;
    auto t = equivalent_scheme(p, delta, DoubletScheme::UpperDoublet);
    CHECK((t.unitary * t.unitary.adjoint() - Eigen::Matrix4cd::Identity()).norm() <
          1e-12);
    auto h = build_hamiltonian(p, delta);
    CHECK((t.hamiltonian - t.unitary * h * t.unitary.adjoint()).norm() < 1e-12);
    auto e1 = sorted_eigenvalues(h);
    auto e2 = sorted_eigenvalues(t.hamiltonian);
    for (int k = 0; k < 4; ++k) CHECK(e1[k] == doctest::Approx(e2[k]).epsilon(1e-12));
}

TEST_CASE("lower doublet change of basis needs a degenerate lower pair") {
    auto p = radiative_split_params();
    auto t = equivalent_scheme(p, -0.8, DoubletScheme::LowerDoublet);
    CHECK((t.unitary * t.unitary.adjoint() - Eigen::Matrix4cd::Identity()).norm() <
          1e-12);
    auto e1 = sorted_eigenvalues(build_hamiltonian(p, -0.8));
    auto e2 = sorted_eigenvalues(t.hamiltonian);
    for (int k = 0; k < 4; ++k) CHECK(e1[k] == doctest::Approx(e2[k]).epsilon(1e-12));

    CHECK_THROWS_AS((void)equivalent_scheme(intersection_params(), -0.8,
                                            DoubletScheme::LowerDoublet),
                    UnsupportedDetuning);
}
