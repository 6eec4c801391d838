#include "ddr/dynamics.hpp"

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>

#include "ddr/errors.hpp"

namespace ddr {

namespace {

using Eigen::Matrix4cd;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cd = std::complex<double>;

constexpr double kNullSpaceTol = 1e-10;

Matrix4cd ket_bra(int ket, int bra) {
    Matrix4cd m = Matrix4cd::Zero();
    m(ket, bra) = 1.0;
    return m;
}

} // namespace

VectorXcd vectorize(const Matrix4cd& m) {
    return Eigen::Map<const VectorXcd>(m.data(), 16);
}

Matrix4cd unvectorize(const VectorXcd& v) {
    return Eigen::Map<const Matrix4cd>(v.data());
}

Liouvillian make_liouvillian(
    const Matrix4cd& hamiltonian,
    const std::vector<std::pair<double, Matrix4cd>>& jumps,
    double removal_rate, const Matrix4cd& injection) {
    const MatrixXcd id = MatrixXcd::Identity(4, 4);
    const cd i_unit(0.0, 1.0);

    // Column stacking turns A rho B into (B^T kron A) vec(rho).
    MatrixXcd gen = -i_unit * (Eigen::kroneckerProduct(id, hamiltonian) -
                               Eigen::kroneckerProduct(hamiltonian.transpose(), id));
    for (const auto& [rate, op] : jumps) {
        if (rate == 0.0) continue;
        const Matrix4cd opdag_op = op.adjoint() * op;
        gen += rate * (Eigen::kroneckerProduct(op.conjugate(), op) -
                       0.5 * Eigen::kroneckerProduct(id, opdag_op) -
                       0.5 * Eigen::kroneckerProduct(opdag_op.transpose(), id));
    }
    gen -= removal_rate * MatrixXcd::Identity(16, 16);

    Liouvillian lv;
    lv.generator = std::move(gen);
    lv.source = vectorize(injection);
    return lv;
}

Liouvillian build_liouvillian(const SystemParams& p, double delta) {
    std::vector<std::pair<double, Matrix4cd>> jumps;
    jumps.emplace_back(p.gamma_b, ket_bra(idx_b, idx_a));
    jumps.emplace_back(p.gamma_c, ket_bra(idx_c, idx_a));
    jumps.emplace_back(p.gamma_d, ket_bra(idx_d, idx_a));
    jumps.emplace_back(p.r_pump, ket_bra(idx_d, idx_b));

    Matrix4cd injection = Matrix4cd::Zero();
    injection(idx_b, idx_b) = p.r_b;
    injection(idx_c, idx_c) = p.r_c;
    injection(idx_d, idx_d) = p.r_d;

    return make_liouvillian(build_hamiltonian(p, delta), jumps, p.gamma_0,
                            injection);
}

Eigen::Matrix4cd steady_state(const Liouvillian& lv) {
    Matrix4cd candidate;
    if (lv.source.norm() > 0.0) {
        Eigen::FullPivLU<MatrixXcd> lu(lv.generator);
        if (!lu.isInvertible()) {
            throw SingularSystem("driven steady-state system is rank deficient");
        }
        candidate = unvectorize(lu.solve(-lv.source));
    } else {
        Eigen::JacobiSVD<MatrixXcd> svd(lv.generator, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double cutoff = kNullSpaceTol * sv(0);
        int kernel_dim = 0;
        for (int i = 0; i < sv.size(); ++i) {
            if (sv(i) <= cutoff) ++kernel_dim;
        }
        if (kernel_dim == 0) {
            throw SingularSystem("generator has no stationary direction");
        }
        if (kernel_dim > 1) {
            throw NonUniqueSteadyState("stationary space has dimension " +
                                       std::to_string(kernel_dim));
        }
        candidate = unvectorize(svd.matrixV().col(15));
    }

    // The kernel vector carries an arbitrary phase; both Hermitian
    // combinations lie in the stationary space, keep the larger one.
    const Matrix4cd herm = 0.5 * (candidate + candidate.adjoint());
    const Matrix4cd anti = cd(0.0, -0.5) * (candidate - candidate.adjoint());
    Matrix4cd rho = herm.norm() >= anti.norm() ? herm : anti;

    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-12 * rho.norm()) {
        throw SingularSystem("stationary solution is traceless");
    }
    rho /= tr;

    Eigen::SelfAdjointEigenSolver<Matrix4cd> es(rho);
    if (es.eigenvalues().minCoeff() < -1e-8) {
        throw SingularSystem("stationary solution is not positive semidefinite");
    }
    return rho;
}

Eigen::Matrix4cd evolve(const Liouvillian& lv, const Matrix4cd& rho0, double t) {
    if (t < 0.0) throw std::invalid_argument("evolve needs t >= 0");
    if (t == 0.0) return rho0;

    using state_type = std::vector<cd>;
    namespace odeint = boost::numeric::odeint;

    const auto rhs = [&lv](const state_type& x, state_type& dxdt, double) {
        Eigen::Map<const VectorXcd> xv(x.data(), 16);
        Eigen::Map<VectorXcd> dv(dxdt.data(), 16);
        dv = lv.generator * xv + lv.source;
    };

    state_type x(16);
    Eigen::Map<VectorXcd>(x.data(), 16) = vectorize(rho0);

    try {
        auto stepper = odeint::make_controlled(
            1e-12, 1e-12, odeint::runge_kutta_dopri5<state_type>());
        odeint::integrate_adaptive(stepper, rhs, x, 0.0, t, std::min(0.01, t));
    } catch (const std::overflow_error& e) {
        throw StepSizeUnderflow(e.what());
    }

    return unvectorize(Eigen::Map<const VectorXcd>(x.data(), 16));
}

ProbeResponse probe_response(const SystemParams& p, double delta) {
    const auto ratio_at = [&p, delta](double probe) {
        SystemParams q = p;
        q.probe = probe;
        const Matrix4cd rho = steady_state(build_liouvillian(q, delta));
        return rho(idx_a, idx_b) / probe;
    };

    ProbeResponse out;
    out.coherence_ratio = ratio_at(p.probe);
    const cd half = ratio_at(0.5 * p.probe);
    const double diff = std::abs(out.coherence_ratio - half);
    const double scale = std::max(std::abs(out.coherence_ratio), std::abs(half));
    // Relative drift beyond 1e-3 means the probe is saturating something;
    // the absolute floor keeps exact transparency points from flagging on
    // solver noise.
    out.nonlinearity = diff > 1e-3 * scale && diff > 1e-10;
    return out;
}

std::complex<double> probe_coherence_in_basis(const SystemParams& p, double delta,
                                              const Matrix4cd& unitary) {
    std::vector<std::pair<double, Matrix4cd>> jumps;
    jumps.emplace_back(p.gamma_b, unitary * ket_bra(idx_b, idx_a) * unitary.adjoint());
    jumps.emplace_back(p.gamma_c, unitary * ket_bra(idx_c, idx_a) * unitary.adjoint());
    jumps.emplace_back(p.gamma_d, unitary * ket_bra(idx_d, idx_a) * unitary.adjoint());
    jumps.emplace_back(p.r_pump, unitary * ket_bra(idx_d, idx_b) * unitary.adjoint());

    Matrix4cd injection = Matrix4cd::Zero();
    injection(idx_b, idx_b) = p.r_b;
    injection(idx_c, idx_c) = p.r_c;
    injection(idx_d, idx_d) = p.r_d;
    injection = unitary * injection * unitary.adjoint();

    const Matrix4cd h =
        unitary * build_hamiltonian(p, delta) * unitary.adjoint();
    const Matrix4cd rho = steady_state(make_liouvillian(h, jumps, p.gamma_0, injection));

    // Read the coherence through the rotated observable, which undoes the
    // basis change exactly.
    const Matrix4cd back = unitary.adjoint() * rho * unitary;
    return back(idx_a, idx_b) / p.probe;
}

} // namespace ddr
