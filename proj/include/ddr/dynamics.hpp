#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

#include "ddr/coherent.hpp"
#include "ddr/model.hpp"

namespace ddr {

// Vectorized master equation d vec(rho)/dt = generator * vec(rho) + source,
// with vec() stacking columns (rho_{ij} sits at index i + 4*j). The
// generator combines the coherent commutator, the Lindblad dissipators,
// and the uniform removal term; the source injects population onto the
// diagonal.
struct Liouvillian {
    Eigen::MatrixXcd generator; // 16 x 16
    Eigen::VectorXcd source;    // 16
};

Eigen::VectorXcd vectorize(const Eigen::Matrix4cd& m);
Eigen::Matrix4cd unvectorize(const Eigen::VectorXcd& v);

// Assemble a Liouvillian from explicit operators: jump processes given
// as (rate, operator) pairs, a uniform removal rate acting on every
// matrix element, and a positive-semidefinite injection matrix.
Liouvillian make_liouvillian(
    const Eigen::Matrix4cd& hamiltonian,
    const std::vector<std::pair<double, Eigen::Matrix4cd>>& jumps,
    double removal_rate, const Eigen::Matrix4cd& injection);

// Standard model: radiative decay a -> b, a -> c, a -> d, incoherent
// pump b -> d, uniform removal at gamma_0, injection r_b, r_c, r_d.
Liouvillian build_liouvillian(const SystemParams& p, double delta);

// Stationary density matrix. When the source is nonzero this solves the
// affine system directly; otherwise the kernel of the generator is
// extracted by singular value decomposition (null-space threshold 1e-10
// relative to the largest singular value). Throws NonUniqueSteadyState
// when the kernel has more than one dimension and SingularSystem when
// no valid state can be produced.
Eigen::Matrix4cd steady_state(const Liouvillian& lv);

// Propagate rho0 for time t >= 0 with an adaptive Runge-Kutta scheme.
// Throws StepSizeUnderflow when the controller cannot make progress.
Eigen::Matrix4cd evolve(const Liouvillian& lv, const Eigen::Matrix4cd& rho0,
                        double t);

struct ProbeResponse {
    std::complex<double> coherence_ratio; // rho_ab / probe
    bool nonlinearity = false;            // response changed when probe halved
};

// Steady-state probe coherence per unit probe amplitude, with a
// linearity self-check: the solve is repeated at half the probe and the
// nonlinearity flag raised when the ratio moves by more than one part
// in 1e3.
ProbeResponse probe_response(const SystemParams& p, double delta);

// Probe coherence per unit probe computed in a rotated basis: every
// operator is conjugated by `unitary` before the solve and the
// coherence is read back through the transformed observable. Used to
// check basis invariance of the response.
std::complex<double> probe_coherence_in_basis(const SystemParams& p, double delta,
                                              const Eigen::Matrix4cd& unitary);

} // namespace ddr
