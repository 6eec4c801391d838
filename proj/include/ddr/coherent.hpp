#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "ddr/model.hpp"

namespace ddr {

// Basis indices, fixed everywhere: (a, c, d, b).
inline constexpr int idx_a = 0;
inline constexpr int idx_c = 1;
inline constexpr int idx_d = 2;
inline constexpr int idx_b = 3;

// Rotating-frame Hamiltonian for probe detuning delta, acting on the
// amplitude vector (c_a, c_c, c_d, c_b). With hbar = 1 it reads
//
//          ( delta0   omega      0        probe        )
//   H = -  ( omega    0          omega_c  0            )
//          ( 0        omega_c   -delta_c  0            )
//          ( probe    0          0        delta0-delta )
//
Eigen::Matrix4cd build_hamiltonian(const SystemParams& p, double delta);

// The probe-free 3x3 block of the Hamiltonian over (a, c, d).
Eigen::Matrix3d probe_off_block(const SystemParams& p);

enum class DressedKind { Exact, Perturbative };

// Eigensystem of the probe-free block. Labels follow the drive-dressed
// doublet: |+> and |-> evolve continuously out of the two-level
// drive-dressed pair as omega_c grows from zero, |0> out of the bare
// |d> state. Columns of `amplitudes` are |+>, |->, |0> over (a, c, d).
struct DressedStateSet {
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    double omega_zero = 0.0;
    Eigen::Matrix3cd amplitudes = Eigen::Matrix3cd::Zero();
    DressedKind kind = DressedKind::Exact;
    bool degenerate = false; // labels are meaningless when set
    double omega0_sq = 0.0;      // omega^2 + (delta0/2 + sqrt(omega^2 + delta0^2/4))^2
    double omega_tilde_sq = 0.0; // omega^2 - delta_c * (delta_c + delta0)
    std::vector<std::string> flags;
};

// Exact eigendecomposition with continuity-based labeling. When two
// eigenvalues coincide within 1e-10 the set is returned unlabeled with
// the degenerate flag raised (frequencies then simply ascend).
DressedStateSet dressed_exact(const SystemParams& p);

// First order in omega_c. Valid only while |omega_tilde_sq| stays at
// least 10 * omega_c^2 away from zero; throws ValidityViolated outside
// that domain.
DressedStateSet dressed_perturbative(const SystemParams& p);

// Unitarily equivalent level schemes.
enum class DoubletScheme {
    LowerDoublet, // (|c> +- |d>)/sqrt(2), needs delta_c = 0
    UpperDoublet, // (|a> +- |c>)/sqrt(2)
};

struct SchemeTransform {
    Eigen::Matrix4cd hamiltonian; // U H U^dagger
    Eigen::Matrix4cd unitary;     // rows are the new basis states
};

SchemeTransform equivalent_scheme(const SystemParams& p, double delta,
                                  DoubletScheme which);

} // namespace ddr
