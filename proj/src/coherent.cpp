#include "ddr/coherent.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ddr/errors.hpp"

namespace ddr {

namespace {

constexpr double kDegeneracyTol = 1e-10;

struct AtPair {
    double omega_plus;
    double omega_minus;
    Eigen::Vector2d v_plus;  // over (a, c)
    Eigen::Vector2d v_minus;
};

// Drive-dressed doublet of the two-level (a, c) block at omega_c = 0.
AtPair drive_dressed_pair(double omega, double delta0) {
    AtPair out;
    const double R = std::sqrt(omega * omega + 0.25 * delta0 * delta0);
    out.omega_plus = -0.5 * delta0 - R;
    out.omega_minus = -0.5 * delta0 + R;
    Eigen::Vector2d vp(-out.omega_plus, omega);
    Eigen::Vector2d vm(omega, out.omega_plus);
    if (vp.norm() < 1e-14) {
        // omega = 0 with delta0 <= 0: the pair reduces to the bare states.
        vp = Eigen::Vector2d(0.0, 1.0);
        vm = Eigen::Vector2d(1.0, 0.0);
    } else {
        vp.normalize();
        vm.normalize();
    }
    out.v_plus = vp;
    out.v_minus = vm;
    return out;
}

} // namespace

Eigen::Matrix4cd build_hamiltonian(const SystemParams& p, double delta) {
    Eigen::Matrix4d m;
    m << p.delta0, p.omega, 0.0, p.probe,
         p.omega, 0.0, p.omega_c, 0.0,
         0.0, p.omega_c, -p.delta_c, 0.0,
         p.probe, 0.0, 0.0, p.delta0 - delta;
    return (-m).cast<std::complex<double>>();
}

Eigen::Matrix3d probe_off_block(const SystemParams& p) {
    Eigen::Matrix3d m;
    m << p.delta0, p.omega, 0.0,
         p.omega, 0.0, p.omega_c,
         0.0, p.omega_c, -p.delta_c;
    return -m;
}

DressedStateSet dressed_exact(const SystemParams& p) {
    DressedStateSet out;
    out.kind = DressedKind::Exact;

    const AtPair at = drive_dressed_pair(p.omega, p.delta0);
    const double R = std::sqrt(p.omega * p.omega + 0.25 * p.delta0 * p.delta0);
    out.omega0_sq = p.omega * p.omega + std::pow(0.5 * p.delta0 + R, 2);
    out.omega_tilde_sq = p.omega * p.omega - p.delta_c * (p.delta_c + p.delta0);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(probe_off_block(p));
    const Eigen::Vector3d evals = solver.eigenvalues(); // ascending
    const Eigen::Matrix3d evecs = solver.eigenvectors();

    const bool degenerate = std::abs(evals(1) - evals(0)) < kDegeneracyTol ||
                            std::abs(evals(2) - evals(1)) < kDegeneracyTol;
    if (degenerate) {
        out.degenerate = true;
        out.flags.push_back("DegenerateSpectrum: labels ambiguous, frequencies ascend");
        out.omega_plus = evals(0);
        out.omega_minus = evals(1);
        out.omega_zero = evals(2);
        out.amplitudes = evecs.cast<std::complex<double>>();
        return out;
    }

    // Match each eigenvector to its omega_c = 0 ancestor: the dressed
    // doublet in the (a, c) plane plus the bare |d>. The permutation
    // maximizing the total overlap wins.
    std::array<Eigen::Vector3d, 3> limits;
    limits[0] << at.v_plus(0), at.v_plus(1), 0.0;
    limits[1] << at.v_minus(0), at.v_minus(1), 0.0;
    limits[2] << 0.0, 0.0, 1.0;

    std::array<int, 3> perm = {0, 1, 2};
    std::array<int, 3> best = perm;
    double best_score = -1.0;
    std::sort(perm.begin(), perm.end());
    do {
        double score = 0.0;
        for (int j = 0; j < 3; ++j) {
            const double ov = limits[static_cast<size_t>(j)].dot(evecs.col(perm[static_cast<size_t>(j)]));
            score += ov * ov;
        }
        if (score > best_score) {
            best_score = score;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    const std::array<double, 3> freq = {evals(best[0]), evals(best[1]), evals(best[2])};
    out.omega_plus = freq[0];
    out.omega_minus = freq[1];
    out.omega_zero = freq[2];
    for (int j = 0; j < 3; ++j) {
        Eigen::Vector3d v = evecs.col(best[static_cast<size_t>(j)]);
        // Fix the sign so the overlap with the ancestor is positive.
        if (limits[static_cast<size_t>(j)].dot(v) < 0.0) v = -v;
        out.amplitudes.col(j) = v.cast<std::complex<double>>();
    }
    return out;
}

DressedStateSet dressed_perturbative(const SystemParams& p) {
    DressedStateSet out;
    out.kind = DressedKind::Perturbative;

    const double otsq = p.omega * p.omega - p.delta_c * (p.delta_c + p.delta0);
    const double ocsq = p.omega_c * p.omega_c;
    if (std::abs(otsq) < 10.0 * ocsq) {
        throw ValidityViolated(
            "perturbative dressed states need |omega^2 - delta_c*(delta_c+delta0)| "
            ">= 10 * omega_c^2");
    }

    const AtPair at = drive_dressed_pair(p.omega, p.delta0);
    const double R = std::sqrt(p.omega * p.omega + 0.25 * p.delta0 * p.delta0);
    const double omega0_sq = p.omega * p.omega + std::pow(0.5 * p.delta0 + R, 2);
    const double omega0 = std::sqrt(omega0_sq);

    out.omega_plus = at.omega_plus;
    out.omega_minus = at.omega_minus;
    out.omega_zero = p.delta_c;
    out.omega0_sq = omega0_sq;
    out.omega_tilde_sq = otsq;

    Eigen::Matrix3d amps = Eigen::Matrix3d::Zero();
    if (omega0 > 1e-14) {
        const double d_plus =
            p.omega_c == 0.0 ? 0.0 : p.omega_c / (out.omega_zero - at.omega_plus);
        const double d_minus =
            p.omega_c == 0.0 ? 0.0 : p.omega_c / (out.omega_zero - at.omega_minus);
        amps.col(0) << -at.omega_plus / omega0, p.omega / omega0,
            (p.omega / omega0) * d_plus;
        amps.col(1) << p.omega / omega0, at.omega_plus / omega0,
            (at.omega_plus / omega0) * d_minus;
    } else {
        // omega = 0 and delta0 <= 0: couplingless doublet, use the bare pair.
        amps.col(0) << at.v_plus(0), at.v_plus(1), 0.0;
        amps.col(1) << at.v_minus(0), at.v_minus(1), 0.0;
        out.flags.push_back("doublet normalization degenerate, bare states used");
    }
    if (p.omega_c == 0.0) {
        amps.col(2) << 0.0, 0.0, 1.0;
    } else {
        amps.col(2) << -p.omega_c * p.omega / otsq,
            p.omega_c * (p.delta_c + p.delta0) / otsq, 1.0;
    }
    out.amplitudes = amps.cast<std::complex<double>>();
    return out;
}

SchemeTransform equivalent_scheme(const SystemParams& p, double delta,
                                  DoubletScheme which) {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Matrix4d u = Eigen::Matrix4d::Identity();
    switch (which) {
    case DoubletScheme::LowerDoublet:
        // Splitting the c-d pair into (|c> +- |d>)/sqrt(2) only produces a
        // pair of static level shifts when the perturbation is resonant.
        if (p.delta_c != 0.0) {
            throw UnsupportedDetuning("lower-doublet scheme requires delta_c = 0");
        }
        u(idx_c, idx_c) = s;
        u(idx_c, idx_d) = s;
        u(idx_d, idx_c) = s;
        u(idx_d, idx_d) = -s;
        break;
    case DoubletScheme::UpperDoublet:
        u(idx_a, idx_a) = s;
        u(idx_a, idx_c) = s;
        u(idx_c, idx_a) = s;
        u(idx_c, idx_c) = -s;
        break;
    }
    SchemeTransform out;
    out.unitary = u.cast<std::complex<double>>();
    const Eigen::Matrix4cd h = build_hamiltonian(p, delta);
    out.hamiltonian = out.unitary * h * out.unitary.adjoint();
    return out;
}

} // namespace ddr
