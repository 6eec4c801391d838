#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ddr {

// All quantities are expressed in units of a reference rate, so every
// field below is a pure number. Level order throughout the code is
// (a, c, d, b): one radiatively decaying upper state |a>, two coupled
// lower states |c> and |d>, and the probed ground state |b>.
struct SystemParams {
    double omega = 0.0;    // drive coupling on a-c
    double omega_c = 0.0;  // coherent perturbation coupling on c-d
    double probe = 1e-4;   // probe field amplitude on a-b, must stay weak
    double delta0 = 0.0;   // drive detuning
    double delta_c = 0.0;  // perturbation detuning
    double gamma_b = 0.0;  // radiative rate a -> b
    double gamma_c = 0.0;  // radiative rate a -> c
    double gamma_d = 0.0;  // radiative rate a -> d
    double gamma_0 = 0.0;  // uniform removal rate (transit broadening)
    double r_pump = 0.0;   // incoherent pump rate b -> d
    double r_b = 0.0;      // population injection into b
    double r_c = 0.0;      // population injection into c
    double r_d = 0.0;      // population injection into d
    double eta = 1.0;      // susceptibility scale factor
};

// Parameter record as it arrives from a config file: the injection
// rates may be left unspecified, in which case each defaults to
// gamma_0 / 3.
struct RawParams {
    double omega = 0.0;
    double omega_c = 0.0;
    double probe = 1e-4;
    double delta0 = 0.0;
    double delta_c = 0.0;
    double gamma_b = 0.0;
    double gamma_c = 0.0;
    double gamma_d = 0.0;
    double gamma_0 = 0.0;
    double r_pump = 0.0;
    std::optional<double> r_b;
    std::optional<double> r_c;
    std::optional<double> r_d;
    double eta = 1.0;
};

enum class ParamIssueKind {
    NegativeRate,
    FluxImbalance,
    NonPositiveProbe,
    NonPositiveScale,
    NonFiniteValue,
};

struct ParamIssue {
    ParamIssueKind kind;
    std::string message;
};

struct ParamValidation {
    std::optional<SystemParams> params; // set only when no issues were found
    std::vector<ParamIssue> issues;
    std::vector<std::string> warnings;

    bool ok() const { return params.has_value(); }
};

// Checks finiteness, sign constraints, probe positivity, and the
// population flux balance r_b + r_c + r_d = gamma_0 (tolerance 1e-12)
// that keeps the trace of the density matrix stationary at 1.
// Unspecified injection rates default to gamma_0 / 3 each.
ParamValidation validate_params(const RawParams& raw);

// Relaxation rates derived from the level removal rates. Each coherence
// rate is half the sum of the total population removal rates of its two
// levels; removal of |b> includes the incoherent pump.
struct RateSet {
    double gamma_a;  // total radiative decay of |a|: gamma_b + gamma_c + gamma_d
    double gamma_ab; // a-b coherence relaxation
    double gamma_cb; // c-b coherence relaxation
    double gamma_db; // d-b coherence relaxation
};

RateSet derived_rates(const SystemParams& p);

// Uniform probe-detuning grid, endpoints included.
struct ScanGrid {
    double delta_min = -3.0;
    double delta_max = 3.0;
    int points = 201;

    bool valid() const { return points >= 2 && delta_min < delta_max; }
    double point(int k) const {
        return delta_min + (delta_max - delta_min) * static_cast<double>(k) /
                               static_cast<double>(points - 1);
    }
    std::vector<double> deltas() const;
};

} // namespace ddr
