#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ddr/model.hpp"

namespace ddr {

enum class Method { Analytic, Numeric };
enum class MethodSelection { Analytic, Numeric, Both };

struct SusceptibilitySample {
    double delta = 0.0;
    std::complex<double> chi{0.0, 0.0};
    Method method = Method::Analytic;
    bool nonlinearity = false; // numeric linearity self-check tripped
    bool failed = false;       // solver error at this point, chi invalid
    std::string error;
};

// Weak-probe susceptibility of the four-level chain in closed form,
//
//   chi = i * eta * (G_cb * G_db + omega_c^2)
//         / (G_ab * (G_cb * G_db + omega_c^2) + omega^2 * G_db)
//
// with G_ab = gamma_ab + i*delta, G_cb = gamma_cb + i*(delta - delta0),
// G_db = gamma_db + i*(delta - delta0 - delta_c). The fraction is kept
// in this combined form so that vanishing lower-level coherence rates
// stay removable instead of dividing by zero.
std::complex<double> chi_analytic(const SystemParams& p, double delta);

// Susceptibility from the master-equation steady state, phase-fixed so
// the bare two-level limit reproduces i*eta / (gamma_ab + i*delta).
// When `nonlinearity` is non-null it receives the probe linearity flag.
std::complex<double> chi_numeric(const SystemParams& p, double delta,
                                 bool* nonlinearity = nullptr);

// Evaluate chi over a grid. For MethodSelection::Both each grid point
// yields the analytic sample followed by the numeric one. Per-point
// solver failures are recorded on the sample instead of aborting.
std::vector<SusceptibilitySample> scan(const SystemParams& p, const ScanGrid& grid,
                                       MethodSelection sel);

// Probe detunings at which the absorption vanishes exactly when the
// lower coherences are undamped:
//   delta = delta0 + delta_c/2 +- sqrt((delta_c/2)^2 + omega_c^2).
// Returned as (plus root, minus root).
std::pair<double, double> transparency_points(const SystemParams& p);

enum class FeatureKind { TransparencyPoint, AbsorptionPeak, GainDip };

struct SpectralFeature {
    FeatureKind kind = FeatureKind::AbsorptionPeak;
    double center = 0.0;
    double width = 0.0;  // full width at half maximum
    double height = 0.0; // Im chi at the center, in units of eta
    std::vector<std::string> validity_flags;
};

// The narrow interference line that the c-d coupling carves out of the
// dark resonance. Perturbative in omega_c; throws ValidityViolated when
// |omega_tilde_sq| or |omega_tilde_sq + gamma_ab*delta_c| drops under
// 10 * omega_c^2.
SpectralFeature interference_feature(const SystemParams& p);

// Width of the transparency line at the dressed-state intersection,
// 2*omega_c^2*(delta0 + delta_c) / (gamma_ab * delta_c). Only valid when
// omega^2 matches delta_c*(delta_c + delta0) within 10 percent and
// delta_c is nonzero; throws OutsideRegime otherwise.
double intersection_width(const SystemParams& p);

struct GainThreshold {
    double value = 0.0;
    bool regime_warning = false;
    std::string warning;
};

// Closed-form pump threshold for inversionless gain on the narrow line,
//   r_th = (gamma_b/gamma_d) * (omega_c/omega)^2 * gamma_a
//          + (1 + gamma_b/gamma_d) * gamma_0.
// Derived for delta0 = delta_c = 0 with gamma_0 well below omega_c; a
// warning is attached when evaluated outside that regime.
GainThreshold gain_threshold_analytic(const SystemParams& p);

// Pump rate at which the minimum of Im chi over `grid` crosses zero,
// located by bisection on r to an absolute tolerance of 1e-6. Throws
// NoSignChange unless the minimum has opposite signs at the ends of
// [r_min, r_max].
double gain_threshold_numeric(const SystemParams& p, double r_min, double r_max,
                              const ScanGrid& grid);

// Zeros of Im chi among sorted same-method samples. Sign changes are
// refined by bisection; non-negative local minima are refined by
// golden-section search and count as zeros when the refined |Im chi|
// drops below zero_threshold (transparency touches the axis without
// crossing when the lower coherences are undamped). `eval` must
// reproduce the method that generated the samples.
std::vector<double> find_zeros(const std::vector<SusceptibilitySample>& samples,
                               const std::function<std::complex<double>(double)>& eval,
                               double zero_threshold = 1e-6);

// Convenience overload wiring `eval` to the given method.
std::vector<double> find_zeros(const SystemParams& p,
                               const std::vector<SusceptibilitySample>& samples,
                               double zero_threshold = 1e-6);

} // namespace ddr
