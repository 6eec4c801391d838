#include "ddr/model.hpp"

#include <cmath>
#include <utility>

namespace ddr {

namespace {

constexpr double kFluxTolerance = 1e-12;

void check_finite(std::vector<ParamIssue>& issues, const char* name, double v) {
    if (!std::isfinite(v)) {
        issues.push_back({ParamIssueKind::NonFiniteValue,
                          std::string(name) + " is not finite"});
    }
}

void check_non_negative(std::vector<ParamIssue>& issues, const char* name, double v) {
    if (v < 0.0) {
        issues.push_back({ParamIssueKind::NegativeRate,
                          std::string(name) + " must be non-negative"});
    }
}

} // namespace

ParamValidation validate_params(const RawParams& raw) {
    ParamValidation out;

    SystemParams p;
    p.omega = raw.omega;
    p.omega_c = raw.omega_c;
    p.probe = raw.probe;
    p.delta0 = raw.delta0;
    p.delta_c = raw.delta_c;
    p.gamma_b = raw.gamma_b;
    p.gamma_c = raw.gamma_c;
    p.gamma_d = raw.gamma_d;
    p.gamma_0 = raw.gamma_0;
    p.r_pump = raw.r_pump;
    p.r_b = raw.r_b.value_or(raw.gamma_0 / 3.0);
    p.r_c = raw.r_c.value_or(raw.gamma_0 / 3.0);
    p.r_d = raw.r_d.value_or(raw.gamma_0 / 3.0);
    p.eta = raw.eta;

    auto& issues = out.issues;
    check_finite(issues, "omega", p.omega);
    check_finite(issues, "omega_c", p.omega_c);
    check_finite(issues, "probe", p.probe);
    check_finite(issues, "delta0", p.delta0);
    check_finite(issues, "delta_c", p.delta_c);
    check_finite(issues, "gamma_b", p.gamma_b);
    check_finite(issues, "gamma_c", p.gamma_c);
    check_finite(issues, "gamma_d", p.gamma_d);
    check_finite(issues, "gamma_0", p.gamma_0);
    check_finite(issues, "r_pump", p.r_pump);
    check_finite(issues, "r_b", p.r_b);
    check_finite(issues, "r_c", p.r_c);
    check_finite(issues, "r_d", p.r_d);
    check_finite(issues, "eta", p.eta);
    if (!issues.empty()) return out;

    check_non_negative(issues, "omega", p.omega);
    check_non_negative(issues, "omega_c", p.omega_c);
    check_non_negative(issues, "gamma_b", p.gamma_b);
    check_non_negative(issues, "gamma_c", p.gamma_c);
    check_non_negative(issues, "gamma_d", p.gamma_d);
    check_non_negative(issues, "gamma_0", p.gamma_0);
    check_non_negative(issues, "r_pump", p.r_pump);
    check_non_negative(issues, "r_b", p.r_b);
    check_non_negative(issues, "r_c", p.r_c);
    check_non_negative(issues, "r_d", p.r_d);

    if (!(p.probe > 0.0)) {
        issues.push_back({ParamIssueKind::NonPositiveProbe,
                          "probe must be strictly positive"});
    }
    if (!(p.eta > 0.0)) {
        issues.push_back({ParamIssueKind::NonPositiveScale,
                          "eta must be strictly positive"});
    }

    // Injected population must exactly replace what the uniform removal
    // drains, otherwise the trace drifts and no normalized steady state
    // exists.
    const double influx = p.r_b + p.r_c + p.r_d;
    if (std::abs(influx - p.gamma_0) > kFluxTolerance) {
        issues.push_back({ParamIssueKind::FluxImbalance,
                          "r_b + r_c + r_d must equal gamma_0"});
    }

    if (!issues.empty()) return out;

    if (p.gamma_b == 0.0 && p.gamma_c == 0.0 && p.gamma_d == 0.0 &&
        p.gamma_0 == 0.0 && p.r_pump == 0.0) {
        out.warnings.push_back(
            "degenerate dynamics: no dissipation channel is active, the steady "
            "state is unlikely to be unique");
    }

    out.params = p;
    return out;
}

RateSet derived_rates(const SystemParams& p) {
    RateSet r;
    r.gamma_a = p.gamma_b + p.gamma_c + p.gamma_d;
    // Total removal per level: |a| decays radiatively and by transit,
    // |b| is drained by the pump and by transit, |c> and |d> only by
    // transit.
    const double removal_a = r.gamma_a + p.gamma_0;
    const double removal_b = p.gamma_0 + p.r_pump;
    const double removal_c = p.gamma_0;
    const double removal_d = p.gamma_0;
    r.gamma_ab = 0.5 * (removal_a + removal_b);
    r.gamma_cb = 0.5 * (removal_c + removal_b);
    r.gamma_db = 0.5 * (removal_d + removal_b);
    return r;
}

std::vector<double> ScanGrid::deltas() const {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(points));
    for (int k = 0; k < points; ++k) out.push_back(point(k));
    return out;
}

} // namespace ddr
