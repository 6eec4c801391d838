#include "ddr/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ddr/dynamics.hpp"
#include "ddr/errors.hpp"

namespace ddr {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (const auto& s : parts) {
        if (!out.empty()) out += sep;
        out += s;
    }
    return out;
}

} // namespace

std::complex<double> chi_analytic(const SystemParams& p, double delta) {
    const RateSet rs = derived_rates(p);
    const std::complex<double> g_ab{rs.gamma_ab, delta};
    const std::complex<double> g_cb{rs.gamma_cb, delta - p.delta0};
    const std::complex<double> g_db{rs.gamma_db, delta - p.delta0 - p.delta_c};

    if (p.omega == 0.0 && p.omega_c == 0.0) {
        // bare two-level response; the general fraction would pinch 0/0
        // at the undamped c and d resonances
        return kI * p.eta / g_ab;
    }
    if (p.omega_c == 0.0) {
        // plain dark-resonance response, the d branch drops out
        return kI * p.eta * g_cb / (g_ab * g_cb + p.omega * p.omega);
    }
    const std::complex<double> num = g_cb * g_db + p.omega_c * p.omega_c;
    const std::complex<double> den = g_ab * num + p.omega * p.omega * g_db;
    return kI * p.eta * num / den;
}

std::complex<double> chi_numeric(const SystemParams& p, double delta, bool* nonlinearity) {
    const ProbeResponse pr = probe_response(p, delta);
    if (nonlinearity) *nonlinearity = pr.nonlinearity;
    // The steady-state coherence rotates opposite to the closed-form
    // convention; conjugating maps the bare two-level ratio
    // rho_ab / E = i / (gamma_ab - i*delta) onto i / (gamma_ab + i*delta).
    return -p.eta * std::conj(pr.coherence_ratio);
}

std::vector<SusceptibilitySample> scan(const SystemParams& p, const ScanGrid& grid,
                                       MethodSelection sel) {
    if (!grid.valid()) throw std::invalid_argument("scan grid needs points >= 2 and delta_min < delta_max");

    std::vector<SusceptibilitySample> out;
    const bool want_analytic = sel != MethodSelection::Numeric;
    const bool want_numeric = sel != MethodSelection::Analytic;
    out.reserve(static_cast<size_t>(grid.points) * (want_analytic && want_numeric ? 2 : 1));

    for (const double d : grid.deltas()) {
        if (want_analytic) {
            SusceptibilitySample s;
            s.delta = d;
            s.method = Method::Analytic;
            s.chi = chi_analytic(p, d);
            out.push_back(std::move(s));
        }
        if (want_numeric) {
            SusceptibilitySample s;
            s.delta = d;
            s.method = Method::Numeric;
            try {
                s.chi = chi_numeric(p, d, &s.nonlinearity);
            } catch (const std::exception& e) {
                s.failed = true;
                s.error = e.what();
                s.chi = {std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN()};
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::pair<double, double> transparency_points(const SystemParams& p) {
    const double half = 0.5 * p.delta_c;
    const double root = std::hypot(half, p.omega_c);
    return {p.delta0 + half + root, p.delta0 + half - root};
}

SpectralFeature interference_feature(const SystemParams& p) {
    const RateSet rs = derived_rates(p);
    SpectralFeature f;

    if (p.omega_c == 0.0) {
        // no c-d coupling, the dark line is not split and no narrow
        // feature exists; report the spot where it would appear
        f.center = p.delta0 + p.delta_c;
        f.width = 0.0;
        f.height = 0.0;
        f.validity_flags.push_back("no line: the c-d coupling is zero");
        return f;
    }

    const double wc2 = p.omega_c * p.omega_c;
    const double wt2 = p.omega * p.omega - p.delta_c * (p.delta_c + p.delta0);
    const double pulled = wt2 + rs.gamma_ab * p.delta_c;
    if (std::abs(wt2) < 10.0 * wc2) {
        throw ValidityViolated(
            "interference line is not perturbative: |omega^2 - delta_c*(delta_c+delta0)| "
            "must stay above 10*omega_c^2");
    }
    if (std::abs(pulled) < 10.0 * wc2) {
        throw ValidityViolated(
            "interference line is not perturbative: |omega^2 - delta_c*(delta_c+delta0) "
            "+ gamma_ab*delta_c| must stay above 10*omega_c^2");
    }

    f.center = (p.delta_c + p.delta0) / (1.0 + wc2 / wt2);
    f.width = rs.gamma_ab * (p.omega * p.omega / std::abs(wt2)) * (2.0 * wc2 / std::abs(pulled));
    f.height = p.eta / rs.gamma_ab;

    const GainThreshold th = gain_threshold_analytic(p);
    if (p.r_pump > th.value) {
        f.kind = FeatureKind::GainDip;
        f.validity_flags.push_back(
            "pump rate exceeds the inversionless gain threshold, the line inverts into a dip");
        if (th.regime_warning) f.validity_flags.push_back("threshold estimate: " + th.warning);
    }
    return f;
}

double intersection_width(const SystemParams& p) {
    if (p.delta_c == 0.0) {
        throw OutsideRegime("dressed levels only intersect at nonzero delta_c");
    }
    const double match = p.delta_c * (p.delta_c + p.delta0);
    if (std::abs(p.omega * p.omega - match) > 0.1 * p.omega * p.omega) {
        throw OutsideRegime(
            "omega^2 must match delta_c*(delta_c+delta0) within 10 percent at the intersection");
    }
    const RateSet rs = derived_rates(p);
    return 2.0 * p.omega_c * p.omega_c * (p.delta0 + p.delta_c) / (rs.gamma_ab * p.delta_c);
}

GainThreshold gain_threshold_analytic(const SystemParams& p) {
    GainThreshold out;
    std::vector<std::string> why;
    if (p.delta0 != 0.0) why.push_back("delta0 is nonzero");
    if (p.delta_c != 0.0) why.push_back("delta_c is nonzero");
    if (p.gamma_0 > 0.1 * p.omega_c) why.push_back("gamma_0 is not small against omega_c");
    if (p.gamma_d == 0.0) why.push_back("gamma_d vanishes, nothing decays into the pumped level");
    if (p.omega == 0.0) why.push_back("omega vanishes, the dark line is absent");

    if (p.gamma_d > 0.0 && p.omega > 0.0) {
        const RateSet rs = derived_rates(p);
        const double branch = p.gamma_b / p.gamma_d;
        const double ratio = p.omega_c / p.omega;
        out.value = branch * ratio * ratio * rs.gamma_a + (1.0 + branch) * p.gamma_0;
    } else {
        out.value = std::numeric_limits<double>::infinity();
    }
    if (!why.empty()) {
        out.regime_warning = true;
        out.warning = join(why, "; ");
    }
    return out;
}

double gain_threshold_numeric(const SystemParams& p, double r_min, double r_max,
                              const ScanGrid& grid) {
    if (!(r_min >= 0.0) || !(r_max > r_min)) {
        throw std::invalid_argument("pump bracket needs 0 <= r_min < r_max");
    }
    if (!grid.valid()) throw std::invalid_argument("scan grid needs points >= 2 and delta_min < delta_max");

    const std::vector<double> deltas = grid.deltas();
    const auto min_absorption = [&](double r) {
        SystemParams q = p;
        q.r_pump = r;
        double best = std::numeric_limits<double>::infinity();
        for (const double d : deltas) best = std::min(best, chi_numeric(q, d).imag());
        return best;
    };

    const double g_lo = min_absorption(r_min);
    if (g_lo == 0.0) return r_min;
    const double g_hi = min_absorption(r_max);
    if (g_hi == 0.0) return r_max;
    if ((g_lo > 0.0) == (g_hi > 0.0)) {
        throw NoSignChange("minimum of Im chi keeps its sign across the pump bracket");
    }

    double lo = r_min;
    double hi = r_max;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = min_absorption(mid);
        if (g_mid == 0.0) return mid;
        if ((g_mid > 0.0) == (g_lo > 0.0)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

double bisect_crossing(const std::function<std::complex<double>(double)>& eval, double a,
                       double b, double fa) {
    for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::abs(a) + std::abs(b));
         ++it) {
        const double m = 0.5 * (a + b);
        const double fm = eval(m).imag();
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// golden-section minimum of |Im eval| on [a, b]
std::pair<double, double> refine_touch(const std::function<std::complex<double>(double)>& eval,
                                       double a, double b) {
    const double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = std::abs(eval(x1).imag());
    double f2 = std::abs(eval(x2).imag());
    for (int it = 0; it < 200 && b - a > 1e-10; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = std::abs(eval(x1).imag());
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = std::abs(eval(x2).imag());
        }
    }
    const double x = f1 <= f2 ? x1 : x2;
    return {x, std::abs(eval(x).imag())};
}

} // namespace

std::vector<double> find_zeros(const std::vector<SusceptibilitySample>& samples,
                               const std::function<std::complex<double>(double)>& eval,
                               double zero_threshold) {
    std::vector<std::pair<double, double>> pts; // (delta, Im chi)
    pts.reserve(samples.size());
    for (const auto& s : samples) {
        if (!s.failed) pts.emplace_back(s.delta, s.chi.imag());
    }
    std::sort(pts.begin(), pts.end());
    if (pts.size() < 2) return {};

    std::vector<double> zeros;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].second == 0.0) {
            zeros.push_back(pts[i].first);
            continue;
        }
        if (i + 1 < pts.size() && pts[i].second * pts[i + 1].second < 0.0) {
            zeros.push_back(
                bisect_crossing(eval, pts[i].first, pts[i + 1].first, pts[i].second));
        }
    }

    // tangential zeros: the absorption can touch the axis without
    // crossing, so refine every interior local minimum that stays
    // non-negative and keep it when it reaches the threshold
    for (size_t i = 1; i + 1 < pts.size(); ++i) {
        const double y = pts[i].second;
        if (y <= 0.0) continue; // exact zeros and crossings are already handled
        if (pts[i - 1].second <= y || pts[i + 1].second <= y) continue;
        const auto [x, fx] = refine_touch(eval, pts[i - 1].first, pts[i + 1].first);
        if (fx < zero_threshold) zeros.push_back(x);
    }

    std::sort(zeros.begin(), zeros.end());
    double min_gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        min_gap = std::min(min_gap, pts[i + 1].first - pts[i].first);
    }
    std::vector<double> unique;
    for (const double z : zeros) {
        if (unique.empty() || z - unique.back() > 0.5 * min_gap) {
            unique.push_back(z);
        } else if (std::abs(eval(z).imag()) < std::abs(eval(unique.back()).imag())) {
            unique.back() = z;
        }
    }
    return unique;
}

std::vector<double> find_zeros(const SystemParams& p,
                               const std::vector<SusceptibilitySample>& samples,
                               double zero_threshold) {
    if (samples.empty()) return {};
    const Method m = samples.front().method;
    std::vector<SusceptibilitySample> same;
    same.reserve(samples.size());
    for (const auto& s : samples) {
        if (s.method == m) same.push_back(s);
    }
    const std::function<std::complex<double>(double)> eval =
        m == Method::Analytic
            ? std::function<std::complex<double>(double)>(
                  [p](double d) { return chi_analytic(p, d); })
            : std::function<std::complex<double>(double)>(
                  [p](double d) { return chi_numeric(p, d); });
    return find_zeros(same, eval, zero_threshold);
}

} // namespace ddr
