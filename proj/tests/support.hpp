#pragma once

// Shared fixtures and measurement helpers for the test suites.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "ddr/model.hpp"

namespace ddr::testing {

// Split dark lines: symmetric radiative case, weak c-d coupling.
// gamma_b = gamma_c = gamma_d = 1, omega = 1, omega_c = 0.2, closed system.
inline SystemParams radiative_split_params() {
    SystemParams p;
    p.omega = 1.0;
    p.omega_c = 0.2;
    p.gamma_b = p.gamma_c = p.gamma_d = 1.0;
    return p;
}

// Same scheme with the perturbation detuned to delta_c = 1, where the
// dressed energies intersect and the transparency dip rides on a peak.
inline SystemParams intersection_params() {
    SystemParams p = radiative_split_params();
    p.delta_c = 1.0;
    return p;
}

// Pumped open system tuned for inversionless gain on the narrow line.
inline SystemParams gain_params() {
    SystemParams p;
    p.omega = 1.0;
    p.omega_c = 0.01;
    p.gamma_b = p.gamma_c = p.gamma_d = 1.0;
    p.gamma_0 = 1e-4;
    p.r_pump = 1e-3;
    p.r_b = p.r_c = p.r_d = p.gamma_0 / 3.0;
    return p;
}

// Pumped open system with the narrow line detuned into the wing of the
// transparency window, where the index response is probed.
inline SystemParams enhanced_index_params() {
    SystemParams p = gain_params();
    p.r_pump = 5e-4;
    p.delta_c = 0.4;
    return p;
}

struct LorentzFit {
    double center = 0.0;
    double hwhm = 0.0;
    double amplitude = 0.0;
};

// Least-squares Lorentzian through (x, y) pairs with y > 0: fits the
// reciprocal 1/y = p0 + p1 x + p2 x^2 by normal equations, then reads
// off A / (1 + (x - c)^2 / w^2).
inline LorentzFit fit_lorentzian(const std::vector<double>& xs,
                                 const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 3)
        throw std::invalid_argument("fit_lorentzian: need at least 3 points");
    double s[5] = {0, 0, 0, 0, 0}; // sums of x^k
    double t[3] = {0, 0, 0};       // sums of x^k / y
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(ys[i] > 0.0))
            throw std::invalid_argument("fit_lorentzian: y must be positive");
        double xp = 1.0;
        for (int k = 0; k < 5; ++k) {
            s[k] += xp;
            if (k < 3) t[k] += xp / ys[i];
            xp *= xs[i];
        }
    }
    // Solve the 3x3 normal system for (p0, p1, p2) by Cramer's rule.
    double a[3][3] = {{s[0], s[1], s[2]}, {s[1], s[2], s[3]}, {s[2], s[3], s[4]}};
    auto det3 = [](double m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    double d = det3(a);
    if (d == 0.0) throw std::runtime_error("fit_lorentzian: singular system");
    double p[3];
    for (int j = 0; j < 3; ++j) {
        double m[3][3];
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m[r][c] = (c == j) ? t[r] : a[r][c];
        p[j] = det3(m) / d;
    }
    LorentzFit f;
    f.center = -p[1] / (2.0 * p[2]);
    double inv_amp = p[0] - p[2] * f.center * f.center;
    if (!(p[2] > 0.0) || !(inv_amp > 0.0))
        throw std::runtime_error("fit_lorentzian: not peak shaped");
    f.hwhm = std::sqrt(inv_amp / p[2]);
    f.amplitude = 1.0 / inv_amp;
    return f;
}

// Fit the peak that contains x = guess, using only samples inside
// (lo, hi) whose value is at least `cut` times the local maximum.
inline LorentzFit fit_peak(const std::function<double(double)>& f, double lo,
                           double hi, int n, double cut) {
    std::vector<double> xs, ys;
    double peak = 0.0;
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k < n; ++k) {
        double x = lo + (hi - lo) * k / (n - 1);
        double y = f(x);
        pts.emplace_back(x, y);
        peak = std::max(peak, y);
    }
    for (auto& [x, y] : pts)
        if (y >= cut * peak) {
            xs.push_back(x);
            ys.push_back(y);
        }
    return fit_lorentzian(xs, ys);
}

// Full width of the dip around `center`: distance between the nearest
// crossings of `level` on either side, by linear interpolation on a
// dense sampling of f.
inline double dip_width_at_level(const std::function<double(double)>& f,
                                 double center, double halfspan, double level,
                                 int n = 4001) {
    std::vector<double> xs(n), ys(n);
    for (int k = 0; k < n; ++k) {
        xs[k] = center - halfspan + 2.0 * halfspan * k / (n - 1);
        ys[k] = f(xs[k]);
    }
    int i0 = static_cast<int>(std::lower_bound(xs.begin(), xs.end(), center) -
                              xs.begin());
    if (ys[i0] >= level)
        throw std::runtime_error("dip_width_at_level: center is not below level");
    int lo = i0;
    while (lo > 0 && ys[lo - 1] < level) --lo;
    int hi = i0;
    while (hi + 1 < n && ys[hi + 1] < level) ++hi;
    if (lo == 0 || hi == n - 1)
        throw std::runtime_error("dip_width_at_level: dip is not bracketed");
    double xl = xs[lo - 1] + (level - ys[lo - 1]) * (xs[lo] - xs[lo - 1]) /
                                 (ys[lo] - ys[lo - 1]);
    double xr = xs[hi] + (level - ys[hi]) * (xs[hi + 1] - xs[hi]) /
                             (ys[hi + 1] - ys[hi]);
    return xr - xl;
}

// Dispersion reconstructed from absorption through the causal
// (principal-value) transform, evaluated midway between grid points so
// the singular cell cancels by symmetry:
//   Re chi(d) = (1/pi) PV integral Im chi(w) / (d - w) dw.
inline double dispersion_from_absorption(
    const std::function<std::complex<double>(double)>& chi, double d,
    double span = 60.0, double h = 0.004) {
    double acc = 0.0;
    long n = static_cast<long>(std::llround(2.0 * span / h));
    for (long k = 0; k <= n; ++k) {
        double w = -span + h * static_cast<double>(k);
        acc += chi(w).imag() / (d - w);
    }
    return acc * h / 3.14159265358979323846;
}

} // namespace ddr::testing
