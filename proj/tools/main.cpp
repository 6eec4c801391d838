#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddr/coherent.hpp"
#include "ddr/config.hpp"
#include "ddr/errors.hpp"
#include "ddr/model.hpp"
#include "ddr/response.hpp"
#include "ddr/validation.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitComputationFailure = 3;

// 12 significant digits, locale independent
std::string format_number(double v) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

// snap to 12 significant digits so JSON serialization stays that short
double round12(double v) {
    if (!std::isfinite(v)) return v;
    const std::string s = format_number(v);
    double out = v;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

json complex_pair(std::complex<double> z) {
    return json::array({round12(z.real()), round12(z.imag())});
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

struct ScanOptions {
    std::optional<std::string> out_flag;
    std::optional<ddr::MethodSelection> method_flag;
};

int cmd_scan(const ddr::RunConfig& cfg, const ScanOptions& opt) {
    const ddr::SystemParams p = ddr::require_valid_params(cfg);
    const ddr::MethodSelection sel = opt.method_flag.value_or(cfg.method);

    const auto samples = ddr::scan(p, cfg.grid, sel);
    const bool has_analytic = sel != ddr::MethodSelection::Numeric;
    const bool has_numeric = sel != ddr::MethodSelection::Analytic;
    const size_t stride = (has_analytic && has_numeric) ? 2 : 1;

    std::ostringstream body;
    body << "delta,chi_re_analytic,chi_im_analytic,chi_re_numeric,chi_im_numeric\n";
    size_t failures = 0;
    std::string first_failure;
    for (size_t k = 0; k + stride <= samples.size(); k += stride) {
        const auto& lead = samples[k];
        body << format_number(lead.delta) << ",";
        const ddr::SusceptibilitySample* analytic = has_analytic ? &samples[k] : nullptr;
        const ddr::SusceptibilitySample* numeric =
            has_numeric ? &samples[k + (has_analytic ? 1 : 0)] : nullptr;
        if (analytic && !analytic->failed) {
            body << format_number(analytic->chi.real()) << ","
                 << format_number(analytic->chi.imag()) << ",";
        } else {
            body << ",,";
        }
        if (numeric && !numeric->failed) {
            body << format_number(numeric->chi.real()) << ","
                 << format_number(numeric->chi.imag());
        } else {
            body << ",";
        }
        body << "\n";
        for (const auto* s : {analytic, numeric}) {
            if (s && s->failed) {
                ++failures;
                if (first_failure.empty()) first_failure = s->error;
            }
        }
    }

    std::optional<std::string> out = opt.out_flag ? opt.out_flag : cfg.out;
    if (out) {
        std::ofstream f(*out, std::ios::binary);
        if (!f) throw ddr::ConfigError("cannot open output file '" + *out + "'");
        f << body.str();
        if (!f) throw ddr::ConfigError("failed writing output file '" + *out + "'");
    } else {
        std::cout << body.str();
    }

    if (failures > 0) {
        std::cerr << failures << " scan point(s) failed; first error: " << first_failure
                  << "\n";
        return kExitComputationFailure;
    }
    return kExitOk;
}

json amplitude_column(const Eigen::Matrix3cd& m, int col) {
    json arr = json::array();
    for (int row = 0; row < 3; ++row) arr.push_back(complex_pair(m(row, col)));
    return arr;
}

json dressed_json(const ddr::DressedStateSet& s) {
    json j;
    j["kind"] = s.kind == ddr::DressedKind::Exact ? "exact" : "perturbative";
    j["available"] = true;
    j["omega_plus"] = round12(s.omega_plus);
    j["omega_minus"] = round12(s.omega_minus);
    j["omega_zero"] = round12(s.omega_zero);
    j["omega0_sq"] = round12(s.omega0_sq);
    j["omega_tilde_sq"] = round12(s.omega_tilde_sq);
    j["degenerate"] = s.degenerate;
    j["amplitudes_acd"] = {{"plus", amplitude_column(s.amplitudes, 0)},
                           {"minus", amplitude_column(s.amplitudes, 1)},
                           {"zero", amplitude_column(s.amplitudes, 2)}};
    j["validity_flags"] = s.flags;
    return j;
}

int cmd_dressed(const ddr::RunConfig& cfg, bool allow_degenerate) {
    const ddr::SystemParams p = ddr::require_valid_params(cfg);
    const ddr::DressedStateSet exact = ddr::dressed_exact(p);

    json j;
    j["exact"] = dressed_json(exact);
    try {
        j["perturbative"] = dressed_json(ddr::dressed_perturbative(p));
    } catch (const ddr::ValidityViolated& e) {
        json stub;
        stub["kind"] = "perturbative";
        stub["available"] = false;
        stub["validity_flags"] = json::array({std::string("ValidityViolated: ") + e.what()});
        j["perturbative"] = stub;
    }
    print_json(j);

    if (exact.degenerate && !allow_degenerate) {
        std::cerr << "dressed spectrum is degenerate and labels are ambiguous; "
                     "rerun with --allow-degenerate to accept ascending order\n";
        return kExitComputationFailure;
    }
    return kExitOk;
}

json feature_json(const ddr::SpectralFeature& f) {
    json j;
    switch (f.kind) {
        case ddr::FeatureKind::TransparencyPoint: j["kind"] = "transparency_point"; break;
        case ddr::FeatureKind::GainDip: j["kind"] = "gain_dip"; break;
        default: j["kind"] = "absorption_peak"; break;
    }
    j["center"] = round12(f.center);
    j["width"] = round12(f.width);
    j["height"] = round12(f.height);
    j["validity_flags"] = f.validity_flags;
    return j;
}

int cmd_features(const ddr::RunConfig& cfg) {
    const ddr::SystemParams p = ddr::require_valid_params(cfg);
    json j;
    std::vector<std::string> notes;
    bool regime_found = false;

    const auto [tp_plus, tp_minus] = ddr::transparency_points(p);
    j["transparency_points"] = {{"plus", round12(tp_plus)}, {"minus", round12(tp_minus)}};

    j["interference_feature"] = nullptr;
    j["intersection"] = nullptr;
    if (p.omega_c == 0.0) {
        // no c-d coupling: a single dark line instead of a split pair
        j["dark_line"] = {{"center", round12(p.delta0)}};
        notes.push_back("the c-d coupling is zero, only the plain dark line remains");
        regime_found = true;
    } else {
        try {
            j["interference_feature"] = feature_json(ddr::interference_feature(p));
            regime_found = true;
        } catch (const ddr::ValidityViolated& e) {
            notes.push_back(std::string("interference feature unavailable: ") + e.what());
            try {
                j["intersection"] = {{"width", round12(ddr::intersection_width(p))}};
                regime_found = true;
            } catch (const ddr::OutsideRegime& e2) {
                notes.push_back(std::string("intersection width unavailable: ") + e2.what());
            }
        }
    }

    const ddr::MethodSelection zero_method = cfg.method == ddr::MethodSelection::Numeric
                                                 ? ddr::MethodSelection::Numeric
                                                 : ddr::MethodSelection::Analytic;
    const auto samples = ddr::scan(p, cfg.grid, zero_method);
    size_t failed = 0;
    for (const auto& s : samples) failed += s.failed ? 1 : 0;
    if (failed > 0) {
        notes.push_back(std::to_string(failed) + " scan point(s) failed during zero detection");
    }
    const std::vector<double> zeros = ddr::find_zeros(p, samples);
    json zj = json::array();
    for (const double z : zeros) zj.push_back(round12(z));
    j["zeros"] = {{"method", zero_method == ddr::MethodSelection::Numeric ? "numeric" : "analytic"},
                  {"values", zj}};
    j["notes"] = notes;
    print_json(j);

    if (!regime_found) {
        std::cerr << "no spectral-feature regime applies to these parameters\n";
        return kExitComputationFailure;
    }
    return kExitOk;
}

int cmd_threshold(const ddr::RunConfig& cfg, double r_min, double r_max) {
    const ddr::SystemParams p = ddr::require_valid_params(cfg);
    const ddr::GainThreshold analytic = ddr::gain_threshold_analytic(p);

    json j;
    j["analytic"] = std::isfinite(analytic.value) ? json(round12(analytic.value)) : json();
    j["regime_warning"] = analytic.regime_warning;
    j["warning"] = analytic.warning;
    j["numeric"] = nullptr;
    j["relative_deviation"] = nullptr;
    j["bracket"] = {{"r_min", round12(r_min)}, {"r_max", round12(r_max)}};

    // search on a window around the narrow line, where the gain appears
    ddr::ScanGrid grid = cfg.grid;
    try {
        const ddr::SpectralFeature f = ddr::interference_feature(p);
        const double half = 5.0 * std::max(f.width, 1e-6);
        grid.delta_min = f.center - half;
        grid.delta_max = f.center + half;
        grid.points = 201;
    } catch (const ddr::ValidityViolated&) {
        // fall back to the configured window
    }

    try {
        const double numeric = ddr::gain_threshold_numeric(p, r_min, r_max, grid);
        j["numeric"] = round12(numeric);
        if (analytic.value > 0.0 && std::isfinite(analytic.value)) {
            j["relative_deviation"] =
                round12(std::abs(numeric - analytic.value) / analytic.value);
        }
        print_json(j);
        return kExitOk;
    } catch (const ddr::NoSignChange& e) {
        print_json(j);
        std::cerr << "threshold bisection failed: " << e.what() << "\n";
        return kExitComputationFailure;
    }
}

int cmd_validate(const ddr::RunConfig& cfg) {
    const ddr::ValidationReport rep = ddr::run_validation(cfg);
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json cj;
        cj["name"] = c.name;
        cj["status"] = ddr::status_name(c.status);
        cj["measured"] = round12(c.measured);
        cj["bound"] = round12(c.bound);
        cj["detail"] = c.detail;
        checks.push_back(cj);
    }
    json j;
    j["overall"] = rep.overall_pass ? "pass" : "fail";
    j["checks"] = checks;
    print_json(j);
    return rep.overall_pass ? kExitOk : kExitValidationFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"four-level double-dark-resonance probe spectra"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string method_str;
    double r_min = 0.0;
    double r_max = 0.0;
    bool allow_degenerate = false;

    CLI::App* sc_scan = app.add_subcommand("scan", "write a susceptibility scan as CSV");
    sc_scan->add_option("--config", config_path, "JSON config file")->required();
    sc_scan->add_option("--out", out_path, "output CSV path (default: config 'out', else stdout)");
    sc_scan->add_option("--method", method_str, "analytic, numeric or both")
        ->check(CLI::IsMember({"analytic", "numeric", "both"}));

    CLI::App* sc_dressed =
        app.add_subcommand("dressed", "print the dressed-state spectrum as JSON");
    sc_dressed->add_option("--config", config_path, "JSON config file")->required();
    sc_dressed->add_flag("--allow-degenerate", allow_degenerate,
                         "accept a degenerate spectrum with ascending labels");

    CLI::App* sc_features =
        app.add_subcommand("features", "print transparency points, the narrow line and scan zeros");
    sc_features->add_option("--config", config_path, "JSON config file")->required();

    CLI::App* sc_threshold =
        app.add_subcommand("threshold", "locate the inversionless gain threshold");
    sc_threshold->add_option("--config", config_path, "JSON config file")->required();
    sc_threshold->add_option("--r-min", r_min, "lower pump bracket")->required();
    sc_threshold->add_option("--r-max", r_max, "upper pump bracket")->required();

    CLI::App* sc_validate =
        app.add_subcommand("validate", "run the cross-check suite and report");
    sc_validate->add_option("--config", config_path, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        const ddr::RunConfig cfg = ddr::load_config(config_path);
        if (sc_scan->parsed()) {
            ScanOptions opt;
            if (!out_path.empty()) opt.out_flag = out_path;
            if (!method_str.empty()) {
                if (method_str == "analytic") opt.method_flag = ddr::MethodSelection::Analytic;
                else if (method_str == "numeric") opt.method_flag = ddr::MethodSelection::Numeric;
                else opt.method_flag = ddr::MethodSelection::Both;
            }
            return cmd_scan(cfg, opt);
        }
        if (sc_dressed->parsed()) return cmd_dressed(cfg, allow_degenerate);
        if (sc_features->parsed()) return cmd_features(cfg);
        if (sc_threshold->parsed()) return cmd_threshold(cfg, r_min, r_max);
        if (sc_validate->parsed()) return cmd_validate(cfg);
        std::cerr << "no subcommand selected\n";
        return kExitConfigError;
    } catch (const ddr::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return kExitComputationFailure;
    }
}
