// fadeber: BER curve fitting and Rayleigh-fading average BER toolkit.
//
// Subcommands:
//   fit        fit the bell model to a scheme's AWGN BER curve
//   awgn       tabulate AWGN BER over an SNR grid (CSV)
//   fading     tabulate Rayleigh-average BER estimators (CSV)
//   mc         seeded Monte Carlo estimate at one SNR point
//   reproduce  reference tables / figure data with deltas
//
// Exit codes: 0 success, 2 argument or validation error, 3 non-convergence.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fadeber/fading.hpp"
#include "fadeber/gaussfit.hpp"
#include "fadeber/modulation.hpp"
#include "fadeber/montecarlo.hpp"
#include "fadeber/numerics.hpp"
#include "fadeber/reference.hpp"

namespace {

using namespace fadeber;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNoConverge = 3;

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    char trailing;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &g.start, &g.stop, &g.step,
                    &trailing) != 3)
        throw std::invalid_argument("grid must be start:stop:step, got '" + text + "'");
    if (!(g.step > 0.0)) throw std::invalid_argument("grid step must be > 0");
    if (g.stop < g.start) throw std::invalid_argument("grid stop must be >= start");
    return g;
}

std::vector<double> grid_points(const GridSpec& g) {
    std::vector<double> pts;
    const double ratio = (g.stop - g.start) / g.step;
    const auto n = static_cast<std::size_t>(ratio + 1e-9 * (ratio + 1.0)) + 1;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(g.start + double(i) * g.step);
    return pts;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);  // no BOM, \n line ends
            if (!file_) throw std::invalid_argument("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

GaussianFit fit_for_scheme(const ModulationScheme& scheme,
                           const std::optional<std::string>& fit_flag) {
    if (fit_flag) {
        GaussianFit f;
        char trailing;
        if (std::sscanf(fit_flag->c_str(), "%lf,%lf,%lf%c", &f.a, &f.b, &f.c,
                        &trailing) != 3 ||
            !(f.a > 0.0) || !(f.c > 0.0))
            throw std::invalid_argument("--fit must be a,b,c with a > 0, c > 0");
        f.domain = SnrDomain::Decibel;
        return f;
    }
    if (auto ref = reference_fit_for(scheme)) return ref->fit;
    // No bundled coefficients: fit on the default 0-10 dB grid.
    BerCurve curve = ber_curve(scheme, {0.0, SnrDomain::Decibel},
                               {10.0, SnrDomain::Decibel}, 0.1);
    return fit_gaussian(curve).first;
}

int run_fit(const std::string& scheme_text, const std::string& grid_text,
            const std::string& domain_text, bool json_output) {
    const ModulationScheme scheme = parse_scheme(scheme_text);
    const GridSpec grid = parse_grid(grid_text);
    SnrDomain domain = SnrDomain::Decibel;
    if (domain_text == "linear")
        domain = SnrDomain::Linear;
    else if (domain_text != "db")
        throw std::invalid_argument("--domain must be db or linear");

    BerCurve curve =
        ber_curve(scheme, {grid.start, domain}, {grid.stop, domain}, grid.step);
    auto [fit, report] = fit_gaussian(curve);

    if (json_output) {
        nlohmann::json j{{"scheme", scheme.name()},
                         {"domain", domain == SnrDomain::Decibel ? "db" : "linear"},
                         {"a", fit.a},
                         {"b", fit.b},
                         {"c", fit.c},
                         {"sse", report.sse},
                         {"r2", report.r2},
                         {"adj_r2", report.adj_r2},
                         {"rmse", report.rmse},
                         {"iterations", report.iterations},
                         {"converged", report.converged}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "scheme=" << scheme.name() << "\n"
                  << "a=" << fmt(fit.a) << "\n"
                  << "b=" << fmt(fit.b) << "\n"
                  << "c=" << fmt(fit.c) << "\n"
                  << "sse=" << fmt(report.sse) << "\n"
                  << "r2=" << fmt(report.r2) << "\n"
                  << "adj_r2=" << fmt(report.adj_r2) << "\n"
                  << "rmse=" << fmt(report.rmse) << "\n"
                  << "iterations=" << report.iterations << "\n"
                  << "converged=" << (report.converged ? "true" : "false") << "\n";
    }
    return report.converged ? kExitOk : kExitNoConverge;
}

int run_awgn(const std::string& scheme_text, const std::string& grid_text,
             const std::string& out_path) {
    const ModulationScheme scheme = parse_scheme(scheme_text);
    const GridSpec grid = parse_grid(grid_text);
    OutputTarget out(out_path);
    out.stream() << "ebn0_db,ber\n";
    for (double db : grid_points(grid)) {
        out.stream() << fmt(db) << ","
                     << fmt(awgn_ber(scheme, {db, SnrDomain::Decibel})) << "\n";
    }
    return kExitOk;
}

int run_fading(const std::string& scheme_text, const std::string& grid_text,
               const std::string& mode, const std::optional<std::string>& fit_flag,
               const std::string& out_path) {
    const ModulationScheme scheme = parse_scheme(scheme_text);
    const GridSpec grid = parse_grid(grid_text);
    const std::vector<double> pts = grid_points(grid);
    OutputTarget out(out_path);

    if (mode.empty()) {
        const GaussianFit fit = fit_for_scheme(scheme, fit_flag);
        out.stream() << "ebn0_db,ber_generalized,ber_exact,ber_quadrature,ratio\n";
        for (const ComparisonRow& row : compare_curves(scheme, fit, pts)) {
            out.stream() << fmt(row.ebn0_db) << "," << fmt(row.ber_generalized) << ","
                         << fmt(row.ber_exact) << "," << fmt(row.ber_quadrature) << ","
                         << fmt(row.ratio) << "\n";
        }
        return kExitOk;
    }

    if (mode != "closed-form" && mode != "exact" && mode != "quadrature")
        throw std::invalid_argument("--mode must be closed-form, exact or quadrature");
    std::optional<GaussianFit> fit;
    if (mode != "exact") fit = fit_for_scheme(scheme, fit_flag);
    const char* column = mode == "exact"        ? "ber_exact"
                         : mode == "closed-form" ? "ber_generalized"
                                                 : "ber_quadrature";
    out.stream() << "ebn0_db," << column << "\n";
    for (double db : pts) {
        const double gamma = db_to_linear({db, SnrDomain::Decibel}).magnitude;
        double ber;
        if (mode == "exact") {
            ber = exact_fading_ber(scheme, gamma);
        } else if (mode == "closed-form") {
            ber = generalized_fading_ber(*fit, gamma);
        } else {
            ber = average_over_rayleigh(
                [&](double xi) { return gaussian_model(fit->a, fit->b, fit->c, xi); },
                gamma, 1e-10);
        }
        out.stream() << fmt(db) << "," << fmt(ber) << "\n";
    }
    return kExitOk;
}

std::uint64_t seed_from_env_or(std::uint64_t fallback) {
    if (const char* env = std::getenv("FADEBER_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("FADEBER_SEED is not a decimal 64-bit integer");
        }
    }
    return fallback;
}

int run_mc(const std::string& scheme_text, double ebn0_db, std::int64_t samples,
           std::optional<std::uint64_t> seed_flag, bool bit_level, int threads) {
    const ModulationScheme scheme = parse_scheme(scheme_text);
    McConfig cfg;
    cfg.seed = seed_flag ? *seed_flag : seed_from_env_or(1);
    cfg.n_samples = samples;
    cfg.threads = threads;
    const double gamma = db_to_linear({ebn0_db, SnrDomain::Decibel}).magnitude;

    McEstimate est;
    if (bit_level) {
        if (scheme.kind != SchemeKind::Qpsk)
            throw std::invalid_argument("--bit-level is only available for qpsk");
        cfg.mode = McMode::BitLevel;
        est = bitlevel_qpsk_ber(gamma, cfg);
    } else {
        cfg.mode = McMode::SemiAnalytic;
        est = semi_analytic_ber(
            [&](double xi) { return awgn_ber(scheme, {xi, SnrDomain::Linear}); }, gamma,
            cfg);
    }
    std::printf("mean=%.17g\nstd_error=%.17g\nn=%lld\n", est.mean, est.std_error,
                static_cast<long long>(est.n));
    return kExitOk;
}

int run_reproduce_table(int table, std::ostream& os) {
    if (table != 1 && table != 2)
        throw std::invalid_argument("unknown table (expected 1 or 2)");
    const GridSpec grid{0.0, 10.0, 0.1};
    if (table == 1) {
        os << "scheme,a_ref,b_ref,c_ref,a_fit,b_fit,c_fit,da,db,dc\n";
        for (const ReferenceFit& ref : reference_fits()) {
            BerCurve curve = ber_curve(ref.scheme, {grid.start, SnrDomain::Decibel},
                                       {grid.stop, SnrDomain::Decibel}, grid.step);
            auto [fit, rep] = fit_gaussian(curve);
            os << ref.scheme_name << "," << fmt(ref.fit.a) << "," << fmt(ref.fit.b)
               << "," << fmt(ref.fit.c) << "," << fmt(fit.a) << "," << fmt(fit.b) << ","
               << fmt(fit.c) << "," << fmt(fit.a - ref.fit.a) << ","
               << fmt(fit.b - ref.fit.b) << "," << fmt(fit.c - ref.fit.c) << "\n";
        }
    } else {
        os << "scheme,sse_ref,sse_eval,rmse_ref,rmse_eval,r2_ref,r2_eval,"
              "adj_r2_ref,adj_r2_eval\n";
        for (const ReferenceFit& ref : reference_fits()) {
            BerCurve curve = ber_curve(ref.scheme, {grid.start, SnrDomain::Decibel},
                                       {grid.stop, SnrDomain::Decibel}, grid.step);
            const FitReport rep = goodness_of_fit(curve, ref.fit);
            os << ref.scheme_name << "," << fmt(ref.sse) << "," << fmt(rep.sse) << ","
               << fmt(ref.rmse) << "," << fmt(rep.rmse) << "," << fmt(ref.r2) << ","
               << fmt(rep.r2) << "," << fmt(ref.adj_r2) << "," << fmt(rep.adj_r2)
               << "\n";
        }
    }
    return kExitOk;
}

int run_reproduce(std::optional<int> table, std::optional<int> figure,
                  const std::string& grid_text, const std::string& out_path) {
    OutputTarget out(out_path);
    if (table && figure)
        throw std::invalid_argument("choose either --table or --figure");
    if (table) return run_reproduce_table(*table, out.stream());
    if (!figure) throw std::invalid_argument("reproduce needs --table or --figure");

    ModulationScheme scheme = ModulationScheme::qpsk();
    switch (*figure) {
        case 1: scheme = ModulationScheme::qpsk(); break;
        case 2: scheme = ModulationScheme::qam(16); break;
        case 3: scheme = ModulationScheme::fsk(2); break;
        case 4: scheme = ModulationScheme::ask(2); break;
        default: throw std::invalid_argument("unknown figure (expected 1-4)");
    }
    const GridSpec grid = parse_grid(grid_text);
    const std::vector<double> pts = grid_points(grid);
    const GaussianFit fit = reference_fit_for(scheme)->fit;
    out.stream() << "ebn0_db,ber_generalized,ber_exact,ber_quadrature,ratio\n";
    for (const ComparisonRow& row : compare_curves(scheme, fit, pts)) {
        out.stream() << fmt(row.ebn0_db) << "," << fmt(row.ber_generalized) << ","
                     << fmt(row.ber_exact) << "," << fmt(row.ber_quadrature) << ","
                     << fmt(row.ratio) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"BER curve fitting and Rayleigh-fading average BER toolkit"};
    app.require_subcommand(1);

    std::string scheme_text, grid_text = "0:50:1", domain_text = "db";
    std::string mode, out_path, fit_text;
    bool json_output = false, bit_level = false;
    bool have_fit_flag = false;
    double ebn0_db = 10.0;
    std::int64_t samples = 1000000;
    std::uint64_t seed_value = 0;
    bool have_seed = false;
    int threads = 0;
    std::optional<int> table, figure;

    auto* fit_cmd = app.add_subcommand("fit", "Fit the bell model to an AWGN BER curve");
    fit_cmd->add_option("--scheme", scheme_text)->required();
    fit_cmd->add_option("--grid", grid_text)->required();
    fit_cmd->add_option("--domain", domain_text);
    fit_cmd->add_flag("--json", json_output);

    auto* awgn_cmd = app.add_subcommand("awgn", "Tabulate AWGN BER (CSV)");
    awgn_cmd->add_option("--scheme", scheme_text)->required();
    awgn_cmd->add_option("--grid", grid_text)->required();
    awgn_cmd->add_option("--out", out_path);

    auto* fading_cmd =
        app.add_subcommand("fading", "Tabulate Rayleigh-average BER estimators (CSV)");
    fading_cmd->add_option("--scheme", scheme_text)->required();
    fading_cmd->add_option("--grid", grid_text)->required();
    fading_cmd->add_option("--mode", mode);
    auto* fit_opt = fading_cmd->add_option("--fit", fit_text);
    fading_cmd->add_option("--out", out_path);

    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo estimate at one SNR point");
    mc_cmd->add_option("--scheme", scheme_text)->required();
    mc_cmd->add_option("--ebn0-db", ebn0_db)->required();
    mc_cmd->add_option("--samples", samples);
    auto* seed_opt = mc_cmd->add_option("--seed", seed_value);
    mc_cmd->add_flag("--bit-level", bit_level);
    mc_cmd->add_option("--threads", threads);

    auto* rep_cmd =
        app.add_subcommand("reproduce", "Reference tables / figure data with deltas");
    int table_value = 0, figure_value = 0;
    auto* table_opt = rep_cmd->add_option("--table", table_value);
    auto* figure_opt = rep_cmd->add_option("--figure", figure_value);
    std::string rep_grid = "0:50:1";
    rep_cmd->add_option("--grid", rep_grid);
    rep_cmd->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    have_fit_flag = fit_opt->count() > 0;
    have_seed = seed_opt->count() > 0;
    if (table_opt->count() > 0) table = table_value;
    if (figure_opt->count() > 0) figure = figure_value;

    try {
        if (fit_cmd->parsed())
            return run_fit(scheme_text, grid_text, domain_text, json_output);
        if (awgn_cmd->parsed()) return run_awgn(scheme_text, grid_text, out_path);
        if (fading_cmd->parsed())
            return run_fading(scheme_text, grid_text, mode,
                              have_fit_flag ? std::optional<std::string>(fit_text)
                                            : std::nullopt,
                              out_path);
        if (mc_cmd->parsed())
            return run_mc(scheme_text, ebn0_db, samples,
                          have_seed ? std::optional<std::uint64_t>(seed_value)
                                    : std::nullopt,
                          bit_level, threads);
        if (rep_cmd->parsed()) return run_reproduce(table, figure, rep_grid, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fadeber::QuadratureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConverge;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
