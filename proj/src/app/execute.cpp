#include "qsd/app.hpp"

#include "qsd/defaults.hpp"
#include "qsd/duality.hpp"
#include "qsd/errors.hpp"
#include "qsd/estimation.hpp"
#include "qsd/fisher.hpp"
#include "qsd/format.hpp"
#include "qsd/strategy.hpp"
#include "qsd/variational.hpp"
#include "qsd/wigner.hpp"

#include <fftw3.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

namespace qsd::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

/// Typed access to the raw parameter map; records every resolved value
/// (defaults included) for the manifest.
class Params {
public:
    explicit Params(const std::map<std::string, std::string>& raw) : raw_(raw) {
        const auto& known = known_parameters();
        for (const auto& [key, value] : raw_) {
            if (std::find(known.begin(), known.end(), key) == known.end()) {
                throw InvalidArgument("unknown parameter --" + key);
            }
        }
    }

    bool has(const std::string& key) const { return raw_.count(key) != 0; }

    double real(const std::string& key, double fallback) {
        const double v = has(key) ? parse_real(key, raw_.at(key)) : fallback;
        resolved_[key] = v;
        return v;
    }

    double positive(const std::string& key, double fallback) {
        const double v = real(key, fallback);
        if (!(v > 0.0)) throw InvalidArgument("--" + key + " must be positive");
        return v;
    }

    std::size_t count(const std::string& key, std::size_t fallback, std::size_t min, std::size_t max) {
        std::size_t v = fallback;
        if (has(key)) {
            const auto& text = raw_.at(key);
            unsigned long long parsed = 0;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), parsed);
            if (ec != std::errc{} || ptr != text.data() + text.size()) {
                throw InvalidArgument("--" + key + " expects a non-negative integer, got '" + text + "'");
            }
            v = static_cast<std::size_t>(parsed);
        }
        if (v < min || v > max) {
            throw InvalidArgument("--" + key + " must be in [" + std::to_string(min) + ", " + std::to_string(max) +
                                  "], got " + std::to_string(v));
        }
        resolved_[key] = v;
        return v;
    }

    bool flag(const std::string& key) {
        bool v = false;
        if (has(key)) {
            const auto& text = raw_.at(key);
            if (text == "true" || text == "1" || text == "yes" || text.empty()) {
                v = true;
            } else if (text != "false" && text != "0" && text != "no") {
                throw InvalidArgument("--" + key + " expects true or false, got '" + text + "'");
            }
        }
        resolved_[key] = v;
        return v;
    }

    std::string text(const std::string& key) {
        if (!has(key)) throw InvalidArgument("missing required parameter --" + key);
        resolved_[key] = raw_.at(key);
        return raw_.at(key);
    }

    std::vector<double> reals(const std::string& key) {
        std::vector<double> out;
        std::string item;
        std::istringstream in(raw_.at(key));
        while (std::getline(in, item, ',')) out.push_back(parse_real(key, item));
        if (out.empty()) throw InvalidArgument("--" + key + " needs at least one value");
        resolved_[key] = out;
        return out;
    }

    const json& resolved() const { return resolved_; }

private:
    static double parse_real(const std::string& key, const std::string& text) {
        double v = 0.0;
        const auto* begin = text.data();
        const auto* end = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
            throw InvalidArgument("--" + key + " expects a finite number, got '" + text + "'");
        }
        return v;
    }

    const std::map<std::string, std::string>& raw_;
    json resolved_ = json::object();
};

class RunContext {
public:
    explicit RunContext(fs::path dir) : dir_(std::move(dir)) {}

    const fs::path& dir() const { return dir_; }
    const std::vector<std::string>& files() const { return files_; }

    void text(const std::string& name, const std::string& body) {
        std::ofstream out(dir_ / name, std::ios::binary);
        if (!out) throw IoFailure("cannot write " + (dir_ / name).string());
        out << body;
        if (!out) throw IoFailure("failed writing " + (dir_ / name).string());
        files_.push_back(name);
    }

    void json_file(const std::string& name, const json& j) { text(name, j.dump(2) + "\n"); }

    template <class Data>
    void plot(const std::string& name, const Data& data) {
        render_plot(data, dir_ / name);
        files_.push_back(name);
    }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

json grid_json(const GridSpec& g) { return {{"lo", g.lo()}, {"hi", g.hi()}, {"points", g.points()}}; }

Strategy resolve_strategy(Params& p) {
    if (p.has("strategy")) {
        const auto path = p.text("strategy");
        std::ifstream in(path);
        if (!in) throw InvalidArgument("cannot open strategy descriptor " + path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw InvalidArgument("strategy descriptor " + path + " is not JSON: " + e.what());
        }
        return strategy_from_json(j);
    }
    const double mu = p.positive("mu", 1.0);
    const double m = p.real("m", 0.0);
    if (p.has("coeffs")) return Strategy(mu, m, p.reals("coeffs"));
    return Strategy::pure(static_cast<unsigned>(p.count("n", 0, 0, 500)), mu, m);
}

GridSpec resolve_grid(Params& p, const Strategy& s, double span_default) {
    const auto points = p.count("grid-points", defaults::grid_points, 16, 1u << 22);
    return default_grid(s, points, p.positive("grid-span-sigmas", span_default));
}

PhaseGridSpec resolve_phase_grid(Params& p, const Strategy& s) {
    const auto points = p.count("grid-points", defaults::phase_points, 16, 4096);
    return default_phase_grid(s, points, p.positive("grid-span-sigmas", defaults::phase_span_sigmas));
}

json run_strategy(Params& p, RunContext& ctx) {
    const auto s = resolve_strategy(p);
    const auto grid = resolve_grid(p, s, defaults::grid_span_sigmas);
    const bool plot = p.flag("plot");
    const auto amp = strategy_amplitude(s, grid);
    const auto pdf = strategy_pdf(s, grid);
    const auto mom = moments_of(pdf);

    std::ostringstream csv;
    csv << "x,psi,pdf\n";
    for (std::size_t i = 0; i < grid.points(); ++i) {
        csv << format_number(grid.node(i)) << ',' << format_number(amp[i]) << ',' << format_number(pdf[i]) << '\n';
    }
    json moments = {{"mean", mom.mean}, {"risk", mom.risk}, {"mass", trapezoid(pdf)}, {"rescaled", s.rescaled()}};
    if (const auto n = s.pure_index()) moments["expected_risk"] = (*n + 0.5) / s.mu();

    ctx.json_file("strategy.json", strategy_to_json(s));
    ctx.text("pdf.csv", csv.str());
    ctx.json_file("moments.json", moments);
    if (plot) {
        std::vector<double> a(amp.values().begin(), amp.values().end());
        std::vector<double> f(pdf.values().begin(), pdf.values().end());
        ctx.plot("pdf.svg", LinePlot{"Strategy amplitude and density", "x (log price)", "value", grid.nodes(),
                                     {{"psi(x)", a}, {"f(x) = psi^2", f}}});
    }
    return moments;
}

json run_fisher(Params& p, RunContext& ctx) {
    const auto s = resolve_strategy(p);
    const auto grid = resolve_grid(p, s, defaults::grid_span_sigmas);
    const auto ladder = p.count("k", defaults::eigen_count, 1, defaults::eigen_max_count);
    const bool plot = p.flag("plot");
    const auto pdf = strategy_pdf(s, grid);
    const auto quad = fisher_information_grid(pdf);
    const auto score = surprisal_derivative(pdf);

    json report = {{"quadrature", quad.value},
                   {"closed_form", nullptr},
                   {"cramer_rao_product", cramer_rao_product(pdf)},
                   {"grid", grid_json(grid)}};
    if (s.pure_index()) report["closed_form"] = fisher_information_closed(s).value;

    std::ostringstream csv;
    csv << "x,dSdx,supported\n";
    for (std::size_t i = 0; i < grid.points(); ++i) {
        csv << format_number(grid.node(i)) << ',' << format_number(score.values[i]) << ','
            << (score.supported[i] ? 1 : 0) << '\n';
    }
    ctx.json_file("fisher.json", report);
    ctx.text("surprisal.csv", csv.str());
    if (plot) {
        LinePlot lp{"Local minima of Fisher information", "n", "I_F", {}, {{"4 mu (n + 1/2)", {}}, {"quadrature", {}}}};
        for (unsigned n = 0; n < ladder; ++n) {
            const auto pure = Strategy::pure(n, s.mu(), s.m());
            lp.x.push_back(n);
            lp.series[0].second.push_back(fisher_information_closed(pure).value);
            lp.series[1].second.push_back(fisher_information_grid(strategy_pdf(pure)).value);
        }
        ctx.plot("fisher_ladder.svg", lp);
    }
    return report;
}

json run_eigensolve(Params& p, RunContext& ctx) {
    const double mu = p.positive("mu", 1.0);
    const double m = p.real("m", 0.0);
    const auto k = static_cast<unsigned>(p.count("k", defaults::eigen_count, 1, defaults::eigen_max_count));
    const auto grid = resolve_grid(p, Strategy::pure(k - 1, mu, m), defaults::grid_span_sigmas);
    const bool plot = p.flag("plot");

    const auto raw = lowest_eigenpairs(build_hamiltonian(grid, mu, m, k - 1), k);
    const auto extrapolated = richardson_eigenpairs(grid, mu, m, k);

    json values = json::array(), raw_values = json::array(), expected = json::array();
    json fisher = json::array(), fisher_expected = json::array();
    for (unsigned j = 0; j < k; ++j) {
        values.push_back(extrapolated[j].eigenvalue);
        raw_values.push_back(raw[j].eigenvalue);
        expected.push_back(j + 0.5);
        std::vector<double> density(grid.points());
        for (std::size_t i = 0; i < density.size(); ++i) density[i] = raw[j].eigenvector[i] * raw[j].eigenvector[i];
        fisher.push_back(fisher_information_grid(GridFunction(grid, std::move(density))).value);
        fisher_expected.push_back(4.0 * mu * (j + 0.5));
    }
    json report = {{"eigenvalues", values},         {"raw_eigenvalues", raw_values},
                   {"expected", expected},          {"fisher_information", fisher},
                   {"fisher_expected", fisher_expected}, {"step", grid.step()},
                   {"grid", grid_json(grid)},       {"method", "richardson(h, h/2) over central differences"}};

    std::ostringstream csv;
    csv << 'x';
    for (unsigned j = 0; j < k; ++j) csv << ",psi_" << j;
    csv << '\n';
    for (std::size_t i = 0; i < grid.points(); ++i) {
        csv << format_number(grid.node(i));
        for (unsigned j = 0; j < k; ++j) csv << ',' << format_number(raw[j].eigenvector[i]);
        csv << '\n';
    }
    ctx.json_file("eigenvalues.json", report);
    ctx.text("eigenvectors.csv", csv.str());
    if (plot) {
        LinePlot lp{"Minimal-information strategies on their risk levels", "x (log price)", "eps_n + psi_n",
                    grid.nodes(), {}};
        for (unsigned j = 0; j < k; ++j) {
            const auto v = raw[j].eigenvector.values();
            const double peak = *std::max_element(v.begin(), v.end(), [](double a, double b) {
                return std::abs(a) < std::abs(b);
            });
            std::vector<double> y(v.size());
            for (std::size_t i = 0; i < y.size(); ++i) y[i] = raw[j].eigenvalue + 0.4 * v[i] / std::abs(peak);
            lp.series.push_back({"n=" + std::to_string(j), std::move(y)});
        }
        ctx.plot("eigenvectors.svg", lp);
    }
    return {{"eigenvalues", values}};
}

json run_duality(Params& p, RunContext& ctx) {
    const auto s = resolve_strategy(p);
    const auto grid = resolve_grid(p, s, defaults::transform_span_sigmas);
    const bool plot = p.flag("plot");
    const auto amp = strategy_amplitude(s, grid);
    const auto dual = fourier_transform_grid(amp);
    const auto supply_pdf = strategy_pdf(s, grid);
    const auto demand_pdf = dual.modulus_squared();
    const double dx = std::sqrt(moments_of(supply_pdf).risk);
    const double dy = std::sqrt(moments_of(demand_pdf).risk);

    json report = {{"convention", fourier_convention},
                   {"delta_x", dx},
                   {"delta_y", dy},
                   {"uncertainty_product", dx * dy},
                   {"fisher_supply", fisher_information_grid(supply_pdf).value},
                   {"fisher_demand", fisher_information_grid(demand_pdf).value},
                   {"parseval_defect", dual.parseval_defect},
                   {"dual_grid", grid_json(dual.spec)}};
    if (const auto n = s.pure_index(); n && s.mu() == 1.0 && s.m() == 0.0) {
        report["ft_eigen_defect"] = ft_eigen_defect(*n, grid);
    }

    std::ostringstream csv;
    csv << "y,re,im,abs\n";
    for (std::size_t i = 0; i < dual.spec.points(); ++i) {
        csv << format_number(dual.spec.node(i)) << ',' << format_number(dual.re[i]) << ','
            << format_number(dual.im[i]) << ',' << format_number(std::abs(dual.at(i))) << '\n';
    }
    ctx.json_file("duality.json", report);
    ctx.text("transform.csv", csv.str());
    if (plot) {
        const double reach = defaults::grid_span_sigmas * std::max(s.sigma(), std::sqrt((s.max_index() + 0.5) * s.mu()));
        LinePlot lp{"Supply amplitude and demand amplitude modulus", "x, y", "amplitude", {}, {{"psi(x)", {}}, {"|psi_hat(y)|", {}}}};
        for (int i = 0; i <= 400; ++i) {
            const double t = -reach + 2.0 * reach * i / 400.0;
            lp.x.push_back(t);
            lp.series[0].second.push_back(strategy_eval(s, t));
            lp.series[1].second.push_back(std::abs(dual_amplitude(s, t)));
        }
        ctx.plot("duality.svg", lp);
    }
    return {{"uncertainty_product", dx * dy}};
}

json regions_json(const std::vector<RadialRegion>& regions) {
    json out = json::array();
    for (const auto& r : regions) out.push_back({{"rho_lo", r.rho_lo}, {"rho_hi", r.rho_hi}, {"sign", "negative"}});
    return out;
}

json run_wigner(Params& p, RunContext& ctx) {
    const auto s = resolve_strategy(p);
    const auto spec = resolve_phase_grid(p, s);
    const bool plot = p.flag("plot");
    const auto pf = wigner_numeric(s, spec);
    const auto [mx, my] = wigner_marginal_defect(pf, s);

    json report = {{"level", nullptr},     {"regions", nullptr},  {"boundaries", nullptr},
                   {"count", nullptr},     {"grid_min", pf.min()}, {"integral", pf.integral()},
                   {"marginal_defect", {mx, my}}, {"metric", "rho^2 = mu (x - m)^2 + y^2 / mu"}};
    if (const auto n = s.pure_index()) {
        const auto regions = negative_regions(*n);
        report["level"] = *n;
        report["regions"] = regions_json(regions);
        report["boundaries"] = negative_region_boundaries(*n);
        report["count"] = regions.size();
    }
    std::ostringstream csv;
    write_phase_csv(csv, pf);
    ctx.text("wigner.csv", csv.str());
    ctx.json_file("negative_regions.json", report);
    if (plot) ctx.plot("wigner.svg", pf);
    return {{"count", report["count"]}, {"grid_min", pf.min()}};
}

json run_curves(Params& p, RunContext& ctx) {
    const auto s = resolve_strategy(p);
    const auto grid = resolve_grid(p, s, defaults::grid_span_sigmas);
    const double slice_x = p.real("slice-x", s.m());
    const double slice_y = p.real("slice-y", 0.0);
    const bool plot = p.flag("plot");

    const auto pdf = strategy_pdf(s, grid);
    const auto [supply, demand] = supply_demand_curves(pdf);
    const auto pf = wigner_numeric(s, default_phase_grid(s));
    const auto cond_demand = conditional_demand_curve(pf, slice_x);
    const auto cond_supply = conditional_supply_curve(pf, slice_y);

    json giffen = json::object();
    const std::pair<const char*, const Curve*> curves[] = {
        {"supply", &supply}, {"demand", &demand}, {"conditional_demand", &cond_demand}, {"conditional_supply", &cond_supply}};
    for (const auto& [name, curve] : curves) {
        const auto report = monotonicity_report(*curve);
        giffen[name] = giffen_to_json(report);
        if (const auto n = s.pure_index(); n && (curve == &cond_demand || curve == &cond_supply)) {
            const double fixed = curve == &cond_demand ? slice_x : slice_y;
            const auto projected = region_projection(negative_regions(*n), s.mu(), s.m(), curve->kind, fixed);
            giffen[name]["slice"] = fixed;
            giffen[name]["violations_inside_negative_regions"] = violations_within(report, projected);
        }
        std::ostringstream csv;
        write_curve_csv(csv, *curve);
        ctx.text(std::string(name) + ".csv", csv.str());
        ctx.json_file(std::string(name) + ".json", curve_sidecar(*curve));
        if (plot) ctx.plot(std::string(name) + ".svg", *curve);
    }
    ctx.json_file("giffen.json", giffen);
    return {{"conditional_demand_monotone", giffen["conditional_demand"]["monotone"]},
            {"conditional_supply_monotone", giffen["conditional_supply"]["monotone"]}};
}

json moments_json(const MomentEstimate& e) {
    return {{"mean", e.mean}, {"risk", e.risk}, {"n", e.n}, {"se_mean", e.se_mean}};
}

json run_fit(Params& p, RunContext& ctx) {
    const auto path = p.text("input");
    const auto level = static_cast<unsigned>(p.count("n", 0, 0, 500));
    const bool separate = p.flag("separate-sides");
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open transaction file " + path);
    const auto sample = parse_transactions(in, path);

    const auto est = estimate_moments(sample);
    const auto fitted = fit_minimal_strategy(est.mean, est.risk, level);
    json report = {{"source", sample.source}, {"level", level}, {"moments", moments_json(est)},
                   {"strategy", strategy_to_json(fitted)}};
    if (separate) {
        for (const auto side : {Side::buy, Side::sell}) {
            const auto part = sample.filter(side);
            const auto e = estimate_moments(part);
            report["sides"][side == Side::buy ? "buy" : "sell"] = {
                {"moments", moments_json(e)}, {"strategy", strategy_to_json(fit_minimal_strategy(e.mean, e.risk, level))}};
        }
    }
    ctx.json_file("fit.json", report);
    ctx.json_file("strategy.json", strategy_to_json(fitted));
    return {{"mu", fitted.mu()}, {"m", fitted.m()}};
}

json run_montecarlo(Params& p, RunContext& ctx, std::uint64_t seed) {
    const auto s = resolve_strategy(p);
    const auto trials = p.count("trials", defaults::montecarlo_trials, 100, 100000000);
    const auto samples = p.count("samples", defaults::montecarlo_samples, 1, 100000000);
    const auto report = cramer_rao_monte_carlo(s, samples, trials, seed);
    ctx.json_file("cramer_rao.json", cramer_rao_to_json(report));
    return {{"respects_bound", report.respects_bound()}, {"fisher", report.fisher}, {"n_per_trial", samples},
            {"ratio", report.ratio}};
}

fs::path output_root(const RunConfig& cfg) {
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    if (const char* env = std::getenv("QSD_OUT_DIR"); env && *env) return env;
    return "qsd-out";
}

fs::path make_run_dir(const fs::path& root, Command command) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y%m%dT%H%M%SZ", &utc);
    const std::string base = to_string(command) + "-" + stamp;
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec) throw IoFailure("cannot create output root " + root.string() + ": " + ec.message());
    for (int suffix = 1;; ++suffix) {
        const fs::path dir = root / (suffix == 1 ? base : base + "-" + std::to_string(suffix));
        if (fs::create_directory(dir, ec)) return dir;
        if (ec) throw IoFailure("cannot create run directory " + dir.string() + ": " + ec.message());
    }
}

json error_json(const Error& e) {
    json j = {{"error", e.code()},
              {"category", e.category() == ErrorCategory::validation ? "validation"
                           : e.category() == ErrorCategory::numerical ? "numerical"
                                                                        : "io"},
              {"message", e.what()}};
    if (const auto* rows = dynamic_cast<const MalformedRow*>(&e)) {
        json detail = json::array();
        for (const auto& issue : rows->issues()) detail.push_back({{"row", issue.row}, {"reason", issue.reason}});
        j["rows"] = detail;
    }
    if (const auto* conv = dynamic_cast<const ConvergenceFailure*>(&e)) j["index"] = conv->index();
    return j;
}

}  // namespace

RunResult execute(const RunConfig& cfg) {
    RunResult result{0, {}, {}, nullptr};
    try {
        result.run_dir = make_run_dir(output_root(cfg), cfg.command);
    } catch (const Error& e) {
        result.exit_code = 2;
        result.error = error_json(e);
        return result;
    }

    RunContext ctx(result.run_dir);
    const std::uint64_t seed = cfg.seed.value_or(defaults::seed);
    try {
        Params params(cfg.parameters);
        json summary;
        switch (cfg.command) {
            case Command::strategy: summary = run_strategy(params, ctx); break;
            case Command::fisher: summary = run_fisher(params, ctx); break;
            case Command::eigensolve: summary = run_eigensolve(params, ctx); break;
            case Command::duality: summary = run_duality(params, ctx); break;
            case Command::wigner: summary = run_wigner(params, ctx); break;
            case Command::curves: summary = run_curves(params, ctx); break;
            case Command::fit: summary = run_fit(params, ctx); break;
            case Command::montecarlo: summary = run_montecarlo(params, ctx, seed); break;
        }
        json manifest = {{"command", to_string(cfg.command)},
                         {"parameters", params.resolved()},
                         {"seed", seed},
                         {"files", ctx.files()},
                         {"summary", summary},
                         {"defaults", defaults_table()},
                         {"versions", {{"qsd", kVersion}, {"fftw", std::string(fftw_version)}, {"compiler", __VERSION__}}}};
        ctx.json_file("manifest.json", manifest);
    } catch (const Error& e) {
        result.exit_code = e.category() == ErrorCategory::validation ? 1 : 2;
        result.error = error_json(e);
        try {
            ctx.json_file("error.json", result.error);
        } catch (const Error&) {
            // The error is still returned to the caller.
        }
    }
    result.files = ctx.files();
    return result;
}

}  // namespace qsd::app
