#include "qsd/app.hpp"

#include "qsd/defaults.hpp"

namespace qsd::app {

namespace {

constexpr std::pair<Command, const char*> kCommands[] = {
    {Command::strategy, "strategy"}, {Command::fisher, "fisher"},   {Command::eigensolve, "eigensolve"},
    {Command::duality, "duality"},   {Command::wigner, "wigner"},   {Command::curves, "curves"},
    {Command::fit, "fit"},           {Command::montecarlo, "montecarlo"},
};

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    for (const auto& [cmd, text] : kCommands) {
        if (name == text) return cmd;
    }
    return std::nullopt;
}

std::string to_string(Command c) {
    for (const auto& [cmd, text] : kCommands) {
        if (cmd == c) return text;
    }
    return "unknown";
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& entry : kCommands) out.emplace_back(entry.second);
        return out;
    }();
    return names;
}

const std::vector<std::string>& known_parameters() {
    static const std::vector<std::string> keys = {
        "mu",     "m",     "n",         "coeffs", "grid-points", "grid-span-sigmas", "k",
        "trials", "plot",  "strategy",  "input",  "samples",     "slice-x",          "slice-y",
        "separate-sides",
    };
    return keys;
}

nlohmann::json defaults_table() {
    namespace d = qsd::defaults;
    return {
        {"grid_points", d::grid_points},
        {"grid_span_sigmas", d::grid_span_sigmas},
        {"transform_span_sigmas", d::transform_span_sigmas},
        {"phase_points", d::phase_points},
        {"phase_span_sigmas", d::phase_span_sigmas},
        {"normalization_tolerance", d::normalization_tolerance},
        {"normalization_rescale_limit", d::normalization_rescale_limit},
        {"domain_mass_tolerance", d::domain_mass_tolerance},
        {"fisher_relative_support", d::fisher_relative_support},
        {"surprisal_support", d::surprisal_support},
        {"leak_threshold", d::leak_threshold},
        {"violation_threshold", d::violation_threshold},
        {"slice_degenerate", d::slice_degenerate},
        {"eigen_relative_tolerance", d::eigen_relative_tolerance},
        {"eigen_max_count", d::eigen_max_count},
        {"perturbation_delta", d::perturbation_delta},
        {"stationarity_factor", d::stationarity_factor},
        {"perturbation_extra_modes", d::perturbation_extra_modes},
        {"eigen_count", d::eigen_count},
        {"montecarlo_trials", d::montecarlo_trials},
        {"montecarlo_samples", d::montecarlo_samples},
        {"seed", d::seed},
    };
}

}  // namespace qsd::app
