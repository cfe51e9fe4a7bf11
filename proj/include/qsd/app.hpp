#pragma once

#include "qsd/market_curves.hpp"
#include "qsd/wigner.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsd::app {

enum class Command { strategy, fisher, eigensolve, duality, wigner, curves, fit, montecarlo };

std::optional<Command> parse_command(std::string_view name);
std::string to_string(Command c);
const std::vector<std::string>& command_names();

/// Parameter keys are the long flag names without dashes ("mu", "grid-points").
struct RunConfig {
    Command command;
    std::map<std::string, std::string> parameters;
    std::filesystem::path output_dir;  // empty: $QSD_OUT_DIR, then ./qsd-out
    std::optional<std::uint64_t> seed;
};

struct RunResult {
    int exit_code;  // 0 ok, 1 validation error, 2 numerical or io failure
    std::filesystem::path run_dir;
    std::vector<std::string> files;
    nlohmann::json error;  // null on success
};

/// Runs one command into `<root>/<command>-<UTC timestamp>/` and writes
/// manifest.json there. Errors are written to error.json in the same place.
RunResult execute(const RunConfig& cfg);

/// Every default the runs depend on, as echoed into manifests.
nlohmann::json defaults_table();

/// Parameter keys each command accepts.
const std::vector<std::string>& known_parameters();

struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> x;
    std::vector<std::pair<std::string, std::vector<double>>> series;
};

std::string curve_svg(const Curve& c);
std::string phase_svg(const PhaseFunction& f);
std::string line_plot_svg(const LinePlot& p);

/// Writes the SVG for `data` to `path`; IoFailure if the file cannot be written.
void render_plot(const Curve& data, const std::filesystem::path& path);
void render_plot(const PhaseFunction& data, const std::filesystem::path& path);
void render_plot(const LinePlot& data, const std::filesystem::path& path);

}  // namespace qsd::app
