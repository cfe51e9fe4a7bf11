#include "qsd/app.hpp"
#include "qsd/defaults.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App cli{"Minimal Fisher information supply/demand laboratory"};
    cli.require_subcommand(1);

    std::map<std::string, std::string> values;
    std::string out;
    unsigned long long seed = 0;

    struct Flag {
        const char* name;
        const char* help;
    };
    static constexpr Flag kFlags[] = {
        {"mu", "inverse-variance scale (> 0)"},
        {"m", "mean log-price"},
        {"n", "basis level of a pure strategy"},
        {"coeffs", "superposition coefficients a,b,c over psi_0, psi_1, ..."},
        {"grid-points", "grid nodes per axis"},
        {"grid-span-sigmas", "half-width of the grid in units of sigma"},
        {"k", "number of eigenpairs / ladder levels"},
        {"trials", "Monte-Carlo trials"},
        {"samples", "samples per Monte-Carlo trial"},
        {"strategy", "strategy descriptor JSON file"},
        {"input", "transaction CSV (log_price,side)"},
        {"slice-x", "x of the conditional demand slice"},
        {"slice-y", "y of the conditional supply slice"},
        {"plot", "also write SVG plots (true/false)"},
        {"separate-sides", "fit buy and sell records separately (true/false)"},
    };

    for (const auto& name : qsd::app::command_names()) {
        auto* sub = cli.add_subcommand(name);
        for (const auto& flag : kFlags) {
            sub->add_option_function<std::string>(
                std::string("--") + flag.name, [&values, key = std::string(flag.name)](const std::string& v) { values[key] = v; },
                flag.help);
        }
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--out", out, "output root (default $QSD_OUT_DIR or ./qsd-out)");
    }

    CLI11_PARSE(cli, argc, argv);

    auto* chosen = cli.get_subcommands().front();
    qsd::app::RunConfig cfg{*qsd::app::parse_command(chosen->get_name()), values, out, std::nullopt};
    if (chosen->count("--seed") > 0) cfg.seed = seed;

    const auto result = qsd::app::execute(cfg);
    if (result.exit_code != 0) {
        std::cerr << result.error.dump() << '\n';
        return result.exit_code;
    }
    std::cout << (result.run_dir / "manifest.json").string() << '\n';
    return 0;
}
