#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "tiltzeta/report.hpp"

namespace {

struct Flag {
    const char* name;
    const char* key;
    const char* help;
};

constexpr Flag kFlags[] = {
    {"--T", "T", "Window height; quadrature runs over [T, 2T]"},
    {"--x", "x", "Polynomial length (default min(sqrt T, 1e5))"},
    {"--kmax", "kmax", "Highest moment"},
    {"--alpha", "alpha", "Gonek shift (default: alpha grid)"},
    {"--oversample", "oversample", "Grid points per mean zero gap (>= 4)"},
    {"--workers", "workers", "Worker threads"},
    {"--out", "out", "Output directory (default $TILTZETA_OUT or ./tiltzeta_out)"},
    {"--precision", "precision", "double | extended"},
    {"--rule", "rule", "simpson | midpoint | gauss_legendre_panels"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moments of log|zeta| under the tilted measure |zeta|^2 dt"};
    app.set_version_flag("--version", tiltzeta::version_string());
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "Flat key=value config file; flags override it");

    std::vector<std::pair<std::string, CLI::Option*>> options;
    std::map<std::string, std::string> values;
    for (const Flag& f : kFlags) {
        options.emplace_back(f.key, app.add_option(f.name, values[f.key], f.help));
    }

    const std::pair<const char*, const char*> commands[] = {
        {"clt", "Weighted vs unweighted distribution of log|zeta| and histogram"},
        {"moments", "Tilted moments of Re P with predictions and approximation error"},
        {"predict", "Predicted central moments of Re P from the GCD-sum main terms"},
        {"gonek", "Discrete second moment of zeta over shifted zeros"},
        {"verify", "Exact-arithmetic identity and oracle checks"},
        {"bchb", "Twisted second moment main term vs quadrature"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : tiltzeta::kExitUsage;
    }

    tiltzeta::RunConfig config;
    config.output_dir = tiltzeta::default_output_dir();
    try {
        if (!config_path.empty()) {
            for (const auto& [key, value] : tiltzeta::read_config_file(config_path)) {
                tiltzeta::apply_setting(config, key, value);
            }
        }
        config.command = tiltzeta::parse_command(app.get_subcommands().front()->get_name());
        for (const auto& [key, opt] : options) {
            if (opt->count() > 0) tiltzeta::apply_setting(config, key, values[key]);
        }
    } catch (const tiltzeta::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return tiltzeta::kExitUsage;
    }
    return tiltzeta::run(config, std::cerr);
}
