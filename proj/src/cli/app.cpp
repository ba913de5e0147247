#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "pointlab/cli/commands.hpp"

namespace pointlab::cli {

namespace {

bool write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return static_cast<bool>(out);
}

}  // namespace

int run_cli(int argc, char** argv)
{
    CLI::App app{"pointlab: point interactions for the 3-D Laplacian"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_path;
    std::string preset;
    for (const std::string& name : command_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " command");
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_path, "output file (default: stdout)");
        sub->add_option("--quadrature-preset", preset, "override the quadrature spec")
            ->check(CLI::IsMember({"fast", "default", "strict"}));
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const std::optional<std::string> preset_opt = preset.empty() ? std::nullopt : std::optional<std::string>(preset);
    CommandResult result;
    try {
        const json config = load_config_file(config_path);
        result = run_command(command, config, preset_opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << command << ": " << e.what() << "\n";
        return kExitVerificationFailure;
    }

    if (out_path.empty()) {
        std::cout << result.output;
        if (result.summary) std::cerr << *result.summary;
    } else {
        if (!write_file(out_path, result.output)) {
            std::cerr << "cannot write '" << out_path << "'\n";
            return kExitUsage;
        }
        if (result.summary && !write_file(out_path + ".summary.json", *result.summary)) {
            std::cerr << "cannot write '" << out_path << ".summary.json'\n";
            return kExitUsage;
        }
    }
    for (const auto& d : result.diagnostics) std::cerr << d << "\n";
    return result.exit_code;
}

}  // namespace pointlab::cli
