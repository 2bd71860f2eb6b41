#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eitlab/app/commands.hpp"

namespace {

enum ExitCode { kOk = 0, kIoFailure = 1, kConfigError = 2, kNumericalFailure = 3 };

struct Options {
    std::string config;
    std::string out;
    std::vector<std::string> overrides;
    std::optional<unsigned> threads;
};

using Command = eitlab::app::Outputs (*)(const eitlab::app::RunConfig&);

eitlab::app::RunConfig resolve(const Options& o) {
    using namespace eitlab::app;
    std::vector<std::string> overrides = o.overrides;
    if (!o.out.empty()) overrides.push_back("output=\"" + o.out + "\"");
    if (o.threads) overrides.push_back("threads=" + std::to_string(*o.threads));
    if (o.config.empty()) return load_config(nullptr, overrides);
    return load_config_file(o.config, overrides);
}

void add_leaf(CLI::App& parent, const std::string& name, const std::string& help, Options& opts, Command cmd,
              Command& selected) {
    auto* sub = parent.add_subcommand(name, help);
    sub->add_option("--config", opts.config, "JSON configuration file");
    sub->add_option("--out", opts.out, "output directory");
    sub->add_option("--set", opts.overrides, "override a configuration value, e.g. --set eit.gamma_bc=0.25");
    sub->add_option("--threads", opts.threads, "worker threads (0 = all cores)");
    sub->callback([&selected, cmd] { selected = cmd; });
}

}  // namespace

int main(int argc, char** argv) {
    using namespace eitlab::app;
    CLI::App app{"Laguerre-Gauss beams, fork holograms and EIT in a Lambda system"};
    app.require_subcommand(1);
    Options opts;
    Command selected = nullptr;

    auto* lg = app.add_subcommand("lg", "Laguerre-Gauss modes")->require_subcommand(1);
    add_leaf(*lg, "render", "render a mode to PGM with a JSON report", opts, &cmd_lg_render, selected);
    auto* holo = app.add_subcommand("holo", "fork-grating holography")->require_subcommand(1);
    add_leaf(*holo, "run", "generate a vortex beam and measure its purity", opts, &cmd_holo, selected);
    auto* eit = app.add_subcommand("eit", "three-level Lambda system")->require_subcommand(1);
    add_leaf(*eit, "spectrum", "probe absorption spectrum", opts, &cmd_eit_spectrum, selected);
    add_leaf(*eit, "width-scan", "transparency width against control intensity", opts, &cmd_width_scan, selected);
    add_leaf(*eit, "store", "write, store and retrieve a probe pulse", opts, &cmd_store, selected);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    RunConfig config;
    try {
        config = resolve(opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        for (const auto& path : selected(config)) std::cout << path.string() << '\n';
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const eitlab::io::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kOk;
}
