#include <CLI11.hpp>
#include <iostream>

#include "odholo/cli.hpp"

namespace {

struct SubArgs {
    std::string config;
    odholo::cli::Overrides ov;
};

void add_common_flags(CLI::App* sub, SubArgs& args) {
    sub->add_option("--config", args.config, "scenario config file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option_function<std::size_t>(
        "--grid", [&args](std::size_t v) { args.ov.grid = v; }, "override grid segment count");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&args](std::uint64_t v) { args.ov.seed = v; }, "override random seed");
    sub->add_option_function<std::string>(
        "--out", [&args](std::string v) { args.ov.out = std::move(v); }, "output directory");
    sub->add_option_function<double>(
        "--tolerance", [&args](double v) { args.ov.tolerance = v; }, "override check tolerance");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"off-diagonal holonomy toolkit"};
    app.require_subcommand(1);

    // subcommand name -> scenario kind in the config document
    const std::vector<std::pair<std::string, std::string>> scenarios = {
        {"holonomy", "holonomy"},
        {"diagnostics", "diagnostics"},
        {"tripod", "tripod-sweep"},
        {"interferometer", "interferometer"},
        {"oracle-check", "oracle-check"},
    };

    std::vector<std::unique_ptr<SubArgs>> args_store;
    std::string selected_scenario;
    SubArgs* selected = nullptr;

    for (const auto& [name, scenario] : scenarios) {
        auto args = std::make_unique<SubArgs>();
        CLI::App* sub = app.add_subcommand(name, "run a " + scenario + " scenario");
        add_common_flags(sub, *args);
        SubArgs* raw = args.get();
        std::string kind = scenario;
        sub->callback([raw, kind, &selected, &selected_scenario]() {
            selected = raw;
            selected_scenario = kind;
        });
        args_store.push_back(std::move(args));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : odholo::cli::kExitUsage;
    }

    if (selected == nullptr) return odholo::cli::kExitUsage;
    return odholo::cli::run_scenario_file(selected->config, selected_scenario, selected->ov,
                                          std::cout);
}
