#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "cli/acceptance.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "sgspec/errors.hpp"
#include "sgspec/parallel.hpp"

using namespace sgspec;
using namespace sgspec::cli;

namespace {

struct Overrides {
    std::string config_path;
    unsigned threads = 1;
    std::map<std::string, std::string> values;
};

// Every config key doubles as a flag (--key value); flags beat the config file.
void add_config_flags(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config_path, "key = value experiment file");
    sub->add_option("--threads", o.threads, "worker threads (affects runtime only)")->check(CLI::PositiveNumber);
    for (const auto& key : config_keys()) {
        sub->add_option_function<std::string>(
            "--" + key, [&o, key](const std::string& v) { o.values[key] = v; }, "override config key '" + key + "'");
    }
}

ExperimentConfig resolve(const Overrides& o) {
    ExperimentConfig c = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
    for (const auto& [key, value] : o.values) set_value(c, key, value);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra of sparse random graphs: generators, population dynamics and checks"};
    app.require_subcommand(1);

    Overrides o;
    using Command = int (*)(const ExperimentConfig&, std::ostream&);
    const std::vector<std::tuple<std::string, std::string, Command>> commands = {
        {"generate", "write edge lists and a manifest", cmd_generate},
        {"spectrum", "empirical spectral measures and histograms", cmd_spectrum},
        {"rde", "Stieltjes curve and density from the recursion", cmd_rde},
        {"compare", "Levy distance table between ESDs and the recursion limit", cmd_compare},
        {"localweak", "ball statistics against the Galton-Watson reference", cmd_localweak},
    };
    std::map<CLI::App*, Command> dispatch;
    for (const auto& [name, help, fn] : commands) {
        auto* sub = app.add_subcommand(name, help);
        add_config_flags(sub, o);
        dispatch[sub] = fn;
    }
    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    std::vector<int> only;
    selftest->add_option("--only", only, "criterion ids to run")->delimiter(',');
    selftest->add_option("--threads", o.threads, "worker threads (affects runtime only)")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    set_thread_count(o.threads);

    try {
        if (selftest->parsed()) {
            const auto results = run_acceptance(std::cout, only);
            int failed = 0;
            for (const auto& r : results) failed += !r.passed;
            std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
            return failed ? kExitFailure : kExitOk;
        }
        for (const auto& [sub, fn] : dispatch) {
            if (!sub->parsed()) continue;
            const ExperimentConfig c = resolve(o);
            return fn(c, std::cout);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
