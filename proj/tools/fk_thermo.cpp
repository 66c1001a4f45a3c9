// fk-thermo <eigen|propagate|simulate|entropy|maximize|verify> --config <path>
//           [--out <dir>] [--perturb-eigenvalue <d>] [--section.key=value ...]

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "fkt/cli/commands.hpp"
#include "fkt/errors.hpp"

int main(int argc, char** argv) {
    using namespace fkt::cli;

    CLI::App app{"Feynman-Kac semigroups, Gibbs diffusions and pressure on the circle"};
    app.allow_extras();
    std::string command;
    std::string config_path;
    std::string out_dir;
    VerifyOptions verify;
    app.add_option("command", command, "eigen | propagate | simulate | entropy | maximize | verify")
        ->required()
        ->check(CLI::IsMember({"eigen", "propagate", "simulate", "entropy", "maximize", "verify"}));
    app.add_option("--config", config_path, "run configuration file")->required();
    app.add_option("--out", out_dir, "output directory (overrides run.out)");
    app.add_option("--perturb-eigenvalue", verify.perturb_eigenvalue,
                   "verify only: shift lambda_V by this amount before the checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    std::vector<std::string> overrides;
    for (const auto& extra : app.remaining()) {
        if (extra.rfind("--", 0) != 0) {
            std::cerr << "unexpected argument '" << extra << "'\n";
            return kUsageError;
        }
        overrides.push_back(extra.substr(2));
    }
    if (!out_dir.empty()) overrides.push_back("run.out=" + out_dir);

    RunConfig cfg;
    try {
        cfg = load_config(config_path, overrides);
    } catch (const fkt::Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        const int code = run_command(command, cfg, verify);
        if (code == kCheckFailed) std::cerr << "verification failed; see " << cfg.out << "/verify.json\n";
        return code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsageError;
    } catch (const fkt::DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
}
