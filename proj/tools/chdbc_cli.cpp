// Command-line front end: run / eoc / accuracy.

#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chdbc/commands.hpp"
#include "chdbc/config.hpp"
#include "chdbc/version.hpp"

namespace {

std::vector<double> parse_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        const size_t comma = s.find(',', pos);
        const std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                         : comma - pos);
        if (!tok.empty()) {
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0')
                throw CLI::ValidationError(what + ": '" + tok + "' is not a number");
            out.push_back(v);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw CLI::ValidationError(what + ": empty list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cahn-Hilliard solver with reaction-rate dynamic boundary conditions"};
    app.set_version_flag("--version", chdbc::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string snapshots_arg, ladder_arg, taus_arg;
    double tau_ref = 1e-5;
    double dt_quad = 1e-3;

    auto* run_cmd = app.add_subcommand("run", "run one simulation from a config file");
    run_cmd->add_option("config", config_path, "key=value config file")->required();
    run_cmd->add_option("--snapshots", snapshots_arg,
                        "comma-separated times at which to write phi/psi snapshots");

    auto* eoc_cmd = app.add_subcommand(
        "eoc", "relaxation-parameter convergence study against the K=0 and K=inf limits");
    eoc_cmd->add_option("config", config_path, "key=value config file")->required();
    eoc_cmd->add_option("--k-ladder", ladder_arg, "comma-separated K values")->required();
    eoc_cmd->add_option("--dt-quad", dt_quad, "time-quadrature increment (default 1e-3)");

    auto* acc_cmd = app.add_subcommand("accuracy", "temporal accuracy study against a fine reference");
    acc_cmd->add_option("config", config_path, "key=value config file")->required();
    acc_cmd->add_option("--taus", taus_arg, "comma-separated coarse time steps")->required();
    acc_cmd->add_option("--tau-ref", tau_ref, "reference time step (default 1e-5)");

    CLI11_PARSE(app, argc, argv);

    try {
        chdbc::ExperimentConfig config = chdbc::parse_config(config_path);
        if (run_cmd->parsed()) {
            if (!snapshots_arg.empty())
                config.snapshot_times = parse_list(snapshots_arg, "--snapshots");
            return chdbc::cmd_run(config);
        }
        if (eoc_cmd->parsed())
            return chdbc::cmd_eoc(config, parse_list(ladder_arg, "--k-ladder"), dt_quad);
        return chdbc::cmd_accuracy(config, parse_list(taus_arg, "--taus"), tau_ref);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
