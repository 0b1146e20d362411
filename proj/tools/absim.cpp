#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "absim/config.hpp"
#include "absim/runner.hpp"

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw absim::ConfigError("config", "cannot open file '" + path + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string &path, const std::string &content) {
    if (path.empty()) {
        std::cout << content << std::endl;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw absim::Error("cannot write to '" + path + "'");
    }
    out << content;
}

std::vector<long> parse_n_list(const std::string &text) {
    std::vector<long> ns;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) {
            comma = text.size();
        }
        const std::string item = text.substr(pos, comma - pos);
        try {
            ns.push_back(std::stol(item));
        } catch (const std::exception &) {
            throw absim::ConfigError("n", "not an integer: '" + item + "'");
        }
        pos = comma + 1;
    }
    return ns;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"absim: pre-/postselected weak measurement simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string csv_path;
    uint64_t seed_override = 0;
    bool seed_given = false;
    long trials_override = 0;
    bool trials_given = false;
    int threads = 1;

    CLI::App *run = app.add_subcommand("run", "run a scenario from a config file");
    run->add_option("config", config_path, "config file (key = value lines)")->required();
    run->add_option("--seed", seed_override, "override the config seed")
        ->each([&](const std::string &) { seed_given = true; });
    run->add_option("--trials", trials_override, "override the config trial count")
        ->each([&](const std::string &) { trials_given = true; });
    run->add_option("--out", out_path, "write the JSON report here (default: stdout)");
    run->add_option("--csv", csv_path, "also write per-trial readouts as CSV");
    run->add_option("--threads", threads, "worker threads (identical output for any value)");

    double scaling_g0 = 0.1;
    std::string scaling_n = "16,64,256";
    long scaling_trials = 10000;
    uint64_t scaling_seed = 0;
    std::string scaling_out;

    CLI::App *scaling = app.add_subcommand("scaling", "survival-scaling sweep with delta = sqrt(N)");
    scaling->add_option("--g0", scaling_g0, "coupling strength")->required();
    scaling->add_option("--n", scaling_n, "comma-separated ensemble sizes (ascending)");
    scaling->add_option("--trials", scaling_trials, "trials per ensemble size");
    scaling->add_option("--seed", scaling_seed, "RNG seed");
    scaling->add_option("--out", scaling_out, "write the JSON table here (default: stdout)");

    CLI::App *check = app.add_subcommand("check", "run the exact-identity suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            absim::ScenarioConfig cfg = absim::parse_config(read_file(config_path));
            if (seed_given) {
                cfg.seed = seed_override;
            }
            if (trials_given) {
                cfg.trials = trials_override;
            }
            const absim::RunOutput out = absim::run_scenario(cfg, threads);
            write_output(out_path, out.report_json);
            if (!csv_path.empty()) {
                write_output(csv_path, absim::trials_to_csv(out));
            }
        } else if (scaling->parsed()) {
            const absim::SurvivalTable table =
                absim::survival_scaling(scaling_g0, parse_n_list(scaling_n), scaling_trials, scaling_seed);
            if (scaling_out.empty()) {
                std::cout << table.to_text();
                std::cout << table.to_json() << std::endl;
            } else {
                write_output(scaling_out, table.to_json());
                std::cout << table.to_text();
            }
        } else if (check->parsed()) {
            const absim::CheckResult res = absim::run_exact_checks();
            std::cout << res.text;
            return res.ok ? 0 : 1;
        }
    } catch (const absim::ParseError &e) {
        std::cerr << "parse error: " << e.what() << std::endl;
        return 2;
    } catch (const absim::ConfigError &e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return 2;
    } catch (const absim::ZeroPostselectionError &e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 3;
    } catch (const absim::Error &e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
