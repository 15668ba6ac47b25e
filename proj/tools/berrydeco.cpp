// berrydeco.cpp — Command-line runner for the figure experiments and sweeps

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "berrydeco/errors.hpp"
#include "berrydeco/experiment.hpp"
#include "json.hpp"

namespace {

enum Exit { ok = 0, config_error = 2, numerical_error = 3 };

std::vector<double> parse_list(const std::string& s, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw berrydeco::ConfigError(flag + ": not a number: '" + item + "'");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Berry phase decoherence experiments"};
    std::string experiment;
    std::string config_file;
    std::optional<double> B, theta, omega0, cutoff, lambda_norm, lambda, temp, theta_prime, gamma;
    std::optional<std::string> out, gamma_list, sweep_key, sweep_values, path;
    std::optional<std::size_t> threads, points, refine;
    bool multinoise = false;

    app.add_option("experiment", experiment, "fig1 | fig2 | fig3 | fig4 | fig6 | sweep | single")->required();
    app.add_option("--config", config_file, "JSON config file (flat object)");
    app.add_option("--B", B, "field magnitude");
    app.add_option("--theta", theta, "polar angle of the field");
    app.add_option("--omega0", omega0, "rotation rate of cycle 1");
    app.add_option("--cutoff", cutoff, "bath cutoff frequency");
    app.add_option("--lambda-norm", lambda_norm, "integrated noise power lambda*cutoff^2/2");
    app.add_option("--lambda", lambda, "raw coupling lambda (overrides --lambda-norm)");
    app.add_option("--temp", temp, "bath temperature");
    app.add_option("--out", out, "CSV output path (default stdout)");
    app.add_flag("--multinoise", multinoise, "two independent baths (sigma_z and transverse)");
    app.add_option("--path", path, "single/sweep loop: circle | tilted");
    app.add_option("--theta-prime", theta_prime, "cone angle of the tilted loop");
    app.add_option("--gamma", gamma, "tilt angle of the loop");
    app.add_option("--gamma-list", gamma_list, "comma-separated tilt angles for fig6");
    app.add_option("--sweep-key", sweep_key, "parameter swept by 'sweep'");
    app.add_option("--sweep-values", sweep_values, "comma-separated values for 'sweep'");
    app.add_option("--threads", threads, "worker threads (0 = all cores)");
    app.add_option("--points", points, "fig1 output samples per curve");
    app.add_option("--grid-refine", refine, "time grid refinement factor");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : config_error;
    }

    berrydeco::ExperimentConfig cfg;
    berrydeco::ExperimentOutput result;
    try {
        if (!config_file.empty()) {
            std::ifstream in(config_file);
            if (!in) throw berrydeco::ConfigError("cannot open config file '" + config_file + "'");
            std::stringstream buf;
            buf << in.rdbuf();
            cfg = berrydeco::config_from_json(buf.str());
        }
        // Flags win over the file.
        nlohmann::json o = {{"experiment", experiment}};
        auto set = [&](const char* k, const auto& v) {
            if (v) o[k] = *v;
        };
        set("B", B);
        set("theta", theta);
        set("omega0", omega0);
        set("cutoff", cutoff);
        set("lambda_norm", lambda_norm);
        set("lambda", lambda);
        set("temperature", temp);
        set("theta_prime", theta_prime);
        set("gamma", gamma);
        set("out", out);
        set("path", path);
        set("sweep_key", sweep_key);
        set("threads", threads);
        set("output_points", points);
        set("grid_refine", refine);
        if (multinoise) o["multinoise"] = true;
        if (gamma_list) o["gamma_list"] = parse_list(*gamma_list, "--gamma-list");
        if (sweep_values) o["sweep_values"] = parse_list(*sweep_values, "--sweep-values");
        cfg = berrydeco::config_from_json(o.dump(), cfg);

        result = berrydeco::run_experiment(cfg);
    } catch (const berrydeco::NumericalAccuracyError& e) {
        std::cerr << "numerical accuracy failure: " << e.what() << " (estimate " << e.error_estimate << ")\n";
        return numerical_error;
    } catch (const berrydeco::ResolutionError& e) {
        std::cerr << "numerical accuracy failure: " << e.what() << "\n";
        return numerical_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    }

    std::ostream* summary = &std::cerr;
    if (cfg.out.empty()) {
        berrydeco::write_csv(std::cout, cfg, result);
    } else {
        std::ofstream f(cfg.out);
        if (!f) {
            std::cerr << "config error: cannot write '" << cfg.out << "'\n";
            return config_error;
        }
        berrydeco::write_csv(f, cfg, result);
        summary = &std::cout;
    }
    *summary << result.summary;
    for (const auto& w : result.warnings) *summary << "warning: " << w << "\n";
    return ok;
}
