// experiment.hpp — Figure and sweep experiments producing CSV tables

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace berrydeco {

struct ExperimentConfig {
    std::string experiment = "single";  // fig1 fig2 fig3 fig4 fig6 sweep single

    double B = 100.0;
    double theta = 0.7853981633974483;
    double omega0 = 2.0;

    double lambda_norm = 2.0;  // lambda * cutoff^2 / 2
    double lambda = -1.0;      // raw lambda; used when >= 0
    double cutoff = 2.0;
    double temperature = 0.0;
    bool multinoise = false;

    std::string path = "circle";  // single: circle | tilted
    double theta_prime = 0.7853981633974483;
    double gamma = 0.0;

    // Per-figure lists; empty means the figure's default.
    std::vector<double> cutoff_list;
    std::vector<double> temperature_list;
    std::vector<double> theta_list;
    std::vector<double> theta_prime_list;
    std::vector<double> T0_list;
    std::vector<double> gamma_list;

    std::string sweep_key;
    std::vector<double> sweep_values;

    std::size_t grid_refine = 1;
    std::size_t output_points = 200;
    std::size_t threads = 0;  // 0: hardware concurrency
    std::string out;

    void validate() const;
};

// Flat JSON object; unknown keys and wrong types raise ConfigError.
ExperimentConfig config_from_json(std::string_view text, ExperimentConfig base = {});
std::string config_to_json(const ExperimentConfig& cfg);

struct ExperimentOutput {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::string summary;
    std::vector<std::string> warnings;
};

ExperimentOutput run_experiment(const ExperimentConfig& cfg);
// Header, provenance comments and rows with 12 significant digits.
void write_csv(std::ostream& os, const ExperimentConfig& cfg, const ExperimentOutput& out);

inline constexpr const char* tool_version = "berrydeco 0.1.0";

}  // namespace berrydeco
