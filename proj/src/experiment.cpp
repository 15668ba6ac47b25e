// experiment.cpp — Figure reproductions, sweeps and CSV output

#include "berrydeco/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "berrydeco/errors.hpp"
#include "berrydeco/evolution.hpp"
#include "json.hpp"

namespace berrydeco {

using nlohmann::json;

namespace {

const std::vector<std::string> experiments = {"fig1", "fig2", "fig3", "fig4", "fig6", "sweep", "single"};
const std::vector<std::string> sweep_keys = {"B",           "theta", "omega0", "cutoff", "temperature",
                                             "lambda_norm", "T0",    "gamma",  "theta_prime"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

double number(const json& j, const std::string& key) {
    if (!j.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return j.get<double>();
}

std::vector<double> number_list(const json& j, const std::string& key) {
    if (!j.is_array()) throw ConfigError("config key '" + key + "' must be an array of numbers");
    if (j.empty()) throw ConfigError("config key '" + key + "' is an empty list");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(number(v, key));
    return out;
}

std::size_t count(const json& j, const std::string& key) {
    const double v = number(j, key);
    if (v < 0 || v != std::floor(v)) throw ConfigError("config key '" + key + "' must be a nonnegative integer");
    return static_cast<std::size_t>(v);
}

std::string text(const json& j, const std::string& key) {
    if (!j.is_string()) throw ConfigError("config key '" + key + "' must be a string");
    return j.get<std::string>();
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1);
    return v;
}

template <class T>
std::vector<T> or_default(const std::vector<T>& v, std::vector<T> fallback) {
    return v.empty() ? fallback : v;
}

// Runs f(i) for i in [0, n) on a worker pool; results keep index order.
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, std::size_t threads, F&& f) {
    std::vector<R> out(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::size_t nt = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    nt = std::min(nt, std::max<std::size_t>(n, 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return out;
}

BathSpec bath_for(const ExperimentConfig& cfg, double cutoff, double temperature, double lambda_norm) {
    if (cfg.lambda >= 0) {
        BathSpec b{cfg.lambda, cutoff, temperature};
        b.validate();
        return b;
    }
    return BathSpec::from_normalized(lambda_norm, cutoff, temperature);
}

BathSpec bath_for(const ExperimentConfig& cfg, double cutoff, double temperature) {
    return bath_for(cfg, cutoff, temperature, cfg.lambda_norm);
}

struct Point {
    std::vector<double> row;
    std::string note;
    bool warn = false;
};

std::string echo_summary(const EchoResult& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "Phi = %.12g\ndPhi = k1 - k2 = %.12g\nl1 + l2 = %.12g\neta1 = %.12g\neta2 = %.12g\n"
                  "F(2T0) vs adiabatic target = %.6f\nF(2T0) vs isolated evolution = %.6f\n",
                  r.berry_phase, r.phase_correction, r.dephasing, r.eta1, r.eta2, r.fidelity, r.fidelity_isolated);
    return buf;
}

EchoResult echo_for(const ExperimentConfig& cfg, const DriveParams& d, const BathSpec& bath) {
    const TimeGrid grid = TimeGrid::resolving(d.period(), d.B, bath.cutoff, cfg.grid_refine);
    return run_echo(d, bath, grid, {cfg.multinoise ? Variant::multi_noise : Variant::single_bath, false});
}

EchoResult tilted_echo(const ExperimentConfig& cfg, double theta_prime, double gamma, const BathSpec& bath) {
    const PathSpec p = tilted_circle_path({theta_prime, gamma, cfg.omega0});
    const TimeGrid grid = TimeGrid::resolving(p.period, cfg.B, bath.cutoff, cfg.grid_refine);
    return run_echo_path(p, bath, grid, cfg.B);
}

ExperimentOutput fig1(const ExperimentConfig& cfg) {
    const auto cutoffs = or_default(cfg.cutoff_list, {2.0, 20.0});
    const auto thetas = or_default(cfg.theta_list, {M_PI / 6, M_PI / 4, M_PI / 3});
    const DriveParams base{cfg.B, cfg.theta, cfg.omega0};
    const double T0 = base.period();
    const std::size_t P = cfg.output_points;

    auto curves = parallel_map<std::vector<std::vector<double>>>(
        cutoffs.size() * thetas.size(), cfg.threads, [&](std::size_t i) {
            const double cutoff = cutoffs[i / thetas.size()];
            const double theta = thetas[i % thetas.size()];
            const DriveParams d{cfg.B, theta, cfg.omega0};
            const BathSpec bath = bath_for(cfg, cutoff, cfg.temperature);
            const TimeGrid grid = TimeGrid::resolving(T0, d.B, cutoff, cfg.grid_refine);
            const CoefficientSet cs = compute_coefficients(d, bath, grid);
            std::vector<std::vector<double>> rows;
            for (std::size_t k = 0; k <= P; ++k) {
                const double t = T0 * static_cast<double>(k) / static_cast<double>(P);
                rows.push_back({t, theta, cutoff, fidelity_single_cycle(d, cs, t)});
            }
            return rows;
        });
    ExperimentOutput out;
    out.header = {"t", "theta", "cutoff", "F"};
    for (auto& c : curves)
        for (auto& r : c) out.rows.push_back(r);
    const auto& last = out.rows.back();
    char buf[256];
    std::snprintf(buf, sizeof buf, "fig1: %zu curves, T0 = %.12g, final F = %.6f (theta=%.6g, cutoff=%.6g)\n",
                  curves.size(), T0, last[3], last[1], last[2]);
    out.summary = buf;
    return out;
}

ExperimentOutput echo_grid(const ExperimentConfig& cfg, const std::vector<double>& xs, const std::vector<double>& cutoffs,
                           const std::vector<double>& temps, bool x_is_theta) {
    const std::size_t per = cutoffs.size() * temps.size();
    auto pts = parallel_map<Point>(xs.size() * per, cfg.threads, [&](std::size_t i) {
        const double cutoff = cutoffs[i / (temps.size() * xs.size())];
        const double temp = temps[(i / xs.size()) % temps.size()];
        const double x = xs[i % xs.size()];
        const DriveParams d = x_is_theta ? DriveParams{cfg.B, x, cfg.omega0} : DriveParams{cfg.B, cfg.theta, 2 * M_PI / x};
        const EchoResult r = echo_for(cfg, d, bath_for(cfg, cutoff, temp));
        Point p;
        p.note = echo_summary(r);
        if (x_is_theta) {
            p.row = {x, cutoff, temp, r.fidelity};
        } else {
            p.row = {x, cutoff, temp, r.fidelity, r.fidelity_reference};
        }
        p.warn = r.positivity_warning;
        return p;
    });
    ExperimentOutput out;
    out.header = x_is_theta ? std::vector<std::string>{"theta", "cutoff", "temperature", "F_2T0"}
                            : std::vector<std::string>{"T0", "cutoff", "temperature", "F_2T0", "F_isolated"};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out.rows.push_back(pts[i].row);
        if (pts[i].warn) out.warnings.push_back("positivity warning at row " + std::to_string(i));
    }
    out.summary = pts.back().note;
    return out;
}

ExperimentOutput fig3(const ExperimentConfig& cfg) {
    const auto cutoffs = or_default(cfg.cutoff_list, {20.0, 2.0});
    const auto T0s = or_default(cfg.T0_list, linspace(0.5, 20.0, 40));
    auto pts = parallel_map<std::vector<double>>(cutoffs.size() * T0s.size(), cfg.threads, [&](std::size_t i) {
        const double cutoff = cutoffs[i / T0s.size()];
        const double T0 = T0s[i % T0s.size()];
        const DriveParams d{cfg.B, cfg.theta, 2 * M_PI / T0};
        const EchoResult r = echo_for(cfg, d, bath_for(cfg, cutoff, cfg.temperature));
        const CoefficientValues c1 = r.first.coeffs.at(T0);
        return std::vector<double>{T0, cutoff, c1.n, c1.l, c1.k, r.phase_correction};
    });
    ExperimentOutput out;
    out.header = {"T0", "cutoff", "n1", "l1", "k1", "k1_minus_k2"};
    out.rows = pts;
    const auto& l = pts.back();
    char buf[256];
    std::snprintf(buf, sizeof buf, "fig3: last point T0=%.12g cutoff=%.12g n1=%.12g l1=%.12g k1=%.12g k1-k2=%.12g\n",
                  l[0], l[1], l[2], l[3], l[4], l[5]);
    out.summary = buf;
    return out;
}

ExperimentOutput fig6(const ExperimentConfig& cfg) {
    const auto tps = or_default(cfg.theta_prime_list, {M_PI / 6, M_PI / 4, M_PI / 3});
    const auto gammas = or_default(cfg.gamma_list, linspace(0.0, M_PI, 37));
    const BathSpec bath = bath_for(cfg, cfg.cutoff, cfg.temperature);
    auto pts = parallel_map<Point>(tps.size() * gammas.size(), cfg.threads, [&](std::size_t i) {
        const double tp = tps[i / gammas.size()];
        const double g = gammas[i % gammas.size()];
        Point p;
        try {
            const EchoResult r = tilted_echo(cfg, tp, g, bath);
            p.row = {g, tp, r.fidelity};
            p.warn = r.positivity_warning;
            p.note = echo_summary(r);
        } catch (const PathError& e) {
            p.note = std::string("skipped gamma=") + std::to_string(g) + " theta_prime=" + std::to_string(tp) + ": " +
                     e.what();
        }
        return p;
    });
    ExperimentOutput out;
    out.header = {"gamma", "theta_prime", "F_2T0"};
    for (const auto& p : pts) {
        if (p.row.empty()) {
            out.warnings.push_back(p.note);
            continue;
        }
        out.rows.push_back(p.row);
        out.summary = p.note;
        if (p.warn) out.warnings.push_back("positivity warning at gamma=" + std::to_string(p.row[0]));
    }
    return out;
}

ExperimentOutput sweep(const ExperimentConfig& cfg) {
    const auto& key = cfg.sweep_key;
    auto pts = parallel_map<Point>(cfg.sweep_values.size(), cfg.threads, [&](std::size_t i) {
        ExperimentConfig c = cfg;
        const double v = cfg.sweep_values[i];
        if (key == "B") c.B = v;
        if (key == "theta") c.theta = v;
        if (key == "omega0") c.omega0 = v;
        if (key == "cutoff") c.cutoff = v;
        if (key == "temperature") c.temperature = v;
        if (key == "lambda_norm") c.lambda_norm = v;
        if (key == "T0") c.omega0 = 2 * M_PI / v;
        if (key == "gamma") c.gamma = v;
        if (key == "theta_prime") c.theta_prime = v;
        c.validate();
        const BathSpec bath = bath_for(c, c.cutoff, c.temperature);
        const EchoResult r = c.path == "tilted" ? tilted_echo(c, c.theta_prime, c.gamma, bath)
                                                : echo_for(c, DriveParams{c.B, c.theta, c.omega0}, bath);
        Point p;
        p.row = {v, r.fidelity, r.fidelity_isolated, r.berry_phase, r.phase_correction, r.dephasing, r.eta1, r.eta2};
        p.note = echo_summary(r);
        p.warn = r.positivity_warning;
        return p;
    });
    ExperimentOutput out;
    out.header = {key, "F_2T0", "F_isolated", "Phi", "dPhi", "dephasing", "eta1", "eta2"};
    for (const auto& p : pts) {
        out.rows.push_back(p.row);
        if (p.warn) out.warnings.push_back("positivity warning at " + key + "=" + std::to_string(p.row[0]));
    }
    out.summary = pts.back().note;
    return out;
}

ExperimentOutput single(const ExperimentConfig& cfg) {
    const BathSpec bath = bath_for(cfg, cfg.cutoff, cfg.temperature);
    const bool tilted = cfg.path == "tilted";
    const DriveParams d{cfg.B, tilted ? cfg.theta_prime : cfg.theta, cfg.omega0};
    const EchoResult r = tilted ? tilted_echo(cfg, cfg.theta_prime, cfg.gamma, bath) : echo_for(cfg, d, bath);
    const double T0 = d.period();
    const CoefficientValues c1 = r.first.coeffs.at(T0), c2 = r.second.coeffs.at(T0);

    ExperimentOutput out;
    out.header = {"B",   "theta", "omega0", "lambda", "cutoff", "temperature", "F_2T0", "F_isolated", "Phi", "dPhi",
                  "dephasing", "eta1", "eta2", "n1", "m1", "l1", "k1", "n2", "m2", "l2", "k2"};
    out.rows.push_back({d.B, d.theta, d.omega0, bath.lambda, bath.cutoff, bath.temperature, r.fidelity,
                        r.fidelity_isolated, r.berry_phase, r.phase_correction, r.dephasing, r.eta1, r.eta2, c1.n,
                        c1.m, c1.l, c1.k, c2.n, c2.m, c2.l, c2.k});
    std::ostringstream os;
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "path = %s\nB = %.12g theta = %.12g omega0 = %.12g T0 = %.12g\n"
                  "lambda = %.12g cutoff = %.12g temperature = %.12g variant = %s\n",
                  cfg.path.c_str(), d.B, d.theta, d.omega0, T0, bath.lambda, bath.cutoff, bath.temperature,
                  cfg.multinoise ? "multi-noise" : "single-bath");
    os << buf;
    for (int c = 0; c < 2; ++c) {
        const CycleResult& cy = c == 0 ? r.first : r.second;
        const CoefficientValues& v = c == 0 ? c1 : c2;
        std::snprintf(buf, sizeof buf,
                      "cycle %d: alpha = %.12g E = %.12g zeta = %.12g n = %.12g m = %.12g l = %.12g k = %.12g\n",
                      c + 1, cy.angles.alpha, cy.angles.gap, cy.angles.zeta, v.n, v.m, v.l, v.k);
        os << buf;
    }
    os << echo_summary(r);
    if (!tilted) {
        std::snprintf(buf, sizeof buf, "F(2T0) closed form = %.12g\n",
                      fidelity_two_cycle_closed_form(r.first.angles, r.second.angles, c1, c2, r.berry_phase, T0));
        os << buf;
    }
    out.summary = os.str();
    if (r.positivity_warning) out.warnings.push_back("positivity warning in reduced state");
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!contains(experiments, experiment)) throw ConfigError("unknown experiment '" + experiment + "'");
    if (!(B > 0)) throw ConfigError("B must be > 0");
    if (!(theta >= 0 && theta <= M_PI)) throw ConfigError("theta must lie in [0, pi]");
    if (!(omega0 > 0)) throw ConfigError("omega0 must be > 0 (the reversed cycle is implied)");
    if (!(cutoff > 0)) throw ConfigError("cutoff must be > 0");
    if (!(temperature >= 0)) throw ConfigError("temperature must be >= 0");
    if (!(lambda_norm >= 0)) throw ConfigError("lambda_norm must be >= 0");
    if (path != "circle" && path != "tilted") throw ConfigError("path must be 'circle' or 'tilted'");
    if (path == "tilted" && multinoise) throw ConfigError("multinoise is only defined for the circle path");
    if (grid_refine < 1) throw ConfigError("grid_refine must be >= 1");
    if (output_points < 1) throw ConfigError("output_points must be >= 1");
    for (double v : cutoff_list)
        if (!(v > 0)) throw ConfigError("cutoff_list entries must be > 0");
    for (double v : temperature_list)
        if (!(v >= 0)) throw ConfigError("temperature_list entries must be >= 0");
    for (double v : theta_list)
        if (!(v >= 0 && v <= M_PI)) throw ConfigError("theta_list entries must lie in [0, pi]");
    for (double v : T0_list)
        if (!(v > 0)) throw ConfigError("T0_list entries must be > 0");
    if (experiment == "sweep") {
        if (!contains(sweep_keys, sweep_key)) throw ConfigError("sweep needs sweep_key, one of B theta omega0 cutoff temperature lambda_norm T0 gamma theta_prime");
        if (sweep_values.empty()) throw ConfigError("sweep needs a nonempty sweep_values list");
    }
}

ExperimentConfig config_from_json(std::string_view source, ExperimentConfig c) {
    json j;
    try {
        j = json::parse(source);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "experiment") c.experiment = text(v, key);
        else if (key == "B") c.B = number(v, key);
        else if (key == "theta") c.theta = number(v, key);
        else if (key == "omega0") c.omega0 = number(v, key);
        else if (key == "lambda_norm") c.lambda_norm = number(v, key);
        else if (key == "lambda") c.lambda = number(v, key);
        else if (key == "cutoff") c.cutoff = number(v, key);
        else if (key == "temperature") c.temperature = number(v, key);
        else if (key == "multinoise") {
            if (!v.is_boolean()) throw ConfigError("config key 'multinoise' must be a boolean");
            c.multinoise = v.get<bool>();
        }
        else if (key == "path") c.path = text(v, key);
        else if (key == "theta_prime") c.theta_prime = number(v, key);
        else if (key == "gamma") c.gamma = number(v, key);
        else if (key == "cutoff_list") c.cutoff_list = number_list(v, key);
        else if (key == "temperature_list") c.temperature_list = number_list(v, key);
        else if (key == "theta_list") c.theta_list = number_list(v, key);
        else if (key == "theta_prime_list") c.theta_prime_list = number_list(v, key);
        else if (key == "T0_list") c.T0_list = number_list(v, key);
        else if (key == "gamma_list") c.gamma_list = number_list(v, key);
        else if (key == "sweep_key") c.sweep_key = text(v, key);
        else if (key == "sweep_values") c.sweep_values = number_list(v, key);
        else if (key == "grid_refine") c.grid_refine = count(v, key);
        else if (key == "output_points") c.output_points = count(v, key);
        else if (key == "threads") c.threads = count(v, key);
        else if (key == "out") c.out = text(v, key);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    return c;
}

std::string config_to_json(const ExperimentConfig& c) {
    json j = {{"experiment", c.experiment}, {"B", c.B},
              {"theta", c.theta},           {"omega0", c.omega0},
              {"lambda_norm", c.lambda_norm}, {"cutoff", c.cutoff},
              {"temperature", c.temperature}, {"multinoise", c.multinoise},
              {"path", c.path},             {"theta_prime", c.theta_prime},
              {"gamma", c.gamma},           {"grid_refine", c.grid_refine},
              {"output_points", c.output_points}};
    if (c.lambda >= 0) j["lambda"] = c.lambda;
    auto put = [&](const char* k, const std::vector<double>& v) {
        if (!v.empty()) j[k] = v;
    };
    put("cutoff_list", c.cutoff_list);
    put("temperature_list", c.temperature_list);
    put("theta_list", c.theta_list);
    put("theta_prime_list", c.theta_prime_list);
    put("T0_list", c.T0_list);
    put("gamma_list", c.gamma_list);
    if (!c.sweep_key.empty()) j["sweep_key"] = c.sweep_key;
    put("sweep_values", c.sweep_values);
    return j.dump();
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::string& e = cfg.experiment;
    if (e == "fig1") return fig1(cfg);
    if (e == "fig2") {
        return echo_grid(cfg, or_default(cfg.T0_list, linspace(0.25, 10.0, 40)),
                         or_default(cfg.cutoff_list, {200.0, 20.0, 2.0}),
                         or_default(cfg.temperature_list, {0.0, 1.0, 5.0}), false);
    }
    if (e == "fig3") return fig3(cfg);
    if (e == "fig4") {
        return echo_grid(cfg, or_default(cfg.theta_list, linspace(0.1, M_PI / 2, 20)),
                         or_default(cfg.cutoff_list, {2.0, 200.0}), or_default(cfg.temperature_list, {0.0, 1.0}),
                         true);
    }
    if (e == "fig6") return fig6(cfg);
    if (e == "sweep") return sweep(cfg);
    return single(cfg);
}

void write_csv(std::ostream& os, const ExperimentConfig& cfg, const ExperimentOutput& out) {
    os << "# " << tool_version << "\n";
    os << "# config: " << config_to_json(cfg) << "\n";
    for (std::size_t i = 0; i < out.header.size(); ++i) os << (i ? "," : "") << out.header[i];
    os << "\n";
    char buf[32];
    for (const auto& row : out.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.12g", row[i]);
            os << (i ? "," : "") << buf;
        }
        os << "\n";
    }
}

}  // namespace berrydeco
