// paths.cpp — Field loops and their Berry phase

#include "berrydeco/paths.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "berrydeco/errors.hpp"
#include "berrydeco/quadrature.hpp"

namespace berrydeco {

void PathSpec::validate_closed(double tol) const {
    if (!(period > 0.0)) throw PathError("path period must be positive");
    if (!theta || !phi || !phi_rate) throw PathError("path functions not set");
    const double dth = theta(period) - theta(0.0);
    const double dph = phi(period) - phi(0.0);
    const double wind = std::remainder(dph, 2.0 * M_PI);
    if (std::abs(dth) > tol || std::abs(wind) > tol) throw PathError("path is not closed");
}

PathSpec uniform_circle_path(double theta, double omega0) {
    if (!(theta >= 0.0 && theta <= M_PI)) throw PathError("uniform circle: theta outside [0, pi]");
    if (omega0 == 0.0) throw PathError("uniform circle: omega0 must be nonzero");
    PathSpec p;
    p.theta = [theta](double) { return theta; };
    p.phi = [omega0](double t) { return omega0 * t; };
    p.phi_rate = [omega0](double) { return omega0; };
    p.period = 2.0 * M_PI / std::abs(omega0);
    return p;
}

namespace {

struct Tilted {
    double st, ct, sg, cg, w;

    double x(double t) const { return st * std::cos(w * t); }
    double y(double t) const { return cg * st * std::sin(w * t) + sg * ct; }
    double z(double t) const { return -sg * st * std::sin(w * t) + cg * ct; }
    double xdot(double t) const { return -st * w * std::sin(w * t); }
    double ydot(double t) const { return cg * st * w * std::cos(w * t); }
};

}  // namespace

PathSpec tilted_circle_path(const TiltedCircle& tc) {
    if (!(tc.theta_prime > 0.0 && tc.theta_prime < M_PI)) throw PathError("tilted circle: theta' outside (0, pi)");
    if (!(tc.gamma >= 0.0 && tc.gamma <= M_PI)) throw PathError("tilted circle: gamma outside [0, pi]");
    if (tc.omega0 == 0.0) throw PathError("tilted circle: omega0 must be nonzero");

    const Tilted g{std::sin(tc.theta_prime), std::cos(tc.theta_prime), std::sin(tc.gamma), std::cos(tc.gamma),
                   tc.omega0};
    // z is extremal at sin(w t) = -+1 where it equals cos(gamma -+ theta').
    const double closest = std::min(std::abs(std::sin(tc.gamma - tc.theta_prime)),
                                    std::abs(std::sin(tc.gamma + tc.theta_prime)));
    if (closest < 1e-6) {
        throw PathError("tilted circle passes through a pole (theta'=" + std::to_string(tc.theta_prime) +
                        ", gamma=" + std::to_string(tc.gamma) + ")");
    }
    const double T0 = 2.0 * M_PI / std::abs(tc.omega0);

    // Unwrapped reference table over one period; selects the atan2 branch.
    constexpr std::size_t M = 8192;
    auto table = std::make_shared<std::vector<double>>(M + 1);
    (*table)[0] = std::atan2(g.y(0.0), g.x(0.0));
    for (std::size_t i = 1; i <= M; ++i) {
        const double t = T0 * static_cast<double>(i) / M;
        const double raw = std::atan2(g.y(t), g.x(t));
        const double prev = (*table)[i - 1];
        (*table)[i] = prev + std::remainder(raw - prev, 2.0 * M_PI);
    }
    const double advance = 2.0 * M_PI * std::round(((*table)[M] - (*table)[0]) / (2.0 * M_PI));

    PathSpec p;
    p.period = T0;
    p.theta = [g](double t) { return std::acos(std::clamp(g.z(t), -1.0, 1.0)); };
    p.phi = [g, table, advance, T0](double t) {
        const double k = std::floor(t / T0);
        const double tau = t - k * T0;
        const double u = tau / T0 * M;
        const std::size_t i = std::min(static_cast<std::size_t>(u), M - 1);
        const double f = u - static_cast<double>(i);
        const double ref = (1.0 - f) * (*table)[i] + f * (*table)[i + 1];
        const double raw = std::atan2(g.y(tau), g.x(tau));
        return raw + 2.0 * M_PI * std::round((ref - raw) / (2.0 * M_PI)) + k * advance;
    };
    p.phi_rate = [g](double t) {
        const double x = g.x(t), y = g.y(t);
        return (x * g.ydot(t) - y * g.xdot(t)) / (x * x + y * y);
    };
    return p;
}

PathSpec reversed_path(const PathSpec& path) {
    PathSpec r;
    const double T0 = path.period;
    auto th = path.theta;
    auto ph = path.phi;
    auto rate = path.phi_rate;
    r.period = T0;
    r.theta = [th, T0](double t) { return th(T0 - t); };
    r.phi = [ph, T0](double t) { return ph(T0 - t); };
    r.phi_rate = [rate, T0](double t) { return -rate(T0 - t); };
    return r;
}

double berry_phase(const PathSpec& path, std::size_t samples) {
    path.validate_closed();
    auto f = [&](double t) { return 0.5 * (1.0 - std::cos(path.theta(t))) * path.phi_rate(t); };
    std::size_t n = std::max<std::size_t>(samples, 4096);
    if (n % 2) ++n;
    double coarse = quad::simpson(f, 0.0, path.period, n / 2);
    double fine = quad::simpson(f, 0.0, path.period, n);
    while (std::abs(fine - coarse) > 1e-11 * std::max(1.0, std::abs(fine))) {
        if (n >= (std::size_t{1} << 22)) {
            throw NumericalAccuracyError("berry_phase: line integral did not converge", std::abs(fine - coarse));
        }
        n *= 2;
        coarse = fine;
        fine = quad::simpson(f, 0.0, path.period, n);
    }
    return fine;
}

double path_coupling_angle(const PathSpec& path, double B, double t, PathFrame frame) {
    const double th = path.theta(t);
    if (frame == PathFrame::adiabatic) return th;
    return std::atan2(B * std::sin(th), B * std::cos(th) - path.phi_rate(t));
}

double path_gap(const PathSpec& path, double B, double t, PathFrame frame) {
    const double th = path.theta(t);
    if (frame == PathFrame::adiabatic) return B - std::cos(th) * path.phi_rate(t);
    return std::hypot(B * std::sin(th), B * std::cos(th) - path.phi_rate(t));
}

}  // namespace berrydeco
