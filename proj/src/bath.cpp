// bath.cpp — Ohmic bath quantities

#include "berrydeco/bath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "berrydeco/errors.hpp"
#include "berrydeco/quadrature.hpp"

namespace berrydeco {

BathSpec BathSpec::from_normalized(double lambda_norm, double cutoff, double temperature) {
    if (!(cutoff > 0.0)) throw ConfigError("bath cutoff must be positive");
    BathSpec b{2.0 * lambda_norm / (cutoff * cutoff), cutoff, temperature};
    b.validate();
    return b;
}

void BathSpec::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("bath lambda must be >= 0");
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw ConfigError("bath cutoff must be > 0");
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
        throw ConfigError("bath temperature must be >= 0");
    }
}

double spectral_density(const BathSpec& spec, double omega) {
    if (omega < 0.0) throw DomainError("spectral_density: negative frequency");
    return 0.5 * spec.lambda * omega * std::exp(-omega / spec.cutoff);
}

double bose_occupation(const BathSpec& spec, double omega) {
    if (!(omega > 0.0)) throw DomainError("bose_occupation: frequency must be positive");
    if (spec.temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / spec.temperature);
}

double thermal_weight(const BathSpec& spec, double omega) {
    if (spec.temperature == 0.0) return 0.0;
    if (omega < 1e-12 * spec.temperature) return 0.5 * spec.lambda * spec.temperature;
    return spectral_density(spec, omega) * bose_occupation(spec, omega);
}

cplx trigamma(cplx z) {
    if (!(z.real() > 0.0)) throw DomainError("trigamma: requires Re z > 0");
    // Recurrence psi_1(z) = psi_1(z+1) + 1/z^2 until the asymptotic series is accurate.
    cplx acc = 0.0;
    while (std::abs(z) < 20.0) {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    const cplx w = 1.0 / z;
    const cplx w2 = w * w;
    // 1/z + 1/2z^2 + sum B_2k / z^(2k+1)
    cplx series = w * (1.0 + w * 0.5 +
                       w2 * (1.0 / 6.0 +
                             w2 * (-1.0 / 30.0 +
                                   w2 * (1.0 / 42.0 + w2 * (-1.0 / 30.0 + w2 * (5.0 / 66.0))))));
    return acc + series;
}

cplx correlation(const BathSpec& spec, double s) {
    const double W = spec.cutoff;
    const cplx d = 1.0 + cplx(0.0, W * s);
    cplx k = 0.5 * spec.lambda * W * W / (d * d);
    if (spec.temperature > 0.0) {
        const double T = spec.temperature;
        // sum_n lambda Re 1/(1/W + n/T - is)^2 = lambda T^2 Re psi_1(1 + T/W + iTs)
        k += spec.lambda * T * T * trigamma(cplx(1.0 + T / W, T * std::abs(s))).real();
    }
    return k;
}

namespace {

double omega_max(const BathSpec& spec, double eps) {
    return spec.cutoff * std::max(40.0, 10.0 * std::log(1.0 / eps));
}

}  // namespace

cplx correlation_quadrature(const BathSpec& spec, double s, const QuadratureOptions& opt) {
    const double wmax = omega_max(spec, opt.tail_eps);
    // Start with ~16 samples per oscillation of cos(ws).
    std::size_t n = opt.min_intervals;
    const double periods = wmax * std::abs(s) / (2.0 * M_PI);
    while (static_cast<double>(n) < 16.0 * periods) n *= 2;
    const double scale = std::max(spec.lambda_norm(), 1e-300);

    // Nested trapezoid sums: each doubling only samples the new midpoints.
    // The phase exp(-i w s) advances by recurrence, resynchronized every 256 steps.
    auto sample = [&](double w, const cplx& phase) {
        const double j = spectral_density(spec, w);
        const double re_w = 2.0 * thermal_weight(spec, w) + j;
        return cplx(re_w * phase.real(), j * phase.imag());
    };
    auto midpoint_sum = [&](std::size_t count, double w0, double dw) {
        cplx sum = 0.0, phase = 1.0;
        const cplx step = std::polar(1.0, -dw * s);
        for (std::size_t i = 0; i < count; ++i) {
            const double w = w0 + dw * static_cast<double>(i);
            if (i % 256 == 0) phase = std::polar(1.0, -w * s);
            sum += sample(w, phase);
            phase *= step;
        }
        return sum;
    };

    double h = wmax / static_cast<double>(n);
    cplx trap = 0.5 * (sample(0.0, 1.0) + sample(wmax, std::polar(1.0, -wmax * s))) + midpoint_sum(n - 1, h, h);
    cplx simpson_prev = 0.0;
    bool have_prev = false;
    while (true) {
        // Halve the spacing: new points sit at odd multiples of h/2.
        const cplx mids = midpoint_sum(n, 0.5 * h, h);
        const cplx trap_fine = trap + mids;
        const cplx simpson = (h / 3.0) * (2.0 * trap_fine - trap);  // (4 T_2n - T_n)/3
        n *= 2;
        h *= 0.5;
        trap = trap_fine;
        if (have_prev) {
            const double err = std::abs(simpson - simpson_prev) / 15.0;
            if (err <= opt.rel_tol * scale) return simpson;
            if (n >= opt.max_intervals) {
                throw NumericalAccuracyError(
                    "correlation_quadrature: no convergence at s=" + std::to_string(s), err);
            }
        }
        simpson_prev = simpson;
        have_prev = true;
    }
}

double integrated_spectrum(const BathSpec& spec, const QuadratureOptions& opt) {
    const double wmax = omega_max(spec, opt.tail_eps);
    auto f = [&](double w) { return spectral_density(spec, w); };
    std::size_t n = opt.min_intervals;
    double coarse = quad::simpson(f, 0.0, wmax, n);
    while (true) {
        n *= 2;
        const double fine = quad::simpson(f, 0.0, wmax, n);
        const double err = std::abs(fine - coarse) / 15.0;
        if (err <= opt.rel_tol * std::max(std::abs(fine), 1e-300)) return fine;
        if (n >= opt.max_intervals) throw NumericalAccuracyError("integrated_spectrum: no convergence", err);
        coarse = fine;
    }
}

std::vector<CorrelationSample> sample_correlation(const BathSpec& spec, const std::vector<double>& times) {
    std::vector<CorrelationSample> out;
    out.reserve(times.size());
    for (double s : times) out.push_back({s, correlation(spec, s)});
    return out;
}

}  // namespace berrydeco
