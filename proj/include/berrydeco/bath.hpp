// bath.hpp — Ohmic bosonic bath: spectral density, occupation, force autocorrelation

#pragma once

#include <complex>
#include <vector>

namespace berrydeco {

using cplx = std::complex<double>;

// Ohmic bath J(w) = (lambda/2) w exp(-w/cutoff) at temperature T (hbar = k_B = 1).
struct BathSpec {
    double lambda = 0.0;
    double cutoff = 1.0;
    double temperature = 0.0;

    // Build from the integrated noise power lambda*cutoff^2/2.
    static BathSpec from_normalized(double lambda_norm, double cutoff, double temperature = 0.0);

    double lambda_norm() const { return 0.5 * lambda * cutoff * cutoff; }
    double correlation_time() const { return 1.0 / cutoff; }
    void validate() const;
};

struct CorrelationSample {
    double s = 0.0;
    cplx value{};
};

struct QuadratureOptions {
    double rel_tol = 1e-9;        // halving-estimate tolerance relative to kappa(0)
    double tail_eps = 1e-8;       // sets the frequency cutoff of the integral
    std::size_t min_intervals = 512;
    std::size_t max_intervals = std::size_t{1} << 22;
};

double spectral_density(const BathSpec& spec, double omega);
double bose_occupation(const BathSpec& spec, double omega);
// J(w) N(w), continuous at w = 0 where it tends to lambda*T/2.
double thermal_weight(const BathSpec& spec, double omega);

// kappa(s) = int_0^inf J(w) [2N(w) cos(ws) + exp(-iws)] dw.
// Vacuum part in closed form; the thermal part through the exact trigamma series
// of the Bose expansion (see correlation_quadrature for the direct integral).
cplx correlation(const BathSpec& spec, double s);

// Direct composite-Simpson evaluation of the defining integral.
// Throws NumericalAccuracyError when the halving estimate exceeds the tolerance.
cplx correlation_quadrature(const BathSpec& spec, double s, const QuadratureOptions& opt = {});

// int_0^inf J(w) dw by quadrature.
double integrated_spectrum(const BathSpec& spec, const QuadratureOptions& opt = {});

std::vector<CorrelationSample> sample_correlation(const BathSpec& spec, const std::vector<double>& times);

// Trigamma psi_1(z) for Re z > 0.
cplx trigamma(cplx z);

}  // namespace berrydeco
