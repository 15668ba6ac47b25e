// evolution.hpp — Reduced-state propagation, isolated references, fidelities and the two-cycle echo

#pragma once

#include "berrydeco/bath.hpp"
#include "berrydeco/coefficients.hpp"
#include "berrydeco/frames.hpp"
#include "berrydeco/paths.hpp"

namespace berrydeco {

enum class Variant { single_bath, multi_noise };

struct ReducedState {
    DensityMatrix2 rho;
    bool positivity_warning = false;
};

// Secular solution in the interaction frame:
// p00 <- exp(-n)(m + p00), rho01 <- exp(-l - ik) rho01.
ReducedState propagate_reduced(const DensityMatrix2& rho0_tilde, const CoefficientValues& c);
ReducedState propagate_reduced(const DensityMatrix2& rho0_tilde, const CoefficientSet& coeffs, double t);

// Eigenstate components carry dynamical and Berry phases only.
DensityMatrix2 isolated_adiabatic(const DriveParams& drive, double t, const DensityMatrix2& rho0);
// Exact propagator of the rotating field (time independent in the rotating frame).
DensityMatrix2 isolated_exact(const DriveParams& drive, double t, const DensityMatrix2& rho0);

double fidelity(const DensityMatrix2& rho, const DensityMatrix2& rho_ref);

// Closed-form single-cycle F(t) against the exact isolated evolution.
double fidelity_single_cycle(double zeta, const CoefficientValues& c);
double fidelity_single_cycle(const DriveParams& drive, const CoefficientSet& coeffs, double t);
// Same quantity through the frame maps and propagate_reduced.
DensityMatrix2 single_cycle_state(const DriveParams& drive, const CoefficientValues& c, double t);
double fidelity_single_cycle_pipeline(const DriveParams& drive, const CoefficientSet& coeffs, double t);

struct CycleResult {
    DensityMatrix2 rho_final;
    CoefficientSet coeffs;
    double eta = 0.0;
    FrameAngles angles;
};

struct EchoResult {
    DensityMatrix2 rho_2T0;
    double fidelity = 0.0;           // against the adiabatic echo target
    double fidelity_isolated = 0.0;  // against the exact isolated two-cycle evolution
    double fidelity_reference = 0.0; // isolated evolution against the adiabatic target
    double berry_phase = 0.0;
    double phase_correction = 0.0;   // k1(T0) - k2(T0)
    double dephasing = 0.0;          // l1(T0) + l2(T0)
    double eta1 = 0.0, eta2 = 0.0;
    CycleResult first, second;
    bool positivity_warning = false;
};

struct EchoOptions {
    Variant variant = Variant::single_bath;
    bool adiabatic_frame = false;  // alpha := theta in both cycles (zeta = 0)
};

// Lab-frame result of the echo for given angles and T0 coefficient values.
ReducedState echo_state(const DriveParams& drive, const FrameAngles& a1, const FrameAngles& a2,
                        const CoefficientValues& c1, const CoefficientValues& c2);

// The adiabatic echo target (exp(2i Phi)|e> + exp(-2i Phi)|g>)/sqrt 2 at field direction (theta, phi).
DensityMatrix2 adiabatic_echo_target(double theta, double phi, double Phi);
DensityMatrix2 adiabatic_echo_target(const DriveParams& drive);
// Two-cycle protocol applied to isolated_adiabatic.
DensityMatrix2 isolated_adiabatic_echo(const DriveParams& drive);

EchoResult run_echo(const DriveParams& drive, const BathSpec& bath, const TimeGrid& grid,
                    const EchoOptions& opt = {});
EchoResult run_echo(const DriveParams& drive, const BathSpec& bath, Variant variant = Variant::single_bath);

// Bloch-vector closed form of F(2T0) for the echo pipeline.
double fidelity_two_cycle_closed_form(const FrameAngles& a1, const FrameAngles& a2, const CoefficientValues& c1,
                                      const CoefficientValues& c2, double Phi, double T0);
// zeta1 = zeta2 = 0: 1/2 [1 + exp(-l1-l2) cos(4 Phi - T0 (E1 - E2) - (k1 - k2))].
double fidelity_adiabatic_limit(double E1, double E2, const CoefficientValues& c1, const CoefficientValues& c2,
                                double Phi, double T0);

struct PhaseCorrection {
    double exact = 0.0;        // k1(T0) - k2(T0)
    double approximate = 0.0;  // 4 omega0 sin^2 cos int int s cos(Bs) Re kappa
};
PhaseCorrection phase_correction(const DriveParams& drive, const BathSpec& bath, const TimeGrid& grid);

// l1 + l2 in the Markov limit: 2 sin^2 theta T0 pi J(B) (2N(B) + 1).
double markovian_dephasing_limit(const DriveParams& drive, const BathSpec& bath);

EchoResult run_echo_path(const PathSpec& path, const BathSpec& bath, const TimeGrid& grid, double B,
                         PathFrame frame = PathFrame::dressed);

}  // namespace berrydeco
