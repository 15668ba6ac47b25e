// evolution.cpp — Propagation, references and the echo protocol

#include "berrydeco/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "berrydeco/errors.hpp"
#include "berrydeco/quadrature.hpp"

namespace berrydeco {

ReducedState propagate_reduced(const DensityMatrix2& rho0_tilde, const CoefficientValues& c) {
    const double p = std::exp(-c.n) * (c.m + rho0_tilde.p00());
    const cplx coh = std::exp(cplx(-c.l, -c.k)) * rho0_tilde.c01();
    ReducedState out{DensityMatrix2(p, coh), false};
    out.positivity_warning = p < -1e-9 || p > 1.0 + 1e-9 || !out.rho.is_physical();
    return out;
}

ReducedState propagate_reduced(const DensityMatrix2& rho0_tilde, const CoefficientSet& coeffs, double t) {
    return propagate_reduced(rho0_tilde, coeffs.at(t));
}

DensityMatrix2 isolated_adiabatic(const DriveParams& drive, double t, const DensityMatrix2& rho0) {
    const Eigenpair p0 = instantaneous_eigenstates(drive, 0.0);
    const Eigenpair pt = instantaneous_eigenstates(drive, t);
    // dynamical phase -+Bt/2 plus Berry connection omega0 sin^2(theta/2) t
    const double berry = drive.omega0 * std::pow(std::sin(drive.theta / 2), 2) * t;
    const cplx ph_e = std::polar(1.0, -0.5 * drive.B * t - berry);
    const cplx ph_g = std::polar(1.0, 0.5 * drive.B * t + berry);
    const Matrix2c W = ph_e * pt.excited * p0.excited.adjoint() + ph_g * pt.ground * p0.ground.adjoint();
    return conjugate(rho0, W);
}

DensityMatrix2 isolated_exact(const DriveParams& drive, double t, const DensityMatrix2& rho0) {
    const FrameAngles a = frame_angles(drive);
    // exp(-i H_rot t), H_rot = (E/2)(sin a sigma_x + cos a sigma_z)
    const double h = 0.5 * a.gap * t;
    const Matrix2c nsig = std::sin(a.alpha) * pauli::x() + std::cos(a.alpha) * pauli::z();
    const Matrix2c Urot = std::cos(h) * Matrix2c::Identity() - cplx(0, std::sin(h)) * nsig;
    return conjugate(rho0, pauli::rot_z(-drive.omega0 * t) * Urot);
}

double fidelity(const DensityMatrix2& rho, const DensityMatrix2& rho_ref) {
    return rho.p00() * rho_ref.p00() + rho.p11() * rho_ref.p11() +
           2.0 * (rho.c01() * std::conj(rho_ref.c01())).real();
}

double fidelity_single_cycle(double zeta, const CoefficientValues& c) {
    const double s = std::sin(zeta), co = std::cos(zeta);
    return 0.5 * (1.0 + std::exp(-c.l) * std::cos(c.k) * co * co + s +
                  std::exp(-c.n) * s * (s - 1.0 - 2.0 * c.m));
}

double fidelity_single_cycle(const DriveParams& drive, const CoefficientSet& coeffs, double t) {
    return fidelity_single_cycle(frame_angles(drive).zeta, coeffs.at(t));
}

DensityMatrix2 single_cycle_state(const DriveParams& drive, const CoefficientValues& c, double t) {
    const FrameAngles a = frame_angles(drive);
    const DensityMatrix2 r0 = to_rotated_frame(initial_state(drive), a, drive.omega0, 0.0);
    return to_original_frame(propagate_reduced(r0, c).rho, a, drive.omega0, t);
}

double fidelity_single_cycle_pipeline(const DriveParams& drive, const CoefficientSet& coeffs, double t) {
    const DensityMatrix2 rho = single_cycle_state(drive, coeffs.at(t), t);
    return fidelity(rho, isolated_exact(drive, t, initial_state(drive)));
}

namespace {

Matrix2c pi_pulse(const Eigenpair& p) {
    return p.excited * p.ground.adjoint() + p.ground * p.excited.adjoint();
}

FrameAngles adiabatic_angles(const DriveParams& drive) {
    FrameAngles a = frame_angles(drive);
    return {drive.theta, a.gap, 0.0};
}

void check_grid(const TimeGrid& grid, double T0) {
    if (grid.t_max < T0 * (1.0 - 1e-12)) throw ResolutionError("time grid does not cover one period");
}

}  // namespace

ReducedState echo_state(const DriveParams& drive, const FrameAngles& a1, const FrameAngles& a2,
                        const CoefficientValues& c1, const CoefficientValues& c2) {
    const double T0 = drive.period();
    const DriveParams back = drive.reversed();
    const DensityMatrix2 r1 = to_rotated_frame(initial_state(drive), a1, drive.omega0, 0.0);
    const ReducedState s1 = propagate_reduced(r1, c1);
    const DensityMatrix2 lab1 = to_original_frame(s1.rho, a1, drive.omega0, T0);
    const DensityMatrix2 flipped = conjugate(lab1, pi_pulse(instantaneous_eigenstates(drive, T0)));
    const DensityMatrix2 r2 = to_rotated_frame(flipped, a2, back.omega0, 0.0);
    const ReducedState s2 = propagate_reduced(r2, c2);
    return {to_original_frame(s2.rho, a2, back.omega0, T0), s1.positivity_warning || s2.positivity_warning};
}

DensityMatrix2 adiabatic_echo_target(double theta, double phi, double Phi) {
    const Eigenpair p = field_eigenstates(theta, phi);
    return DensityMatrix2::pure(std::polar(1.0, 2 * Phi) * p.excited + std::polar(1.0, -2 * Phi) * p.ground);
}

DensityMatrix2 adiabatic_echo_target(const DriveParams& drive) {
    return adiabatic_echo_target(drive.theta, 0.0, M_PI * (1.0 - std::cos(drive.theta)));
}

DensityMatrix2 isolated_adiabatic_echo(const DriveParams& drive) {
    const double T0 = drive.period();
    const DensityMatrix2 mid = isolated_adiabatic(drive, T0, initial_state(drive));
    const DensityMatrix2 flipped = conjugate(mid, pi_pulse(instantaneous_eigenstates(drive, T0)));
    return isolated_adiabatic(drive.reversed(), T0, flipped);
}

EchoResult run_echo(const DriveParams& drive, const BathSpec& bath, const TimeGrid& grid, const EchoOptions& opt) {
    drive.validate();
    if (drive.omega0 <= 0.0) throw ConfigError("run_echo: first cycle needs omega0 > 0");
    const double T0 = drive.period();
    check_grid(grid, T0);
    const DriveParams back = drive.reversed();

    EchoResult r;
    const FrameAngles exact1 = frame_angles(drive), exact2 = frame_angles(back);
    r.first.angles = opt.adiabatic_frame ? adiabatic_angles(drive) : exact1;
    r.second.angles = opt.adiabatic_frame ? adiabatic_angles(back) : exact2;
    if (opt.variant == Variant::multi_noise) {
        r.first.coeffs = compute_coefficients_multinoise(drive, bath, grid);
        r.second.coeffs = compute_coefficients_multinoise(back, bath, grid);
    } else {
        r.first.coeffs = compute_coefficients(r.first.angles.alpha, drive.B, bath, grid);
        r.second.coeffs = compute_coefficients(r.second.angles.alpha, drive.B, bath, grid);
    }
    const CoefficientValues c1 = r.first.coeffs.at(T0), c2 = r.second.coeffs.at(T0);

    const ReducedState fin = echo_state(drive, r.first.angles, r.second.angles, c1, c2);
    const ReducedState iso = echo_state(drive, exact1, exact2, {}, {});
    const DensityMatrix2 target = adiabatic_echo_target(drive);
    const DensityMatrix2 r1 = to_rotated_frame(initial_state(drive), r.first.angles, drive.omega0, 0.0);
    r.first.rho_final = to_original_frame(propagate_reduced(r1, c1).rho, r.first.angles, drive.omega0, T0);
    r.second.rho_final = fin.rho;

    r.rho_2T0 = fin.rho;
    r.positivity_warning = fin.positivity_warning;
    r.fidelity = fidelity(fin.rho, target);
    r.fidelity_isolated = fidelity(fin.rho, iso.rho);
    r.fidelity_reference = fidelity(iso.rho, target);
    r.berry_phase = M_PI * (1.0 - std::cos(drive.theta));
    r.phase_correction = c1.k - c2.k;
    r.dephasing = c1.l + c2.l;
    r.first.eta = T0 * r.first.angles.gap + c1.k;
    r.second.eta = T0 * r.second.angles.gap + c2.k;
    r.eta1 = r.first.eta;
    r.eta2 = r.second.eta;
    return r;
}

EchoResult run_echo(const DriveParams& drive, const BathSpec& bath, Variant variant) {
    const TimeGrid grid = TimeGrid::resolving(drive.period(), drive.B, bath.cutoff);
    return run_echo(drive, bath, grid, EchoOptions{variant, false});
}

double fidelity_two_cycle_closed_form(const FrameAngles& a1, const FrameAngles& a2, const CoefficientValues& c1,
                                      const CoefficientValues& c2, double Phi, double T0) {
    const double s1 = std::sin(a1.zeta), k1 = std::cos(a1.zeta);
    const double s2 = std::sin(a2.zeta), k2 = std::cos(a2.zeta);
    const double z12 = a1.zeta - a2.zeta;
    const double eta1 = T0 * a1.gap + c1.k, eta2 = T0 * a2.gap + c2.k;
    const double C4 = std::cos(4 * Phi), S4 = std::sin(4 * Phi);

    // Bloch components after cycle 1, the pulse, and the change to the cycle-2 frame.
    const double P1 = std::exp(-c1.n) * (2 * c1.m + 1 - s1) - 1;
    const double L1 = k1 * std::exp(-c1.l);
    const double D = -P1 * s1 + L1 * std::cos(eta1) * k1;
    const double xn = -2 * s2 * D - (P1 * std::cos(z12) + L1 * std::cos(eta1) * std::sin(z12));
    const double xu = 2 * D * k2 - (-P1 * std::sin(z12) + L1 * std::cos(eta1) * std::cos(z12));
    const double xy = L1 * std::sin(eta1);
    const double P2 = std::exp(-c2.n) * (2 * c2.m + 1 + xn) - 1;
    const double e2 = std::exp(-c2.l);

    const double dot = C4 * (-s2 * P2 + k2 * e2 * (xu * std::cos(eta2) + xy * std::sin(eta2))) +
                       S4 * e2 * (xy * std::cos(eta2) - xu * std::sin(eta2));
    return 0.5 * (1 + dot);
}

double fidelity_adiabatic_limit(double E1, double E2, const CoefficientValues& c1, const CoefficientValues& c2,
                                double Phi, double T0) {
    return 0.5 * (1 + std::exp(-c1.l - c2.l) * std::cos(4 * Phi - T0 * (E1 - E2) - (c1.k - c2.k)));
}

PhaseCorrection phase_correction(const DriveParams& drive, const BathSpec& bath, const TimeGrid& grid) {
    drive.validate();
    const double T0 = drive.period();
    check_grid(grid, T0);
    const CoefficientValues c1 = compute_coefficients(drive, bath, grid).at(T0);
    const CoefficientValues c2 = compute_coefficients(drive.reversed(), bath, grid).at(T0);

    std::vector<double> f(grid.samples);
    for (std::size_t i = 0; i < grid.samples; ++i) {
        const double s = grid.time(i);
        f[i] = s * std::cos(drive.B * s) * correlation(bath, s).real();
    }
    const auto inner = quad::cumulative_simpson(f, grid.step);
    const auto outer = quad::cumulative_simpson(inner, grid.step);
    const double u = std::min(T0 / grid.step, static_cast<double>(grid.intervals()));
    const auto i = std::min(static_cast<std::size_t>(u), grid.intervals() - 1);
    const double w = u - static_cast<double>(i);
    const double integral = (1 - w) * outer[i] + w * outer[i + 1];
    const double st = std::sin(drive.theta);
    return {c1.k - c2.k, 4 * drive.omega0 * st * st * std::cos(drive.theta) * integral};
}

double markovian_dephasing_limit(const DriveParams& drive, const BathSpec& bath) {
    const double st = std::sin(drive.theta);
    const double N = bose_occupation(bath, drive.B);
    return 2 * st * st * drive.period() * M_PI * spectral_density(bath, drive.B) * (2 * N + 1);
}

namespace {

struct PathCycle {
    const PathSpec& path;
    double B;
    PathFrame frame;

    double phase(double T0, std::size_t n) const {
        if (n % 2) ++n;
        return quad::simpson([&](double t) { return path_gap(path, B, t, frame); }, 0.0, T0, n);
    }
    Matrix2c unitary(double t, double accumulated) const {
        return frame_unitary(path.phi(t), path_coupling_angle(path, B, t, frame), accumulated);
    }
};

}  // namespace

EchoResult run_echo_path(const PathSpec& path, const BathSpec& bath, const TimeGrid& grid, double B,
                         PathFrame frame) {
    path.validate_closed();
    const double T0 = path.period;
    check_grid(grid, T0);
    const PathSpec back = reversed_path(path);
    const std::size_t nq = std::max<std::size_t>(4096, grid.intervals());

    EchoResult r;
    r.first.coeffs = compute_coefficients_path(path, bath, grid, B, frame);
    r.second.coeffs = compute_coefficients_path(back, bath, grid, B, frame);
    const CoefficientValues c1 = r.first.coeffs.at(T0), c2 = r.second.coeffs.at(T0);

    const PathCycle cyc1{path, B, frame}, cyc2{back, B, frame};
    const double L1 = cyc1.phase(T0, nq), L2 = cyc2.phase(T0, nq);
    const Eigenpair start = field_eigenstates(path.theta(0.0), path.phi(0.0));
    const DensityMatrix2 rho0 = DensityMatrix2::pure(start.excited + start.ground);
    const Matrix2c pulse = pi_pulse(field_eigenstates(path.theta(T0), path.phi(T0)));

    auto run = [&](const CoefficientValues& a, const CoefficientValues& b, ReducedState& mid) {
        const DensityMatrix2 t1 = conjugate(rho0, cyc1.unitary(0.0, 0.0).adjoint());
        const ReducedState s1 = propagate_reduced(t1, a);
        const DensityMatrix2 lab1 = conjugate(s1.rho, cyc1.unitary(T0, L1));
        mid = {lab1, s1.positivity_warning};
        const DensityMatrix2 t2 = conjugate(conjugate(lab1, pulse), cyc2.unitary(0.0, 0.0).adjoint());
        const ReducedState s2 = propagate_reduced(t2, b);
        return ReducedState{conjugate(s2.rho, cyc2.unitary(T0, L2)),
                            s1.positivity_warning || s2.positivity_warning};
    };
    ReducedState mid, mid_iso;
    const ReducedState fin = run(c1, c2, mid);
    const ReducedState iso = run({}, {}, mid_iso);

    r.berry_phase = berry_phase(path);
    const DensityMatrix2 target = adiabatic_echo_target(path.theta(0.0), path.phi(0.0), r.berry_phase);
    r.rho_2T0 = fin.rho;
    r.first.rho_final = mid.rho;
    r.second.rho_final = fin.rho;
    r.positivity_warning = fin.positivity_warning;
    r.fidelity = fidelity(fin.rho, target);
    r.fidelity_isolated = fidelity(fin.rho, iso.rho);
    r.fidelity_reference = fidelity(iso.rho, target);
    r.phase_correction = c1.k - c2.k;
    r.dephasing = c1.l + c2.l;
    r.first.eta = L1 + c1.k;
    r.second.eta = L2 + c2.k;
    r.eta1 = r.first.eta;
    r.eta2 = r.second.eta;
    r.first.angles = {path_coupling_angle(path, B, 0.0, frame), path_gap(path, B, 0.0, frame),
                      path_coupling_angle(path, B, 0.0, frame) - path.theta(0.0)};
    r.second.angles = {path_coupling_angle(back, B, 0.0, frame), path_gap(back, B, 0.0, frame),
                       path_coupling_angle(back, B, 0.0, frame) - back.theta(0.0)};
    return r;
}

}  // namespace berrydeco
