// oracle.cpp — Non-secular TCL2 stepping and few-mode exact propagation

#include "berrydeco/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "berrydeco/errors.hpp"
#include "berrydeco/quadrature.hpp"

namespace berrydeco {

namespace {

struct Tcl2Kernel {
    double c, s, E, h;                    // cos alpha, sin alpha, gap, fine step
    std::vector<cplx> K0, Kminus, Kplus;  // running memory integrals on the fine grid

    Matrix2c sigma(double t) const {
        Matrix2c m;
        const cplx ph = std::polar(1.0, E * t);
        m << c, -s * ph, -s * std::conj(ph), -c;
        return m;
    }
    Matrix2c lambda(std::size_t idx) const {
        const double t = h * static_cast<double>(idx);
        const cplx ph = std::polar(1.0, E * t);
        Matrix2c m;
        m << c * K0[idx], -s * ph * Kminus[idx], -s * std::conj(ph) * Kplus[idx], -c * K0[idx];
        return m;
    }
    Matrix2c rhs(const Matrix2c& rho, std::size_t idx) const {
        const Matrix2c L = lambda(idx);
        const Matrix2c X = L * rho - rho * L.adjoint();
        const Matrix2c sg = sigma(h * static_cast<double>(idx));
        return -(sg * X - X * sg);
    }
};

std::vector<DensityMatrix2> tcl2_run(const DriveParams& drive, const BathSpec& bath, const DensityMatrix2& rho0,
                                     const TimeGrid& grid, std::size_t substeps) {
    const FrameAngles a = frame_angles(drive);
    const std::size_t steps = grid.intervals() * substeps;
    const double dt = grid.step / static_cast<double>(substeps);
    const std::size_t nfine = 2 * steps + 1;
    const double hf = 0.5 * dt;

    std::vector<cplx> k0(nfine), km(nfine), kp(nfine);
    for (std::size_t i = 0; i < nfine; ++i) {
        const double tau = hf * static_cast<double>(i);
        const cplx kap = correlation(bath, tau);
        k0[i] = kap;
        km[i] = kap * std::polar(1.0, -a.gap * tau);
        kp[i] = kap * std::polar(1.0, a.gap * tau);
    }
    Tcl2Kernel K{std::cos(a.alpha), std::sin(a.alpha), a.gap, hf, quad::cumulative_simpson(k0, hf),
                 quad::cumulative_simpson(km, hf), quad::cumulative_simpson(kp, hf)};

    std::vector<DensityMatrix2> out;
    out.reserve(grid.samples);
    Matrix2c rho = rho0.matrix();
    out.push_back(rho0);
    for (std::size_t n = 0; n < steps; ++n) {
        const std::size_t i0 = 2 * n;
        const Matrix2c k1 = K.rhs(rho, i0);
        const Matrix2c k2 = K.rhs(rho + 0.5 * dt * k1, i0 + 1);
        const Matrix2c k3 = K.rhs(rho + 0.5 * dt * k2, i0 + 1);
        const Matrix2c k4 = K.rhs(rho + dt * k3, i0 + 2);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if ((n + 1) % substeps == 0) out.push_back(DensityMatrix2::from_matrix(rho));
    }
    return out;
}

}  // namespace

Trajectory tcl2_nonsecular(const DriveParams& drive, const BathSpec& bath, const DensityMatrix2& rho0_tilde,
                           const TimeGrid& grid, const Tcl2Options& opt) {
    drive.validate();
    bath.validate();
    grid.check_resolution(drive.B, bath.cutoff);
    const std::size_t sub = std::max<std::size_t>(opt.substeps, 1);
    Trajectory tr{grid, tcl2_run(drive, bath, rho0_tilde, grid, sub)};
    if (opt.check_halving) {
        const auto fine = tcl2_run(drive, bath, rho0_tilde, grid, 2 * sub);
        double worst = 0.0;
        for (std::size_t i = 0; i < fine.size(); ++i) worst = std::max(worst, trace_distance(fine[i], tr.states[i]));
        if (worst > opt.tolerance) {
            throw ResolutionError("tcl2_nonsecular: step halving changed the trajectory by " + std::to_string(worst));
        }
        tr.states = fine;
    }
    return tr;
}

std::size_t FewModeBath::dimension() const {
    std::size_t d = 2;
    for (std::size_t k = 0; k < modes(); ++k) {
        d *= (n_max + 1);
        if (d > (std::size_t{1} << 40)) break;
    }
    return d;
}

double FewModeBath::coupling_weight() const {
    double s = 0.0;
    for (double g : couplings) s += g * g;
    return s;
}

FewModeBath FewModeBath::discretize_ohmic(const BathSpec& bath, std::size_t modes, std::size_t n_max,
                                          double band) {
    bath.validate();
    if (modes == 0) throw ConfigError("few-mode bath needs at least one mode");
    const double W = bath.cutoff;
    const double pref = 0.5 * bath.lambda * W * W;
    // Cumulative weight and first moment of J on [0, w].
    auto weight = [&](double w) {
        const double x = w / W;
        return pref * (1.0 - (1.0 + x) * std::exp(-x));
    };
    auto moment = [&](double w) {
        const double x = w / W;
        return pref * W * (2.0 - (x * x + 2 * x + 2) * std::exp(-x));
    };
    const double top = band * W;
    const double total = weight(top);

    FewModeBath fm;
    fm.n_max = n_max;
    fm.temperature = bath.temperature;
    double lo = 0.0;
    for (std::size_t k = 1; k <= modes; ++k) {
        double hi = top;
        if (k < modes) {
            const double target = total * static_cast<double>(k) / static_cast<double>(modes);
            double a = lo, b = top;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                (weight(mid) < target ? a : b) = mid;
            }
            hi = 0.5 * (a + b);
        }
        const double wbin = weight(hi) - weight(lo);
        fm.frequencies.push_back(wbin > 0 ? (moment(hi) - moment(lo)) / wbin : 0.5 * (lo + hi));
        fm.couplings.push_back(std::sqrt(std::max(wbin, 0.0)));
        lo = hi;
    }
    return fm;
}

FewModeSystem::FewModeSystem(const DriveParams& drive, const FewModeBath& bath) : drive_(drive), bath_(bath) {
    drive.validate();
    if (bath.frequencies.size() != bath.couplings.size()) throw ConfigError("few-mode bath: size mismatch");
    dim_ = bath.dimension();
    if (dim_ > max_dimension) {
        throw ConfigError("few-mode bath: Hilbert dimension " + std::to_string(dim_) + " exceeds " +
                          std::to_string(max_dimension));
    }
    bath_dim_ = dim_ / 2;
    const std::size_t levels = bath.n_max + 1;
    const std::size_t M = bath.modes();

    // Rotating-frame Hamiltonian is real symmetric.
    const double hx = 0.5 * drive.B * std::sin(drive.theta);
    const double hz = 0.5 * (drive.B * std::cos(drive.theta) - drive.omega0);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim_, dim_);
    for (std::size_t b = 0; b < bath_dim_; ++b) {
        double e_bath = 0.0;
        std::size_t rem = b, stride = 1;
        for (std::size_t k = 0; k < M; ++k) {
            const std::size_t nk = rem % levels;
            rem /= levels;
            e_bath += bath.frequencies[k] * static_cast<double>(nk);
            if (nk + 1 < levels) {
                // g (a + a^dag) between |nk> and |nk + 1>, sign set by sigma_z
                const double amp = bath.couplings[k] * std::sqrt(static_cast<double>(nk + 1));
                const std::size_t up = b + stride;
                H(b, up) += amp;
                H(up, b) += amp;
                H(bath_dim_ + b, bath_dim_ + up) -= amp;
                H(bath_dim_ + up, bath_dim_ + b) -= amp;
            }
            stride *= levels;
        }
        H(b, b) += hz + e_bath;
        H(bath_dim_ + b, bath_dim_ + b) += -hz + e_bath;
        H(b, bath_dim_ + b) += hx;
        H(bath_dim_ + b, b) += hx;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success) throw NumericalAccuracyError("few-mode diagonalization failed", 0.0);
    energies_ = es.eigenvalues();
    vectors_ = es.eigenvectors().cast<cplx>();
}

Eigen::VectorXcd FewModeSystem::product_state(const Vector2c& spin, const std::vector<int>& occupations) const {
    if (occupations.size() != bath_.modes()) throw ConfigError("product_state: occupation count mismatch");
    const std::size_t levels = bath_.n_max + 1;
    std::size_t b = 0, stride = 1;
    for (int n : occupations) {
        if (n < 0 || static_cast<std::size_t>(n) >= levels) throw ConfigError("product_state: occupation out of range");
        b += static_cast<std::size_t>(n) * stride;
        stride *= levels;
    }
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim_);
    psi(b) = spin(0);
    psi(bath_dim_ + b) = spin(1);
    return psi;
}

DensityMatrix2 FewModeSystem::reduced_rotating(const Eigen::VectorXcd& psi0, double t) const {
    Eigen::VectorXcd c = vectors_.adjoint() * psi0;
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, -energies_(i) * t);
    const Eigen::VectorXcd psi = vectors_ * c;
    const auto up = psi.head(bath_dim_);
    const auto dn = psi.tail(bath_dim_);
    Matrix2c r;
    r(0, 0) = up.squaredNorm();
    r(1, 1) = dn.squaredNorm();
    r(0, 1) = dn.dot(up);  // sum up conj(dn)
    r(1, 0) = std::conj(r(0, 1));
    return DensityMatrix2::from_matrix(r / (r(0, 0) + r(1, 1)).real());
}

DensityMatrix2 FewModeSystem::reduced_lab(const Eigen::VectorXcd& psi0, double t) const {
    return conjugate(reduced_rotating(psi0, t), pauli::rot_z(-drive_.omega0 * t));
}

DensityMatrix2 FewModeSystem::reduced_lab_thermal(const DensityMatrix2& spin0, double t) const {
    const std::size_t levels = bath_.n_max + 1;
    const std::size_t M = bath_.modes();
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(spin0.matrix());

    Matrix2c acc = Matrix2c::Zero();
    double norm = 0.0;
    for (std::size_t b = 0; b < bath_dim_; ++b) {
        double w = 1.0;
        std::vector<int> occ(M);
        std::size_t rem = b;
        for (std::size_t k = 0; k < M; ++k) {
            occ[k] = static_cast<int>(rem % levels);
            rem /= levels;
            if (occ[k] > 0) {
                w *= bath_.temperature > 0.0 ? std::exp(-bath_.frequencies[k] * occ[k] / bath_.temperature) : 0.0;
            }
        }
        norm += w;
        if (w < 1e-14) continue;
        for (int i = 0; i < 2; ++i) {
            const double p = es.eigenvalues()(i);
            if (p < 1e-14) continue;
            const DensityMatrix2 r = reduced_lab(product_state(es.eigenvectors().col(i), occ), t);
            acc += (w * p) * r.matrix();
        }
    }
    return DensityMatrix2::from_matrix(acc / norm);
}

DensityMatrix2 few_mode_exact(const DriveParams& drive, const FewModeBath& fm, const Eigen::VectorXcd& psi0,
                              double t) {
    return FewModeSystem(drive, fm).reduced_lab(psi0, t);
}

}  // namespace berrydeco
