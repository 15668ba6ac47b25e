// frames.cpp — Frame maps and two-level state algebra

#include "berrydeco/frames.hpp"

#include <cmath>

#include "berrydeco/errors.hpp"

namespace berrydeco {

namespace pauli {
Matrix2c x() {
    Matrix2c m;
    m << 0, 1, 1, 0;
    return m;
}
Matrix2c y() {
    Matrix2c m;
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
Matrix2c z() {
    Matrix2c m;
    m << 1, 0, 0, -1;
    return m;
}
Matrix2c rot_x(double a) {
    return std::cos(a / 2) * Matrix2c::Identity() + cplx(0, std::sin(a / 2)) * x();
}
Matrix2c rot_y(double a) {
    Matrix2c m;
    const double c = std::cos(a / 2), s = std::sin(a / 2);
    m << c, s, -s, c;
    return m;
}
Matrix2c rot_z(double a) {
    Matrix2c m;
    m << std::polar(1.0, a / 2), 0, 0, std::polar(1.0, -a / 2);
    return m;
}
}  // namespace pauli

double DriveParams::period() const {
    return 2.0 * M_PI / std::abs(omega0);
}

void DriveParams::validate() const {
    if (!(B > 0.0) || !std::isfinite(B)) throw ConfigError("drive B must be > 0");
    if (!(theta >= 0.0 && theta <= M_PI)) throw ConfigError("drive theta must lie in [0, pi]");
    if (!(omega0 != 0.0) || !std::isfinite(omega0)) throw ConfigError("drive omega0 must be nonzero");
}

DensityMatrix2 DensityMatrix2::from_matrix(const Matrix2c& m) {
    // Split any trace defect evenly; hermitize the coherence.
    const double defect = 1.0 - (m(0, 0).real() + m(1, 1).real());
    return {m(0, 0).real() + 0.5 * defect, 0.5 * (m(0, 1) + std::conj(m(1, 0)))};
}

DensityMatrix2 DensityMatrix2::pure(const Vector2c& psi) {
    const Vector2c v = psi / psi.norm();
    return {std::norm(v(0)), v(0) * std::conj(v(1))};
}

Matrix2c DensityMatrix2::matrix() const {
    Matrix2c m;
    m << p00_, c01_, std::conj(c01_), 1.0 - p00_;
    return m;
}

Eigen::Vector3d DensityMatrix2::bloch() const {
    return {2.0 * c01_.real(), -2.0 * c01_.imag(), 2.0 * p00_ - 1.0};
}

double DensityMatrix2::purity() const {
    const double p1 = 1.0 - p00_;
    return p00_ * p00_ + p1 * p1 + 2.0 * std::norm(c01_);
}

double DensityMatrix2::min_eigenvalue() const {
    const double d = p00_ - 0.5;
    return 0.5 - std::sqrt(d * d + std::norm(c01_));
}

double trace_distance(const DensityMatrix2& a, const DensityMatrix2& b) {
    const double dp = a.p00() - b.p00();
    return std::sqrt(dp * dp + std::norm(a.c01() - b.c01()));
}

FrameAngles frame_angles(const DriveParams& drive) {
    const double y = drive.B * std::sin(drive.theta);
    const double x = drive.B * std::cos(drive.theta) - drive.omega0;
    const double E = std::hypot(y, x);
    if (E <= 1e-14 * drive.B) throw DegenerateFrameError("frame_angles: resonant point, gap vanishes");
    const double alpha = std::atan2(y, x);
    return {alpha, E, alpha - drive.theta};
}

Matrix2c drive_hamiltonian(const DriveParams& drive, double t) {
    const double st = std::sin(drive.theta), ct = std::cos(drive.theta);
    const double ph = drive.omega0 * t;
    return 0.5 * drive.B * (st * std::cos(ph) * pauli::x() + st * std::sin(ph) * pauli::y() + ct * pauli::z());
}

Eigenpair field_eigenstates(double theta, double phi) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    Eigenpair p;
    p.excited << c, s * std::polar(1.0, phi);
    p.ground << s * std::polar(1.0, -phi), -c;
    return p;
}

Eigenpair instantaneous_eigenstates(const DriveParams& drive, double t) {
    return field_eigenstates(drive.theta, drive.omega0 * t);
}

Matrix2c frame_unitary(double phi, double alpha, double phase) {
    return pauli::rot_z(-phi) * pauli::rot_y(-alpha) * pauli::rot_z(-phase);
}

DensityMatrix2 conjugate(const DensityMatrix2& rho, const Matrix2c& u) {
    return DensityMatrix2::from_matrix(u * rho.matrix() * u.adjoint());
}

DensityMatrix2 to_original_frame(const DensityMatrix2& rho_tilde, const FrameAngles& a, double omega0, double t) {
    return conjugate(rho_tilde, frame_unitary(omega0 * t, a.alpha, a.gap * t));
}

DensityMatrix2 to_original_frame(const DensityMatrix2& rho_tilde, const DriveParams& drive, double t) {
    return to_original_frame(rho_tilde, frame_angles(drive), drive.omega0, t);
}

DensityMatrix2 to_rotated_frame(const DensityMatrix2& rho, const FrameAngles& a, double omega0, double t) {
    return conjugate(rho, frame_unitary(omega0 * t, a.alpha, a.gap * t).adjoint());
}

DensityMatrix2 to_rotated_frame(const DensityMatrix2& rho, const DriveParams& drive, double t) {
    return to_rotated_frame(rho, frame_angles(drive), drive.omega0, t);
}

DensityMatrix2 initial_state(const DriveParams& drive) {
    const Eigenpair p = instantaneous_eigenstates(drive, 0.0);
    return DensityMatrix2::pure(p.excited + p.ground);
}

}  // namespace berrydeco
