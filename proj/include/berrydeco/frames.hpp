// frames.hpp — Drive parameters, frame angles, spin density matrices and frame maps

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace berrydeco {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

namespace pauli {
Matrix2c x();
Matrix2c y();
Matrix2c z();
// exp(i a sigma_k / 2) for k = x, y, z
Matrix2c rot_x(double a);
Matrix2c rot_y(double a);
Matrix2c rot_z(double a);
}  // namespace pauli

// Field of magnitude B at polar angle theta rotating about z at signed rate omega0.
struct DriveParams {
    double B = 100.0;
    double theta = 0.0;
    double omega0 = 1.0;

    double period() const;
    DriveParams reversed() const { return {B, theta, -omega0}; }
    void validate() const;
};

struct FrameAngles {
    double alpha = 0.0;  // tilt of the rotating-frame field
    double gap = 0.0;    // E
    double zeta = 0.0;   // alpha - theta
};

// Hermitian unit-trace 2x2 matrix stored as (p00, rho01); p11 = 1 - p00.
class DensityMatrix2 {
public:
    DensityMatrix2() = default;
    DensityMatrix2(double p00, cplx c01) : p00_(p00), c01_(c01) {}

    static DensityMatrix2 from_matrix(const Matrix2c& m);
    static DensityMatrix2 pure(const Vector2c& psi);
    static DensityMatrix2 maximally_mixed() { return {0.5, 0.0}; }

    double p00() const { return p00_; }
    double p11() const { return 1.0 - p00_; }
    cplx c01() const { return c01_; }
    Matrix2c matrix() const;
    Eigen::Vector3d bloch() const;

    double purity() const;
    double min_eigenvalue() const;
    bool is_physical(double tol = 1e-9) const { return min_eigenvalue() >= -tol; }

private:
    double p00_ = 0.5;
    cplx c01_{};
};

double trace_distance(const DensityMatrix2& a, const DensityMatrix2& b);

struct Eigenpair {
    Vector2c ground;
    Vector2c excited;
};

FrameAngles frame_angles(const DriveParams& drive);
// H_s(t) for the rotating field.
Matrix2c drive_hamiltonian(const DriveParams& drive, double t);
Eigenpair instantaneous_eigenstates(const DriveParams& drive, double t);
// Eigenstates of a field pointing along (theta, phi); the circle case has phi = omega0 t.
Eigenpair field_eigenstates(double theta, double phi);

// Unitary V with rho_lab = V rho_tilde V^dagger:
// V = U1^dag(phi) U2^dag(alpha) exp(-i sigma_z phase / 2), U1 = exp(i sigma_z phi/2), U2 = exp(i sigma_y alpha/2).
Matrix2c frame_unitary(double phi, double alpha, double phase);

DensityMatrix2 to_original_frame(const DensityMatrix2& rho_tilde, const DriveParams& drive, double t);
DensityMatrix2 to_original_frame(const DensityMatrix2& rho_tilde, const FrameAngles& angles, double omega0, double t);
DensityMatrix2 to_rotated_frame(const DensityMatrix2& rho, const DriveParams& drive, double t);
DensityMatrix2 to_rotated_frame(const DensityMatrix2& rho, const FrameAngles& angles, double omega0, double t);
DensityMatrix2 conjugate(const DensityMatrix2& rho, const Matrix2c& u);

// (|e(0)> + |g(0)>)/sqrt 2 in the lab basis.
DensityMatrix2 initial_state(const DriveParams& drive);

}  // namespace berrydeco
