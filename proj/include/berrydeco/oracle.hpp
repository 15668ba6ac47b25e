// oracle.hpp — Brute-force validators: non-secular TCL2 integration and an exact few-mode bath

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "berrydeco/bath.hpp"
#include "berrydeco/coefficients.hpp"
#include "berrydeco/frames.hpp"

namespace berrydeco {

struct Trajectory {
    TimeGrid grid;
    std::vector<DensityMatrix2> states;  // interaction frame, one per grid sample
};

struct Tcl2Options {
    std::size_t substeps = 4;     // RK4 steps per grid interval
    bool check_halving = true;    // rerun with twice the substeps and compare
    double tolerance = 1e-6;      // max trace distance between the two runs
};

// Second-order master equation before the secular approximation:
// d rho/dt = -[sigma(t), Lambda(t) rho - rho Lambda(t)^dag],
// Lambda(t) = int_0^t kappa(tau) sigma(t - tau) dtau, exact gap E in all phases.
Trajectory tcl2_nonsecular(const DriveParams& drive, const BathSpec& bath, const DensityMatrix2& rho0_tilde,
                           const TimeGrid& grid, const Tcl2Options& opt = {});

struct FewModeBath {
    std::vector<double> frequencies;
    std::vector<double> couplings;
    std::size_t n_max = 2;
    double temperature = 0.0;

    std::size_t modes() const { return frequencies.size(); }
    std::size_t dimension() const;  // 2 (n_max + 1)^M
    double coupling_weight() const;  // sum g_k^2

    // Equal-weight bins of J on [0, band * cutoff]; centroid frequencies, g_k^2 = bin weight.
    static FewModeBath discretize_ohmic(const BathSpec& bath, std::size_t modes, std::size_t n_max,
                                        double band = 5.0);
};

// Spin coupled through sigma_z to discrete modes; dense diagonalization in the rotating frame.
class FewModeSystem {
public:
    static constexpr std::size_t max_dimension = 4096;

    FewModeSystem(const DriveParams& drive, const FewModeBath& bath);

    std::size_t dimension() const { return dim_; }
    // spin (x) |n_1 ... n_M>
    Eigen::VectorXcd product_state(const Vector2c& spin, const std::vector<int>& occupations) const;

    DensityMatrix2 reduced_rotating(const Eigen::VectorXcd& psi0, double t) const;
    DensityMatrix2 reduced_lab(const Eigen::VectorXcd& psi0, double t) const;
    // Spin state times the (truncated) thermal state of the modes.
    DensityMatrix2 reduced_lab_thermal(const DensityMatrix2& spin0, double t) const;

private:
    DriveParams drive_;
    FewModeBath bath_;
    std::size_t dim_ = 0;
    std::size_t bath_dim_ = 0;
    Eigen::VectorXd energies_;
    Eigen::MatrixXcd vectors_;
};

DensityMatrix2 few_mode_exact(const DriveParams& drive, const FewModeBath& fm, const Eigen::VectorXcd& psi0,
                              double t);

}  // namespace berrydeco
