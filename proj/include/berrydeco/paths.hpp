// paths.hpp — Closed field loops (uniform and tilted circles) and Berry phase line integrals

#pragma once

#include <functional>

namespace berrydeco {

// Field direction (theta(t), phi(t)) over one period; phi is unwrapped.
struct PathSpec {
    std::function<double(double)> theta;
    std::function<double(double)> phi;
    std::function<double(double)> phi_rate;
    double period = 0.0;

    void validate_closed(double tol = 1e-9) const;
};

struct TiltedCircle {
    double theta_prime = 0.0;
    double gamma = 0.0;
    double omega0 = 1.0;
};

PathSpec uniform_circle_path(double theta, double omega0);
// Cone of half-angle theta' about z', with z' tilted by gamma about x. Throws PathError
// when the loop passes through a pole.
PathSpec tilted_circle_path(const TiltedCircle& tc);
PathSpec reversed_path(const PathSpec& path);

// 1/2 oint (1 - cos theta) dphi, Simpson with halving refinement.
double berry_phase(const PathSpec& path, std::size_t samples = 4096);

// How the path's rotating-frame Hamiltonian is diagonalized.
//   dressed:   mixing angle atan2(B sin theta, B cos theta - phidot), gap hypot(...)
//   adiabatic: coupling angle theta(t), gap B - cos theta phidot
enum class PathFrame { dressed, adiabatic };

double path_coupling_angle(const PathSpec& path, double B, double t, PathFrame frame);
double path_gap(const PathSpec& path, double B, double t, PathFrame frame);

}  // namespace berrydeco
