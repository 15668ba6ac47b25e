// coefficients.hpp — Decoherence coefficients n, m, l, k as nested cumulative integrals

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "berrydeco/bath.hpp"
#include "berrydeco/frames.hpp"
#include "berrydeco/paths.hpp"

namespace berrydeco {

// Uniform grid on [0, t_max] with an even number of intervals.
struct TimeGrid {
    double t_max = 0.0;
    double step = 0.0;
    std::size_t samples = 0;

    static TimeGrid uniform(double t_max, std::size_t intervals);
    // Finest step needed: dt <= min(pi/(20 B), 1/(20 cutoff)), divided by refine.
    static TimeGrid resolving(double t_max, double B, double cutoff, std::size_t refine = 1);
    static double max_step(double B, double cutoff);

    std::size_t intervals() const { return samples - 1; }
    double time(std::size_t i) const { return step * static_cast<double>(i); }
    // Throws ResolutionError naming the violated bound.
    void check_resolution(double B, double cutoff) const;
};

struct CoefficientValues {
    double n = 0.0;
    double m = 0.0;
    double l = 0.0;
    double k = 0.0;
};

struct CoefficientSet {
    TimeGrid grid;
    std::vector<double> n, m, l, k;
    std::string provenance;

    CoefficientValues at_index(std::size_t i) const { return {n[i], m[i], l[i], k[i]}; }
    CoefficientValues final_values() const { return at_index(grid.samples - 1); }
    // Linear interpolation between samples.
    CoefficientValues at(double t) const;
    void write_csv(std::ostream& os) const;
};

CoefficientSet compute_coefficients(const DriveParams& drive, const BathSpec& bath, const TimeGrid& grid);
// Same integrals with an explicit coupling angle (alpha; theta gives the adiabatic frame).
CoefficientSet compute_coefficients(double coupling_angle, double B, const BathSpec& bath, const TimeGrid& grid);
CoefficientSet compute_coefficients_multinoise(const DriveParams& drive, const BathSpec& bath,
                                               const TimeGrid& grid);
// Primed coefficients for a general loop; O(N^2).
CoefficientSet compute_coefficients_path(const PathSpec& path, const BathSpec& bath, const TimeGrid& grid,
                                         double B, PathFrame frame = PathFrame::dressed);

}  // namespace berrydeco
