// coefficients.cpp — Cumulative double integrals for n, m, l, k

#include "berrydeco/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "berrydeco/errors.hpp"
#include "berrydeco/quadrature.hpp"

namespace berrydeco {

TimeGrid TimeGrid::uniform(double t_max, std::size_t intervals) {
    if (!(t_max > 0.0)) throw ResolutionError("time grid: t_max must be positive");
    if (intervals < 2 || intervals % 2) throw ResolutionError("time grid: interval count must be even and >= 2");
    return {t_max, t_max / static_cast<double>(intervals), intervals + 1};
}

double TimeGrid::max_step(double B, double cutoff) {
    return std::min(M_PI / (20.0 * B), 1.0 / (20.0 * cutoff));
}

TimeGrid TimeGrid::resolving(double t_max, double B, double cutoff, std::size_t refine) {
    auto n = static_cast<std::size_t>(std::ceil(t_max / max_step(B, cutoff) - 1e-9));
    n = std::max<std::size_t>(n, 2) * std::max<std::size_t>(refine, 1);
    if (n % 2) ++n;
    return uniform(t_max, n);
}

void TimeGrid::check_resolution(double B, double cutoff) const {
    const double slack = 1.0 + 1e-12;
    if (step > slack * M_PI / (20.0 * B)) {
        throw ResolutionError("time grid too coarse: dt=" + std::to_string(step) +
                              " exceeds pi/(20 B)=" + std::to_string(M_PI / (20.0 * B)));
    }
    if (step > slack / (20.0 * cutoff)) {
        throw ResolutionError("time grid too coarse: dt=" + std::to_string(step) +
                              " exceeds 1/(20 cutoff)=" + std::to_string(1.0 / (20.0 * cutoff)));
    }
}

CoefficientValues CoefficientSet::at(double t) const {
    if (t <= 0.0) return at_index(0);
    const double u = t / grid.step;
    auto i = static_cast<std::size_t>(u);
    if (i >= grid.samples - 1) return final_values();
    const double f = u - static_cast<double>(i);
    auto lerp = [&](const std::vector<double>& v) { return (1.0 - f) * v[i] + f * v[i + 1]; };
    return {lerp(n), lerp(m), lerp(l), lerp(k)};
}

void CoefficientSet::write_csv(std::ostream& os) const {
    os << "# " << provenance << "\n";
    os << "t,n,m,l,k\n";
    char buf[160];
    for (std::size_t i = 0; i < grid.samples; ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g\n", grid.time(i), n[i], m[i], l[i], k[i]);
        os << buf;
    }
}

namespace {

struct Kernels {
    std::vector<double> re;        // Re kappa(t)
    std::vector<double> cos_re;    // cos(Bt) Re kappa
    std::vector<double> sin_re;    // sin(Bt) Re kappa
    std::vector<double> re_tilde;  // Re[exp(-iBt) kappa]
};

Kernels sample_kernels(const BathSpec& bath, const TimeGrid& grid, double B) {
    const std::size_t N = grid.samples;
    Kernels k{std::vector<double>(N), std::vector<double>(N), std::vector<double>(N), std::vector<double>(N)};
    for (std::size_t i = 0; i < N; ++i) {
        const double t = grid.time(i);
        const cplx kap = correlation(bath, t);
        const double c = std::cos(B * t), s = std::sin(B * t);
        k.re[i] = kap.real();
        k.cos_re[i] = c * kap.real();
        k.sin_re[i] = s * kap.real();
        k.re_tilde[i] = c * kap.real() + s * kap.imag();
    }
    return k;
}

std::vector<double> double_integral(const std::vector<double>& f, double h) {
    const auto inner = quad::cumulative_simpson(f, h);
    return quad::cumulative_simpson(inner, h);
}

// m(t) = scale * int_0^t dt1 exp(n(t1)) int_0^t1 Re kappa~.
std::vector<double> m_integral(const std::vector<double>& re_tilde, const std::vector<double>& n, double scale,
                               double h) {
    auto inner = quad::cumulative_simpson(re_tilde, h);
    for (std::size_t i = 0; i < inner.size(); ++i) inner[i] *= std::exp(n[i]);
    auto out = quad::cumulative_simpson(inner, h);
    for (double& v : out) v *= scale;
    return out;
}

std::string describe(const BathSpec& bath, const TimeGrid& grid) {
    std::ostringstream os;
    os.precision(12);
    os << "lambda=" << bath.lambda << " cutoff=" << bath.cutoff << " temperature=" << bath.temperature
       << " t_max=" << grid.t_max << " samples=" << grid.samples;
    return os.str();
}

}  // namespace

CoefficientSet compute_coefficients(double coupling_angle, double B, const BathSpec& bath, const TimeGrid& grid) {
    bath.validate();
    grid.check_resolution(B, bath.cutoff);
    const double h = grid.step;
    const Kernels ker = sample_kernels(bath, grid, B);
    const double s2 = std::pow(std::sin(coupling_angle), 2);
    const double c2 = std::pow(std::cos(coupling_angle), 2);

    const auto dc = double_integral(ker.cos_re, h);
    const auto ds = double_integral(ker.sin_re, h);
    const auto d0 = double_integral(ker.re, h);

    CoefficientSet out;
    out.grid = grid;
    const std::size_t N = grid.samples;
    out.n.resize(N);
    out.l.resize(N);
    out.k.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        out.n[i] = 4.0 * s2 * dc[i];
        out.l[i] = 4.0 * c2 * d0[i] + 2.0 * s2 * dc[i];
        out.k[i] = 2.0 * s2 * ds[i];
    }
    out.m = m_integral(ker.re_tilde, out.n, 2.0 * s2, h);
    std::ostringstream os;
    os.precision(12);
    os << "single-bath coupling_angle=" << coupling_angle << " B=" << B << " " << describe(bath, grid);
    out.provenance = os.str();
    return out;
}

CoefficientSet compute_coefficients(const DriveParams& drive, const BathSpec& bath, const TimeGrid& grid) {
    drive.validate();
    CoefficientSet out = compute_coefficients(frame_angles(drive).alpha, drive.B, bath, grid);
    std::ostringstream os;
    os.precision(12);
    os << "single-bath B=" << drive.B << " theta=" << drive.theta << " omega0=" << drive.omega0 << " "
       << describe(bath, grid);
    out.provenance = os.str();
    return out;
}

CoefficientSet compute_coefficients_multinoise(const DriveParams& drive, const BathSpec& bath,
                                               const TimeGrid& grid) {
    drive.validate();
    bath.validate();
    grid.check_resolution(drive.B, bath.cutoff);
    const double h = grid.step;
    const Kernels ker = sample_kernels(bath, grid, drive.B);
    const auto dc = double_integral(ker.cos_re, h);
    const auto ds = double_integral(ker.sin_re, h);
    const auto d0 = double_integral(ker.re, h);

    CoefficientSet out;
    out.grid = grid;
    const std::size_t N = grid.samples;
    out.n.resize(N);
    out.l.resize(N);
    out.k.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        out.n[i] = 4.0 * dc[i];
        out.l[i] = 4.0 * d0[i] + 2.0 * dc[i];
        out.k[i] = 2.0 * ds[i];
    }
    out.m = m_integral(ker.re_tilde, out.n, 2.0, h);
    out.provenance = "multi-noise B=" + std::to_string(drive.B) + " " + describe(bath, grid);
    return out;
}

CoefficientSet compute_coefficients_path(const PathSpec& path, const BathSpec& bath, const TimeGrid& grid,
                                         double B, PathFrame frame) {
    bath.validate();
    grid.check_resolution(B, bath.cutoff);
    const double h = grid.step;
    const std::size_t N = grid.samples;
    const Kernels ker = sample_kernels(bath, grid, B);

    std::vector<double> S(N), C(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double a = path_coupling_angle(path, B, grid.time(i), frame);
        S[i] = std::sin(a);
        C[i] = std::cos(a);
    }

    // Inner integrals over t2 in [0, t1], coupling angle evaluated at t1 - t2.
    std::vector<double> in_c(N), in_s(N), in_0(N), in_m(N);
    for (std::size_t j = 1; j < N; ++j) {
        double ac = 0, as = 0, a0 = 0, am = 0;
        for (std::size_t i = 0; i <= j; ++i) {
            const double w = quad::running_simpson_weight(i, j);
            if (w == 0.0) continue;
            const double sj = S[j - i];
            ac += w * sj * ker.cos_re[i];
            as += w * sj * ker.sin_re[i];
            a0 += w * C[j - i] * ker.re[i];
            am += w * sj * ker.re_tilde[i];
        }
        in_c[j] = h * ac * S[j];
        in_s[j] = h * as * S[j];
        in_0[j] = h * a0 * C[j];
        in_m[j] = h * am * S[j];
    }

    CoefficientSet out;
    out.grid = grid;
    const auto oc = quad::cumulative_simpson(in_c, h);
    const auto os_ = quad::cumulative_simpson(in_s, h);
    const auto o0 = quad::cumulative_simpson(in_0, h);
    out.n.resize(N);
    out.l.resize(N);
    out.k.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        out.n[i] = 4.0 * oc[i];
        out.l[i] = 4.0 * o0[i] + 2.0 * oc[i];
        out.k[i] = 2.0 * os_[i];
    }
    for (std::size_t i = 0; i < N; ++i) in_m[i] *= std::exp(out.n[i]);
    out.m = quad::cumulative_simpson(in_m, h);
    for (double& v : out.m) v *= 2.0;
    out.provenance = std::string("path ") + (frame == PathFrame::dressed ? "dressed" : "adiabatic") +
                     " B=" + std::to_string(B) + " " + describe(bath, grid);
    return out;
}

}  // namespace berrydeco
