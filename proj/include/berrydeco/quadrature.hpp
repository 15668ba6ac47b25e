// quadrature.hpp — Composite and cumulative Simpson rules on uniform grids

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace berrydeco::quad {

// Composite Simpson of f over [a, b] with an even number of intervals.
template <class F>
auto simpson(F&& f, double a, double b, std::size_t intervals) {
    if (intervals < 2 || intervals % 2 != 0) {
        throw std::invalid_argument("simpson: interval count must be even and >= 2");
    }
    const double h = (b - a) / static_cast<double>(intervals);
    auto odd = f(a + h) * 0.0;
    auto even = odd;
    for (std::size_t i = 1; i < intervals; i += 2) odd += f(a + h * static_cast<double>(i));
    for (std::size_t i = 2; i < intervals; i += 2) even += f(a + h * static_cast<double>(i));
    return (f(a) + f(b) + 4.0 * odd + 2.0 * even) * (h / 3.0);
}

// Running primitive I[j] = integral of samples over [0, t_j].
// Even j: composite Simpson. Odd j: Simpson to j-1 plus a three-point
// quadratic rule on the last interval (forward when sample j+1 exists,
// backward at the final sample).
template <class T>
std::vector<T> cumulative_simpson(std::span<const T> f, double h) {
    const std::size_t n = f.size();
    std::vector<T> out(n, T{});
    if (n < 2) return out;
    if (n == 2) {
        out[1] = 0.5 * h * (f[0] + f[1]);
        return out;
    }
    for (std::size_t j = 2; j < n; j += 2) {
        out[j] = out[j - 2] + (h / 3.0) * (f[j - 2] + 4.0 * f[j - 1] + f[j]);
    }
    for (std::size_t j = 1; j < n; j += 2) {
        if (j + 1 < n) {
            out[j] = out[j - 1] + (h / 12.0) * (5.0 * f[j - 1] + 8.0 * f[j] - f[j + 1]);
        } else {
            out[j] = out[j - 1] + (h / 12.0) * (-f[j - 2] + 8.0 * f[j - 1] + 5.0 * f[j]);
        }
    }
    return out;
}

template <class T>
std::vector<T> cumulative_simpson(const std::vector<T>& f, double h) {
    return cumulative_simpson(std::span<const T>(f), h);
}

// Simpson weight of sample i when integrating samples 0..j (running endpoint j),
// matching the final-sample rule of cumulative_simpson. Multiply by h.
inline double running_simpson_weight(std::size_t i, std::size_t j) {
    if (j == 0) return 0.0;
    if (j == 1) return 0.5;
    const std::size_t even_end = (j % 2 == 0) ? j : j - 1;
    double w = 0.0;
    if (i <= even_end) {
        if (i == 0 || i == even_end) {
            w = 1.0 / 3.0;
        } else {
            w = (i % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
        }
    }
    if (even_end != j) {
        if (i == j - 2) w += -1.0 / 12.0;
        if (i == j - 1) w += 8.0 / 12.0;
        if (i == j) w += 5.0 / 12.0;
    }
    return w;
}

}  // namespace berrydeco::quad
