// cubic.hpp: roots of a monic real cubic, with one Newton polish per root.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace rubin::special {

namespace detail {

inline std::complex<double> newton_polish(std::complex<double> x, double a, double b, double c) {
    // p(x) = x^3 + a x^2 + b x + c
    const std::complex<double> p = ((x + a) * x + b) * x + c;
    const std::complex<double> dp = (3.0 * x + 2.0 * a) * x + b;
    if (std::abs(dp) > 0.0) x -= p / dp;
    return x;
}

}  // namespace detail

// Roots of x^3 + a x^2 + b x + c = 0 with real coefficients. The returned set
// is exactly closed under conjugation: either three real roots or one real
// root plus a conjugate pair (stored as pair +imag then -imag).
inline std::array<std::complex<double>, 3> solve_cubic(double a, double b, double c) {
    // depressed form t^3 + p t + q, x = t - a/3
    const double ao3 = a / 3.0;
    const double p = b - a * ao3;
    const double q = c + ao3 * (2.0 * ao3 * ao3 - b);

    const double half_q = 0.5 * q;
    const double third_p = p / 3.0;
    const double disc = half_q * half_q + third_p * third_p * third_p;

    std::array<std::complex<double>, 3> roots;
    if (disc <= 0.0) {
        // three real roots, trigonometric form
        const double r = std::sqrt(-third_p);
        double cosarg = (r > 0.0) ? half_q / (r * r * r) : 0.0;
        cosarg = std::clamp(-cosarg, -1.0, 1.0);
        const double theta = std::acos(cosarg) / 3.0;
        constexpr double two_pi_3 = 2.0943951023931953;
        for (int k = 0; k < 3; ++k)
            roots[k] = 2.0 * r * std::cos(theta - k * two_pi_3) - ao3;
    } else {
        // one real root; pick the cube root avoiding cancellation
        const double s = std::sqrt(disc);
        const double u = std::cbrt(-half_q - std::copysign(s, q));
        const double v = (u != 0.0) ? -third_p / u : 0.0;
        const double t1 = u + v;
        const double re = -0.5 * t1;
        const double im = 0.5 * std::sqrt(3.0) * std::abs(u - v);
        roots[0] = t1 - ao3;
        roots[1] = std::complex<double>(re - ao3, im);
        roots[2] = std::complex<double>(re - ao3, -im);
    }

    for (auto& r : roots) r = detail::newton_polish(r, a, b, c);

    // restore exact conjugate closure after the polish
    if (roots[1].imag() != 0.0 || roots[2].imag() != 0.0) {
        const std::complex<double> mean =
            0.5 * (roots[1] + std::conj(roots[2]));
        roots[1] = mean;
        roots[2] = std::conj(mean);
        roots[0] = std::complex<double>(roots[0].real(), 0.0);
    } else {
        for (auto& r : roots) r = std::complex<double>(r.real(), 0.0);
    }
    return roots;
}

}  // namespace rubin::special
