#pragma once

// Small scalar toolbox shared by the solver modules: bracketed 1D maximization,
// adaptive Simpson quadrature and compensated summation.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>

#include "spinwire/errors.hpp"

namespace spinwire {

struct ScalarMax {
    double x;
    double value;
};

// Golden-section search for the maximum of f on [a, b]. Assumes a single
// interior maximum; tol is the absolute width at which the bracket stops.
template <typename F>
ScalarMax golden_section_max(F&& f, double a, double b, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? ScalarMax{x1, f1} : ScalarMax{x2, f2};
}

namespace detail {

template <typename F>
double adaptive_simpson_step(F& f, double a, double m, double b, double fa, double fm,
                             double fb, double whole, double tol, int depth,
                             std::size_t& evals, std::size_t eval_cap) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    evals += 2;
    if (evals > eval_cap)
        throw QuadratureFailure("adaptive_simpson: evaluation cap exceeded");
    const double h6 = (b - a) / 12.0;
    const double left = h6 * (fa + 4.0 * flm + fm);
    const double right = h6 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth <= 0)
        throw QuadratureFailure("adaptive_simpson: subdivision depth exhausted");
    return adaptive_simpson_step(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                                 evals, eval_cap) +
           adaptive_simpson_step(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                                 evals, eval_cap);
}

}  // namespace detail

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 48,
                        std::size_t eval_cap = 50'000'000) {
    if (!(b > a)) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    std::size_t evals = 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_step(f, a, m, b, fa, fm, fb, whole, tol, max_depth,
                                         evals, eval_cap);
}

// Pairwise reduction; keeps roundoff growth at O(log n) so phasor sums with
// ~10^6 terms stay good to ~1e-12 relative.
template <typename T>
T pairwise_sum(std::span<const T> v) {
    const std::size_t n = v.size();
    if (n <= 64) {
        T acc{};
        T comp{};
        for (const T& x : v) {  // Kahan on the short base case
            T y = x - comp;
            T t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline std::complex<double> pairwise_sum(std::span<const std::complex<double>> v) {
    return pairwise_sum<std::complex<double>>(v);
}

}  // namespace spinwire
