// Univariate complex root finding (Aberth-Ehrlich iteration).
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "waring/scalar.hpp"

namespace waring {

struct RootResult {
    std::vector<CD> roots;      // finite roots of the polynomial
    int roots_at_infinity = 0;  // degree drop relative to the nominal degree
};

namespace detail {

inline CD horner(const std::vector<CD>& c, CD t, CD* deriv = nullptr) {
    CD v = 0, dv = 0;
    for (size_t k = c.size(); k-- > 0;) {
        dv = dv * t + v;
        v = v * t + c[k];
    }
    if (deriv) *deriv = dv;
    return v;
}

}  // namespace detail

/// Finds all complex roots of c[0] + c[1] t + ... + c[n] t^n.
///
/// `nominal_degree` is the degree the caller expected; if the actual degree
/// is lower (vanishing leading coefficients), the difference is reported as
/// roots at infinity.  Throws if the polynomial is identically zero.
inline RootResult find_roots(std::vector<CD> coeffs, int nominal_degree,
                             double tol = 1e-12, int max_iters = 200) {
    if ((int)coeffs.size() != nominal_degree + 1)
        coeffs.resize(nominal_degree + 1, CD(0));
    int deg = nominal_degree;
    while (deg > 0 && std::abs(coeffs[deg]) < 1e-14) --deg;
    RootResult out;
    out.roots_at_infinity = nominal_degree - deg;
    if (deg == 0) {
        if (std::abs(coeffs[0]) < 1e-14 && nominal_degree == 0)
            throw std::invalid_argument("find_roots: zero polynomial");
        return out;
    }
    coeffs.resize(deg + 1);

    // Initial guesses on a circle of radius given by the Cauchy bound.
    double maxc = 0;
    for (int k = 0; k < deg; ++k)
        maxc = std::max(maxc, std::abs(coeffs[k] / coeffs[deg]));
    double radius = 1.0 + maxc;
    std::vector<CD> z(deg);
    for (int k = 0; k < deg; ++k) {
        double theta = 2.0 * M_PI * k / deg + 0.4;  // avoid real-axis symmetry
        z[k] = radius * CD(std::cos(theta), std::sin(theta));
    }

    for (int it = 0; it < max_iters; ++it) {
        double worst = 0;
        for (int k = 0; k < deg; ++k) {
            CD dp;
            CD p = detail::horner(coeffs, z[k], &dp);
            if (std::abs(p) < tol) continue;
            CD ratio = p / dp;
            CD sum = 0;
            for (int j = 0; j < deg; ++j)
                if (j != k) sum += CD(1) / (z[k] - z[j]);
            CD delta = ratio / (CD(1) - ratio * sum);
            z[k] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < tol) break;
    }
    out.roots = std::move(z);
    return out;
}

}  // namespace waring
