// A power-sum decomposition F = sum_j lambda_j * L_j^d, with the machinery
// shared by the binary and multivariate solvers: residual evaluation, the
// floating-point coefficient solve, and exact reconstruction of numeric
// output through rational rounding.
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "waring/apolarity.hpp"
#include "waring/poly.hpp"
#include "waring/scalar.hpp"

namespace waring {

struct Decomposition {
    int rank = 0;
    std::vector<Linear<CD>> points;
    std::vector<CD> lambdas;
    double residual = 0.0;  // max |coeff| error of the reconstruction

    // Filled in when the numeric solution rounds to an exact rational
    // certificate; `residual` is then exactly zero.
    bool exact = false;
    std::vector<Linear<Rat>> exact_points;
    std::vector<Rat> exact_lambdas;
};

/// Reconstructs sum_j lambda_j L_j^d as a complex polynomial.
inline Poly<CD> reconstruct(const std::vector<Linear<CD>>& points,
                            const std::vector<CD>& lambdas, int d) {
    Poly<CD> out((int)points.at(0).coeffs.size(), d);
    for (size_t j = 0; j < points.size(); ++j)
        out = poly_add(out, poly_scale(power_of_linear(points[j], d), lambdas[j]));
    return out;
}

/// Size of the largest coefficient, used to judge residuals relative to
/// the scale of the input form.
inline double coeff_scale(const Poly<CD>& f) {
    double s = 1.0;
    for (const auto& [m, c] : f.terms) s = std::max(s, std::abs(c));
    return s;
}

inline double max_coeff_error(const Poly<CD>& a, const Poly<CD>& b) {
    double worst = 0;
    auto diff = poly_sub(a, b);
    for (const auto& [m, c] : diff.terms) worst = std::max(worst, std::abs(c));
    return worst;
}

/// Least-squares solve for the lambdas given fixed points; returns the
/// residual of the resulting reconstruction.
inline double solve_lambdas(const Poly<CD>& f,
                            const std::vector<Linear<CD>>& points,
                            std::vector<CD>& lambdas) {
    auto basis = monomial_basis(f.nvars, f.deg);
    Eigen::MatrixXcd A(basis.size(), points.size());
    Eigen::VectorXcd b(basis.size());
    for (size_t r = 0; r < basis.size(); ++r) {
        b(r) = f.coeff(basis[r]);
        for (size_t j = 0; j < points.size(); ++j)
            A(r, j) = power_of_linear(points[j], f.deg).coeff(basis[r]);
    }
    // Equilibrate the columns: points far from the unit sphere give column
    // norms spanning many orders of magnitude, which defeats the pivoting.
    Eigen::VectorXd scale(points.size());
    for (size_t j = 0; j < points.size(); ++j) {
        double s = A.col(j).norm();
        scale(j) = (s > 0) ? s : 1.0;
        A.col(j) /= scale(j);
    }
    Eigen::VectorXcd x = A.colPivHouseholderQr().solve(b);
    for (size_t j = 0; j < points.size(); ++j) x(j) /= scale(j);
    lambdas.assign(x.data(), x.data() + x.size());
    return max_coeff_error(f, reconstruct(points, lambdas, f.deg));
}

/// Attempts to upgrade a numeric decomposition of a rational form to an
/// exact one: round each point coordinate to a small rational, then re-solve
/// the coefficients exactly.  On success the decomposition is certified with
/// residual exactly zero.
inline void try_exact_upgrade(const Poly<Rat>& f, Decomposition& dec) {
    std::vector<Linear<Rat>> pts;
    for (const auto& p : dec.points) {
        std::vector<Rat> c;
        for (CD z : p.coeffs) {
            Rat q;
            // Generous rounding tolerance: a wrong guess is rejected by the
            // exact verification below, never reported.
            if (std::abs(z.imag()) > 1e-6 ||
                !rational_reconstruct(z.real(), q, 1000000, 1e-6))
                return;
            c.push_back(q);
        }
        pts.emplace_back(c);
    }
    std::optional<std::vector<Rat>> lam;
    try {
        lam = verify_apolar_points(f, pts);
    } catch (const std::invalid_argument&) {
        return;  // rounded points collided; keep the numeric answer
    }
    if (!lam) return;
    dec.exact = true;
    dec.exact_points = std::move(pts);
    dec.exact_lambdas = *lam;
    dec.residual = 0.0;
    for (size_t j = 0; j < dec.points.size(); ++j) {
        for (size_t k = 0; k < dec.points[j].coeffs.size(); ++k)
            dec.points[j].coeffs[k] = to_double(dec.exact_points[j].coeffs[k]);
        dec.lambdas[j] = to_double(dec.exact_lambdas[j]);
    }
}

}  // namespace waring
