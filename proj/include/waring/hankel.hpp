// Waring decomposition in three or more essential variables: truncated
// (quasi-)Hankel matrices of the dehomogenized form, multiplication
// operators, and their joint eigenvectors.  Restricted to the known-entry
// regime: every Hankel entry used, including the shifted matrices, must be
// a coefficient of f itself (no extension unknowns).
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "waring/apolarity.hpp"
#include "waring/decomposition.hpp"
#include "waring/errors.hpp"

namespace waring {

/// Dehomogenized coefficients of F with respect to x0: writing
/// f = F(1, x_1..x_n) = sum c_alpha * C(d; d-|alpha|, alpha) x^alpha,
/// stores h_alpha = c_alpha for every |alpha| <= d.  These are exactly the
/// normalized catalecticant entries of F.
inline std::map<Mono, Rat, MonoLess> hankel_coefficients(const Poly<Rat>& f) {
    std::map<Mono, Rat, MonoLess> h;
    for (const auto& alpha : monomial_basis_upto(f.nvars - 1, f.deg)) {
        Mono full(f.nvars - 1 + 1, 0);
        full[0] = f.deg - mono_degree(alpha);
        for (size_t i = 0; i < alpha.size(); ++i) full[i + 1] = alpha[i];
        h[alpha] = hcoeff(f, full, Rat(0));
    }
    return h;
}

/// Truncated Hankel matrix H^{B,B'}_{x^shift * f} with entries h_{a+b+shift};
/// entries of degree above d are unknown and masked out.
struct HankelSystem {
    int n = 0;  // affine variables
    int d = 0;
    std::vector<Mono> B, Bp;
    Matrix<Rat> m{0, 0, Rat(0)};
    std::vector<std::vector<bool>> known;

    bool all_known() const {
        for (const auto& row : known)
            for (bool k : row)
                if (!k) return false;
        return true;
    }
};

inline HankelSystem quasi_hankel(const std::map<Mono, Rat, MonoLess>& h, int n,
                                 int d, const std::vector<Mono>& B,
                                 const std::vector<Mono>& Bp,
                                 const Mono& shift) {
    HankelSystem sys;
    sys.n = n;
    sys.d = d;
    sys.B = B;
    sys.Bp = Bp;
    sys.m = Matrix<Rat>(B.size(), Bp.size(), Rat(0));
    sys.known.assign(B.size(), std::vector<bool>(Bp.size(), false));
    for (size_t i = 0; i < B.size(); ++i)
        for (size_t j = 0; j < Bp.size(); ++j) {
            Mono gamma = mono_add(mono_add(B[i], Bp[j]), shift);
            if (mono_degree(gamma) <= d) {
                sys.known[i][j] = true;
                sys.m.at(i, j) = h.at(gamma);
            }
        }
    return sys;
}

inline HankelSystem quasi_hankel(const Poly<Rat>& f, const std::vector<Mono>& B,
                                 const std::vector<Mono>& Bp) {
    return quasi_hankel(hankel_coefficients(f), f.nvars - 1, f.deg, B, Bp,
                        Mono(f.nvars - 1, 0));
}

/// Every element of B is 1 or a variable times another element of B.
inline bool connected_to_one(const std::vector<Mono>& B) {
    for (const auto& m : B) {
        if (mono_degree(m) == 0) continue;
        bool ok = false;
        for (size_t v = 0; v < m.size() && !ok; ++v) {
            if (m[v] == 0) continue;
            Mono prev = m;
            --prev[v];
            ok = std::find(B.begin(), B.end(), prev) != B.end();
        }
        if (!ok) return false;
    }
    return std::find(B.begin(), B.end(), Mono(B[0].size(), 0)) != B.end();
}

struct MultiplicationOperators {
    std::vector<Matrix<Rat>> M;  // one operator per affine variable
};

/// M_i = H_f^{-1} H_{x_i f}, with the pairwise commutation relations checked
/// in exact arithmetic.  Non-commutation means |B| is below the true rank
/// (or the form is outside the method's reach), so the caller should retry
/// with a larger candidate set.
inline MultiplicationOperators multiplication_operators(
    const Matrix<Rat>& h_f, const std::vector<Matrix<Rat>>& h_shifts) {
    Matrix<Rat> inv = inverse(h_f, Rat(0));  // throws std::domain_error if singular
    MultiplicationOperators ops;
    for (const auto& hs : h_shifts) ops.M.push_back(mat_mul(inv, hs, Rat(0)));
    for (size_t i = 0; i < ops.M.size(); ++i)
        for (size_t j = i + 1; j < ops.M.size(); ++j) {
            auto ab = mat_mul(ops.M[i], ops.M[j], Rat(0));
            auto ba = mat_mul(ops.M[j], ops.M[i], Rat(0));
            if (!(ab.a == ba.a))
                throw MethodInapplicable(
                    "multiplication operators do not commute at this size");
        }
    return ops;
}

namespace detail {

inline Eigen::MatrixXcd to_eigen(const Matrix<Rat>& m) {
    Eigen::MatrixXcd out(m.rows, m.cols);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j) out(i, j) = to_double(m.at(i, j));
    return out;
}

}  // namespace detail

/// Joint eigenvectors of the multiplication operators, returned as the
/// evaluation vectors (b(p))_{b in B}, normalized to first coordinate 1
/// (B must start with the monomial 1).  Each vector must satisfy the
/// multiplicative relations of B within tol.
inline std::vector<std::vector<CD>> joint_eigen(
    const MultiplicationOperators& ops, const Matrix<Rat>& h_f,
    const std::vector<Mono>& B, double tol = 1e-6) {
    size_t r = h_f.rows;
    Eigen::MatrixXcd hf = detail::to_eigen(h_f);
    std::mt19937_64 rng(0xBC3Eu);
    std::uniform_int_distribution<int> coef(1, 40);
    for (int attempt = 0; attempt < 6; ++attempt) {
        // Generic shift direction; the plain x_1 operator is tried first.
        Eigen::MatrixXcd ma = detail::to_eigen(ops.M[0]);
        if (attempt > 0) {
            ma.setZero();
            for (const auto& mi : ops.M)
                ma += double(coef(rng)) * detail::to_eigen(mi);
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(ma);
        if (es.info() != Eigen::Success)
            throw NumericFailure("joint_eigen: eigensolver failed");
        // All eigenvalues must be simple for the eigenvectors to be the
        // evaluations of distinct points.
        double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        bool simple = true;
        for (size_t i = 0; i < r; ++i)
            for (size_t j = i + 1; j < r; ++j)
                if (std::abs(es.eigenvalues()(i) - es.eigenvalues()(j)) <
                    1e-8 * scale)
                    simple = false;
        if (!simple) continue;

        std::vector<std::vector<CD>> points;
        for (size_t k = 0; k < r; ++k) {
            // The Hankel matrix maps the idempotent coordinates of the
            // eigenvector to (a multiple of) the evaluation vector.
            Eigen::VectorXcd w = hf * es.eigenvectors().col(k);
            if (std::abs(w(0)) < 1e-12 * w.norm())
                throw NumericFailure("joint_eigen: point at infinity");
            w /= w(0);
            points.emplace_back(w.data(), w.data() + w.size());
        }
        // Multiplicative consistency: b = x_v * b' with b' in B forces
        // w_b = w_{x_v} * w_{b'}.
        for (const auto& w : points) {
            double wscale = 0;
            for (const auto& c : w) wscale = std::max(wscale, std::abs(c));
            for (size_t i = 0; i < B.size(); ++i) {
                if (mono_degree(B[i]) < 2) continue;
                for (size_t v = 0; v < B[i].size(); ++v) {
                    if (B[i][v] == 0) continue;
                    Mono prev = B[i];
                    --prev[v];
                    auto it = std::find(B.begin(), B.end(), prev);
                    Mono xv(B[i].size(), 0);
                    xv[v] = 1;
                    auto itv = std::find(B.begin(), B.end(), xv);
                    if (it == B.end() || itv == B.end()) continue;
                    CD lhs = w[i];
                    CD rhs = w[it - B.begin()] * w[itv - B.begin()];
                    if (std::abs(lhs - rhs) > tol * std::max(1.0, wscale * wscale))
                        throw NumericFailure(
                            "joint_eigen: eigenvector fails the multiplicative "
                            "relations (degenerate decomposition)");
                }
            }
        }
        return points;
    }
    throw NumericFailure(
        "joint_eigen: repeated eigenvalues persist across random shifts");
}

namespace detail {

/// Candidate basis sets for a given size r: always contain {1, x_1..x_n},
/// extended by degree-graded choices of higher monomials, subject to the
/// known-entry condition |a| + |b| < d for all pairs, and connectedness.
/// At most `cap` sets are produced.
inline std::vector<std::vector<Mono>> candidate_bases(int n, int d, int r,
                                                      int cap = 200) {
    std::vector<std::vector<Mono>> out;
    std::vector<Mono> mandatory = monomial_basis_upto(n, 1);  // 1, x_1..x_n
    if (r < (int)mandatory.size()) return out;
    std::vector<Mono> extras;
    for (const auto& m : monomial_basis_upto(n, (d - 1) / 2))
        if (mono_degree(m) >= 2) extras.push_back(m);
    int k = r - (int)mandatory.size();
    if (k > (int)extras.size()) return out;

    auto admissible = [&](const std::vector<Mono>& B) {
        for (const auto& a : B)
            for (const auto& b : B)
                if (mono_degree(a) + mono_degree(b) >= d) return false;
        return connected_to_one(B);
    };
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while ((int)out.size() < cap) {
        std::vector<Mono> B = mandatory;
        for (int i : idx) B.push_back(extras[i]);
        if (admissible(B)) out.push_back(B);
        // next k-combination in lexicographic order
        int i = k - 1;
        while (i >= 0 && idx[i] == (int)extras.size() - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (k == 0 && out.empty() && admissible(mandatory)) out.push_back(mandatory);
    return out;
}

/// One decomposition attempt in fixed coordinates (all points are assumed
/// to have nonzero first coordinate); returns homogeneous complex points.
inline std::optional<std::vector<Linear<CD>>> hankel_points(
    const Poly<Rat>& f, int r, double tol) {
    int n = f.nvars - 1;
    auto h = hankel_coefficients(f);
    Mono zero_shift(n, 0);
    for (const auto& B : candidate_bases(n, f.deg, r)) {
        auto hf = quasi_hankel(h, n, f.deg, B, B, zero_shift);
        if (!hf.all_known()) continue;
        std::vector<Matrix<Rat>> shifts;
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) {
            Mono sh(n, 0);
            sh[v] = 1;
            auto hs = quasi_hankel(h, n, f.deg, B, B, sh);
            if (!hs.all_known()) ok = false;
            shifts.push_back(hs.m);
        }
        if (!ok) continue;
        try {
            auto ops = multiplication_operators(hf.m, shifts);
            auto evecs = joint_eigen(ops, hf.m, B, tol);
            std::vector<Linear<CD>> pts;
            for (const auto& w : evecs) {
                std::vector<CD> c(n + 1);
                c[0] = CD(1);
                // B starts with (1, x_1, ..., x_n) in this order.
                for (int v = 0; v < n; ++v) c[v + 1] = w[v + 1];
                pts.emplace_back(c);
            }
            return pts;
        } catch (const std::domain_error&) {  // singular H_f
        } catch (const MethodInapplicable&) {  // non-commuting
        } catch (const NumericFailure&) {      // degenerate eigenstructure
        }
    }
    return std::nullopt;
}

/// Shared search driver: try ranks r_lo..r_hi on F (already reduced to its
/// essential variables), retrying under random coordinate changes so that
/// every decomposition point has a nonzero first coordinate.
inline std::optional<Decomposition> hankel_search(const Poly<Rat>& f, int r_lo,
                                                  int r_hi, double tol) {
    int nv = f.nvars;
    std::mt19937_64 rng(0x4A11u);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (int change = 0; change < 6; ++change) {
        Matrix<Rat> a(nv, nv, Rat(0));
        if (change == 0) {
            for (int i = 0; i < nv; ++i) a.at(i, i) = Rat(1);
        } else {
            for (int i = 0; i < nv; ++i)
                for (int j = 0; j < nv; ++j) a.at(i, j) = Rat(coef(rng));
        }
        Matrix<Rat> ainv(nv, nv, Rat(0));
        try {
            ainv = inverse(a, Rat(0));
        } catch (const std::domain_error&) {
            continue;
        }
        auto g = substitute(f, a, Rat(0));
        for (int r = r_lo; r <= r_hi; ++r) {
            auto pts = hankel_points(g, r, tol);
            if (!pts) continue;
            // G(z) = F(Az), so the points of F are (A^{-1})^T q.
            Decomposition dec;
            dec.rank = r;
            for (const auto& q : *pts) {
                std::vector<CD> c(nv, CD(0));
                for (int i = 0; i < nv; ++i)
                    for (int j = 0; j < nv; ++j)
                        c[i] += to_double(ainv.at(j, i)) * q.coeffs[j];
                dec.points.emplace_back(c);
            }
            auto fc = to_complex(f);
            dec.residual = solve_lambdas(fc, dec.points, dec.lambdas);
            try_exact_upgrade(f, dec);
            if (!dec.exact && dec.residual > tol * coeff_scale(fc)) continue;
            return dec;
        }
    }
    return std::nullopt;
}

/// Maps a decomposition found for the essential-variable reduction back to
/// the original coordinates: f(x) = reduced(Mx) with M = basis_change^{-1}
/// truncated, so points transform by M^T.
inline Decomposition lift_decomposition(const Decomposition& red,
                                        const Matrix<Rat>& basis_change,
                                        int nvars, int m) {
    Matrix<Rat> inv = inverse(basis_change, Rat(0));
    Decomposition out = red;
    out.points.clear();
    for (const auto& q : red.points) {
        std::vector<CD> c(nvars, CD(0));
        for (int i = 0; i < nvars; ++i)
            for (int j = 0; j < m; ++j)
                c[i] += to_double(inv.at(j, i)) * q.coeffs[j];
        out.points.emplace_back(c);
    }
    out.exact = false;
    out.exact_points.clear();
    out.exact_lambdas.clear();
    return out;
}

}  // namespace detail

/// Waring decomposition via the Hankel/eigenvector pipeline, trying the
/// smallest admissible rank first.  Only the known-entry regime is
/// implemented: if no admissible basis B exists with every required Hankel
/// entry a coefficient of f, the search would need the unknown-entry
/// extension and an error is raised instead.
inline Decomposition bcmt_decompose(const Poly<Rat>& f, int r_max,
                                    double tol = 1e-8) {
    if (f.is_zero()) throw std::invalid_argument("bcmt_decompose: zero form");
    if (r_max < 1) throw std::invalid_argument("bcmt_decompose: r_max < 1");
    auto ev = essential_variables(f);
    if (ev.m == 1) {
        // F = c * L^d for the single essential direction.
        Mono pow(1, 0);
        pow[0] = f.deg;
        Rat c = ev.reduced.coeff(pow);
        Decomposition red;
        red.rank = 1;
        red.points.push_back(Linear<CD>({CD(1)}));
        red.lambdas.push_back(to_double(c));
        Decomposition dec =
            detail::lift_decomposition(red, ev.basis_change, f.nvars, 1);
        dec.residual = max_coeff_error(
            to_complex(f), reconstruct(dec.points, dec.lambdas, f.deg));
        try_exact_upgrade(f, dec);
        return dec;
    }
    // The rank is at least the number of essential variables, and point
    // recovery needs {x_1..x_n} inside B, so smaller ranks are skipped.
    auto red = detail::hankel_search(ev.reduced, ev.m, r_max, tol);
    if (!red)
        throw MethodInapplicable(
            "bcmt_decompose: no admissible known-entry basis up to the "
            "requested rank; requires Hankel extension");
    if (ev.m == f.nvars) return *red;
    Decomposition dec =
        detail::lift_decomposition(*red, ev.basis_change, f.nvars, ev.m);
    dec.residual = max_coeff_error(to_complex(f),
                                   reconstruct(dec.points, dec.lambdas, f.deg));
    try_exact_upgrade(f, dec);
    return dec;
}

/// Catalecticant method: the rank candidate is pinned to the rank of the
/// most square catalecticant, and the method fails explicitly when the
/// kernel scheme does not yield that many reduced points.
inline Decomposition catalecticant_decompose(const Poly<Rat>& f,
                                             double tol = 1e-8) {
    if (f.is_zero())
        throw std::invalid_argument("catalecticant_decompose: zero form");
    auto ev = essential_variables(f);
    if (ev.m < 3)
        throw MethodInapplicable(
            "catalecticant_decompose: fewer than 3 essential variables; use "
            "the binary suite");
    int m = (f.deg + 1) / 2;
    int r = (int)catalecticant_rank(ev.reduced, m);
    auto red = detail::hankel_search(ev.reduced, r, r, tol);
    if (!red)
        throw MethodInapplicable("catalecticant method inapplicable");
    if (ev.m == f.nvars) return *red;
    Decomposition dec =
        detail::lift_decomposition(*red, ev.basis_change, f.nvars, ev.m);
    dec.residual = max_coeff_error(to_complex(f),
                                   reconstruct(dec.points, dec.lambdas, f.deg));
    try_exact_upgrade(f, dec);
    return dec;
}

}  // namespace waring
