// Exact rank, border rank, and decomposition of binary forms, following
// the classical catalecticant-kernel approach: the border rank is the rank
// of the middle catalecticant, and the rank is decided by whether the
// apolar ideal contains a square-free form of that degree.
#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "waring/apolarity.hpp"
#include "waring/decomposition.hpp"
#include "waring/errors.hpp"
#include "waring/roots.hpp"

namespace waring {

struct RankCertificate {
    int border_rank = 0;
    int rank = 0;
    Poly<Rat> witness;            // the kernel element that decided the rank
    bool witness_squarefree = false;
};

/// Border rank of a binary form: the rank of the middle catalecticant.
inline int binary_border_rank(const Poly<Rat>& f) {
    if (f.nvars != 2)
        throw std::domain_error("binary_border_rank: need 2 variables");
    if (f.is_zero()) throw std::invalid_argument("binary_border_rank: zero form");
    return (int)catalecticant_rank(f, f.deg / 2);
}

namespace detail {

/// Coefficients of g(t) = G(1, t) for a binary form G, lowest degree first.
inline std::vector<Rat> dehomogenize_binary(const Poly<Rat>& g) {
    std::vector<Rat> c(g.deg + 1, Rat(0));
    for (const auto& [m, v] : g.terms) c[m[1]] = v;
    return c;
}

inline int poly_degree(const std::vector<Rat>& c) {
    for (int k = (int)c.size() - 1; k >= 0; --k)
        if (!is_zero(c[k])) return k;
    return -1;
}

/// Univariate gcd over the rationals (Euclidean algorithm).
inline std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b) {
    while (poly_degree(b) >= 0) {
        int db = poly_degree(b);
        while (poly_degree(a) >= db) {
            int da = poly_degree(a);
            Rat q = a[da] / b[db];
            for (int k = 0; k <= db; ++k) a[da - db + k] -= q * b[k];
            a.resize(da);  // leading term cancelled exactly
            if (a.empty()) a.push_back(Rat(0));
        }
        std::swap(a, b);
    }
    a.resize(std::max(poly_degree(a) + 1, 1));
    return a;
}

}  // namespace detail

/// Whether a binary form has distinct projective roots.  The root at (0,1)
/// is accounted for via the degree drop of G(1,t).
inline bool squarefree(const Poly<Rat>& g) {
    if (g.nvars != 2) throw std::domain_error("squarefree: need 2 variables");
    if (g.is_zero()) throw std::invalid_argument("squarefree: zero form");
    auto c = detail::dehomogenize_binary(g);
    int drop = g.deg - detail::poly_degree(c);
    if (drop >= 2) return false;  // (0,1) is a multiple root
    if (detail::poly_degree(c) <= 0) return true;  // a power of x1 alone, drop <= 1
    std::vector<Rat> dc(c.size() - 1, Rat(0));
    for (size_t k = 1; k < c.size(); ++k) dc[k - 1] = Rat((long)k) * c[k];
    return detail::poly_degree(detail::poly_gcd(c, dc)) <= 0;
}

namespace detail {

/// Searches the span of `slice` for a square-free member: a handful of
/// random small-integer combinations, then an exhaustive sweep over basis
/// elements and pairwise combinations.
inline std::optional<Poly<Rat>> squarefree_in_span(
    const std::vector<Poly<Rat>>& slice, std::mt19937_64& rng) {
    if (slice.empty()) return std::nullopt;
    std::uniform_int_distribution<int> coef(-10, 10);
    for (int attempt = 0; attempt < 5; ++attempt) {
        Poly<Rat> g(slice[0].nvars, slice[0].deg);
        for (const auto& b : slice) g = poly_add(g, poly_scale(b, Rat(coef(rng))));
        if (!g.is_zero() && squarefree(g)) return g;
    }
    for (const auto& b : slice)
        if (squarefree(b)) return b;
    for (size_t i = 0; i < slice.size(); ++i)
        for (size_t j = i + 1; j < slice.size(); ++j)
            for (int s : {1, -1, 2, -2}) {
                auto g = poly_add(slice[i], poly_scale(slice[j], Rat(s)));
                if (!g.is_zero() && squarefree(g)) return g;
            }
    return std::nullopt;
}

}  // namespace detail

/// Rank of a binary form of degree d: with r the border rank, the rank is
/// r when the degree-r part of the apolar ideal contains a square-free
/// form, and d - r + 2 otherwise.
inline RankCertificate binary_rank(const Poly<Rat>& f) {
    RankCertificate cert;
    cert.border_rank = binary_border_rank(f);
    std::mt19937_64 rng(0x5751u);
    auto sl = apolar_slice(f, cert.border_rank);
    if (auto g = detail::squarefree_in_span(sl, rng)) {
        cert.rank = cert.border_rank;
        cert.witness = *g;
        cert.witness_squarefree = true;
    } else {
        cert.rank = f.deg - cert.border_rank + 2;
        cert.witness = sl.empty() ? Poly<Rat>(2, cert.border_rank) : sl[0];
        cert.witness_squarefree = false;
    }
    return cert;
}

/// Projective roots of a binary dual form, as linear forms (a x0 + b x1):
/// finite roots t of G(1,t) give (1, t), the degree drop gives (0, 1).
inline std::vector<Linear<CD>> univariate_complex_roots(const Poly<Rat>& g,
                                                        double tol = 1e-12) {
    auto c = detail::dehomogenize_binary(g);
    std::vector<CD> cd(c.size());
    for (size_t k = 0; k < c.size(); ++k) cd[k] = CD(to_double(c[k]), 0);
    auto rr = find_roots(cd, g.deg, tol);
    std::vector<Linear<CD>> pts;
    for (CD t : rr.roots) pts.push_back(Linear<CD>({CD(1), t}));
    for (int k = 0; k < rr.roots_at_infinity; ++k)
        pts.push_back(Linear<CD>({CD(0), CD(1)}));
    return pts;
}

/// Minimal Waring decomposition of a binary form: find the smallest degree
/// whose apolar slice contains a square-free form, take its roots as the
/// points, and solve the Vandermonde-type system for the coefficients.
inline Decomposition binary_decompose(const Poly<Rat>& f, double tol = 1e-8) {
    auto cert = binary_rank(f);
    Poly<Rat> g = cert.witness;
    if (!cert.witness_squarefree) {
        std::mt19937_64 rng(0x5751u);
        auto found = detail::squarefree_in_span(apolar_slice(f, cert.rank), rng);
        if (!found)
            throw std::runtime_error(
                "binary_decompose: no square-free apolar form found");
        g = *found;
    }
    Decomposition dec;
    dec.rank = cert.rank;
    dec.points = univariate_complex_roots(g);
    auto fc = to_complex(f);
    dec.residual = solve_lambdas(fc, dec.points, dec.lambdas);
    try_exact_upgrade(f, dec);
    if (!dec.exact && dec.residual > tol * coeff_scale(fc))
        throw NumericFailure("binary_decompose: residual above tolerance");
    return dec;
}

/// Rank of a form of border rank at most two (any number of variables):
/// reduce to the essential variables, then apply the binary algorithm.
/// Returns nothing when the form does not lie on the second secant variety.
inline std::optional<RankCertificate> sigma2_rank(const Poly<Rat>& f) {
    auto ev = essential_variables(f);
    if (ev.m == 1) {
        RankCertificate cert;
        cert.border_rank = cert.rank = 1;
        cert.witness_squarefree = true;
        return cert;
    }
    if (ev.m != 2) return std::nullopt;  // not on the second secant variety
    return binary_rank(ev.reduced);
}

}  // namespace waring
