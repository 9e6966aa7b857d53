// Closed-form ranks and certified bounds: monomial ranks with explicit
// apolar decompositions, Ranestad-Schreyer and colon-ideal lower bounds,
// ambient upper bounds, reducible-cubic ranks, real binary monomial ranks,
// and the monomial Waring (forbidden) locus.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "waring/apolarity.hpp"
#include "waring/decomposition.hpp"
#include "waring/errors.hpp"
#include "waring/secant.hpp"

namespace waring {

// --------------------------------------------------------------------------
// Monomials
// --------------------------------------------------------------------------

/// Exact symmetric rank of x^alpha with all exponents positive:
/// prod(alpha_i + 1) / (alpha_min + 1).
inline long monomial_rank(const Mono& alpha) {
    if (alpha.empty()) throw std::invalid_argument("monomial_rank: empty exponent");
    for (int a : alpha)
        if (a < 1)
            throw std::invalid_argument(
                "monomial_rank: zero exponent; reduce to essential variables first");
    long prod = 1;
    int amin = *std::min_element(alpha.begin(), alpha.end());
    for (int a : alpha) prod *= a + 1;
    return prod / (amin + 1);
}

/// Explicit power-sum decomposition of x^alpha from the apolar complete
/// intersection (y_i^{a_i+1} - y_0^{a_i+1}, i >= 1) after sorting so the
/// smallest exponent sits first: the points are (1, zeta_1, ..., zeta_n)
/// over all tuples of (a_i+1)-th roots of unity, mapped back to the
/// original variable order.  Weights come from the least-squares solve and
/// the result is residual-verified.
inline Decomposition monomial_decomposition(const Mono& alpha, double tol = 1e-8) {
    long r = monomial_rank(alpha);  // validates exponents
    int n = (int)alpha.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return alpha[a] < alpha[b]; });

    // Enumerate root-of-unity tuples for the sorted exponents 1..n-1.
    std::vector<std::vector<CD>> roots(n);
    for (int i = 1; i < n; ++i) {
        int m = alpha[perm[i]] + 1;
        for (int j = 0; j < m; ++j) {
            double t = 2.0 * M_PI * j / m;
            roots[i].push_back(CD(std::cos(t), std::sin(t)));
        }
    }
    std::vector<Linear<CD>> points;
    std::vector<int> idx(n, 0);
    while (true) {
        std::vector<CD> c(n);
        c[perm[0]] = CD(1, 0);
        for (int i = 1; i < n; ++i) c[perm[i]] = roots[i][idx[i]];
        points.emplace_back(c);
        int i = n - 1;
        while (i >= 1 && ++idx[i] == (int)roots[i].size()) idx[i--] = 0;
        if (i < 1) break;
    }
    if ((long)points.size() != r)
        throw std::logic_error("monomial_decomposition: point count mismatch");

    Poly<Rat> f((int)alpha.size(), mono_degree(alpha));
    f.add_term(alpha, Rat(1));
    Decomposition dec;
    dec.rank = (int)r;
    dec.points = points;
    dec.residual = solve_lambdas(to_complex(f), dec.points, dec.lambdas);
    if (dec.residual > tol * coeff_scale(to_complex(f)))
        throw NumericFailure("monomial_decomposition: residual too large");
    try_exact_upgrade(f, dec);
    return dec;
}

// --------------------------------------------------------------------------
// Lower bounds
// --------------------------------------------------------------------------

/// Cactus-length lower bound ceil(length(A_F) / t), where t is the largest
/// degree of a minimal generator of the apolar ideal.
inline long ranestad_schreyer_lower(const Poly<Rat>& f) {
    if (f.is_zero()) throw std::invalid_argument("ranestad_schreyer_lower: zero form");
    long len = apolar_length(f);
    auto gens = minimal_generator_degrees(f);
    long t = gens.empty() ? 1 : gens.rbegin()->first;
    return (len + t - 1) / t;
}

namespace detail {

/// Sum over i of HF(R/((G o F)-perp + (G)), i), exactly.  Because
/// (F-perp : G) equals the apolar ideal of G o F, each graded piece is a
/// kernel-plus-multiples rank computation.
inline long colon_hf_sum(const Poly<Rat>& f, const Poly<Rat>& g) {
    if (g.is_zero()) throw std::invalid_argument("colon bound: zero dual form");
    if (g.deg > f.deg) return 0;
    Poly<Rat> gf = apolar_apply(g, f);
    if (gf.is_zero()) return 0;  // colon ideal is the unit ideal
    int n = f.nvars;
    long total = 0;
    for (int i = 0; i <= gf.deg; ++i) {
        MonoIndex cols(monomial_basis(n, i));
        std::vector<std::vector<Rat>> rows;
        for (const auto& b : apolar_slice(gf, i)) {
            std::vector<Rat> row(cols.size(), Rat(0));
            for (const auto& [m, c] : b.terms) row[cols.at(m)] = c;
            rows.push_back(std::move(row));
        }
        if (i >= g.deg) {
            for (const auto& m : monomial_basis(n, i - g.deg)) {
                Poly<Rat> xm(n, i - g.deg);
                xm.add_term(m, Rat(1));
                Poly<Rat> prod = poly_mul(g, xm);
                std::vector<Rat> row(cols.size(), Rat(0));
                for (const auto& [mm, c] : prod.terms) row[cols.at(mm)] = c;
                rows.push_back(std::move(row));
            }
        }
        total += (long)cols.size() - (long)span_rank(rows);
    }
    return total;
}

}  // namespace detail

/// Colon-ideal lower bound with a degree-e dual form G generating the
/// ideal: ceil((1/e) * sum_i HF(R/((F-perp : G) + (G)), i)).
inline long colon_lower(const Poly<Rat>& f, const Poly<Rat>& g) {
    long e = g.deg;
    if (e < 1) throw std::invalid_argument("colon_lower: deg G < 1");
    long s = detail::colon_hf_sum(f, g);
    return (s + e - 1) / e;
}

/// The e = 1 colon bound for a dual linear form ell.
inline long colon_e1_lower(const Poly<Rat>& f, const Linear<Rat>& ell) {
    if (ell.is_zero()) throw std::invalid_argument("colon_e1_lower: zero linear form");
    Poly<Rat> g(f.nvars, 1);
    for (int i = 0; i < f.nvars; ++i) {
        if (is_zero(ell.coeffs[i])) continue;
        Mono m(f.nvars, 0);
        m[i] = 1;
        g.add_term(m, ell.coeffs[i]);
    }
    return colon_lower(f, g);
}

/// Default choice of ell for a monomial: the dual of a variable with the
/// smallest exponent (the choice behind the closed-form monomial rank).
inline long colon_e1_lower(const Poly<Rat>& f) {
    Linear<Rat> ell(std::vector<Rat>(f.nvars, Rat(0)));
    if (f.terms.size() == 1) {
        const Mono& a = f.terms.begin()->first;
        int best = 0;
        for (int i = 1; i < f.nvars; ++i)
            if (a[i] > 0 && (a[best] == 0 || a[i] < a[best])) best = i;
        ell.coeffs[best] = Rat(1);
    } else {
        ell.coeffs[0] = Rat(1);
    }
    return colon_e1_lower(f, ell);
}

/// Largest catalecticant rank over all splittings: the classical flattening
/// lower bound for the border (hence the) rank.
inline long catalecticant_lower(const Poly<Rat>& f) {
    long best = 0;
    for (int i = 1; i <= f.deg / 2; ++i)
        best = std::max(best, (long)catalecticant_rank(f, i));
    return std::max(best, 1L);
}

// --------------------------------------------------------------------------
// Upper bounds
// --------------------------------------------------------------------------

struct UpperBounds {
    long landsberg_teitler = 0;           ///< C(n+d,d) - n
    std::optional<long> jelisiejew;       ///< C(n+d-1,d-1) - C(n+d-5,d-3), d >= 3
    long blekherman_teitler = 0;          ///< twice the generic rank
    long generic_rank = 0;                ///< from the Veronese classification
};

/// Ambient upper bounds on the rank of any degree-d form in n+1 variables.
inline UpperBounds upper_bounds(int n, int d) {
    if (n < 1 || d < 2) throw std::invalid_argument("upper_bounds: need n >= 1, d >= 2");
    UpperBounds b;
    b.landsberg_teitler = binomial_int(n + d, d).convert_to<long>() - n;
    if (d >= 3)
        b.jelisiejew = binomial_int(n + d - 1, d - 1).convert_to<long>() -
                       binomial_int(n + d - 5, d - 3).convert_to<long>();
    long N = dim_forms(n + 1, d) - 1;
    int s = 1;
    while (ah_oracle(n, d, s).dimension < N) ++s;
    b.generic_rank = s;
    b.blekherman_teitler = 2L * s;
    return b;
}

// --------------------------------------------------------------------------
// Reducible cubics
// --------------------------------------------------------------------------

/// Closed interval of ranks; lo == hi means the rank is known exactly.
struct RankInterval {
    long lo = 0;
    long hi = 0;
    bool exact() const { return lo == hi; }
};

/// Complex rank of the three canonical reducible cubics that are not
/// equivalent to a monomial:
///   kind 1: x0(x0^2 + x1^2 + ... + xn^2)        -> 2n
///   kind 2: x0(x1^2 + x2^2 + ... + xn^2)        -> 2n
///   kind 3: x0(x0 x1 + x2 x3 + x4^2 + ... + xn^2) -> 2n + 1
inline long reducible_cubic_rank(int kind, int n) {
    if (n < 2) throw std::invalid_argument("reducible_cubic_rank: n < 2");
    switch (kind) {
        case 1:
        case 2:
            return 2L * n;
        case 3:
            if (n < 3) throw std::invalid_argument("reducible_cubic_rank: kind 3 needs n >= 3");
            return 2L * n + 1;
        default:
            throw std::invalid_argument("reducible_cubic_rank: kind must be 1, 2 or 3");
    }
}

/// Real rank of the canonical real reducible cubics, as an interval.
///   kind 1: x0 * sum_{i=1..n} eps_i x_i^2 (eps has n signs)
///   kind 2: x0 * sum_{i=0..n} eps_i x_i^2 (eps has n+1 signs)
///   kind 3: (alpha x0 + x_p) * signature quadric -> [2n, 2n+3],
///           tightened to [2n+1, 2n+3] when alpha = +-1.
inline RankInterval real_reducible_cubic_rank(int kind, int n, const std::vector<int>& eps,
                                              const Rat& alpha = Rat(0)) {
    if (n < 2) throw std::invalid_argument("real_reducible_cubic_rank: n < 2");
    for (int e : eps)
        if (e != 1 && e != -1)
            throw std::invalid_argument("real_reducible_cubic_rank: signs must be +-1");
    switch (kind) {
        case 1: {
            if ((int)eps.size() != n)
                throw std::invalid_argument("real_reducible_cubic_rank: kind 1 needs n signs");
            long sum = std::accumulate(eps.begin(), eps.end(), 0L);
            if (sum == 0) return {2L * n, 2L * n};
            return {2L * n, 2L * n + 1};
        }
        case 2: {
            if ((int)eps.size() != n + 1)
                throw std::invalid_argument("real_reducible_cubic_rank: kind 2 needs n+1 signs");
            bool all_equal = std::all_of(eps.begin(), eps.end(),
                                         [&](int e) { return e == eps[0]; });
            if (all_equal) return {2L * n, 2L * n};
            bool tail_equal = std::all_of(eps.begin() + 1, eps.end(),
                                          [&](int e) { return e == eps[1]; });
            if (eps[0] != eps[1] && tail_equal) return {2L * n + 1, 2L * n + 1};
            return {2L * n, 2L * n + 1};
        }
        case 3: {
            if (is_zero(alpha))
                throw std::invalid_argument("real_reducible_cubic_rank: kind 3 needs alpha != 0");
            if (alpha == Rat(1) || alpha == Rat(-1)) return {2L * n + 1, 2L * n + 3};
            return {2L * n, 2L * n + 3};
        }
        default:
            throw std::invalid_argument("real_reducible_cubic_rank: kind must be 1, 2 or 3");
    }
}

// --------------------------------------------------------------------------
// Real monomial ranks and the Waring locus
// --------------------------------------------------------------------------

/// Real rank of the binary monomial x0^{a0} x1^{a1}: always a0 + a1.
inline long real_binary_monomial_rank(int a0, int a1) {
    if (a0 < 1 || a1 < 1)
        throw std::invalid_argument("real_binary_monomial_rank: exponents must be >= 1");
    return (long)a0 + a1;
}

/// Real and complex monomial ranks coincide exactly when the smallest
/// exponent is 1.
inline bool real_equals_complex(const Mono& alpha) {
    for (int a : alpha)
        if (a < 1) throw std::invalid_argument("real_equals_complex: zero exponent");
    return *std::min_element(alpha.begin(), alpha.end()) == 1;
}

/// Best known interval for the real rank of a monomial.  Binary monomials
/// are exact; the real rank of x0^2 x1^2 x2^2 is an open problem pinned
/// between 11 and 13, and other cases are not tabulated here.
inline RankInterval real_monomial_rank_interval(const Mono& alpha) {
    for (int a : alpha)
        if (a < 1) throw std::invalid_argument("real_monomial_rank_interval: zero exponent");
    if (alpha.size() == 2) {
        long r = real_binary_monomial_rank(alpha[0], alpha[1]);
        return {r, r};
    }
    if (alpha == Mono{2, 2, 2}) return {11, 13};
    if (real_equals_complex(alpha)) {
        long r = monomial_rank(alpha);
        return {r, r};
    }
    throw MethodInapplicable("real rank of this monomial is not tabulated");
}

/// Forbidden locus of a monomial with increasingly sorted exponents: the
/// union of the coordinate hyperplanes y_i = 0 for every index attaining
/// the minimal exponent.  Returns that index set {0..m}.
inline std::vector<int> monomial_waring_locus(const Mono& alpha) {
    if (alpha.empty()) throw std::invalid_argument("monomial_waring_locus: empty exponent");
    if (!std::is_sorted(alpha.begin(), alpha.end()))
        throw std::invalid_argument("monomial_waring_locus: exponents must be sorted increasing");
    if (alpha[0] < 1) throw std::invalid_argument("monomial_waring_locus: zero exponent");
    std::vector<int> out;
    for (size_t i = 0; i < alpha.size() && alpha[i] == alpha[0]; ++i) out.push_back((int)i);
    return out;
}

// --------------------------------------------------------------------------
// Aggregated bound reports
// --------------------------------------------------------------------------

struct BoundReport {
    std::vector<std::pair<std::string, long>> lower;
    std::vector<std::pair<std::string, long>> upper;
    std::optional<long> exact;

    long best_lower() const {
        long b = 0;
        for (const auto& [_, v] : lower) b = std::max(b, v);
        return b;
    }
    long best_upper() const {
        long b = -1;
        for (const auto& [_, v] : upper)
            if (b < 0 || v < b) b = v;
        return b;
    }
};

/// Assemble every applicable bound for a form; sets `exact` when the best
/// lower and upper bounds meet.
inline BoundReport rank_bounds(const Poly<Rat>& f) {
    if (f.is_zero()) throw std::invalid_argument("rank_bounds: zero form");
    BoundReport rep;
    rep.lower.emplace_back("catalecticant", catalecticant_lower(f));
    rep.lower.emplace_back("apolar length / max generator degree",
                           ranestad_schreyer_lower(f));
    rep.lower.emplace_back("colon ideal (e = 1)", colon_e1_lower(f));
    if (f.terms.size() == 1) {
        const Mono& a = f.terms.begin()->first;
        bool positive = std::all_of(a.begin(), a.end(), [](int e) { return e >= 1; });
        if (positive) rep.upper.emplace_back("monomial rank", monomial_rank(a));
    }
    int n = f.nvars - 1;
    if (n >= 1 && f.deg >= 2) {
        UpperBounds ub = upper_bounds(n, f.deg);
        rep.upper.emplace_back("ambient minus n", ub.landsberg_teitler);
        if (ub.jelisiejew) rep.upper.emplace_back("flattening count", *ub.jelisiejew);
        rep.upper.emplace_back("twice the generic rank", ub.blekherman_teitler);
    }
    if (rep.best_upper() >= 0 && rep.best_lower() == rep.best_upper())
        rep.exact = rep.best_lower();
    return rep;
}

}  // namespace waring
