// Catalecticant matrices, apolar-ideal slices, Hilbert functions, essential
// variables, apolarity-lemma verification, and minimal generator degrees.
//
// Catalecticant convention: we store the normalized (Hankel) entries
//   entry(alpha, beta) = h_{alpha+beta},   h_gamma = coeff(F, x^gamma) / (d; gamma)
// with rows labeled by dual monomials of degree i and columns by monomials of
// degree d-i.  This is the matrix printed in the classical examples; it
// differs from the raw derivative matrix of G -> G o F only by the nonzero
// column scaling d!/beta!, so ranks and kernels coincide.

#ifndef WARING_APOLARITY_HPP
#define WARING_APOLARITY_HPP

#include "waring/linalg.hpp"
#include "waring/poly.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace waring {

// Normalized coefficient h_gamma of F.
template <class K>
K hcoeff(const Poly<K>& f, const Mono& gamma, const K& proto) {
    auto it = f.terms.find(gamma);
    if (it == f.terms.end()) return zero_like(proto);
    return it->second / multinomial(f.deg, gamma, proto);
}

template <class K>
struct Catalecticant {
    int i = 0;                 // derivative order (row degree)
    int d = 0;                 // degree of the form
    std::vector<Mono> rows;    // dual monomials of degree i
    std::vector<Mono> cols;    // monomials of degree d - i
    Matrix<K> m;
};

template <class K>
Catalecticant<K> catalecticant(const Poly<K>& f, int i, const K& proto) {
    if (i < 0 || i > f.deg)
        throw std::invalid_argument("catalecticant: i out of range");
    Catalecticant<K> c;
    c.i = i;
    c.d = f.deg;
    c.rows = monomial_basis(f.nvars, i);
    c.cols = monomial_basis(f.nvars, f.deg - i);
    c.m = Matrix<K>(c.rows.size(), c.cols.size(), zero_like(proto));
    for (size_t r = 0; r < c.rows.size(); ++r)
        for (size_t j = 0; j < c.cols.size(); ++j)
            c.m.at(r, j) = hcoeff(f, mono_add(c.rows[r], c.cols[j]), proto);
    return c;
}

inline Catalecticant<Rat> catalecticant(const Poly<Rat>& f, int i) {
    return catalecticant(f, i, Rat(0));
}

template <class K>
size_t catalecticant_rank(const Poly<K>& f, int i, const K& proto) {
    return rank(catalecticant(f, i, proto).m);
}

inline size_t catalecticant_rank(const Poly<Rat>& f, int i) {
    return catalecticant_rank(f, i, Rat(0));
}

// Degree-i slice of the apolar ideal: a basis (in dual variables) of
// ker(Cat_{i,d-i}), i.e. all degree-i dual forms annihilating F.  The basis
// is the RREF kernel basis over the lexicographic monomial order.
template <class K>
std::vector<Poly<K>> apolar_slice(const Poly<K>& f, int i, const K& proto) {
    auto c = catalecticant(f, i, proto);
    // The condition sum_alpha g_alpha h_{alpha+beta} = 0 for all beta is the
    // null space of the transposed layout (rows beta, columns alpha).
    Matrix<K> t(c.cols.size(), c.rows.size(), zero_like(proto));
    for (size_t r = 0; r < c.m.rows; ++r)
        for (size_t j = 0; j < c.m.cols; ++j) t.at(j, r) = c.m.at(r, j);
    auto vecs = kernel_basis(std::move(t), proto);
    std::vector<Poly<K>> out;
    for (const auto& v : vecs) {
        Poly<K> g(f.nvars, i);
        for (size_t k = 0; k < v.size(); ++k) g.add_term(c.rows[k], v[k]);
        out.push_back(std::move(g));
    }
    return out;
}

inline std::vector<Poly<Rat>> apolar_slice(const Poly<Rat>& f, int i) {
    return apolar_slice(f, i, Rat(0));
}

// HF(A_F, i) for i = 0..d, each equal to rank Cat_{i,d-i}(F).
template <class K>
std::vector<long> hilbert_function(const Poly<K>& f, const K& proto) {
    if (f.is_zero()) throw std::invalid_argument("hilbert_function: zero form");
    std::vector<long> hf(f.deg + 1, 0);
    for (int i = 0; i <= f.deg; ++i)
        hf[i] = (long)catalecticant_rank(f, i, proto);
    return hf;
}

inline std::vector<long> hilbert_function(const Poly<Rat>& f) {
    return hilbert_function(f, Rat(0));
}

// Sum of the Hilbert function values: the length of the Artinian Gorenstein
// quotient A_F (socle degree d, so nothing exists beyond degree d).
template <class K>
long apolar_length(const Poly<K>& f, const K& proto) {
    long s = 0;
    for (long v : hilbert_function(f, proto)) s += v;
    return s;
}

inline long apolar_length(const Poly<Rat>& f) { return apolar_length(f, Rat(0)); }

// Substitute x = M z into F: each variable x_i becomes the linear form given
// by row i of M (M is nvars x new_nvars).
template <class K>
Poly<K> substitute(const Poly<K>& f, const Matrix<K>& m, const K& proto) {
    if (m.rows != (size_t)f.nvars)
        throw std::invalid_argument("substitute: row count != nvars");
    int nv = (int)m.cols;
    Poly<K> acc(nv, f.deg);
    for (const auto& [mono, c] : f.terms) {
        Poly<K> term(nv, 0);
        term.add_term(Mono(nv, 0), c);
        bool vanished = false;
        for (int i = 0; i < f.nvars && !vanished; ++i) {
            if (mono[i] == 0) continue;
            std::vector<K> row(nv, zero_like(proto));
            for (int j = 0; j < nv; ++j) row[j] = m.at(i, j);
            Linear<K> li(row);
            if (li.is_zero()) {
                vanished = true;
                break;
            }
            term = poly_mul(term, power_of_linear(li, mono[i]));
        }
        if (!vanished) acc = poly_add(acc, term);
    }
    return acc;
}

template <class K>
struct EssentialVariables {
    int m = 0;                // number of essential variables
    Matrix<K> basis_change;   // invertible substitution: x = basis_change * z
    Poly<K> reduced;          // F in m variables: F(basis_change * z)
};

// Number of essential variables = rank Cat_{1,d-1}(F).  The substitution
// matrix is built so that its last n+1-m columns span the degree-1 apolar
// slice; after substituting, F involves only the first m new variables.
template <class K>
EssentialVariables<K> essential_variables(const Poly<K>& f, const K& proto) {
    if (f.is_zero()) throw std::invalid_argument("essential_variables: zero form");
    int nv = f.nvars;
    auto ker = apolar_slice(f, 1, proto);  // dual linear forms killing F
    int m = nv - (int)ker.size();

    // Columns: first greedily chosen unit vectors (completing to a basis),
    // then the kernel vectors.
    auto lin_basis = monomial_basis(nv, 1);
    std::vector<std::vector<K>> kervecs;
    for (const auto& g : ker) {
        std::vector<K> v(nv, zero_like(proto));
        for (size_t k = 0; k < lin_basis.size(); ++k) v[k] = g.coeff(lin_basis[k]);
        kervecs.push_back(std::move(v));
    }
    std::vector<std::vector<K>> chosen;  // unit columns
    for (int i = 0; i < nv && (int)chosen.size() < m; ++i) {
        std::vector<K> e(nv, zero_like(proto));
        e[i] = one_like(proto);
        auto trial = chosen;
        trial.push_back(e);
        for (const auto& kv : kervecs) trial.push_back(kv);
        if (span_rank(trial) == chosen.size() + kervecs.size() + 1)
            chosen.push_back(std::move(e));
    }
    if ((int)chosen.size() != m)
        throw std::logic_error("essential_variables: basis completion failed");

    Matrix<K> bc(nv, nv, zero_like(proto));
    for (int j = 0; j < nv; ++j) {
        const auto& col = (j < m) ? chosen[j] : kervecs[j - m];
        for (int i = 0; i < nv; ++i) bc.at(i, j) = col[i];
    }

    Poly<K> g = substitute(f, bc, proto);
    // Truncate to the first m variables; all others must have vanished.
    Poly<K> red(m, f.deg);
    for (const auto& [mono, c] : g.terms) {
        for (int i = m; i < nv; ++i)
            if (mono[i] != 0)
                throw std::logic_error("essential_variables: reduction failed");
        Mono mm(mono.begin(), mono.begin() + m);
        red.add_term(mm, c);
    }
    return EssentialVariables<K>{m, std::move(bc), std::move(red)};
}

inline EssentialVariables<Rat> essential_variables(const Poly<Rat>& f) {
    return essential_variables(f, Rat(0));
}

// Exact membership test F in span{L_i^d}: returns the coefficients lambda
// with F = sum lambda_i L_i^d when the linear system is consistent.
template <class K>
std::optional<std::vector<K>> verify_apolar_points(
    const Poly<K>& f, const std::vector<Linear<K>>& points, const K& proto) {
    // Pairwise non-proportionality.
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j) {
            std::vector<std::vector<K>> pair{points[i].coeffs, points[j].coeffs};
            if (span_rank(pair) < 2)
                throw std::invalid_argument(
                    "verify_apolar_points: proportional points");
        }
    auto basis = monomial_basis(f.nvars, f.deg);
    MonoIndex idx(basis);
    Matrix<K> a(basis.size(), points.size(), zero_like(proto));
    for (size_t j = 0; j < points.size(); ++j) {
        auto pd = power_of_linear(points[j], f.deg);
        for (const auto& [m, c] : pd.terms) a.at(idx.at(m), j) = c;
    }
    std::vector<K> b(basis.size(), zero_like(proto));
    for (const auto& [m, c] : f.terms) b[idx.at(m)] = c;
    std::vector<K> x;
    if (!solve_linear(std::move(a), std::move(b), x, proto)) return std::nullopt;
    return x;
}

inline std::optional<std::vector<Rat>> verify_apolar_points(
    const Poly<Rat>& f, const std::vector<Linear<Rat>>& points) {
    return verify_apolar_points(f, points, Rat(0));
}

// Counts of minimal generators of the apolar ideal per degree: new
// generators in degree i = dim (F^perp)_i - dim (R_1 * (F^perp)_{i-1})_i.
// Degrees run up to d+1 (the whole of R_{d+1} lies in F^perp).
template <class K>
std::map<int, long> minimal_generator_degrees(const Poly<K>& f, const K& proto) {
    if (f.is_zero())
        throw std::invalid_argument("minimal_generator_degrees: zero form");
    int nv = f.nvars, d = f.deg;
    std::map<int, long> out;
    std::vector<Poly<K>> prev;  // basis of (F^perp)_{i-1}
    for (int i = 1; i <= d + 1; ++i) {
        long dim_i;
        std::vector<Poly<K>> cur;
        if (i <= d) {
            cur = apolar_slice(f, i, proto);
            dim_i = (long)cur.size();
        } else {
            dim_i = dim_forms(nv, i);  // socle degree d: everything above dies
        }
        // dim of R_1 * (F^perp)_{i-1} inside R_i.
        MonoIndex idx(monomial_basis(nv, i));
        std::vector<std::vector<K>> grown;
        for (const auto& g : prev)
            for (int v = 0; v < nv; ++v) {
                auto gv = poly_mul_var(g, v);
                std::vector<K> vec(idx.size(), zero_like(proto));
                for (const auto& [m, c] : gv.terms) vec[idx.at(m)] = c;
                grown.push_back(std::move(vec));
            }
        long grown_dim = (long)span_rank(grown);
        if (dim_i - grown_dim > 0) out[i] = dim_i - grown_dim;
        if (i <= d)
            prev = std::move(cur);
        else
            prev.clear();
    }
    return out;
}

inline std::map<int, long> minimal_generator_degrees(const Poly<Rat>& f) {
    return minimal_generator_degrees(f, Rat(0));
}

// CSV export of a catalecticant (row/column labels are exponent tuples).
template <class K>
std::string catalecticant_csv(const Catalecticant<K>& c) {
    std::ostringstream os;
    auto label = [](const Mono& m) {
        std::string s = "(";
        for (size_t i = 0; i < m.size(); ++i)
            s += (i ? " " : "") + std::to_string(m[i]);
        return s + ")";
    };
    os << "alpha\\beta";
    for (const auto& col : c.cols) os << "," << label(col);
    os << "\n";
    for (size_t r = 0; r < c.rows.size(); ++r) {
        os << label(c.rows[r]);
        for (size_t j = 0; j < c.cols.size(); ++j)
            os << "," << scalar_to_string(c.m.at(r, j));
        os << "\n";
    }
    return os.str();
}

}  // namespace waring

#endif  // WARING_APOLARITY_HPP
