// Sparse exact homogeneous polynomials over an exchangeable scalar field,
// linear forms, and the apolarity action.

#ifndef WARING_POLY_HPP
#define WARING_POLY_HPP

#include "waring/monomial.hpp"
#include "waring/scalar.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace waring {

// Homogeneous form of fixed degree: only nonzero coefficients are stored,
// every stored exponent vector has total degree `deg`.
template <class K>
struct Poly {
    int nvars = 0;
    int deg = 0;
    std::map<Mono, K, MonoLess> terms;

    Poly() = default;
    Poly(int nv, int d) : nvars(nv), deg(d) {}

    bool is_zero() const { return terms.empty(); }

    K coeff(const Mono& m) const {
        auto it = terms.find(m);
        if (it == terms.end()) {
            // A zero of the right field is only constructible from an
            // existing element; fall back to any stored term's prototype.
            if (!terms.empty()) return zero_like(terms.begin()->second);
            return K{};
        }
        return it->second;
    }

    void add_term(const Mono& m, const K& c) {
        if ((int)m.size() != nvars)
            throw std::invalid_argument("Poly: wrong exponent length");
        if (mono_degree(m) != deg)
            throw std::invalid_argument("Poly: term degree mismatch");
        auto it = terms.find(m);
        if (it == terms.end()) {
            if (!waring::is_zero(c)) terms.emplace(m, c);
        } else {
            it->second += c;
            if (waring::is_zero(it->second)) terms.erase(it);
        }
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars == b.nvars && a.deg == b.deg && a.terms == b.terms;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
};

// Linear form a_0 x_0 + ... + a_n x_n, stored by its coefficient vector.
template <class K>
struct Linear {
    std::vector<K> coeffs;

    Linear() = default;
    explicit Linear(std::vector<K> c) : coeffs(std::move(c)) {}
    int nvars() const { return (int)coeffs.size(); }
    bool is_zero() const {
        for (const auto& c : coeffs)
            if (!waring::is_zero(c)) return false;
        return true;
    }
};

template <class K>
Poly<K> poly_add(const Poly<K>& a, const Poly<K>& b) {
    if (a.nvars != b.nvars || a.deg != b.deg)
        throw std::invalid_argument("poly_add: shape mismatch");
    Poly<K> r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, c);
    return r;
}

template <class K>
Poly<K> poly_scale(const Poly<K>& a, const K& s) {
    Poly<K> r(a.nvars, a.deg);
    if (waring::is_zero(s)) return r;
    for (const auto& [m, c] : a.terms) r.add_term(m, c * s);
    return r;
}

template <class K>
Poly<K> poly_sub(const Poly<K>& a, const Poly<K>& b) {
    if (b.is_zero()) return a;
    K one = one_like(b.terms.begin()->second);
    return poly_add(a, poly_scale(b, zero_like(one) - one));
}

template <class K>
Poly<K> poly_mul(const Poly<K>& a, const Poly<K>& b) {
    if (a.nvars != b.nvars)
        throw std::invalid_argument("poly_mul: variable-count mismatch");
    Poly<K> r(a.nvars, a.deg + b.deg);
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) r.add_term(mono_add(ma, mb), ca * cb);
    return r;
}

// Multiply by a single variable x_i (used by Hankel shifts and ideal growth).
template <class K>
Poly<K> poly_mul_var(const Poly<K>& a, int i) {
    Poly<K> r(a.nvars, a.deg + 1);
    for (const auto& [m, c] : a.terms) {
        Mono m2 = m;
        m2[i] += 1;
        r.add_term(m2, c);
    }
    return r;
}

template <class K>
K poly_eval(const Poly<K>& f, const std::vector<K>& point) {
    if ((int)point.size() != f.nvars)
        throw std::invalid_argument("evaluate: point length mismatch");
    K proto = point.empty() ? K{} : point[0];
    K acc = zero_like(proto);
    for (const auto& [m, c] : f.terms) {
        K t = c;
        for (int i = 0; i < f.nvars; ++i)
            for (int e = 0; e < m[i]; ++e) t *= point[i];
        acc += t;
    }
    return acc;
}

template <class K>
K linear_eval(const Linear<K>& l, const std::vector<K>& point) {
    K acc = zero_like(l.coeffs[0]);
    for (size_t i = 0; i < l.coeffs.size(); ++i) acc += l.coeffs[i] * point[i];
    return acc;
}

// d! / (alpha_0! ... alpha_n!) as a field element; |alpha| must equal d.
template <class K>
K multinomial(int d, const Mono& alpha, const K& proto) {
    return from_int(multinomial_int(d, alpha), proto);
}

// L^d expanded with multinomial coefficients (the Veronese image of L).
template <class K>
Poly<K> power_of_linear(const Linear<K>& l, int d) {
    if (d < 1) throw std::invalid_argument("power_of_linear: d < 1");
    int nv = l.nvars();
    Poly<K> r(nv, d);
    for (const auto& alpha : monomial_basis(nv, d)) {
        K c = multinomial(d, alpha, l.coeffs[0]);
        bool zero = false;
        for (int i = 0; i < nv && !zero; ++i) {
            if (alpha[i] == 0) continue;
            if (waring::is_zero(l.coeffs[i])) {
                zero = true;
                break;
            }
            for (int e = 0; e < alpha[i]; ++e) c *= l.coeffs[i];
        }
        if (!zero) r.add_term(alpha, c);
    }
    return r;
}

// Apolarity action: G (in dual variables y) acts on F as a constant-
// coefficient differential operator,
//   y^alpha o x^beta = prod_i beta_i!/(beta_i - alpha_i)! x^(beta-alpha)
// when alpha <= beta, and 0 otherwise; extended bilinearly.
template <class K>
Poly<K> apolar_apply(const Poly<K>& g, const Poly<K>& f) {
    if (g.nvars != f.nvars)
        throw std::invalid_argument("apolar_apply: variable-count mismatch");
    if (g.deg > f.deg)
        throw std::invalid_argument("apolar_apply: deg G > deg F");
    Poly<K> r(f.nvars, f.deg - g.deg);
    for (const auto& [a, ca] : g.terms) {
        for (const auto& [b, cb] : f.terms) {
            if (!mono_divides(a, b)) continue;
            Int scale = 1;
            Mono diff(b.size());
            for (size_t i = 0; i < b.size(); ++i) {
                diff[i] = b[i] - a[i];
                for (int v = b[i]; v > diff[i]; --v) scale *= v;
            }
            r.add_term(diff, ca * cb * from_int(scale, cb));
        }
    }
    return r;
}

// --- field conversions ---------------------------------------------------- //

inline Poly<CD> to_complex(const Poly<Rat>& f) {
    Poly<CD> r(f.nvars, f.deg);
    for (const auto& [m, c] : f.terms) r.add_term(m, CD(to_double(c), 0.0));
    return r;
}

inline Poly<Fp> to_fp(const Poly<Rat>& f, std::uint64_t p) {
    Poly<Fp> r(f.nvars, f.deg);
    Fp proto = Fp::raw(0, p);
    for (const auto& [m, c] : f.terms) {
        Fp num = from_int(Int(numerator(c)), proto);
        Fp den = from_int(Int(denominator(c)), proto);
        if (waring::is_zero(den))
            throw std::domain_error("to_fp: denominator vanishes mod p");
        r.add_term(m, num / den);
    }
    return r;
}

// --- printing ------------------------------------------------------------- //

template <class K>
std::string poly_to_string(const Poly<K>& f, const std::string& var = "x") {
    if (f.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : f.terms) {
        std::string cs = scalar_to_string(c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) {
                os << "-";
                cs = cs.substr(1);
            }
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        first = false;
        std::string ms = mono_to_string(m, var);
        if (cs == "1" && ms != "1")
            os << ms;
        else if (ms == "1")
            os << cs;
        else
            os << cs << ms;
    }
    return os.str();
}

}  // namespace waring

#endif  // WARING_POLY_HPP
