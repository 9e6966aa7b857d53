// Monomial exponent vectors and the fixed lexicographic indexing used for
// every matrix row/column labeling in the library.

#ifndef WARING_MONOMIAL_HPP
#define WARING_MONOMIAL_HPP

#include "waring/scalar.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace waring {

// Exponent vector alpha = (alpha_0, ..., alpha_n).
using Mono = std::vector<int>;

inline int mono_degree(const Mono& m) {
    return std::accumulate(m.begin(), m.end(), 0);
}

// The library-wide total order on monomials of equal degree: x0-major
// lexicographic, i.e. (d,0,...,0) comes first.  This is the order in which
// all bases are enumerated, so matrices are bit-exactly reproducible.
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const {
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(),
                                            a.end());
    }
};

// All monomials of total degree d in `nvars` variables, in the fixed order.
inline std::vector<Mono> monomial_basis(int nvars, int d) {
    std::vector<Mono> out;
    Mono cur(nvars, 0);
    // Recursive descent: highest exponent on the earliest variable first.
    auto rec = [&](auto&& self, int var, int rem) -> void {
        if (var == nvars - 1) {
            cur[var] = rem;
            out.push_back(cur);
            return;
        }
        for (int e = rem; e >= 0; --e) {
            cur[var] = e;
            self(self, var + 1, rem - e);
        }
    };
    if (nvars <= 0) throw std::invalid_argument("monomial_basis: nvars <= 0");
    rec(rec, 0, d);
    return out;
}

// All monomials of total degree <= d, ordered by degree then lexicographically.
inline std::vector<Mono> monomial_basis_upto(int nvars, int d) {
    std::vector<Mono> out;
    for (int k = 0; k <= d; ++k) {
        auto level = monomial_basis(nvars, k);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

inline Mono mono_add(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

// True when a divides b, i.e. a <= b componentwise.
inline bool mono_divides(const Mono& a, const Mono& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Int factorial(int n) {
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// Multinomial coefficient d! / (alpha_0! ... alpha_n!).
inline Int multinomial_int(int d, const Mono& alpha) {
    if (mono_degree(alpha) != d)
        throw std::invalid_argument("multinomial: |alpha| != d");
    Int r = factorial(d);
    for (int e : alpha) r /= factorial(e);
    return r;
}

inline Int binomial_int(int n, int k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

// dim S_d in n+1 = nvars variables: C(nvars - 1 + d, nvars - 1).
inline long dim_forms(int nvars, int d) {
    return binomial_int(nvars - 1 + d, nvars - 1).convert_to<long>();
}

// Dense index of each basis monomial, for matrix labelings.
struct MonoIndex {
    std::vector<Mono> basis;
    std::map<Mono, int, MonoLess> index;

    explicit MonoIndex(std::vector<Mono> b) : basis(std::move(b)) {
        for (size_t i = 0; i < basis.size(); ++i)
            index.emplace(basis[i], static_cast<int>(i));
    }
    int at(const Mono& m) const {
        auto it = index.find(m);
        if (it == index.end())
            throw std::invalid_argument("MonoIndex: monomial not in basis");
        return it->second;
    }
    size_t size() const { return basis.size(); }
};

inline std::string mono_to_string(const Mono& m, const std::string& var = "x") {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        s += var + std::to_string(i);
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

}  // namespace waring

#endif  // WARING_MONOMIAL_HPP
