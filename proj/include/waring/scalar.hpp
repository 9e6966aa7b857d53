// Scalar fields used throughout the library.
//
// Three scalar types are supported:
//   * Rat  -- exact arbitrary-precision rationals (all rank/kernel decisions),
//   * Fp   -- prime-field elements mod a configurable prime (genericity
//             sampling in the secant-dimension engine),
//   * CD   -- complex doubles (only downstream of root finding and
//             eigensolving, never in rank decisions).

#ifndef WARING_SCALAR_HPP
#define WARING_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace waring {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using CD = std::complex<double>;

// Largest prime below 2^31: the default modulus for prime-field scalars.
inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;
// First two primes above 2^31: the default moduli for the secant engine,
// which requires agreement across two distinct primes before reporting a
// defect.
inline constexpr std::uint64_t kSecantPrimeA = 2147483659ULL;
inline constexpr std::uint64_t kSecantPrimeB = 2147483693ULL;

// Prime-field element with canonical representative in [0, p).  The modulus
// travels with the value so that generic (templated) code can stay agnostic
// of the field; mixing moduli is a programming error and throws.
class Fp {
   public:
    Fp() : v_(0), p_(0) {}
    Fp(std::uint64_t value, std::uint64_t prime) : v_(value % prime), p_(prime) {}

    std::uint64_t value() const { return v_; }
    std::uint64_t prime() const { return p_; }

    friend Fp operator+(const Fp& a, const Fp& b) {
        std::uint64_t p = match(a, b);
        std::uint64_t s = a.v_ + b.v_;
        if (s >= p) s -= p;
        return raw(s, p);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        std::uint64_t p = match(a, b);
        return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + p - b.v_, p);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        std::uint64_t p = match(a, b);
        return raw(static_cast<std::uint64_t>(
                       (static_cast<unsigned __int128>(a.v_) * b.v_) % p),
                   p);
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
    Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }
    friend bool operator==(const Fp& a, const Fp& b) {
        return a.v_ == b.v_ && a.p_ == b.p_;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    Fp pow(std::uint64_t e) const {
        Fp r = raw(1 % p_, p_);
        Fp b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
    // Fermat inverse; valid because the modulus is prime.
    Fp inverse() const {
        if (v_ == 0) throw std::domain_error("Fp: division by zero");
        return pow(p_ - 2);
    }

    static Fp raw(std::uint64_t v, std::uint64_t p) {
        Fp x;
        x.v_ = v;
        x.p_ = p;
        return x;
    }

   private:
    static std::uint64_t match(const Fp& a, const Fp& b) {
        if (a.p_ != b.p_) throw std::invalid_argument("Fp: modulus mismatch");
        return a.p_;
    }
    std::uint64_t v_;
    std::uint64_t p_;
};

// --- uniform scalar interface used by the templated linear algebra ------- //

inline bool is_zero(const Rat& x) { return x.is_zero(); }
inline bool is_zero(const Fp& x) { return x.value() == 0; }
inline bool is_zero(const CD& x) { return x == CD(0.0, 0.0); }

// Build field constants "like" an existing element (needed because an Fp
// element must carry its modulus).
inline Rat zero_like(const Rat&) { return Rat(0); }
inline Rat one_like(const Rat&) { return Rat(1); }
inline Fp zero_like(const Fp& x) { return Fp::raw(0, x.prime()); }
inline Fp one_like(const Fp& x) { return Fp::raw(1 % x.prime(), x.prime()); }
inline CD zero_like(const CD&) { return CD(0.0, 0.0); }
inline CD one_like(const CD&) { return CD(1.0, 0.0); }

inline Rat from_int(const Int& n, const Rat&) { return Rat(n); }
inline Fp from_int(const Int& n, const Fp& proto) {
    Int p(proto.prime());
    Int r = n % p;
    if (r < 0) r += p;
    return Fp::raw(r.convert_to<std::uint64_t>(), proto.prime());
}
inline CD from_int(const Int& n, const CD&) { return CD(n.convert_to<double>(), 0.0); }

inline double to_double(const Rat& x) { return x.convert_to<double>(); }

inline std::string scalar_to_string(const Rat& x) { return x.str(); }
inline std::string scalar_to_string(const Fp& x) { return std::to_string(x.value()); }
inline std::string scalar_to_string(const CD& x) {
    return "(" + std::to_string(x.real()) + (x.imag() < 0 ? "" : "+") +
           std::to_string(x.imag()) + "i)";
}

// Continued-fraction reconstruction of a rational from a double.  Returns
// true and fills `out` when a fraction with denominator at most `max_den`
// approximates `x` within `tol`.  Used to turn numerically recovered
// decompositions back into exact ones before exact verification.
inline bool rational_reconstruct(double x, Rat& out, long max_den = 1000000,
                                 double tol = 1e-9) {
    if (!(x == x) || x > 1e15 || x < -1e15) return false;
    double v = x;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        if (fl > 9e17 || fl < -9e17) return false;
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::abs(approx - x) <= tol * std::max(1.0, std::abs(x))) {
            out = Rat(Int(p1), Int(q1));
            return true;
        }
        double frac = v - fl;
        if (frac < 1e-14) break;
        v = 1.0 / frac;
    }
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (q1 != 0 && std::abs(approx - x) <= tol * std::max(1.0, std::abs(x))) {
        out = Rat(Int(p1), Int(q1));
        return true;
    }
    return false;
}

}  // namespace waring

#endif  // WARING_SCALAR_HPP
