// Closed-form ranks and certified bounds: monomials, colon-ideal and
// Ranestad-Schreyer lower bounds, ambient upper bounds, reducible cubics,
// real monomial ranks, and the monomial forbidden locus.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "waring/bounds.hpp"
#include "waring/parse.hpp"
#include "waring/sylvester.hpp"

using namespace waring;

namespace {

Poly<Rat> monomial_form(const Mono& alpha) {
    Poly<Rat> f((int)alpha.size(), mono_degree(alpha));
    f.add_term(alpha, Rat(1));
    return f;
}

// Enumerate all exponent vectors with entries >= 1, given length and total.
void all_monomials(int len, int total, Mono& cur, std::vector<Mono>& out) {
    if (len == 1) {
        if (total >= 1) {
            cur.push_back(total);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int e = 1; e <= total - (len - 1); ++e) {
        cur.push_back(e);
        all_monomials(len - 1, total - e, cur, out);
        cur.pop_back();
    }
}

}  // namespace

TEST_CASE("monomial rank formula") {
    CHECK(monomial_rank({1, 1, 1}) == 4);
    CHECK(monomial_rank({1, 2, 3}) == 12);
    CHECK(monomial_rank({2, 2, 2}) == 9);
    CHECK(monomial_rank({3, 2, 1}) == 12);  // order-independent
    CHECK(monomial_rank({1, 1}) == 2);
    CHECK(monomial_rank({5}) == 1);
    CHECK_THROWS_AS(monomial_rank({0, 2}), std::invalid_argument);
}

TEST_CASE("explicit monomial decompositions") {
    SUBCASE("x0 x1: the classical two-point identity") {
        auto dec = monomial_decomposition({1, 1});
        CHECK(dec.rank == 2);
        CHECK(dec.exact);
        CHECK(dec.residual == 0.0);
    }
    SUBCASE("x0 x1 x2 needs four sign points") {
        auto dec = monomial_decomposition({1, 1, 1});
        CHECK(dec.rank == 4);
        CHECK(dec.residual <= 1e-8);
    }
    SUBCASE("x0 x1^2 x2^3 needs twelve root-of-unity points") {
        auto dec = monomial_decomposition({1, 2, 3});
        CHECK(dec.rank == 12);
        CHECK(dec.residual <= 1e-8 * coeff_scale(to_complex(monomial_form({1, 2, 3}))));
    }
    SUBCASE("counts equal the closed form for small monomials") {
        std::vector<Mono> monos;
        Mono cur;
        for (int len = 2; len <= 3; ++len)
            for (int total = len; total <= 6; ++total) all_monomials(len, total, cur, monos);
        for (const auto& a : monos) {
            CAPTURE(a[0]);
            auto dec = monomial_decomposition(a);
            CHECK((long)dec.rank == monomial_rank(a));
            CHECK(dec.residual <= 1e-6);
        }
    }
}

TEST_CASE("Ranestad-Schreyer lower bound") {
    CHECK(ranestad_schreyer_lower(monomial_form({1, 1, 1})) == 4);
    CHECK(ranestad_schreyer_lower(monomial_form({1, 2, 3})) == 6);
    CHECK(ranestad_schreyer_lower(monomial_form({7})) == 1);
    CHECK(ranestad_schreyer_lower(parse_form("x0^4+x1^4+x2^4")) >= 1);
}

TEST_CASE("colon-ideal lower bound, e = 1") {
    SUBCASE("worked sextic monomial") {
        Linear<Rat> y0(std::vector<Rat>{Rat(1), Rat(0), Rat(0)});
        CHECK(colon_e1_lower(monomial_form({1, 2, 3}), y0) == 12);
        // Default linear form picks the smallest exponent's dual variable.
        CHECK(colon_e1_lower(monomial_form({1, 2, 3})) == 12);
    }
    SUBCASE("cubic monomial x0 x1 x2") {
        Linear<Rat> y0(std::vector<Rat>{Rat(1), Rat(0), Rat(0)});
        CHECK(colon_e1_lower(monomial_form({1, 1, 1}), y0) == 4);
    }
    SUBCASE("pure powers") {
        Linear<Rat> y0(std::vector<Rat>{Rat(1)});
        CHECK(colon_e1_lower(monomial_form({7}), y0) == 1);
    }
    SUBCASE("zero linear form is rejected") {
        Linear<Rat> z(std::vector<Rat>{Rat(0), Rat(0), Rat(0)});
        CHECK_THROWS_AS(colon_e1_lower(monomial_form({1, 1, 1}), z), std::invalid_argument);
    }
}

TEST_CASE("colon-ideal lower bound, e = 2 regression fixture") {
    // A two-computable degree-11 ternary form whose rank is 25: the colon
    // bound with the quadric y0^2 + y1^2 + y2^2 is sharp, while e = 1 is not.
    Poly<Rat> f = parse_form(
        "x0^11-22x0^9x1^2+33x0^7x1^4-22x0^9x2^2+396x0^7x1^2x2^2-462x0^5x1^4x2^2"
        "+33x0^7x2^4-462x0^5x1^2x2^4+385x0^3x1^4x2^4");
    Poly<Rat> q = parse_form("x0^2+x1^2+x2^2");  // read in dual coordinates
    CHECK(colon_lower(f, q) == 25);
}

TEST_CASE("monomials are one-computable: the three bounds line up") {
    std::vector<Mono> monos;
    Mono cur;
    for (int len = 2; len <= 4; ++len)
        for (int total = len; total <= 8; ++total) all_monomials(len, total, cur, monos);
    for (const auto& a : monos) {
        Poly<Rat> f = monomial_form(a);
        long rank = monomial_rank(a);
        long colon = colon_e1_lower(f);
        long rs = ranestad_schreyer_lower(f);
        long cat = catalecticant_lower(f);
        CAPTURE(poly_to_string(f));
        CHECK(colon == rank);
        CHECK(rs <= colon);
        CHECK(cat <= colon);
    }
}

TEST_CASE("binary monomial ranks agree with the binary rank algorithm") {
    for (int a0 = 1; a0 <= 4; ++a0) {
        for (int a1 = a0; a1 <= 5; ++a1) {
            Mono alpha{a0, a1};
            auto cert = binary_rank(monomial_form(alpha));
            CAPTURE(a0);
            CAPTURE(a1);
            CHECK((long)cert.rank == monomial_rank(alpha));
        }
    }
}

TEST_CASE("upper bounds") {
    SUBCASE("binary forms: ambient bound equals the degree") {
        for (int d = 2; d <= 8; ++d) CHECK(upper_bounds(1, d).landsberg_teitler == d);
    }
    SUBCASE("plane cubics") {
        UpperBounds b = upper_bounds(2, 3);
        CHECK(b.generic_rank == 4);
        // True maximal rank of plane cubics is 5; every bound dominates it.
        CHECK(b.landsberg_teitler >= 5);
        REQUIRE(b.jelisiejew.has_value());
        CHECK(*b.jelisiejew >= 5);
        CHECK(b.blekherman_teitler >= 5);
    }
    SUBCASE("plane quartics") {
        UpperBounds b = upper_bounds(2, 4);
        CHECK(b.generic_rank == 6);
        CHECK(b.blekherman_teitler == 12);
        CHECK(b.landsberg_teitler == 13);
        // True maximal rank is 7; all bounds dominate it.
        REQUIRE(b.jelisiejew.has_value());
        CHECK(*b.jelisiejew >= 7);
    }
    SUBCASE("quadrics omit the flattening-count bound") {
        CHECK_FALSE(upper_bounds(3, 2).jelisiejew.has_value());
    }
}

TEST_CASE("upper bounds dominate every exact rank the library produces") {
    // Binary forms with ranks computed by the dichotomy algorithm.
    for (const char* s : {"2x0^4+4x0^3x1+12x0^2x1^2+14x0x1^3+17x1^4", "5x0^5x1"}) {
        Poly<Rat> f = parse_form(s);
        auto cert = binary_rank(f);
        UpperBounds b = upper_bounds(1, f.deg);
        CAPTURE(s);
        CHECK((long)cert.rank <= b.landsberg_teitler);
        CHECK((long)cert.rank <= b.blekherman_teitler);
    }
    // Monomial ranks versus ambient bounds.
    std::vector<Mono> monos;
    Mono cur;
    for (int total = 2; total <= 7; ++total) all_monomials(2, total, cur, monos);
    for (int total = 3; total <= 7; ++total) all_monomials(3, total, cur, monos);
    for (const auto& a : monos) {
        int n = (int)a.size() - 1;
        int d = mono_degree(a);
        UpperBounds b = upper_bounds(n, d);
        CAPTURE(n);
        CAPTURE(d);
        CHECK(monomial_rank(a) <= b.landsberg_teitler);
        CHECK(monomial_rank(a) <= b.blekherman_teitler);
    }
}

TEST_CASE("reducible cubic ranks") {
    CHECK(reducible_cubic_rank(1, 3) == 6);
    CHECK(reducible_cubic_rank(2, 3) == 6);
    CHECK(reducible_cubic_rank(3, 3) == 7);
    CHECK(reducible_cubic_rank(1, 5) == 10);
    CHECK(reducible_cubic_rank(3, 5) == 11);
    CHECK_THROWS_AS(reducible_cubic_rank(4, 3), std::invalid_argument);
    CHECK_THROWS_AS(reducible_cubic_rank(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(reducible_cubic_rank(3, 2), std::invalid_argument);
}

TEST_CASE("real reducible cubic ranks") {
    SUBCASE("kind 1: balanced signature pins the rank at 2n") {
        auto r = real_reducible_cubic_rank(1, 4, {1, 1, -1, -1});
        CHECK(r.exact());
        CHECK(r.lo == 8);
        auto r2 = real_reducible_cubic_rank(1, 3, {1, 1, 1});
        CHECK(r2.lo == 6);
        CHECK(r2.hi == 7);
    }
    SUBCASE("kind 2: definite quadric gives 2n, split-off sign gives 2n+1") {
        auto all = real_reducible_cubic_rank(2, 3, {1, 1, 1, 1});
        CHECK(all.exact());
        CHECK(all.lo == 6);
        auto split = real_reducible_cubic_rank(2, 3, {-1, 1, 1, 1});
        CHECK(split.exact());
        CHECK(split.lo == 7);
        auto loose = real_reducible_cubic_rank(2, 3, {1, -1, 1, 1});
        CHECK(loose.lo == 6);
        CHECK(loose.hi == 7);
    }
    SUBCASE("kind 3: unit alpha narrows the interval") {
        auto gen = real_reducible_cubic_rank(3, 4, {1, 1, -1, -1, -1}, Rat(2));
        CHECK(gen.lo == 8);
        CHECK(gen.hi == 11);
        auto unit = real_reducible_cubic_rank(3, 4, {1, 1, -1, -1, -1}, Rat(1));
        CHECK(unit.lo == 9);
        CHECK(unit.hi == 11);
        CHECK_THROWS_AS(real_reducible_cubic_rank(3, 4, {1, 1, -1, -1, -1}, Rat(0)),
                        std::invalid_argument);
    }
}

TEST_CASE("real binary monomial ranks") {
    CHECK(real_binary_monomial_rank(1, 2) == 3);
    CHECK(real_binary_monomial_rank(2, 2) == 4);
    CHECK(real_binary_monomial_rank(1, 1) == 2);
    // Complex comparison: equality exactly when the minimum exponent is 1.
    CHECK(real_equals_complex({1, 2}));
    CHECK(monomial_rank({1, 2}) == 3);
    CHECK_FALSE(real_equals_complex({2, 2}));
    CHECK(monomial_rank({2, 2}) == 3);  // real is 4
    CHECK(real_equals_complex({1, 1}));
}

TEST_CASE("real monomial rank intervals") {
    auto b = real_monomial_rank_interval({2, 3});
    CHECK(b.exact());
    CHECK(b.lo == 5);
    auto open = real_monomial_rank_interval({2, 2, 2});
    CHECK(open.lo == 11);
    CHECK(open.hi == 13);
    auto min1 = real_monomial_rank_interval({1, 2, 3});
    CHECK(min1.exact());
    CHECK(min1.lo == 12);
    CHECK_THROWS_AS(real_monomial_rank_interval({2, 2, 3}), MethodInapplicable);
}

TEST_CASE("monomial Waring locus") {
    CHECK(monomial_waring_locus({1, 2}) == std::vector<int>{0});
    CHECK(monomial_waring_locus({1, 1, 1}) == std::vector<int>{0, 1, 2});
    CHECK(monomial_waring_locus({2, 2, 2}) == std::vector<int>{0, 1, 2});
    CHECK(monomial_waring_locus({1, 1, 3}) == std::vector<int>{0, 1});
    CHECK_THROWS_AS(monomial_waring_locus({2, 1}), std::invalid_argument);
}

TEST_CASE("aggregated bound reports") {
    SUBCASE("monomials close the gap") {
        auto rep = rank_bounds(monomial_form({1, 2, 3}));
        REQUIRE(rep.exact.has_value());
        CHECK(*rep.exact == 12);
    }
    SUBCASE("bounds always bracket") {
        for (const char* s : {"x0^3+x1^3+x2^3", "x0^2x1+x1^2x2", "x0^4+x0^2x1^2"}) {
            auto rep = rank_bounds(parse_form(s));
            CAPTURE(s);
            CHECK(rep.best_lower() <= rep.best_upper());
        }
    }
}
