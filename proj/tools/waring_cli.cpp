// Command-line front end: parse homogeneous forms and variety specs,
// dispatch to the rank / decomposition / secant-dimension engines, and emit
// human-readable or JSON reports.
//
// Exit codes: 0 success, 2 parse error (with input position), 3 numeric
// failure, 4 method inapplicable.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "waring/bounds.hpp"
#include "waring/hankel.hpp"
#include "waring/parse.hpp"
#include "waring/secant.hpp"
#include "waring/sylvester.hpp"

using json = nlohmann::ordered_json;
using namespace waring;

namespace {

// ---------------------------------------------------------------------------
// Variety spec grammar:
//   veronese:n,d | segre:n1xn2x... | segre-veronese:n1,..;d1,.. |
//   grass:k,n | chow:n;d1,.. | powers:n,k,d | tangential:n,d
// ---------------------------------------------------------------------------

int parse_int_at(const std::string& s, size_t& i) {
    size_t start = i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    if (i == start) throw ParseError("expected integer", start);
    return std::stoi(s.substr(start, i - start));
}

std::vector<int> parse_int_list(const std::string& s, size_t& i, char sep) {
    std::vector<int> out;
    out.push_back(parse_int_at(s, i));
    while (i < s.size() && s[i] == sep) {
        ++i;
        out.push_back(parse_int_at(s, i));
    }
    return out;
}

VarietySpec parse_variety_spec(const std::string& s) {
    size_t colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("expected ':' after family name", s.size());
    std::string family = s.substr(0, colon);
    size_t i = colon + 1;
    auto expect_end = [&]() {
        if (i != s.size()) throw ParseError("unexpected trailing characters", i);
    };
    auto expect = [&](char c) {
        if (i >= s.size() || s[i] != c)
            throw ParseError(std::string("expected '") + c + "'", i);
        ++i;
    };
    try {
        if (family == "veronese" || family == "tangential") {
            int n = parse_int_at(s, i);
            expect(',');
            int d = parse_int_at(s, i);
            expect_end();
            return family == "veronese" ? VarietySpec::veronese(n, d)
                                        : VarietySpec::tangential(n, d);
        }
        if (family == "segre") {
            auto ns = parse_int_list(s, i, 'x');
            expect_end();
            return VarietySpec::segre(ns);
        }
        if (family == "segre-veronese") {
            auto ns = parse_int_list(s, i, ',');
            expect(';');
            auto ds = parse_int_list(s, i, ',');
            expect_end();
            return VarietySpec::segre_veronese(ns, ds);
        }
        if (family == "grass") {
            int k = parse_int_at(s, i);
            expect(',');
            int n = parse_int_at(s, i);
            expect_end();
            return VarietySpec::grassmannian(k, n);
        }
        if (family == "chow") {
            int n = parse_int_at(s, i);
            expect(';');
            auto ds = parse_int_list(s, i, ',');
            expect_end();
            return VarietySpec::chow(n, ds);
        }
        if (family == "powers") {
            int n = parse_int_at(s, i);
            expect(',');
            int k = parse_int_at(s, i);
            expect(',');
            int d = parse_int_at(s, i);
            expect_end();
            return VarietySpec::powers(n, k, d);
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), i);
    }
    throw ParseError("unknown variety family '" + family + "'", 0);
}

// ---------------------------------------------------------------------------
// Report plumbing
// ---------------------------------------------------------------------------

struct Options {
    bool emit_json = false;
    std::uint64_t seed = 0;
    std::uint64_t prime = kSecantPrimeA;
    int trials = 3;
    double tol = 1e-8;
};

json base_report(const std::string& input, const std::string& method, const Options& opt) {
    json j;
    j["input"] = input;
    j["method"] = method;
    j["result"] = nullptr;
    j["certificate"] = nullptr;
    j["seed"] = opt.seed;
    j["prime"] = opt.prime;
    j["residual"] = nullptr;
    return j;
}

void emit(const json& j, const Options& opt) {
    if (opt.emit_json) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "method: " << j["method"].get<std::string>() << "\n";
    std::cout << "result: " << j["result"].dump() << "\n";
    if (!j["certificate"].is_null())
        std::cout << "certificate: " << j["certificate"].dump() << "\n";
    if (!j["residual"].is_null())
        std::cout << "residual: " << j["residual"].dump() << "\n";
}

json complex_to_json(const CD& z) {
    json j = json::array();
    j.push_back(z.real());
    j.push_back(z.imag());
    return j;
}

json decomposition_to_json(const Decomposition& dec) {
    json j;
    j["rank"] = dec.rank;
    j["exact"] = dec.exact;
    if (dec.exact) {
        json pts = json::array(), ls = json::array();
        for (const auto& pt : dec.exact_points) {
            json row = json::array();
            for (const auto& c : pt.coeffs) row.push_back(scalar_to_string(c));
            pts.push_back(row);
        }
        for (const auto& l : dec.exact_lambdas) ls.push_back(scalar_to_string(l));
        j["points"] = pts;
        j["lambdas"] = ls;
    } else {
        json pts = json::array(), ls = json::array();
        for (const auto& pt : dec.points) {
            json row = json::array();
            for (const auto& c : pt.coeffs) row.push_back(complex_to_json(c));
            pts.push_back(row);
        }
        for (const auto& l : dec.lambdas) ls.push_back(complex_to_json(l));
        j["points"] = pts;
        j["lambdas"] = ls;
    }
    return j;
}

/// Re-verify a decomposition before printing: an exact certificate must
/// pass the apolarity check, and a numeric one must reproduce the form.
void verify_or_die(const Poly<Rat>& f, const Decomposition& dec, double tol) {
    if (dec.exact) {
        auto lam = verify_apolar_points(f, dec.exact_points);
        if (!lam) throw NumericFailure("exact certificate failed re-verification");
        return;
    }
    double res = max_coeff_error(reconstruct(dec.points, dec.lambdas, f.deg), to_complex(f));
    if (res > tol * coeff_scale(to_complex(f)))
        throw NumericFailure("decomposition failed re-verification");
}

std::optional<Mono> as_positive_monomial(const Poly<Rat>& f) {
    if (f.terms.size() != 1 || f.terms.begin()->second != Rat(1)) return std::nullopt;
    return f.terms.begin()->first;
}

/// Strip zero exponents from a monomial (the rank is insensitive to them).
Mono positive_part(const Mono& a) {
    Mono out;
    for (int e : a)
        if (e > 0) out.push_back(e);
    return out;
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

int cmd_rank(const std::string& text, const Options& opt) {
    Poly<Rat> f = parse_form(text);
    json j = base_report(text, "", opt);

    if (auto mono = as_positive_monomial(f)) {
        Mono a = positive_part(*mono);
        if (!a.empty() && a != Mono{mono_degree(a)}) {
            j["method"] = "monomial formula + e=1 colon bound";
            j["result"] = {{"rank", monomial_rank(a)}};
            emit(j, opt);
            return 0;
        }
    }
    auto ev = essential_variables(f);
    if (ev.m == 1) {
        j["method"] = "essential-variable reduction (power of a linear form)";
        j["result"] = {{"rank", 1}};
        emit(j, opt);
        return 0;
    }
    if (ev.m == 2) {
        auto cert = binary_rank(ev.reduced);
        j["method"] = "essential-variable reduction + binary rank dichotomy";
        j["result"] = {{"rank", cert.rank}};
        j["certificate"] = {{"border_rank", cert.border_rank},
                            {"witness_squarefree", cert.witness_squarefree},
                            {"essential_variables", ev.m}};
        emit(j, opt);
        return 0;
    }
    if (auto cert = sigma2_rank(f)) {
        j["method"] = "second secant stratification";
        j["result"] = {{"rank", cert->rank}};
        j["certificate"] = {{"border_rank", cert->border_rank},
                            {"essential_variables", ev.m}};
        emit(j, opt);
        return 0;
    }
    try {
        Decomposition dec = catalecticant_decompose(f, opt.tol);
        verify_or_die(f, dec, opt.tol);
        j["method"] = "catalecticant kernel eigenvector method";
        j["result"] = {{"rank", dec.rank}};
        j["residual"] = dec.residual;
        emit(j, opt);
        return 0;
    } catch (const MethodInapplicable&) {
    }
    try {
        int r_max = (int)dim_forms(ev.m, (f.deg + 1) / 2);
        Decomposition dec = bcmt_decompose(f, r_max, opt.tol);
        verify_or_die(f, dec, opt.tol);
        j["method"] = "truncated Hankel operator method";
        j["result"] = {{"rank", dec.rank}};
        j["residual"] = dec.residual;
        emit(j, opt);
        return 0;
    } catch (const MethodInapplicable&) {
    }
    BoundReport rep = rank_bounds(f);
    j["method"] = "bound interval (no exact method applied)";
    json lows = json::array(), ups = json::array();
    for (const auto& [name, v] : rep.lower) lows.push_back({{"method", name}, {"value", v}});
    for (const auto& [name, v] : rep.upper) ups.push_back({{"method", name}, {"value", v}});
    j["result"] = {{"lower", rep.best_lower()},
                   {"upper", rep.best_upper()},
                   {"lower_bounds", lows},
                   {"upper_bounds", ups}};
    emit(j, opt);
    return 0;
}

int cmd_border_rank(const std::string& text, const Options& opt) {
    Poly<Rat> f = parse_form(text);
    json j = base_report(text, "", opt);
    auto ev = essential_variables(f);
    if (ev.m == 1) {
        j["method"] = "essential-variable reduction (power of a linear form)";
        j["result"] = {{"border_rank", 1}, {"certified", true}};
    } else if (ev.m == 2) {
        j["method"] = "middle catalecticant of the essential binary form";
        j["result"] = {{"border_rank", binary_border_rank(ev.reduced)}, {"certified", true}};
    } else if (auto cert = sigma2_rank(f)) {
        j["method"] = "second secant stratification";
        j["result"] = {{"border_rank", cert->border_rank}, {"certified", true}};
    } else {
        long lb = catalecticant_lower(f);
        j["method"] = "catalecticant flattening lower bound";
        j["result"] = {{"border_rank", lb}, {"certified", false}};
    }
    emit(j, opt);
    return 0;
}

int cmd_decompose(const std::string& text, const Options& opt) {
    Poly<Rat> f = parse_form(text);
    json j = base_report(text, "", opt);
    Decomposition dec;
    std::string method;
    if (auto mono = as_positive_monomial(f); mono && positive_part(*mono).size() >= 2) {
        Mono reduced = positive_part(*mono);
        dec = monomial_decomposition(reduced, opt.tol);
        if (reduced.size() < mono->size()) {
            // Re-embed the points into the original variables, zero on the
            // coordinates whose exponent vanished.
            auto embed = [&](auto& pts, auto zero) {
                for (auto& pt : pts) {
                    std::vector<std::decay_t<decltype(zero)>> full(mono->size(), zero);
                    size_t j = 0;
                    for (size_t i = 0; i < mono->size(); ++i)
                        if ((*mono)[i] > 0) full[i] = pt.coeffs[j++];
                    pt.coeffs = std::move(full);
                }
            };
            embed(dec.points, CD(0, 0));
            if (dec.exact) embed(dec.exact_points, Rat(0));
        }
        method = "apolar roots-of-unity complete intersection";
    } else {
        auto ev = essential_variables(f);
        if (ev.m == 1) {
            dec = bcmt_decompose(f, 1, opt.tol);
            method = "power of a linear form";
        } else if (ev.m == 2) {
            dec = binary_decompose(ev.reduced, opt.tol);
            if (ev.m < f.nvars) {
                dec = detail::lift_decomposition(dec, ev.basis_change, f.nvars, ev.m);
                dec.residual = solve_lambdas(to_complex(f), dec.points, dec.lambdas);
                try_exact_upgrade(f, dec);
            }
            method = "binary rank dichotomy + root extraction";
        } else {
            try {
                dec = catalecticant_decompose(f, opt.tol);
                method = "catalecticant kernel eigenvector method";
            } catch (const MethodInapplicable&) {
                int r_max = (int)dim_forms(ev.m, (f.deg + 1) / 2);
                dec = bcmt_decompose(f, r_max, opt.tol);
                method = "truncated Hankel operator method";
            }
        }
    }
    verify_or_die(f, dec, opt.tol);
    j["method"] = method;
    j["result"] = decomposition_to_json(dec);
    j["residual"] = dec.residual;
    emit(j, opt);
    return 0;
}

int cmd_apolar(const std::string& text, const Options& opt) {
    Poly<Rat> f = parse_form(text);
    json j = base_report(text, "apolar Hilbert function and minimal generators", opt);
    auto hf = hilbert_function(f);
    auto gens = minimal_generator_degrees(f);
    json jh = json::array();
    for (long v : hf) jh.push_back(v);
    json jg;
    for (const auto& [deg, count] : gens) jg[std::to_string(deg)] = count;
    j["result"] = {{"hilbert_function", jh},
                   {"apolar_length", apolar_length(f)},
                   {"minimal_generator_degrees", jg}};
    emit(j, opt);
    return 0;
}

int cmd_hilbert(int n, int d, const std::vector<int>& mults, const Options& opt) {
    std::ostringstream in;
    in << "fatpoints n=" << n << " d=" << d << " m=";
    for (size_t i = 0; i < mults.size(); ++i) in << (i ? "," : "") << mults[i];
    json j = base_report(in.str(), "generic fat points by randomized evaluation", opt);
    std::mt19937_64 rng(detail::splitmix64(opt.seed ^ 0xfa7f01u));
    FatPointScheme<Fp> z;
    z.n = n;
    z.multiplicities = mults;
    for (size_t i = 0; i < mults.size(); ++i)
        z.points.push_back(detail::random_vector(n + 1, rng, opt.prime));
    long hf = fat_point_hf(n, d, z);
    j["result"] = {{"hilbert_function", hf},
                   {"ambient", dim_forms(n + 1, d)},
                   {"conditions_matrix_corank", dim_forms(n + 1, d) - hf}};
    emit(j, opt);
    return 0;
}

json secant_report_to_json(const SecantDimReport& rep) {
    json j;
    j["spec"] = rep.spec.to_string();
    j["s"] = rep.s;
    j["expected"] = rep.expected;
    j["actual"] = rep.actual;
    j["defect"] = rep.defect;
    j["trials"] = rep.trials;
    j["two_prime_agreed"] = rep.two_prime_agreed;
    if (auto rec = known_defect_table(rep.spec, rep.s)) {
        j["recorded_defect"] = rec->defect;
        j["recorded_source"] = rec->source;
        j["recorded_conjectural"] = rec->conjectural;
    }
    return j;
}

int cmd_secant_dim(const std::string& spec_text, int s, const Options& opt) {
    VarietySpec spec = parse_variety_spec(spec_text);
    json j = base_report(spec_text, "randomized tangent spans over two prime fields", opt);
    auto rep = secant_dim(spec, s, opt.trials, opt.prime, opt.seed);
    j["result"] = secant_report_to_json(rep);
    emit(j, opt);
    return 0;
}

int cmd_defect_scan(const std::string& spec_text, int s_lo, int s_hi, const Options& opt) {
    VarietySpec spec = parse_variety_spec(spec_text);
    json j = base_report(spec_text, "randomized tangent spans over two prime fields", opt);
    json arr = json::array();
    for (const auto& rep : defect_scan(spec, s_lo, s_hi, opt.trials, opt.prime, opt.seed))
        arr.push_back(secant_report_to_json(rep));
    j["result"] = arr;
    emit(j, opt);
    return 0;
}

int cmd_bounds(int n, int d, const Options& opt) {
    json j = base_report("n=" + std::to_string(n) + " d=" + std::to_string(d),
                         "ambient upper bounds", opt);
    UpperBounds b = upper_bounds(n, d);
    json r;
    r["ambient_minus_n"] = b.landsberg_teitler;
    if (b.jelisiejew) r["flattening_count"] = *b.jelisiejew;
    r["twice_generic_rank"] = b.blekherman_teitler;
    r["generic_rank"] = b.generic_rank;
    j["result"] = r;
    emit(j, opt);
    return 0;
}

int cmd_generic_rank(const std::string& spec_text, const Options& opt) {
    VarietySpec spec = parse_variety_spec(spec_text);
    json j = base_report(spec_text, "Monte Carlo filling scan", opt);
    int s = generic_rank(spec, opt.trials, opt.prime, opt.seed);
    json r;
    r["generic_rank"] = s;
    if (spec.kind == VarietyKind::Powers && spec.k >= 2) {
        r["oracle"] = powers_generic_rank_oracle(spec.dims[0], spec.k, spec.degs[0]);
        r["oracle_status"] = "conjectural";
    } else if (spec.kind == VarietyKind::Veronese && spec.degs[0] >= 2) {
        r["oracle"] = s;  // cross-checked inside generic_rank
        r["oracle_status"] = "classification theorem";
    }
    j["result"] = r;
    emit(j, opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Waring ranks, decompositions and secant-variety dimensions"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--json", opt.emit_json, "emit the JSON report on stdout");
    app.add_option("--seed", opt.seed, "random seed for sampling engines");
    app.add_option("--prime", opt.prime, "prime modulus for genericity sampling");
    app.add_option("--trials", opt.trials, "Monte Carlo trials per dimension estimate");
    app.add_option("--tol", opt.tol, "relative residual tolerance for numeric certificates");

    std::string form, spec_text;
    int s = 1, n = 0, d = 0, s_lo = 1, s_hi = 1;
    std::vector<int> mults;
    bool fatpoints = false;

    auto* c_rank = app.add_subcommand("rank", "exact rank or bound interval of a form");
    c_rank->add_option("form", form)->required();
    auto* c_border = app.add_subcommand("border-rank", "border rank of a form");
    c_border->add_option("form", form)->required();
    auto* c_dec = app.add_subcommand("decompose", "explicit power-sum decomposition");
    c_dec->add_option("form", form)->required();
    auto* c_apolar = app.add_subcommand("apolar", "Hilbert function and apolar generators");
    c_apolar->add_option("form", form)->required();
    auto* c_hilb = app.add_subcommand("hilbert", "Hilbert function of generic fat points");
    c_hilb->add_flag("--fatpoints", fatpoints)->required();
    c_hilb->add_option("n", n)->required();
    c_hilb->add_option("d", d)->required();
    c_hilb->add_option("multiplicities", mults)->required();
    auto* c_sd = app.add_subcommand("secant-dim", "dimension of the s-th secant variety");
    c_sd->add_option("spec", spec_text)->required();
    c_sd->add_option("s", s)->required();
    auto* c_scan = app.add_subcommand("defect-scan", "scan secant dimensions over a range of s");
    c_scan->add_option("spec", spec_text)->required();
    c_scan->add_option("--s-range", [&s_lo, &s_hi](const std::vector<std::string>& v) {
        size_t colon = v[0].find(':');
        if (colon == std::string::npos) return false;
        s_lo = std::stoi(v[0].substr(0, colon));
        s_hi = std::stoi(v[0].substr(colon + 1));
        return true;
    }, "range lo:hi of secant indices")->required();
    auto* c_bounds = app.add_subcommand("bounds", "ambient upper bounds for (n, d)");
    c_bounds->add_option("n", n)->required();
    c_bounds->add_option("d", d)->required();
    auto* c_gr = app.add_subcommand("generic-rank", "smallest s whose secant fills the ambient space");
    c_gr->add_option("spec", spec_text)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(c_rank)) return cmd_rank(form, opt);
        if (app.got_subcommand(c_border)) return cmd_border_rank(form, opt);
        if (app.got_subcommand(c_dec)) return cmd_decompose(form, opt);
        if (app.got_subcommand(c_apolar)) return cmd_apolar(form, opt);
        if (app.got_subcommand(c_hilb)) return cmd_hilbert(n, d, mults, opt);
        if (app.got_subcommand(c_sd)) return cmd_secant_dim(spec_text, s, opt);
        if (app.got_subcommand(c_scan)) return cmd_defect_scan(spec_text, s_lo, s_hi, opt);
        if (app.got_subcommand(c_bounds)) return cmd_bounds(n, d, opt);
        if (app.got_subcommand(c_gr)) return cmd_generic_rank(spec_text, opt);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const MethodInapplicable& e) {
        std::cerr << "method inapplicable: " << e.what() << "\n";
        return 4;
    } catch (const NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
