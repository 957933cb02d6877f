#include "doctest.h"

#include "qf/factor.hpp"
#include "qf/hyperjac.hpp"

#include <numeric>
#include <random>

using namespace qf;

namespace {

const char* X23 = "x^6-8x^5+2x^4+2x^3-11x^2+10x-7";
const char* X26 = "x^6-8x^5+8x^4-18x^3+8x^2-8x+1";
const char* C9 = "-8x^9+2";
const char* Q5 = "x^5+3x^3-x+5";

HyperCurve curve(const char* s) { return HyperCurve(parse_rat_poly(s)); }

long mod(long a, long p) { return ((a % p) + p) % p; }

/* naive count over F_p by pairs (x, y) */
uint64_t naive_count(const Poly<Rat>& f, long p)
{
    std::vector<long> c;
    for (const Rat& a : f.coeffs())
        c.push_back(mod(a.get_num().get_si(), p));
    uint64_t n = 0;
    for (long x = 0; x < p; ++x) {
        long v = 0;
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
            v = (v * x + c[i]) % p;
        for (long y = 0; y < p; ++y)
            n += (y * y) % p == v;
    }
    long lc = c.back();
    if (f.deg() % 2)
        return n + 1;
    for (long y = 1; y < p; ++y)
        if ((y * y) % p == lc)
            return n + 2;
    return n;
}

/* every reduced representative, found without Cantor */
uint64_t enumerate_classes(const Jacobian& J)
{
    const FFDescriptor* F = J.F;
    uint64_t p = J.p, n = 0;
    int limit = J.inert ? J.g + 1 : J.g;
    for (int d = 0; d <= limit; ++d) {
        if (J.inert && d % 2)
            continue;
        uint64_t pd = 1;
        for (int i = 0; i < d; ++i)
            pd *= p;
        for (uint64_t iu = 0; iu < pd; ++iu) {
            std::vector<FFElement> uc;
            uint64_t t = iu;
            for (int i = 0; i < d; ++i, t /= p)
                uc.push_back(F->from_index(t % p));
            uc.push_back(F->one());
            FFPoly u(uc, F->zero());
            for (uint64_t iv = 0; iv < pd; ++iv) {
                std::vector<FFElement> vc;
                uint64_t s = iv;
                for (int i = 0; i < d; ++i, s /= p)
                    vc.push_back(F->from_index(s % p));
                MumfordDivisor D{u, FFPoly(vc, F->zero())};
                n += J.is_valid(D);
            }
        }
    }
    return n;
}

} // namespace

TEST_CASE("polynomial parsing")
{
    Poly<Rat> f = parse_rat_poly(X23);
    CHECK(f.deg() == 6);
    CHECK(f[0] == -7);
    CHECK(f[5] == -8);
    CHECK(rat_poly_str(f) == "x^6 - 8x^5 + 2x^4 + 2x^3 - 11x^2 + 10x - 7");
    CHECK(parse_rat_poly(rat_poly_str(f)) == f);
    CHECK(parse_rat_poly("1/2*x^3 - x + 3/4")[3] == Rat(1, 2));
    CHECK_THROWS_AS(parse_rat_poly("x^"), domain_error);
    CHECK_THROWS_AS(parse_rat_poly(""), domain_error);
    CHECK(curve(C9).g == 4);
    CHECK(curve(X23).g == 2);
    CHECK(curve(Q5).g == 2);
}

TEST_CASE("point counts")
{
    CHECK(count_points(curve(X26), 3, 1) == 6);
    for (const char* s : {X23, X26, C9, Q5}) {
        HyperCurve C = curve(s);
        for (long p : {3, 5, 7, 11, 13, 17, 19, 29, 31, 37, 41, 43, 47, 53}) {
            try {
                check_good_reduction(C, p);
            } catch (const domain_error&) {
                continue;
            }
            CHECK(count_points(C, p, 1) == naive_count(C.f, p));
            for (int k = 1; k <= 2; ++k) {
                Int q = ipow(Int(p), k);
                CHECK(hasse_weil_holds(Int(static_cast<unsigned long>(count_points(C, p, k))), q, C.g));
            }
        }
    }
}

TEST_CASE("bad reduction is reported")
{
    CHECK_THROWS_AS(count_points(curve(X23), 23, 1), domain_error);
    CHECK_THROWS_AS(count_points(curve(X23), 2, 1), domain_error);
    CHECK_THROWS_AS(count_points(curve(C9), 3, 1), domain_error);
    try {
        count_points(curve(X23), 23, 1);
    } catch (const domain_error& e) {
        CHECK(std::string(e.what()).find("23") != std::string::npos);
    }
}

TEST_CASE("L-polynomials and Jacobian orders")
{
    LPolynomial L47 = lpolynomial(curve(X23), 47);
    CHECK(L47.jacobian_order() == 2299);
    CHECK(L47.a == std::vector<Int>{1, 0, 89, 0, 2209});
    CHECK(lpolynomial(curve(X23), 71).jacobian_order() == 3839);
    LPolynomial L5 = lpolynomial(curve(C9), 5);
    LPolynomial L13 = lpolynomial(curve(C9), 13);
    CHECK(L5.jacobian_order() == 756);
    CHECK(L13.jacobian_order() == 42997);
    Int g;
    mpz_gcd(g.get_mpz_t(), L5.jacobian_order().get_mpz_t(), L13.jacobian_order().get_mpz_t());
    CHECK(g == 1);
    for (const LPolynomial* L : {&L47, &L5, &L13}) {
        CHECK(L->functional_equation_holds());
        CHECK(weil_bound_holds(*L));
    }
}

TEST_CASE("L-polynomial properties across curves")
{
    for (const char* s : {X23, X26, Q5}) {
        HyperCurve C = curve(s);
        for (long p : {3, 5, 7, 11, 13, 17, 19}) {
            try {
                check_good_reduction(C, p);
            } catch (const domain_error&) {
                continue;
            }
            LPolynomial L = lpolynomial(C, p);
            CHECK(L.functional_equation_holds());
            CHECK(weil_bound_holds(L));
            LPolynomial L2 = lpolynomial_extend(L, 2);
            CHECK(L2.jacobian_order() == L.eval(Int(1)) * L.eval(Int(-1)));
            if (p <= 7)
                CHECK(L2.a == lpolynomial(C, p, 2).a);
        }
    }
}

TEST_CASE("Weil check rejects a fake L-polynomial")
{
    LPolynomial L = lpolynomial_from_counts(5, 1, 2, {Int(6), Int(26)});
    CHECK(L.functional_equation_holds());
    LPolynomial bad = L;
    bad.a = {1, -12, 60, -60, 25};
    CHECK(bad.functional_equation_holds());
    CHECK_FALSE(weil_bound_holds(bad));
    CHECK_THROWS_AS(lpolynomial_from_counts(5, 1, 2, {Int(6), Int(27)}), internal_error);
}

TEST_CASE("Jacobian order by exhaustive class enumeration")
{
    for (const char* s : {X23, X26, Q5}) {
        HyperCurve C = curve(s);
        for (long p : {3, 5, 7, 11}) {
            try {
                check_good_reduction(C, p);
            } catch (const domain_error&) {
                continue;
            }
            Jacobian J(C, p);
            CAPTURE(J.model_note);
            CHECK(Int(static_cast<unsigned long>(enumerate_classes(J))) == lpolynomial(C, p).jacobian_order());
        }
    }
}

TEST_CASE("models")
{
    Jacobian J47(curve(X23), 47);
    CHECK(J47.inert);
    Jacobian J5(curve(C9), 5);
    CHECK_FALSE(J5.inert);
    CHECK_FALSE(J5.transformed);
    CHECK(J5.f.deg() == 9);
}

TEST_CASE("Cantor group axioms")
{
    std::mt19937_64 rng(11);
    for (auto [s, p, trials] : {std::tuple{X23, 47ul, 1000}, std::tuple{C9, 5ul, 1000}, std::tuple{X26, 7ul, 300},
                                std::tuple{Q5, 13ul, 300}}) {
        HyperCurve C = curve(s);
        Jacobian J(C, p);
        Int n = lpolynomial(C, p).jacobian_order();
        int bad = 0;
        for (int i = 0; i < trials; ++i) {
            MumfordDivisor a = J.random(rng), b = J.random(rng), c = J.random(rng);
            bad += !J.is_valid(a);
            bad += J.add(a, J.zero()) != a;
            bad += !J.is_zero(J.add(a, J.neg(a)));
            bad += J.add(a, b) != J.add(b, a);
            bad += J.add(J.add(a, b), c) != J.add(a, J.add(b, c));
            bad += !J.is_valid(J.add(a, b));
            if (i < 50) {
                bad += J.mul(Int(7), J.mul(Int(5), a)) != J.mul(Int(35), a);
                bad += !J.is_zero(J.mul(n, a));
                bad += J.mul(Int(-3), a) != J.neg(J.mul(Int(3), a));
            }
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("random element orders divide the group order")
{
    HyperCurve C = curve(X23);
    Jacobian J(C, 47);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        Int o = J.order(J.random(rng), Int(2299));
        CHECK(2299 % o == 0);
    }
    CHECK_THROWS_AS(J.order(J.random(rng), Int(11)), domain_error);
}

TEST_CASE("random prime divisors")
{
    Jacobian J(curve(C9), 13);
    std::mt19937_64 rng(3);
    for (int d = 1; d <= 4; ++d)
        for (int i = 0; i < 10; ++i) {
            MumfordDivisor D = J.random_prime_divisor(d, rng);
            CHECK(D.u.deg() == d);
            CHECK(ff_roots(D.u).size() == (d == 1 ? 1u : 0u));
            CHECK(((D.v * D.v - J.f) % D.u).is_zero());
        }
}

TEST_CASE("canonical structures")
{
    CHECK(canonical_structure({Int(6), Int(126)}).invariants == std::vector<Int>{6, 126});
    CHECK(canonical_structure({Int(2), Int(3)}).invariants == std::vector<Int>{6});
    CHECK(canonical_structure({Int(11), Int(11), Int(19)}).invariants == std::vector<Int>{11, 209});
    CHECK(canonical_structure({Int(11), Int(349)}).invariants == std::vector<Int>{3839});
    CHECK(canonical_structure({Int(1)}).invariants.empty());
    CHECK(canonical_structure({Int(4), Int(6)}).str() == "Z/2 x Z/12");
}

TEST_CASE("group structures")
{
    StructureReport r71 = verify_group_structure(curve(X23), 71, canonical_structure({Int(11), Int(349)}));
    CHECK(r71.verdict == Verdict::Verified);
    CHECK(r71.computed.invariants == std::vector<Int>{3839});

    StructureReport r5 = verify_group_structure(curve(C9), 5, canonical_structure({Int(6), Int(126)}));
    CHECK(r5.verdict == Verdict::Verified);
    for (const auto& S : r5.sylow)
        if (S.ell == 3) {
            CHECK(S.size == 27);
            CHECK(S.exponents == std::vector<int>{2, 1});
            CHECK(S.torsion_basis.size() == 2);
        }

    StructureReport r13 = verify_group_structure(curve(C9), 13, canonical_structure({Int(42997)}));
    CHECK(r13.verdict == Verdict::Verified);

    StructureReport r47 = verify_group_structure(curve(X23), 47, canonical_structure({Int(2299)}));
    CHECK(r47.verdict == Verdict::Verified);
    for (const auto& S : r47.sylow)
        if (S.ell == 11)
            CHECK(S.torsion_basis.size() == 1);
}

TEST_CASE("structure verdicts")
{
    HyperCurve C = curve(X23);
    CHECK(verify_group_structure(C, 47, canonical_structure({Int(2300)})).verdict == Verdict::Refuted);
    StructureOptions opt;
    opt.samples = 0;
    StructureReport wrong = verify_group_structure(C, 47, canonical_structure({Int(11), Int(209)}), opt);
    CHECK(wrong.verdict == Verdict::Refuted);
    CHECK(wrong.computed.invariants == std::vector<Int>{2299});
    opt.sylow_draws = 0;
    CHECK(verify_group_structure(C, 47, canonical_structure({Int(2299)}), opt).verdict == Verdict::Inconclusive);
    CHECK(std::string(verdict_name(Verdict::Inconclusive)) == "inconclusive");
}

TEST_CASE("pullback class")
{
    HyperCurve C = curve(C9);
    Jacobian J(C, 5);
    MumfordDivisor D = pullback_class(J, Rat(-2), 3, Rat(-1), Rat(1));
    CHECK(J.is_valid(D));
    // x^3 - 1/2 = x^3 - 3 mod 5
    CHECK(D.u[0] == J.F->from_int(-3));
    CHECK(D.v == FFPoly::constant(J.F->one()));

    // each fiber point maps to Q = (-1, 1)
    for (int k : {1, 2}) {
        const FFDescriptor* E = ff_field(5, k);
        FFPoly u = ff_poly_from_rat(E, Poly<Rat>({Rat(-1, 2), Rat(0), Rat(0), Rat(1)}));
        auto roots = ff_roots(u);
        CHECK(roots.size() == (k == 1 ? 1u : 3u));
        for (const auto& x : roots)
            CHECK(E->from_int(-2) * x * x * x == E->from_int(-1));
    }

    std::mt19937_64 rng(1);
    CHECK(J.order(D, Int(756)) == 6);
    CHECK_FALSE(in_ell_multiple(J, D, Int(756), Int(3), rng));
    CHECK(in_ell_multiple(J, J.mul(Int(3), D), Int(756), Int(3), rng));
    CHECK_THROWS_AS(pullback_class(J, Rat(-2), 3, Rat(-1), Rat(2)), domain_error);
    CHECK_THROWS_AS(pullback_class(Jacobian(curve(X23), 47), Rat(1), 3, Rat(0), Rat(0)), domain_error);
}
