#include "doctest.h"

#include "qf/factor.hpp"
#include "qf/numfield.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <random>
#include <set>

using namespace qf;
using big = boost::multiprecision::cpp_dec_float_100;

namespace {

FieldElement random_element(const FieldDescriptor* K, std::mt19937_64& rng, int h = 9)
{
    FieldElement e(K);
    for (int i = 0; i < K->n; ++i)
        e.x[i] = make_rat(Int(static_cast<long>(rng() % (2 * h + 1)) - h), Int(static_cast<long>(1 + rng() % 4)));
    return e;
}

big to_big(const Rat& r)
{
    return big(r.get_num().get_str()) / big(r.get_den().get_str());
}

big embed_big(const FieldElement& x, int s1, int s2)
{
    big v = to_big(x.x[0]);
    if (x.K->n >= 2)
        v += s1 * to_big(x.x[1]) * sqrt(big(x.K->rad[1]));
    if (x.K->n == 4) {
        v += s2 * to_big(x.x[2]) * sqrt(big(x.K->rad[2]));
        v += s1 * s2 * to_big(x.x[3]) * sqrt(big(x.K->rad[3]));
    }
    return v;
}

} // namespace

TEST_CASE("parsing and printing")
{
    const FieldDescriptor* K = field_by_name("q2q3");
    CHECK(K == biquadratic_field(3, 2));
    CHECK(K->name == "Q(r2,r3)");
    FieldElement a = parse_element(K, "3-2*r2");
    CHECK(a.str() == "3-2*r2");
    FieldElement w = parse_element(K, "1/2*r2+1/2*r6");
    CHECK(w.str() == "1/2*r2+1/2*r6");
    CHECK(parse_element(K, "-1/3*r3 + 2*r6 - 7").str() == "-7-1/3*r3+2*r6");
    CHECK(parse_element(K, "0").str() == "0");
    CHECK_THROWS_AS(parse_element(K, "2*r5"), domain_error);
    CHECK_THROWS_AS(parse_element(K, "1/0"), domain_error);
    CHECK_THROWS_AS(parse_element(K, "2**r2"), domain_error);
    CHECK_THROWS_AS(parse_element(K, ""), domain_error);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        FieldElement x = random_element(K, rng);
        CHECK(parse_element(K, x.str()) == x);
    }
}

TEST_CASE("norm examples")
{
    const FieldDescriptor* K = field_by_name("q2q3");
    CHECK(field_norm(parse_element(K, "3-2*r2")) == 1);
    CHECK(field_norm(parse_element(K, "1/2*r2+1/2*r6")) == 1);
    const FieldDescriptor* Q2 = quadratic_field(2);
    CHECK(field_norm(parse_element(Q2, "1+1*r2")) == -1);
    CHECK(field_norm(parse_element(Q2, "2+1*r2")) == 2);
    CHECK(field_norm(K->sqrt_of(2)) == 4);
    FieldElement n3 = field_norm_to(parse_element(K, "1+1*r2+1*r3"), 3);
    CHECK(lies_in(n3, quadratic_field(3)));
}

TEST_CASE("integral bases and discriminants")
{
    const FieldDescriptor* K = biquadratic_field(2, 3);
    auto B = K->integral_basis();
    REQUIRE(B.size() == 4);
    CHECK(B[3].str() == "1/2*r2+1/2*r6");
    const FieldDescriptor* L = biquadratic_field(2, 11);
    CHECK(L->integral_basis()[3].str() == "1/2*r2+1/2*r22");
    CHECK(quadratic_field(5)->discriminant() == 5);
    CHECK(quadratic_field(3)->discriminant() == 12);
    /* product of the three quadratic discriminants */
    CHECK(K->discriminant() == 8 * 12 * 24);
    CHECK(L->discriminant() == 8 * 44 * 88);
    for (auto& w : B)
        CHECK(is_integral(w));
    CHECK(!is_integral(parse_element(K, "1/2*r3")));
    CHECK(is_integral(parse_element(K, "1/2+1/2*r2+1/2*r3+1/2*r6")) == false);
}

TEST_CASE("field axioms and automorphisms")
{
    std::mt19937_64 rng(11);
    for (const FieldDescriptor* K : {field_by_name("q2q3"), field_by_name("q2q11"), quadratic_field(3)}) {
        auto G = automorphisms(K);
        CHECK(G.size() == static_cast<size_t>(K->n));
        for (int i = 0; i < 300; ++i) {
            FieldElement x = random_element(K, rng), y = random_element(K, rng), z = random_element(K, rng);
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(field_norm(x * y) == field_norm(x) * field_norm(y));
            if (!x.is_zero())
                CHECK(x * x.inv() == K->one());
            for (auto& s : G) {
                CHECK(s.apply(x * y) == s.apply(x) * s.apply(y));
                CHECK(s.apply(s.apply(x)) == x);
            }
        }
    }
}

TEST_CASE("exact embedding signs against a 100 digit oracle")
{
    std::mt19937_64 rng(23);
    for (const FieldDescriptor* K : {field_by_name("q2q3"), field_by_name("q2q11")}) {
        for (int i = 0; i < 400; ++i) {
            FieldElement x = random_element(K, rng, 40);
            for (auto& s : automorphisms(K)) {
                big v = embed_big(x, s.s1, s.s2);
                int expect = v > 0 ? 1 : (v < 0 ? -1 : 0);
                CHECK(embedding_sign(x, s.s1, s.s2) == expect);
            }
        }
        /* near cancellation */
        FieldElement u = fundamental_unit(2).pow(20);
        FieldElement e = embed(u, K) - embed(u, K).inv();
        CHECK(embedding_sign(e, -1, 1) == -1);
    }
}

TEST_CASE("square roots")
{
    const FieldDescriptor* K = field_by_name("q2q3");
    FieldElement w;
    CHECK(is_square(parse_element(K, "2+1*r3"), &w));
    CHECK(w * w == parse_element(K, "2+1*r3"));
    CHECK(w == parse_element(K, "1/2*r2+1/2*r6"));
    CHECK(!is_square(parse_element(K, "-1")));
    CHECK(!is_square(parse_element(K, "1+1*r2")));
    CHECK(is_square(parse_element(K, "3"), &w));
    CHECK(is_square(parse_element(K, "6"), &w));
    CHECK(!is_square(parse_element(K, "5")));
    std::mt19937_64 rng(5);
    for (const FieldDescriptor* F : {K, field_by_name("q2q11"), quadratic_field(7)}) {
        for (int i = 0; i < 300; ++i) {
            FieldElement x = random_element(F, rng);
            if (x.is_zero())
                continue;
            FieldElement r;
            REQUIRE(is_square(x * x, &r));
            CHECK((r == x || r == -x));
            if (is_square(x, &r))
                CHECK(r * r == x);
        }
    }
}

TEST_CASE("fundamental and totally positive units")
{
    CHECK(fundamental_unit(2).str() == "1+1*r2");
    CHECK(fundamental_unit(3).str() == "2+1*r3");
    CHECK(fundamental_unit(6).str() == "5+2*r6");
    CHECK(fundamental_unit(5).str() == "1/2+1/2*r5");
    CHECK(fundamental_unit(11).str() == "10+3*r11");
    CHECK(fundamental_unit(22).str() == "197+42*r22");
    CHECK(fundamental_unit(13).str() == "3/2+1/2*r13");
    CHECK_THROWS_AS(fundamental_unit(12), domain_error);
    for (long d : {2L, 3L, 5L, 6L, 7L, 11L, 13L, 19L, 22L, 46L, 94L})
        CHECK(is_unit(fundamental_unit(d)));
    const FieldDescriptor* K = field_by_name("q2q3");
    CHECK(totally_positive_unit_for_case(K, 1).str() == "3-2*r2");
    CHECK(totally_positive_unit_for_case(K, 2).str() == "2+1*r3");
    CHECK(totally_positive_unit_for_case(K, 3).str() == "5-2*r6");
    const FieldDescriptor* L = field_by_name("q2q11");
    CHECK(totally_positive_unit_for_case(L, 2).str() == "10+3*r11");
    CHECK(totally_positive_unit_for_case(L, 3).str() == "197+42*r22");
    for (auto* F : {K, L})
        for (int c = 1; c <= 3; ++c) {
            FieldElement u = totally_positive_unit_for_case(F, c);
            CHECK(is_unit(u));
            CHECK(is_totally_positive(u));
        }
}

TEST_CASE("splitting types")
{
    const FieldDescriptor* K = field_by_name("q2q3");
    auto s2 = splitting_type(2, K);
    CHECK((s2.g == 1 && s2.e == 4 && s2.f == 1));
    auto s5 = splitting_type(5, K);
    CHECK((s5.g == 2 && s5.e == 1 && s5.f == 2));
    auto s23 = splitting_type(23, K);
    CHECK((s23.g == 4 && s23.e == 1 && s23.f == 1));
    auto s3 = splitting_type(3, K);
    CHECK((s3.g == 1 && s3.e == 2 && s3.f == 2));
    CHECK_THROWS_AS(splitting_type(2, biquadratic_field(3, 7)), domain_error);
    for (uint64_t p : primes_up_to(200)) {
        for (auto* F : {K, field_by_name("q2q11"), quadratic_field(3), rational_field()}) {
            if (p == 2 && F->n == 1)
                continue;
            auto S = splitting_type(p, F);
            CHECK(S.g * S.e * S.f == F->n);
            CHECK(S.primes.size() == static_cast<size_t>(S.g));
        }
    }
}

TEST_CASE("residue maps")
{
    const FieldDescriptor* Q2 = quadratic_field(2);
    auto S7 = splitting_type(7, Q2);
    std::set<uint64_t> img;
    for (auto& P : S7.primes)
        img.insert(P.residue(parse_element(Q2, "3-2*r2")).c[0]);
    CHECK(img == std::set<uint64_t>{2, 4});
    const FieldDescriptor* K = field_by_name("q2q3");
    bool seen3 = false;
    for (auto& P : splitting_type(5, K).primes) {
        FFElement r = P.residue(parse_element(K, "5-2*r6"));
        if (r.in_prime_field() && r.c[0] == 3)
            seen3 = true;
    }
    CHECK(seen3);

    std::mt19937_64 rng(99);
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 23ULL, 29ULL, 71ULL, 97ULL}) {
        for (auto* F : {K, field_by_name("q2q11")}) {
            auto S = splitting_type(p, F);
            int sum = 0;
            for (auto& P : S.primes) {
                sum += P.e * P.f;
                CHECK(P.valuation(P.uniformizer) == 1);
                for (int i = 0; i < 60; ++i) {
                    std::vector<Int> c(F->n), d(F->n);
                    for (int j = 0; j < F->n; ++j) {
                        c[j] = Int(static_cast<long>(rng() % 41) - 20);
                        d[j] = Int(static_cast<long>(rng() % 41) - 20);
                    }
                    FieldElement x = F->from_ib(c), y = F->from_ib(d);
                    CHECK(P.residue(x * y) == P.residue(x) * P.residue(y));
                    CHECK(P.residue(x + y) == P.residue(x) + P.residue(y));
                    FFElement r = P.residue(x);
                    CHECK(P.residue(P.lift(r)) == r);
                    if (!x.is_zero() && !y.is_zero() && (S.g == 1 || P.e == 1))
                        CHECK(P.valuation(x * y) == P.valuation(x) + P.valuation(y));
                }
                CHECK(P.valuation(F->from_rat(Rat(Int(static_cast<unsigned long>(p))))) == P.e);
            }
            CHECK(sum * S.g / static_cast<int>(S.primes.size()) == F->n);
        }
    }
}

TEST_CASE("valuations at split primes with denominators")
{
    const FieldDescriptor* K = field_by_name("q2q3");
    auto S = splitting_type(23, K);
    for (auto& P : S.primes) {
        FieldElement pi = P.K->from_rat(23);
        FieldElement x = pi.pow(-2) * P.helper;
        CHECK(P.valuation(x) == -2);
        CHECK(P.residue(P.helper * P.helper) == P.residue(P.helper) * P.residue(P.helper));
    }
    /* x with denominator 23 still has a residue at the primes where it is integral */
    FieldElement h = S.primes[0].helper;
    FieldElement y = h * K->from_rat(Rat(1, 23));
    int finite = 0;
    for (auto& P : S.primes)
        if (P.valuation(y) >= 0)
            ++finite;
    CHECK(finite >= 1);
}

TEST_CASE("Galois action on primes")
{
    const FieldDescriptor* K = field_by_name("q2q3");
    for (uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL, 23ULL, 47ULL}) {
        auto S = splitting_type(p, K);
        for (auto& s : automorphisms(K)) {
            int stable = 0;
            for (auto& P : S.primes)
                stable += prime_stable(P, s);
            if (s.is_identity())
                CHECK(stable == S.g);
            /* stabilisers of conjugate primes have equal size */
            CHECK((stable == 0 || stable == S.g));
        }
        int decomp = 0;
        for (auto& s : automorphisms(K))
            decomp += prime_stable(S.primes[0], s);
        CHECK(decomp == S.e * S.f);
    }
}

TEST_CASE("roots in Q and quadratic fields")
{
    const FieldDescriptor* Q = rational_field();
    auto r = roots_in_field(kpoly(Q, {Rat(-6), Rat(1), Rat(1)}));
    REQUIRE(r.size() == 2);
    CHECK(r[0].x[0] == -3);
    CHECK(r[1].x[0] == 2);
    CHECK(roots_in_field(kpoly(Q, {Rat(1), Rat(0), Rat(1)})).empty());
    CHECK(roots_in_field(kpoly(Q, {Rat(-1, 4), Rat(0), Rat(1)})).size() == 2);
    const FieldDescriptor* Q3 = quadratic_field(3);
    auto r3 = roots_in_field(kpoly(Q3, {Rat(-3), Rat(0), Rat(1)}));
    CHECK(r3.size() == 2);
    /* z^2 + z + 2 has no root in Q(sqrt 3) */
    CHECK(roots_in_field(kpoly(Q3, {Rat(2), Rat(1), Rat(1)})).empty());
    std::mt19937_64 rng(7);
    for (const FieldDescriptor* F : {Q, Q3, quadratic_field(2), quadratic_field(5)}) {
        for (int it = 0; it < 40; ++it) {
            std::vector<FieldElement> roots;
            KPoly f = KPoly::constant(random_element(F, rng, 3) + F->from_rat(11));
            int d = 1 + rng() % 4;
            for (int i = 0; i < d; ++i) {
                FieldElement a = random_element(F, rng, 30);
                roots.push_back(a);
                f = f * kpoly({-a, F->one()});
            }
            f = f * kpoly(F, {Rat(2), Rat(0), Rat(0), Rat(1)}); // x^3+2, no roots here
            auto got = roots_in_field(f);
            std::set<std::string> want, have;
            for (auto& a : roots)
                want.insert(a.str());
            for (auto& a : got)
                have.insert(a.str());
            CHECK(want == have);
        }
    }
}

TEST_CASE("rational reconstruction and nullspace")
{
    Int m = Int(1000003) * 1000033;
    Rat a(Int(-355), Int(113));
    Int r = (a.get_num() * Int(0) + 0);
    Int inv;
    mpz_invert(inv.get_mpz_t(), a.get_den_mpz_t(), m.get_mpz_t());
    r = (a.get_num() * inv) % m;
    if (r < 0)
        r += m;
    auto back = rational_reconstruct(r, m);
    REQUIRE(back);
    CHECK(*back == a);
    auto ns = nullspace_mod({{1, 2, 3}, {2, 4, 6}}, 3, 7);
    CHECK(ns.size() == 2);
    for (auto& v : ns)
        CHECK((v[0] + 2 * v[1] + 3 * v[2]) % 7 == 0);
}
