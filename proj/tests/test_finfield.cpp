#include "doctest.h"

#include "qf/finfield.hpp"

#include <random>
#include <set>

using namespace qf;

TEST_CASE("moduli")
{
    const FFDescriptor* F9 = ff_field(3, 2);
    CHECK(F9->modulus == std::vector<uint64_t>{1, 0, 1});
    CHECK(F9->q == 9);
    for (auto [p, k] : {std::pair<uint64_t, int>{5, 4}, {13, 4}, {47, 2}, {2, 3}, {71, 2}, {7, 3}}) {
        const FFDescriptor* F = ff_field(p, k);
        CHECK(ff_modulus_irreducible(p, F->modulus));
        CHECK(ff_field(p, k) == F);
    }
    CHECK(!ff_modulus_irreducible(5, {1, 0, 1})); // x^2+1 = (x-2)(x+2)
}

TEST_CASE("square testing")
{
    const FFDescriptor* F5 = ff_field(5, 1);
    const FFDescriptor* F7 = ff_field(7, 1);
    const FFDescriptor* F9 = ff_field(3, 2);
    CHECK(!ff_is_square(F5->from_int(2)));
    FFElement r;
    REQUIRE(ff_is_square(F7->from_int(2), &r));
    CHECK(r * r == F7->from_int(2));
    CHECK(r.c[0] == 3);
    REQUIRE(ff_is_square(F9->from_int(2), &r));
    CHECK(r * r == F9->from_int(2));
    CHECK((r == F9->gen() || r == -F9->gen()));
}

TEST_CASE("norm to the prime field")
{
    const FFDescriptor* F49 = ff_field(7, 2);
    for (int u = 1; u < 7; ++u)
        CHECK(ff_norm_to_prime(F49->from_int(u)) == F49->from_int(u * u));
    CHECK(ff_norm_to_prime(F49->one()) == F49->one());
    const FFDescriptor* F9 = ff_field(3, 2);
    std::set<uint64_t> img;
    for (auto& x : ff_enumerate(F9)) {
        if (x.is_zero())
            continue;
        FFElement n = ff_norm_to_prime(x);
        CHECK(n.in_prime_field());
        img.insert(n.c[0]);
    }
    CHECK(img == std::set<uint64_t>{1, 2});
}

TEST_CASE("enumeration")
{
    CHECK(ff_enumerate(ff_field(3, 2)).size() == 9);
    CHECK(ff_enumerate(ff_field(13, 4)).size() == 28561);
    CHECK(ff_enumerate(ff_field(47, 2)).size() == 2209);
    CHECK_THROWS_AS(ff_enumerate(ff_field(13, 4), 1000), resource_error);
}

TEST_CASE("field axioms, Frobenius, squares and norms exhaustively")
{
    for (auto [p, k] : {std::pair<uint64_t, int>{3, 2}, {5, 2}, {2, 4}, {7, 3}, {47, 2}, {5, 4}, {101, 2}}) {
        const FFDescriptor* F = ff_field(p, k);
        auto all = ff_enumerate(F);
        uint64_t squares = 0;
        std::set<uint64_t> norms;
        std::mt19937_64 rng(p * 10 + k);
        for (auto& x : all) {
            FFElement fx = x;
            for (int i = 0; i < k; ++i)
                fx = fx.frobenius();
            CHECK(fx == x);
            if (x.is_zero())
                continue;
            CHECK(x * x.inv() == F->one());
            if (ff_is_square(x))
                ++squares;
            FFElement r;
            if (p != 2 && ff_is_square(x, &r))
                CHECK(r * r == x);
            FFElement y = all[rng() % all.size()];
            if (!y.is_zero())
                CHECK(ff_norm_to_prime(x * y) == ff_norm_to_prime(x) * ff_norm_to_prime(y));
            CHECK((x + y).frobenius() == x.frobenius() + y.frobenius());
            CHECK((x * y).frobenius() == x.frobenius() * y.frobenius());
            norms.insert(ff_norm_to_prime(x).index());
        }
        if (p != 2)
            CHECK(squares == (F->q - 1) / 2);
        CHECK(norms.size() == p - 1);
    }
}

TEST_CASE("table and schoolbook multiplication agree")
{
    const FFDescriptor* F = ff_field(13, 4);
    REQUIRE(F->has_tables());
    std::mt19937_64 rng(5);
    for (int i = 0; i < 2000; ++i) {
        FFElement a = F->from_index(rng() % F->q), b = F->from_index(rng() % F->q);
        // schoolbook via the polynomial ring
        FFPoly pa(std::vector<FFElement>{}, F->zero()), pb = pa;
        const FFDescriptor* P = ff_field(13, 1);
        std::vector<FFElement> ca, cb, cm;
        for (int j = 0; j < 4; ++j) {
            ca.push_back(P->from_int(a.c[j]));
            cb.push_back(P->from_int(b.c[j]));
        }
        for (auto m : F->modulus)
            cm.push_back(P->from_int(m));
        FFPoly r = (FFPoly(ca, P->zero()) * FFPoly(cb, P->zero())) % FFPoly(cm, P->zero());
        FFElement ab = a * b;
        for (int j = 0; j < 4; ++j)
            CHECK(ab.c[j] == r[j].c[0]);
    }
}

TEST_CASE("roots and resultant/gcd consistency mod primes")
{
    std::mt19937_64 rng(17);
    for (uint64_t p : {101ULL, 1009ULL, 65537ULL}) {
        const FFDescriptor* F = ff_field(p, 1);
        for (int it = 0; it < 100; ++it) {
            auto rnd = [&](int d) {
                std::vector<FFElement> c;
                for (int i = 0; i <= d; ++i)
                    c.push_back(F->from_int(rng() % p));
                c.back() = F->one();
                return FFPoly(c, F->zero());
            };
            FFPoly f = rnd(1 + rng() % 5), g = rnd(1 + rng() % 5);
            if (rng() % 2) {
                FFPoly c = rnd(1 + rng() % 2);
                f = f * c;
                g = g * c;
            }
            bool res_zero = poly_resultant(f, g).is_zero();
            CHECK(res_zero == (poly_gcd(f, g).deg() > 0));
            for (auto& r : ff_roots(f))
                CHECK(f.eval(r).is_zero());
        }
    }
    const FFDescriptor* F9 = ff_field(3, 2);
    FFPoly f(std::vector<FFElement>{F9->one(), F9->zero(), F9->one()}, F9->zero()); // x^2+1
    CHECK(ff_roots(f).size() == 2);
    const FFDescriptor* F8 = ff_field(2, 3);
    FFPoly h(std::vector<FFElement>{F8->one(), F8->one(), F8->zero(), F8->one()}, F8->zero());
    CHECK(ff_roots(h).size() == 3);
}
