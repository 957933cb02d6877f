#include "doctest.h"

#include "qf/factor.hpp"
#include "qf/mpoly.hpp"
#include "qf/poly.hpp"

#include <random>

using namespace qf;

namespace {

using QPoly = Poly<Rat>;

/* Bareiss determinant of the Sylvester matrix */
Rat sylvester_resultant(const QPoly& f, const QPoly& g)
{
    int m = f.deg(), n = g.deg();
    int N = m + n;
    std::vector<std::vector<Rat>> M(N, std::vector<Rat>(N, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            M[i][i + j] = f[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            M[n + i][i + j] = g[n - j];
    Rat det = 1;
    for (int c = 0; c < N; ++c) {
        int piv = -1;
        for (int r = c; r < N; ++r)
            if (M[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0)
            return 0;
        if (piv != c) {
            std::swap(M[piv], M[c]);
            det = -det;
        }
        det *= M[c][c];
        for (int r = c + 1; r < N; ++r) {
            Rat k = M[r][c] / M[c][c];
            for (int j = c; j < N; ++j)
                M[r][j] -= k * M[c][j];
        }
    }
    return det;
}

QPoly random_poly(std::mt19937_64& rng, int deg, int bound)
{
    std::uniform_int_distribution<int> d(-bound, bound);
    std::vector<Rat> c;
    for (int i = 0; i <= deg; ++i)
        c.push_back(d(rng));
    if (c.back() == 0)
        c.back() = 1;
    return QPoly(c, Rat(0));
}

} // namespace

TEST_CASE("rational normalisation and field laws")
{
    Rat a = make_rat(6, -4);
    CHECK(a.get_num() == -3);
    CHECK(a.get_den() == 2);
    CHECK(to_string(a) == "-3/2");
    CHECK(parse_rat("10/4") == Rat(5, 2));
    CHECK_THROWS_AS(parse_rat("1/0"), domain_error);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-50, 50);
    for (int i = 0; i < 200; ++i) {
        Rat x = make_rat(d(rng), d(rng) | 1), y = make_rat(d(rng), d(rng) | 1), z = make_rat(d(rng), 7);
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        Rat w = x;
        w.canonicalize();
        CHECK(w == x);
    }
}

TEST_CASE("resultant examples")
{
    QPoly f{-2, 0, 1}, g{-3, 1};
    CHECK(poly_resultant(f, g) == 7);
    QPoly h{1, 0, 1};
    CHECK(poly_resultant(h, h) == 0);
    CHECK_THROWS_AS(poly_resultant(QPoly(Rat(0)), g), domain_error);
}

TEST_CASE("subresultant agrees with Sylvester determinant")
{
    std::mt19937_64 rng(11);
    for (int it = 0; it < 300; ++it) {
        int m = 1 + rng() % 6, n = 1 + rng() % 6;
        QPoly f = random_poly(rng, m, 9), g = random_poly(rng, n, 9);
        CHECK(poly_resultant(f, g) == sylvester_resultant(f, g));
        QPoly c = random_poly(rng, 1 + rng() % 2, 4);
        if (f.deg() + c.deg() <= 6 && g.deg() + c.deg() <= 6)
            CHECK(poly_resultant(f * c, g * c) == 0);
    }
}

TEST_CASE("resultant over a polynomial ring")
{
    // Res_y(y^2 - x, y - x) = x^2 - x
    using PP = Poly<QPoly>;
    QPoly z(Rat(0));
    QPoly X{0, 1};
    PP a(std::vector<QPoly>{-X, QPoly(Rat(0)), QPoly{1}}, z);
    PP b(std::vector<QPoly>{-X, QPoly{1}}, z);
    CHECK(poly_resultant(a, b) == (QPoly{0, -1, 1}));
}

TEST_CASE("gcd")
{
    QPoly a{-1, 0, 1}, b{1, -2, 1};
    CHECK(poly_gcd(a, b) == (QPoly{-1, 1}));
    CHECK(poly_gcd(QPoly{2, 0, 0, 1}, QPoly{-1, 1}) == (QPoly{1}));
    QPoly f{4, 0, 2};
    CHECK(poly_gcd(f, QPoly(Rat(0))) == (QPoly{2, 0, 1}));
    CHECK_THROWS_AS(poly_gcd(QPoly(Rat(0)), QPoly(Rat(0))), domain_error);
    QPoly s, t;
    QPoly g = poly_xgcd(a, b, s, t);
    CHECK(s * a + t * b == g);
}

TEST_CASE("factor_integer")
{
    auto F = factor_integer(2299);
    REQUIRE(F.factors.size() == 2);
    CHECK(F.factors[0] == std::make_pair(Int(11), 2u));
    CHECK(F.factors[1] == std::make_pair(Int(19), 1u));
    CHECK(factor_integer(42997).str() == "19*31*73");
    auto G = factor_integer(-196);
    CHECK(G.sign == -1);
    CHECK(G.str() == "-2^2*7^2");
    CHECK_THROWS_AS(factor_integer(0), domain_error);
    Int big("1000000016000000063");  // 1000000007 * 1000000009
    CHECK(factor_integer(big).str() == "1000000007*1000000009");
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        Int n = Int(static_cast<unsigned long>(rng() >> 4));
        if (n == 0)
            continue;
        auto H = factor_integer(n);
        CHECK(H.value() == n);
        for (size_t k = 0; k < H.factors.size(); ++k) {
            CHECK(is_prime(H.factors[k].first));
            if (k)
                CHECK(H.factors[k - 1].first < H.factors[k].first);
        }
    }
}

TEST_CASE("primality")
{
    CHECK(is_prime(Int(2)));
    CHECK(!is_prime(Int(1)));
    CHECK(is_prime(Int(1000000007)));
    CHECK(!is_prime(Int(561)));
    CHECK_THROWS_AS(is_prime(Int("170141183460469231731687303715884105727")), domain_error);
}

TEST_CASE("multivariate arithmetic and elimination")
{
    using M = MPoly<Rat>;
    M x = M::var(2, 0, 0), y = M::var(2, 1, 0);
    M p = (x + y) * (x - y);
    CHECK(p == x * x - y * y);
    CHECK(exact_div(p, x + y) == x - y);
    CHECK_THROWS_AS(exact_div(p, x + y + M::constant(2, 1)), domain_error);
    // Res_y(x^2 + y^2 - 1, y - x) = 2x^2 - 1 up to sign
    M r = resultant_in(x * x + y * y - M::constant(2, 1), y - x, 1);
    CHECK((r == M::constant(2, 2) * x * x - M::constant(2, 1) || r == M::constant(2, 1) - M::constant(2, 2) * x * x));
    CHECK(p.subst(1, x) .is_zero());
}
