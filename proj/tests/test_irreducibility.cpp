#include "doctest.h"

#include "qf/factor.hpp"
#include "qf/irreducibility.hpp"

using namespace qf;

namespace {

const FieldDescriptor* q2q3() { return biquadratic_field(2, 3); }
const FieldDescriptor* q2q11() { return biquadratic_field(2, 11); }

struct PrintedCell {
    char split;
    int subcase;
    int m;
    int sign;
    std::vector<const char*> factors; // "u" stands for the unit
};

/* factorizations as printed in the unit tables */
const std::vector<PrintedCell>& printed_cells()
{
    static const std::vector<PrintedCell> cells = {
        {'a', 1, 2, -1, {"-4*r2", "u"}},
        {'a', 1, 2, 1, {"6", "u"}},
        {'a', 2, 2, -1, {"2*r3", "u"}},
        {'a', 2, 2, 1, {"4", "u"}},
        {'a', 3, 2, -1, {"-4*r6", "u"}},
        {'a', 3, 2, 1, {"10", "u"}},
        {'b', 1, 1, -1, {"2", "1-1*r2"}},
        {'b', 1, 2, -1, {"-4*r2", "u"}},
        {'b', 1, 3, -1, {"-14", "7-5*r2"}},
        {'b', 1, 4, -1, {"24*r2", "12*r2-17"}},
        {'b', 2, 1, -1, {"1+1*r3"}},
        {'b', 2, 2, -1, {"2*r3", "u"}},
        {'b', 2, 3, -1, {"5", "3*r3+5"}},
        {'b', 2, 4, -1, {"8*r3", "7+4*r3"}},
        {'b', 3, 1, -1, {"2*r2", "1*r2-1*r3"}},
        {'b', 3, 2, -1, {"-4*r6", "u"}},
        {'b', 3, 3, -1, {"22", "-9*r6+22"}},
        {'b', 3, 4, -1, {"40", "120-49*r6"}},
    };
    return cells;
}

} // namespace

TEST_CASE("bounds")
{
    CHECK(oesterle_bound(8) == 6724);
    CHECK(oesterle_bound(4) == 100);
    CHECK(oesterle_bound(2) == 16);
    for (int d = 2; d < 20; d += 2)
        CHECK(oesterle_bound(d) < oesterle_bound(d + 2));
    CHECK_THROWS_AS(oesterle_bound(3), domain_error);
    CHECK_THROWS_AS(oesterle_bound(0), domain_error);

    Int B = freitas_siksek_bound(4, 1);
    Int t = ipow(Int(3), 24) + 1;
    CHECK(B == t * t);
    CHECK(B == Int("79766443077437368936324"));
    CHECK(B > Int("79000000000000000000000"));
    CHECK(B < Int("81000000000000000000000"));
}

TEST_CASE("unit power residue primes")
{
    const FieldDescriptor* K = q2q3();
    CHECK(unit_power_residue_primes(parse_element(K, "3-2*r2"), 3) == std::vector<Int>{2, 7});
    CHECK(unit_power_residue_primes(parse_element(K, "2+1*r3"), 3) == std::vector<Int>{2, 5});
    CHECK(unit_power_residue_primes(parse_element(K, "5-2*r6"), 3) == std::vector<Int>{2, 11});
    // the absolute norm is the square of the norm from Q(r2)
    CHECK(field_norm(parse_element(K, "3-2*r2").pow(3) - K->one()) == Rat(196 * 196));
    CHECK_THROWS_AS(unit_power_residue_primes(K->one(), 3), domain_error);
}

TEST_CASE("unit table against the printed factorizations")
{
    const FieldDescriptor* K = q2q3();
    auto table = unit_table(K);
    std::vector<std::string> flipped;
    REQUIRE(table.size() == printed_cells().size());
    for (size_t i = 0; i < table.size(); ++i) {
        const auto& c = table[i];
        const auto& pc = printed_cells()[i];
        CAPTURE(c.label);
        CHECK(c.split == pc.split);
        CHECK(c.subcase == pc.subcase);
        CHECK(c.m == pc.m);
        CHECK(c.sign == pc.sign);
        CHECK(is_totally_positive(c.u));
        CHECK(is_unit(c.u));
        FieldElement prod = K->one();
        for (const char* s : pc.factors)
            prod = prod * (std::string(s) == "u" ? c.u : parse_element(K, s));
        FieldElement w = c.u.pow(c.m) + K->from_rat(Rat(c.sign));
        CHECK((prod == w || prod == -w));
        if (prod == -w)
            flipped.push_back(std::string(1, c.split) + std::to_string(c.subcase) + " " + c.label);
        // the printed factors normed and factored independently
        std::set<Int> ps;
        for (const char* s : pc.factors) {
            Rat N = field_norm(std::string(s) == "u" ? c.u : parse_element(K, s));
            for (const Int& q : factor_integer(N.get_num()).primes())
                ps.insert(q);
        }
        CHECK(std::vector<Int>(ps.begin(), ps.end()) == c.primes);
    }
    // u^3 - 1 = 14(7 - 5 r2) for u = 3 - 2 r2; printed with a minus sign
    CHECK(flipped == std::vector<std::string>{"b1 u^3-1"});
    CHECK(unit_table_row_primes(K, 'a', 1) == std::set<Int>{2, 3});
    CHECK(unit_table_row_primes(K, 'a', 2) == std::set<Int>{2, 3});
    CHECK(unit_table_row_primes(K, 'a', 3) == std::set<Int>{2, 3, 5});
    CHECK(unit_table_row_primes(K, 'b', 1) == std::set<Int>{2, 3, 7});
    CHECK(unit_table_row_primes(K, 'b', 2) == std::set<Int>{2, 3, 5});
    CHECK(unit_table_row_primes(K, 'b', 3) == std::set<Int>{2, 3, 5, 11});
}

TEST_CASE("Kraus cases from Legendre symbols")
{
    const FieldDescriptor* K = q2q3();
    for (uint64_t p : primes_up_to(2000)) {
        if (p < 5)
            continue;
        EscapeReport R = kraus_check_prime(p, K);
        int l2 = legendre(Int(2), p), l3 = legendre(Int(3), p);
        CHECK(R.kcase.split == (l2 == 1 && l3 == 1 ? 'b' : 'a'));
        CHECK(legendre(Int(R.kcase.radicand), p) == 1);
        if (l2 == 1)
            CHECK(R.kcase.subcase == 1);
        else if (l3 == 1)
            CHECK(R.kcase.subcase == 2);
        else
            CHECK(R.kcase.subcase == 3);
        CHECK(R.survives() == !R.surviving_subset_sizes.empty());
    }
    CHECK_THROWS_AS(kraus_check_prime(3, K), domain_error);
    CHECK_THROWS_AS(kraus_check_prime(11, q2q11()), domain_error);
}

TEST_CASE("Kraus verdicts")
{
    CHECK_FALSE(kraus_check_prime(29, q2q3()).survives());
    EscapeReport r5 = kraus_check_prime(5, q2q3());
    CHECK(r5.survives());
    CHECK(r5.kcase.split == 'a');
    CHECK(r5.surviving_subset_sizes == std::set<int>{2});

    // 7 has residue degree 2 in this field, so it falls in case a-i
    EscapeReport r7 = kraus_check_prime(7, q2q3());
    CHECK(r7.kcase.split == 'a');
    CHECK(r7.kcase.subcase == 1);
    CHECK_FALSE(r7.survives());
    EscapeReport f7 = kraus_check_forced(7, q2q3(), 'b', 1);
    CHECK(f7.survives());
    CHECK(f7.surviving_subset_sizes.count(3));

    EscapeReport r197 = kraus_check_prime(197, q2q11());
    CHECK(r197.survives());
    CHECK(r197.kcase.subcase == 3);
    CHECK(r197.kcase.u == parse_element(q2q11(), "197+42*r22"));
}

TEST_CASE("forced cases match the table rows")
{
    const FieldDescriptor* K = q2q3();
    for (uint64_t p : {5, 7, 11})
        for (char split : {'a', 'b'})
            for (int sc = 1; sc <= 3; ++sc) {
                if (legendre(Int(K->rad[sc]), p) != 1)
                    continue;
                CAPTURE(p);
                CAPTURE(split);
                CAPTURE(sc);
                bool in_row = unit_table_row_primes(K, split, sc).count(Int(p)) > 0;
                CHECK(kraus_check_forced(p, K, split, sc).survives() == in_row);
            }
    CHECK_THROWS_AS(kraus_check_forced(11, K, 'b', 3), domain_error);
}

TEST_CASE("prime windows")
{
    PrimeWindow w = prime_window_report(q2q3(), 29, 6724);
    CHECK(w.exceptions.empty());
    CHECK(w.root_choice_consistent);
    CHECK(w.primes_checked == 858);

    PrimeWindow w11 = prime_window_report(q2q11(), 29, 6724, 4);
    CHECK(w11.exceptions == std::vector<uint64_t>{197});
    CHECK(w11.survivors == std::vector<uint64_t>{197});

    PrimeWindow w19 = prime_window_report(q2q3(), 19, 6724);
    CHECK(w19.exceptions == std::vector<uint64_t>{19, 23});
    CHECK(w19.fixture_primes == std::vector<uint64_t>{19, 23});
    CHECK(w19.survivors.empty());

    CHECK_THROWS_AS(prime_window_report(q2q3(), 17, 100), domain_error);
    CHECK(torsion_primes_degree8().back() == 23);
    CHECK(torsion_primes_degree8().size() == 9);
}

TEST_CASE("window results do not depend on threads")
{
    PrimeWindow a = prime_window_report(q2q11(), 19, 3000, 1);
    PrimeWindow b = prime_window_report(q2q11(), 19, 3000, 8);
    CHECK(a.exceptions == b.exceptions);
    CHECK(a.survivors == b.survivors);
}
