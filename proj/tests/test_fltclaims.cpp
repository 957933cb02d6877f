#include "doctest.h"

#include "qf/fltclaims.hpp"

#include <algorithm>
#include <set>

using namespace qf;

namespace {

const FieldDescriptor* L2() { return quadratic_field(2); }

bool has_check(const std::vector<CheckResult>& v, const std::string& name, Verdict want)
{
    for (const CheckResult& c : v)
        if (c.name == name)
            return c.verdict == want;
    return false;
}

std::vector<std::string> xy = {"x", "y"}, XY = {"X", "Y"};

} // namespace

TEST_CASE("Frey curve plumbing")
{
    const FieldDescriptor* Q = rational_field();
    FreyData D = frey_curve(Q->from_rat(3), Q->from_rat(4), Q->from_rat(5), 2);
    CHECK(D.on_fermat);
    CHECK(D.disc_identity());
    CHECK(D.delta == Q->from_rat(16 * 3600L * 3600L));

    FreyData G = frey_curve(Q->from_rat(2), Q->from_rat(3), Q->from_rat(7), 3);
    CHECK_FALSE(G.on_fermat);
    CHECK(G.delta == Q->from_rat(16) * Q->from_rat(42).pow(6));

    CHECK_THROWS_AS(frey_curve(Q->zero(), Q->one(), Q->one(), 5), domain_error);
    CHECK_THROWS_AS(frey_curve(Q->from_rat(Rat(1, 2)), Q->one(), Q->one(), 5), domain_error);
}

TEST_CASE("Frey specimen at the prime above 2")
{
    const FieldDescriptor* K = field_by_name("q2q3");
    FieldElement a = parse_element(K, "1*r2+1*r6");
    FreyData D = frey_curve(a, K->one(), K->one(), 19);
    auto S = splitting_type(2, K);
    const PrimeIdealData& P = S.primes.front();
    TateResult t = tate_local(D.curve, P);
    CHECK(t.reduction == Reduction::Multiplicative);
    CHECK(t.v_min_disc == 2 * P.valuation(a.pow(19)) - 32);
}

TEST_CASE("exact map checks")
{
    CurveMapCheck m{"c-to-432b1",
                    {parse_mpoly("y^2+4*x^6-1", xy)},
                    parse_mpoly("Y^2-X^3+4", XY),
                    {{parse_mpoly("1", xy), parse_mpoly("x^2", xy)}, {parse_mpoly("y", xy), parse_mpoly("x^3", xy)}},
                    xy,
                    XY};
    std::string res;
    CHECK(map_check_exact(m, &res));
    SampleReport s = map_check_sampled(m, 3, 100);
    CHECK(s.ok);
    CHECK(s.primes.size() == 3);
    for (uint64_t p : s.primes)
        CHECK(p > 1000000);
    CHECK(s.points_checked >= 300);

    m.target = parse_mpoly("Y^2-X^3+5", XY);
    CHECK_FALSE(map_check_exact(m, &res));
    CHECK_FALSE(res.empty());
    CHECK_FALSE(map_check_sampled(m, 3, 100).ok);
}

TEST_CASE("parse_mpoly")
{
    QPoly p = parse_mpoly("x^2*y - 3/2*x + 1", xy);
    CHECK(p.eval({Rat(2), Rat(3)}) == Rat(10));
    CHECK_THROWS(parse_mpoly("x^2 + z", xy));
}

TEST_CASE("quartic t-values")
{
    const FieldDescriptor* L = L2();
    auto vals = [&](std::vector<TValue> v) {
        std::set<std::string> s;
        for (auto& t : v)
            s.insert(t.str());
        return s;
    };
    std::set<std::string> small = {"-1", "0", "1", "oo"};
    CHECK(vals(quartic_t_values("32a1")) == small);
    std::set<std::string> m0 = vals(quartic_t_values_for_map(0)), m1 = vals(quartic_t_values_for_map(1));
    CHECK(m0 == std::set<std::string>{"-1", "0", "1"});
    CHECK(m1 == std::set<std::string>{"0", "1", "oo"});
    m0.insert(m1.begin(), m1.end());
    CHECK(m0 == small);
    CHECK(vals(quartic_t_values_for_map(2)) == vals(quartic_t_values("64a1")));
    auto big = quartic_t_values("64a1");
    CHECK(big.size() == 6);
    FieldElement r2 = L->sqrt_of(2);
    for (const FieldElement& t : {r2 - L->one(), -r2 - L->one()})
        CHECK(std::find(big.begin(), big.end(), TValue{false, t}) != big.end());
    CHECK(big.back().inf);
    CHECK(std::is_sorted(big.begin(), big.end()));
    CHECK_THROWS_AS(quartic_t_values("11a1"), domain_error);
    CHECK(quartic_map_u_factor(0) == 4);
    CHECK(quartic_map_u_factor(1) == 2);
    CHECK(quartic_map_u_factor(2) == 2);
}

TEST_CASE("quartic parametrization")
{
    const FieldDescriptor* L = L2();
    QuarticParam q0 = quartic_parametrization_check(L->zero());
    CHECK(q0.x2 == L->one());
    CHECK(q0.y2.is_zero());
    QuarticParam q1 = quartic_parametrization_check(L->one());
    CHECK(q1.x2.is_zero());
    CHECK(q1.y2 == L->one());
    FieldElement r2 = L->sqrt_of(2);
    QuarticParam q = quartic_parametrization_check(r2 - L->one());
    CHECK(q.identity);
    CHECK(q.x2 == r2.inv());
    CHECK(q.y2 == r2.inv());
    for (int i = -5; i <= 5; ++i)
        CHECK(quartic_parametrization_check(L->from_rat(Rat(i, 3)) + r2).identity);
}

TEST_CASE("quartic case analysis")
{
    const FieldDescriptor* L = L2();
    for (int id = 1; id <= 10; ++id) {
        CAPTURE(id);
        QuarticCase C = quartic_case_analysis(id);
        CHECK(C.id == id);
        CHECK(C.outcome == (id == 2 ? QuarticOutcome::Field : QuarticOutcome::Contradiction));
        CHECK(C.relation_in_ideal);
        CHECK(C.relation_certified);
        CHECK_FALSE(C.system.empty());
    }
    QuarticCase c1 = quartic_case_analysis(1);
    CHECK(c1.reduces_to_rational);

    QuarticCase c2 = quartic_case_analysis(2);
    CHECK(c2.F == kpoly(L, {Rat(2), Rat(1), Rat(1)}));
    CHECK(c2.field_radicand == -7);
    CHECK(c2.field == "Q(r2, sqrt(-7))");
    CHECK(c2.recovered_point_ok);

    CHECK(quartic_case_analysis(3).relation == "lambda^2 = -2 with lambda in L");
    CHECK(quartic_case_analysis(8).reason.find("4 = 0") != std::string::npos);
    for (int id : {9, 10}) {
        QuarticCase C = quartic_case_analysis(id);
        CHECK(C.eliminants.size() == 4);
        CHECK(C.reason.find("2*r2 = 0") != std::string::npos);
    }
    CHECK_THROWS_AS(quartic_case_analysis(0), domain_error);
    CHECK_THROWS_AS(quartic_case_analysis(11), domain_error);
}

TEST_CASE("Fermat points")
{
    const FieldDescriptor* K = biquadratic_field(3, 5);
    CHECK(fermat_point_check(4, K, {"1*r3", "2", "1*r5"}));
    CHECK_FALSE(fermat_point_check(2, K, {"1*r3", "2", "1*r5"}));
    CHECK(fermat_point_check(3, rational_field(), {"1", "-1", "0"}));
    CHECK_THROWS_AS(fermat_point_check(4, quadratic_field(3), {"1*r3", "2", "1*r5"}), domain_error);

    const FieldDescriptor* L = L2();
    TowerField T{L, kpoly({-L->sqrt_of(2), L->zero(), L->one()}), "L(2^(1/4))"};
    CHECK(fermat_point_check(4, T, {T.from(L->one()), T.from(L->one()), T.theta()}));
    CHECK_FALSE(fermat_point_check(2, T, {T.from(L->one()), T.from(L->one()), T.theta()}));
    KPoly th = T.theta();
    CHECK(T.mul(th, T.inv(th)) == T.from(L->one()));
}

TEST_CASE("sextic search agrees with brute force")
{
    /* y^2 = -x^6 + 28 over Q(sqrt3) has (+-sqrt3, +-1) */
    std::vector<long> f = {28, 0, 0, 0, 0, 0, -1};
    const long H = 12, d = 3;
    const FieldDescriptor* K = quadratic_field(d);
    FieldElement rd = K->sqrt_of(d);
    std::set<std::string> naive;
    for (long c = 1; c <= H; ++c)
        for (long n1 = -H; n1 <= H; ++n1)
            for (long n0 = -H; n0 <= H; ++n0) {
                FieldElement x = (K->from_rat(Rat(n0)) + K->from_rat(Rat(n1)) * rd) * K->from_rat(Rat(1) / c);
                FieldElement v = K->from_rat(Rat(28)) - x.pow(6), y;
                if (is_square(v, &y)) {
                    naive.insert(SearchPoint{x, y}.str());
                    naive.insert(SearchPoint{x, -y}.str());
                }
            }
    SearchReport R = sextic_search(f, d, H);
    std::set<std::string> got;
    for (auto& p : R.points)
        got.insert(p.str());
    CHECK(got == naive);
    CHECK(got.count(SearchPoint{rd, K->one()}.str()));
    CHECK_FALSE(R.infinite_points);

    /* over Q: y^2 = x^6 + 1 has (0, +-1) and points at infinity */
    SearchReport Q = sextic_search({1, 0, 0, 0, 0, 0, 1}, 1, 50);
    CHECK(Q.points.size() == 2);
    CHECK(Q.infinite_points);

    CHECK_THROWS_AS(sextic_search(f, d, 0), domain_error);
    CHECK_THROWS_AS(sextic_search({1, 1, 1, 1}, d, 5), domain_error);
}

TEST_CASE("sextic search threads give the same points")
{
    std::vector<long> f = {52, 0, 20, 0, -3, 0, -2};
    SearchReport a = sextic_search(f, 3, 60, 1), b = sextic_search(f, 3, 60, 3);
    CHECK(a.points.size() == b.points.size());
    CHECK(a.candidates == b.candidates);
}

TEST_CASE("F_9 over F_2")
{
    auto pts = fermat9_points_f2();
    std::set<std::array<int, 3>> s(pts.begin(), pts.end());
    CHECK(s == std::set<std::array<int, 3>>{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
}

TEST_CASE("X034 twist over F_9")
{
    TwistF9Report r = x034_twist_f9();
    CHECK(r.affine_points == 0);
    CHECK(r.points_at_infinity == 1);
    CHECK(r.infinity_singular);
    CHECK(r.tangent_cone_squarefree);
    CHECK(r.rational_tangents == 0);
    CHECK(r.smooth_points == 0);
    CHECK(r.integral_certificate);
}

TEST_CASE("pipelines at small height")
{
    PipelineOptions opt;
    opt.height = 100;
    auto n9 = n9_pipeline();
    CHECK(all_verified(n9));
    CHECK(has_check(n9, "n9.identity.expansion", Verdict::Verified));
    auto n6 = n6_pipeline(opt);
    CHECK(all_verified(n6));
    for (const CheckResult& c : n6)
        if (c.name.find("search") != std::string::npos && c.verdict == Verdict::Verified)
            CHECK((c.note.rfind("evidence:", 0) == 0 || c.note.rfind("fixture:", 0) == 0));

    auto x23 = modcurve_checks("X023", opt);
    CHECK(has_check(x23, "jac.x023.f47", Verdict::Refuted));
    CHECK(has_check(x23, "jac.x023.f71", Verdict::Verified));
    auto x34 = modcurve_checks("X034", opt);
    CHECK(has_check(x34, "x034.map", Verdict::Refuted));
    CHECK(has_check(x34, "x034.twist.f9", Verdict::Verified));
    auto x38 = modcurve_checks("X038", opt);
    CHECK(has_check(x38, "x038.elimination", Verdict::Verified));
    CHECK(has_check(x38, "x038.discriminant", Verdict::Refuted));
    CHECK(all_verified(modcurve_checks("X026", opt)));
    CHECK_THROWS_AS(modcurve_checks("X011"), domain_error);
}
