#include "qf/elliptic.hpp"

#include "qf/factor.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace qf {

ECurve make_curve(const FieldDescriptor* K, const std::array<std::string, 5>& a)
{
    ECurve E;
    for (int i = 0; i < 5; ++i)
        E.a[i] = parse_element(K, a[i]);
    if (E.disc().is_zero())
        throw domain_error("singular Weierstrass model " + E.str());
    return E;
}

ECurve make_curve(const FieldDescriptor* K, const std::array<long, 5>& a)
{
    ECurve E;
    for (int i = 0; i < 5; ++i)
        E.a[i] = K->from_rat(Rat(a[i]));
    if (E.disc().is_zero())
        throw domain_error("singular Weierstrass model " + E.str());
    return E;
}

ECurve base_change(const ECurve& E, const FieldDescriptor* big)
{
    ECurve F;
    for (int i = 0; i < 5; ++i)
        F.a[i] = embed(E.a[i], big);
    return F;
}

EPointK make_point(const FieldDescriptor* K, const std::string& x, const std::string& y)
{
    return EPointK(parse_element(K, x), parse_element(K, y));
}

ECurveFF reduce_curve(const ECurve& E, const PrimeIdealData& P)
{
    ECurveFF R;
    for (int i = 0; i < 5; ++i)
        R.a[i] = P.residue(E.a[i]);
    return R;
}

EPointFF reduce_point(const EPointK& Q, const PrimeIdealData& P)
{
    if (Q.inf || P.valuation(Q.x) < 0)
        return EPointFF();
    return EPointFF(P.residue(Q.x), P.residue(Q.y));
}

uint64_t count_points(const ECurveFF& E)
{
    if (E.disc().is_zero())
        throw domain_error("count_points: singular reduction");
    const FFDescriptor* F = E.a[0].F;
    auto all = ff_enumerate(F, 1ULL << 26);
    uint64_t n = 1;
    if (F->p != 2) {
        int64_t s = 0;
        FFElement four = F->from_int(4);
        for (auto& x : all) {
            FFElement l = E.a1() * x + E.a3();
            FFElement d = l * l + four * (((x + E.a2()) * x + E.a4()) * x + E.a6());
            s += ff_chi(d);
        }
        return static_cast<uint64_t>(static_cast<int64_t>(F->q) + 1 + s);
    }
    for (auto& x : all)
        for (auto& y : all)
            if (E.defect(x, y).is_zero())
                ++n;
    return n;
}

uint64_t reduction_count(const ECurve& E, uint64_t p)
{
    const FieldDescriptor* K = base_field(E);
    if (K->n != 1)
        throw domain_error("reduction_count expects a curve over Q");
    const SplittingData S = splitting_type(p, K);
    const PrimeIdealData& P = S.primes.front();
    for (auto& c : E.a)
        if (P.valuation(c) < 0)
            throw domain_error("reduction_count: model not integral at " + std::to_string(p));
    if (P.valuation(E.disc()) > 0)
        throw domain_error("reduction_count: bad reduction at " + std::to_string(p));
    return count_points(reduce_curve(E, P));
}

/* ---- Tate's algorithm ---- */

namespace {

struct Local {
    const PrimeIdealData& P;
    uint64_t p;
    FieldElement pi;

    long val(const FieldElement& x) const { return x.is_zero() ? VAL_INF : P.valuation(x); }
    bool pdiv(const FieldElement& x) const { return val(x) > 0; }
    FFElement red(const FieldElement& x) const { return P.residue(x); }
    FieldElement lift(const FFElement& r) const { return P.lift(r); }
    /* p-th root in the residue field */
    FFElement proot(const FFElement& r) const { return r.pow(Int(static_cast<unsigned long>(P.residue_field->q / p))); }
    FFElement k(long n) const { return P.residue_field->from_int(n); }

    bool quad_roots(const FFElement& a, const FFElement& b, const FFElement& c) const
    {
        if (a.is_zero())
            return !b.is_zero() || c.is_zero();
        if (p != 2)
            return ff_is_square(b * b - k(4) * a * c);
        if (b.is_zero())
            return true;
        FFElement z = a * c / (b * b), tr = z, w = z;
        for (int i = 1; i < P.residue_field->k; ++i) {
            w = w * w;
            tr = tr + w;
        }
        return tr.is_zero();
    }
    int cubic_roots(const FFElement& b, const FFElement& c, const FFElement& d) const
    {
        FFPoly f(std::vector<FFElement>{d, c, b, k(1)}, k(0));
        return static_cast<int>(ff_roots(f).size());
    }
};

} // namespace

TateResult tate_local(const ECurve& E0, const PrimeIdealData& P)
{
    if (P.K != base_field(E0))
        throw domain_error("tate_local: prime and curve over different fields");
    Local L{P, P.p, P.uniformizer};
    TateResult R;
    const FieldDescriptor* K = P.K;
    const FieldElement& pi = L.pi;
    ECurve C = E0;
    /* integral model at P */
    {
        static const int w[5] = {1, 2, 3, 4, 6};
        long kk = 0;
        for (int i = 0; i < 5; ++i) {
            long v = L.val(C.a[i]);
            if (v < 0)
                kk = std::max(kk, (-v + w[i] - 1) / w[i]);
        }
        if (kk > 0) {
            C = C.scale(pi.pow(-kk));
            R.steps.push_back("scale by pi^" + std::to_string(kk) + " for integrality");
        }
    }
    const FieldElement pi2 = pi * pi, pi3 = pi2 * pi, pi4 = pi3 * pi;
    const uint64_t p = L.p;
    const FieldElement halfmodp = K->from_rat(Rat(Int(static_cast<unsigned long>((p + 1) / 2))));
    auto Z = [&](long n) { return K->from_rat(Rat(n)); };

    for (int round = 0; round < 64; ++round) {
        FieldElement D = C.disc();
        long vD = L.val(D);
        R.v_min_disc = vD;
        R.minimal_model = C;
        if (vD == 0) {
            R.kodaira = "I0";
            R.conductor_exponent = 0;
            R.reduction = Reduction::Good;
            R.tamagawa = 1;
            return R;
        }
        FFElement a1 = L.red(C.a1()), a2 = L.red(C.a2()), a3 = L.red(C.a3()), a4 = L.red(C.a4()), a6 = L.red(C.a6());
        FFElement r, t;
        if (p == 2) {
            if (L.pdiv(C.b2())) {
                r = L.proot(a4);
                t = L.proot(((r + a2) * r + a4) * r + a6);
            } else {
                FFElement ia = a1.inv();
                r = ia * a3;
                t = ia * (a4 + r * r);
            }
        } else if (p == 3) {
            if (L.pdiv(C.b2()))
                r = L.proot(-L.red(C.b6()));
            else
                r = -L.red(C.b4()) / L.red(C.b2());
            t = a1 * r + a3;
        } else {
            if (L.pdiv(C.c4()))
                r = -L.red(C.b2()) / L.k(12);
            else
                r = -(L.red(C.c6()) + L.red(C.b2()) * L.red(C.c4())) / (L.k(12) * L.red(C.c4()));
            t = -(a1 * r + a3) / L.k(2);
        }
        C = C.rst(L.lift(r), K->zero(), L.lift(t));
        R.steps.push_back("translate r=" + L.lift(r).str() + " t=" + L.lift(t).str());

        if (!L.pdiv(C.c4())) {
            R.reduction = Reduction::Multiplicative;
            R.split = L.quad_roots(L.k(1), L.red(C.a1()), -L.red(C.a2()));
            R.kodaira = "I" + std::to_string(vD);
            R.conductor_exponent = 1;
            R.tamagawa = R.split ? static_cast<int>(vD) : (vD % 2 == 0 ? 2 : 1);
            R.minimal_model = C;
            return R;
        }
        R.reduction = Reduction::Additive;
        R.minimal_model = C;
        if (L.val(C.a6()) < 2) {
            R.kodaira = "II";
            R.conductor_exponent = static_cast<int>(vD);
            R.tamagawa = 1;
            return R;
        }
        if (L.val(C.b8()) < 3) {
            R.kodaira = "III";
            R.conductor_exponent = static_cast<int>(vD - 1);
            R.tamagawa = 2;
            return R;
        }
        if (L.val(C.b6()) < 3) {
            R.kodaira = "IV";
            R.conductor_exponent = static_cast<int>(vD - 2);
            R.tamagawa = L.quad_roots(L.k(1), L.red(C.a3() / pi), -L.red(C.a6() / pi2)) ? 3 : 1;
            return R;
        }
        FieldElement s, tt;
        if (p == 2) {
            s = L.lift(L.proot(L.red(C.a2())));
            tt = pi * L.lift(L.proot(L.red(C.a6() / pi2)));
        } else if (p == 3) {
            s = C.a1();
            tt = C.a3();
        } else {
            s = -C.a1() * halfmodp;
            tt = -C.a3() * halfmodp;
        }
        C = C.rst(K->zero(), s, tt);
        R.steps.push_back("translate s=" + s.str() + " t=" + tt.str());
        FFElement b = L.red(C.a2() / pi), c = L.red(C.a4() / pi2), d = L.red(C.a6() / pi3);
        FFElement bb = b * b, cc = c * c, bc = b * c;
        FFElement w = L.k(27) * d * d - bb * cc + L.k(4) * b * bb * d - L.k(18) * bc * d + L.k(4) * c * cc;
        FFElement x = L.k(3) * c - bb;
        int sw = w.is_zero() ? (x.is_zero() ? 3 : 2) : 1;
        R.minimal_model = C;
        if (sw == 1) {
            R.kodaira = "I0*";
            R.conductor_exponent = static_cast<int>(vD - 4);
            R.tamagawa = 1 + L.cubic_roots(b, c, d);
            return R;
        }
        if (sw == 2) {
            FFElement rr;
            if (p == 2)
                rr = L.proot(c);
            else if (p == 3)
                rr = c / b;
            else
                rr = (bc - L.k(9) * d) / (L.k(2) * x);
            C = C.rst(pi * L.lift(rr), K->zero(), K->zero());
            int ix = 3, iy = 3;
            FieldElement mx = pi2, my = pi2;
            for (;;) {
                FieldElement a2t = C.a2() / pi, a3t = C.a3() / my, a4t = C.a4() / (pi * mx), a6t = C.a6() / (mx * my);
                if (L.pdiv(a3t * a3t + Z(4) * a6t)) {
                    FieldElement t2;
                    if (p == 2)
                        t2 = my * L.lift(L.proot(L.red(a6t)));
                    else
                        t2 = my * L.lift(L.red(-a3t * halfmodp));
                    C = C.rst(K->zero(), K->zero(), t2);
                    my = my * pi;
                    ++iy;
                    a2t = C.a2() / pi;
                    a3t = C.a3() / my;
                    a4t = C.a4() / (pi * mx);
                    a6t = C.a6() / (mx * my);
                    if (L.pdiv(a4t * a4t - Z(4) * a6t * a2t)) {
                        FieldElement r2;
                        if (p == 2)
                            r2 = mx * L.lift(L.proot(L.red(a6t) / L.red(a2t)));
                        else
                            r2 = mx * L.lift(-L.red(a4t) / (L.k(2) * L.red(a2t)));
                        C = C.rst(r2, K->zero(), K->zero());
                        mx = mx * pi;
                        ++ix;
                    } else {
                        R.tamagawa = L.quad_roots(L.red(a2t), L.red(a4t), L.red(a6t)) ? 4 : 2;
                        break;
                    }
                } else {
                    R.tamagawa = L.quad_roots(L.k(1), L.red(a3t), -L.red(a6t)) ? 4 : 2;
                    break;
                }
                if (ix + iy > 400)
                    throw domain_error("tate_local: I_n* loop did not terminate");
            }
            int m = ix + iy - 5;
            R.kodaira = "I" + std::to_string(m) + "*";
            R.conductor_exponent = static_cast<int>(vD - m - 4);
            R.minimal_model = C;
            return R;
        }
        /* triple root */
        FFElement rr;
        if (p == 2)
            rr = b;
        else if (p == 3)
            rr = L.proot(-d);
        else
            rr = -b / L.k(3);
        C = C.rst(pi * L.lift(rr), K->zero(), K->zero());
        FieldElement a3t = C.a3() / pi2, a6t = C.a6() / pi4;
        R.minimal_model = C;
        if (!L.pdiv(a3t * a3t + Z(4) * a6t)) {
            R.kodaira = "IV*";
            R.conductor_exponent = static_cast<int>(vD - 6);
            R.tamagawa = L.quad_roots(L.k(1), L.red(a3t), -L.red(a6t)) ? 3 : 1;
            return R;
        }
        FieldElement t3;
        if (p == 2)
            t3 = -pi2 * L.lift(L.proot(L.red(a6t)));
        else
            t3 = pi2 * L.lift(L.red(-a3t * halfmodp));
        C = C.rst(K->zero(), K->zero(), t3);
        R.minimal_model = C;
        if (L.val(C.a4()) < 4) {
            R.kodaira = "III*";
            R.conductor_exponent = static_cast<int>(vD - 7);
            R.tamagawa = 2;
            return R;
        }
        if (L.val(C.a6()) < 6) {
            R.kodaira = "II*";
            R.conductor_exponent = static_cast<int>(vD - 8);
            R.tamagawa = 1;
            return R;
        }
        C = C.scale(pi);
        R.steps.push_back("non-minimal: scale by pi");
    }
    throw domain_error("tate_local: too many minimalization rounds");
}

TateResult tate_local(const ECurve& E, uint64_t p)
{
    auto S = splitting_type(p, base_field(E));
    if (S.primes.size() != 1)
        throw domain_error("tate_local: " + std::to_string(p) + " is not a single prime of " + base_field(E)->name);
    return tate_local(E, S.primes.front());
}

Int conductor(const ECurve& E)
{
    const FieldDescriptor* K = base_field(E);
    if (K->n != 1)
        throw domain_error("conductor expects a curve over Q");
    /* integral model */
    Int den = 1;
    for (auto& c : E.a)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.x[0].get_den_mpz_t());
    ECurve C = E.scale(K->from_rat(Rat(1, den)));
    Rat D = C.disc().x[0];
    Int N = 1;
    for (auto& [q, e] : factor_integer(abs(D.get_num())).factors) {
        (void)e;
        TateResult T = tate_local(C, q.get_ui());
        N *= ipow(q, T.conductor_exponent);
    }
    return N;
}

/* ---- division polynomials ---- */

namespace {

struct DivPolys {
    KPoly F; // 4x^3 + b2 x^2 + 2 b4 x + b6
    std::vector<KPoly> f;
};

DivPolys div_polys(const ECurve& E, int n)
{
    const FieldDescriptor* K = base_field(E);
    auto C = [&](const FieldElement& v) { return KPoly::constant(v); };
    FieldElement b2 = E.b2(), b4 = E.b4(), b6 = E.b6(), b8 = E.b8();
    auto Z = [&](long v) { return K->from_rat(Rat(v)); };
    DivPolys D;
    D.F = kpoly({b6, Z(2) * b4, b2, Z(4)});
    std::vector<KPoly>& f = D.f;
    f.push_back(KPoly(K->zero()));
    f.push_back(C(K->one()));
    f.push_back(C(K->one()));
    f.push_back(kpoly({b8, Z(3) * b6, Z(3) * b4, b2, Z(3)}));
    f.push_back(kpoly({b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, Z(10) * b8, Z(10) * b6, Z(5) * b4, b2, Z(2)}));
    const KPoly F2 = D.F * D.F;
    for (int k = 5; k <= n + 1; ++k) {
        int m = k / 2;
        if (k % 2 == 1) {
            if (m % 2 == 0)
                f.push_back(F2 * f[m + 2] * poly_pow(f[m], 3) - f[m - 1] * poly_pow(f[m + 1], 3));
            else
                f.push_back(f[m + 2] * poly_pow(f[m], 3) - F2 * f[m - 1] * poly_pow(f[m + 1], 3));
        } else {
            f.push_back(f[m] * (f[m + 2] * f[m - 1] * f[m - 1] - f[m - 2] * f[m + 1] * f[m + 1]));
        }
    }
    return D;
}

} // namespace

KPoly division_poly(const ECurve& E, int n)
{
    if (n < 1)
        throw domain_error("division_poly needs n >= 1");
    if (n == 2)
        return div_polys(E, 2).F;
    return div_polys(E, n).f[n];
}

KPoly division_psi_sq(const ECurve& E, int n)
{
    DivPolys D = div_polys(E, n);
    KPoly s = D.f[n] * D.f[n];
    return n % 2 == 0 ? D.F * s : s;
}

KPoly division_phi(const ECurve& E, int n)
{
    DivPolys D = div_polys(E, n);
    KPoly X = KPoly::x(base_field(E)->one());
    if (n == 1)
        return X;
    if (n % 2 == 1)
        return X * D.f[n] * D.f[n] - D.F * D.f[n + 1] * D.f[n - 1];
    return X * D.F * D.f[n] * D.f[n] - D.f[n + 1] * D.f[n - 1];
}

namespace {

/* points of E(K) with the given x */
std::vector<EPointK> points_with_x(const ECurve& E, const FieldElement& x)
{
    const FieldDescriptor* K = base_field(E);
    FieldElement l = E.a1() * x + E.a3();
    FieldElement d = l * l + K->from_rat(4) * (((x + E.a2()) * x + E.a4()) * x + E.a6());
    std::vector<EPointK> out;
    auto s = field_sqrt(d);
    if (!s)
        return out;
    FieldElement half = K->from_rat(Rat(1, 2));
    out.emplace_back(x, (*s - l) * half);
    if (!s->is_zero())
        out.emplace_back(x, (-*s - l) * half);
    return out;
}

bool point_less(const EPointK& a, const EPointK& b)
{
    if (a.inf != b.inf)
        return a.inf;
    if (a.inf)
        return false;
    for (int i = 0; i < 4; ++i) {
        if (a.x.x[i] != b.x.x[i])
            return a.x.x[i] < b.x.x[i];
    }
    for (int i = 0; i < 4; ++i) {
        if (a.y.x[i] != b.y.x[i])
            return a.y.x[i] < b.y.x[i];
    }
    return false;
}

void add_unique(std::vector<EPointK>& v, const EPointK& P)
{
    for (auto& Q : v)
        if (Q == P)
            return;
    v.push_back(P);
}

} // namespace

DivisionCheck division_poly_check(const ECurve& E, int ell)
{
    if (ell < 2 || ell > 13 || !is_prime_u64(static_cast<uint64_t>(ell)))
        throw domain_error("division_poly_check: ell must be a prime <= 13");
    DivisionCheck R;
    R.ell = ell;
    KPoly psi = division_poly(E, ell);
    R.x_roots = roots_in_field(psi);
    for (auto& x : R.x_roots)
        for (auto& P : points_with_x(E, x))
            if (ec_mul(E, ell, P).inf)
                R.points.push_back(P);
    std::sort(R.points.begin(), R.points.end(), point_less);
    return R;
}

TorsionResult torsion_subgroup(const ECurve& E)
{
    const FieldDescriptor* K = base_field(E);
    if (K->n > 2)
        throw domain_error("torsion_subgroup supports Q and quadratic fields");
    TorsionResult T;
    /* gcd bound over split good primes */
    FieldElement D = E.disc();
    long bound = 0;
    for (uint64_t p = 5; T.primes_used.size() < 8; p = next_prime(p)) {
        auto S = splitting_type(p, K);
        if (S.g != K->n)
            continue;
        const PrimeIdealData& P = S.primes.front();
        bool ok = P.valuation(D) == 0;
        for (auto& c : E.a)
            ok = ok && P.valuation(c) >= 0;
        if (!ok)
            continue;
        long n = static_cast<long>(count_points(reduce_curve(E, P)));
        bound = std::gcd(bound, n);
        T.primes_used.push_back(p);
    }
    T.gcd_bound = bound;
    std::vector<EPointK> G{EPointK()};
    auto close = [&]() {
        for (bool grew = true; grew;) {
            grew = false;
            std::vector<EPointK> cur = G;
            for (auto& A : cur)
                for (auto& B : cur) {
                    EPointK C = ec_add(E, A, B);
                    size_t before = G.size();
                    add_unique(G, C);
                    grew = grew || G.size() != before;
                    if (static_cast<long>(G.size()) > bound)
                        throw domain_error("torsion exceeds the reduction bound");
                }
        }
    };
    for (auto& [q, e] : factor_integer(Int(bound)).factors) {
        (void)e;
        long ell = q.get_si();
        KPoly psi_sq = division_psi_sq(E, static_cast<int>(ell));
        KPoly phi = division_phi(E, static_cast<int>(ell));
        for (bool grew = true; grew;) {
            grew = false;
            std::vector<EPointK> cur = G;
            for (auto& P : cur) {
                KPoly eq = P.inf ? (ell == 2 ? division_poly(E, 2) : division_poly(E, static_cast<int>(ell)))
                                 : phi - KPoly::constant(P.x) * psi_sq;
                for (auto& x : roots_in_field(eq))
                    for (auto& Q : points_with_x(E, x)) {
                        if (ec_mul(E, ell, Q) != P)
                            continue;
                        size_t before = G.size();
                        add_unique(G, Q);
                        if (G.size() != before) {
                            close();
                            grew = true;
                        }
                    }
            }
        }
    }
    std::sort(G.begin(), G.end(), point_less);
    T.points = G;
    T.order = static_cast<long>(G.size());
    long expo = 1;
    EPointK gen1;
    for (auto& P : G) {
        long o = ec_order(E, P, T.order);
        if (o > expo) {
            expo = o;
            gen1 = P;
        }
    }
    if (T.order == 1)
        return T;
    T.generators.push_back(gen1);
    if (expo == T.order) {
        T.invariants = {expo};
        return T;
    }
    T.invariants = {T.order / expo, expo};
    /* second generator: a point of order n1 outside <gen1> */
    std::vector<EPointK> cyc;
    EPointK Q;
    for (long i = 0; i < expo; ++i) {
        cyc.push_back(Q);
        Q = ec_add(E, Q, gen1);
    }
    for (auto& P : G) {
        if (ec_order(E, P, T.order) != T.order / expo)
            continue;
        bool inside = false;
        EPointK M = P;
        for (long j = 1; j < T.order / expo && !inside; ++j) {
            for (auto& c : cyc)
                if (c == M)
                    inside = true;
            M = ec_add(E, M, P);
        }
        for (auto& c : cyc)
            if (c == P)
                inside = true;
        if (!inside) {
            T.generators.push_back(P);
            break;
        }
    }
    return T;
}

std::vector<EPointK> point_search(const ECurve& E, long H)
{
    if (H < 1)
        throw domain_error("point_search needs H >= 1");
    const FieldDescriptor* K = base_field(E);
    std::vector<EPointK> out{EPointK()};
    std::set<std::string> seen;
    std::vector<long> n(K->n, -H);
    for (;;) {
        for (long c = 1; c <= H; ++c) {
            Int g = c;
            for (long v : n)
                g = gcd(g, Int(v));
            if (g != 1)
                continue;
            FieldElement x(K);
            for (int i = 0; i < K->n; ++i)
                x.x[i] = Rat(n[i], c);
            for (auto& P : points_with_x(E, x))
                if (seen.insert(P.str()).second)
                    out.push_back(P);
        }
        int i = 0;
        while (i < K->n && n[i] == H) {
            n[i] = -H;
            ++i;
        }
        if (i == K->n)
            break;
        ++n[i];
    }
    std::sort(out.begin(), out.end(), point_less);
    return out;
}

/* ---- fixtures ---- */

const char* fixtures_json()
{
    return R"([
  {"label": "26b1", "a": ["1", "-1", "1", "-3", "3"], "conductor": 26},
  {"label": "27a3", "a": ["0", "0", "1", "0", "0"], "conductor": 27},
  {"label": "32a1", "a": ["0", "0", "0", "4", "0"], "conductor": 32},
  {"label": "34a1", "a": ["1", "0", "2", "-4", "0"], "conductor": 34},
  {"label": "38b1", "a": ["1", "1", "1", "0", "1"], "conductor": 38},
  {"label": "64a1", "a": ["0", "0", "0", "-4", "0"], "conductor": 64},
  {"label": "432b1", "a": ["0", "0", "0", "0", "-4"], "conductor": 432},
  {"label": "1728a1", "a": ["0", "0", "0", "0", "2"], "conductor": 1728},
  {"label": "1728j1", "a": ["0", "0", "0", "84", "-208"], "conductor": 1728}
])";
}

std::vector<CurveFixture> parse_fixtures_json(const std::string& text)
{
    std::vector<CurveFixture> out;
    auto j = nlohmann::json::parse(text);
    for (auto& e : j) {
        CurveFixture f;
        f.label = e.at("label").get<std::string>();
        auto a = e.at("a");
        if (a.size() != 5)
            throw domain_error("fixture " + f.label + ": need five coefficients");
        for (int i = 0; i < 5; ++i)
            f.a[i] = a[i].get<std::string>();
        f.conductor = e.at("conductor").get<long>();
        out.push_back(f);
    }
    return out;
}

const std::vector<CurveFixture>& curve_fixtures()
{
    static const std::vector<CurveFixture> fx = parse_fixtures_json(fixtures_json());
    return fx;
}

ECurve fixture_curve(const std::string& label, const FieldDescriptor* K)
{
    for (auto& f : curve_fixtures())
        if (f.label == label) {
            ECurve E = make_curve(rational_field(), f.a);
            return K && K->n > 1 ? base_change(E, K) : E;
        }
    throw domain_error("no fixture labelled " + label);
}

} // namespace qf
