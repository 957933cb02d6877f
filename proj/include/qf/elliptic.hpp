#ifndef QF_ELLIPTIC_HPP
#define QF_ELLIPTIC_HPP

#include "qf/finfield.hpp"
#include "qf/numfield.hpp"

#include <array>
#include <string>
#include <vector>

namespace qf {

inline FieldElement scalar_like(const FieldElement& like, long n) { return like.K->from_rat(Rat(n)); }
inline FFElement scalar_like(const FFElement& like, long n) { return like.F->from_int(n); }

template <class F>
struct EPoint {
    bool inf = true;
    F x, y;

    EPoint() = default;
    EPoint(const F& x_, const F& y_) : inf(false), x(x_), y(y_) {}
    bool operator==(const EPoint& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
    bool operator!=(const EPoint& o) const { return !(*this == o); }
    std::string str() const { return inf ? "O" : "(" + ring<F>::str(x) + ", " + ring<F>::str(y) + ")"; }
};

/* y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6; a = {a1, a2, a3, a4, a6} */
template <class F>
struct WeierstrassCurve {
    std::array<F, 5> a;

    const F& a1() const { return a[0]; }
    const F& a2() const { return a[1]; }
    const F& a3() const { return a[2]; }
    const F& a4() const { return a[3]; }
    const F& a6() const { return a[4]; }
    F k(long n) const { return scalar_like(a[0], n); }

    F b2() const { return a1() * a1() + k(4) * a2(); }
    F b4() const { return a1() * a3() + k(2) * a4(); }
    F b6() const { return a3() * a3() + k(4) * a6(); }
    F b8() const
    {
        return a1() * a1() * a6() + k(4) * a2() * a6() - a1() * a3() * a4() + a2() * a3() * a3() - a4() * a4();
    }
    F c4() const { return b2() * b2() - k(24) * b4(); }
    F c6() const { return -(b2() * b2() * b2()) + k(36) * b2() * b4() - k(216) * b6(); }
    F disc() const
    {
        F B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -(B2 * B2 * B8) - k(8) * B4 * B4 * B4 - k(27) * B6 * B6 + k(9) * B2 * B4 * B6;
    }

    /* y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) */
    F defect(const F& x, const F& y) const
    {
        F rhs = ((x + a2()) * x + a4()) * x + a6();
        return y * y + (a1() * x + a3()) * y - rhs;
    }
    bool on_curve(const EPoint<F>& P) const { return P.inf || ring<F>::is_zero(defect(P.x, P.y)); }

    /* x = x' + r, y = y' + s x' + t */
    WeierstrassCurve rst(const F& r, const F& s, const F& t) const
    {
        WeierstrassCurve c;
        c.a[0] = a1() + k(2) * s;
        c.a[1] = a2() - s * a1() + k(3) * r - s * s;
        c.a[2] = a3() + r * a1() + k(2) * t;
        c.a[3] = a4() - s * a3() + k(2) * r * a2() - (t + r * s) * a1() + k(3) * r * r - k(2) * s * t;
        c.a[4] = a6() + r * a4() + r * r * a2() + r * r * r - t * a3() - t * t - r * t * a1();
        return c;
    }
    /* a_i -> a_i / u^i */
    WeierstrassCurve scale(const F& u) const
    {
        WeierstrassCurve c;
        static const int w[5] = {1, 2, 3, 4, 6};
        for (int i = 0; i < 5; ++i)
            c.a[i] = a[i] / ring_pow(u, w[i]);
        return c;
    }

    std::string str() const
    {
        std::string s = "[";
        for (int i = 0; i < 5; ++i)
            s += (i ? "," : "") + ring<F>::str(a[i]);
        return s + "]";
    }
};

template <class F>
EPoint<F> ec_neg(const WeierstrassCurve<F>& E, const EPoint<F>& P)
{
    if (P.inf)
        return P;
    return EPoint<F>(P.x, -P.y - E.a1() * P.x - E.a3());
}

template <class F>
EPoint<F> ec_add(const WeierstrassCurve<F>& E, const EPoint<F>& P, const EPoint<F>& Q)
{
    if (!E.on_curve(P) || !E.on_curve(Q))
        throw domain_error("ec_add: point not on the curve");
    if (P.inf)
        return Q;
    if (Q.inf)
        return P;
    F lam, nu;
    if (P.x == Q.x) {
        if (ring<F>::is_zero(P.y + Q.y + E.a1() * Q.x + E.a3()))
            return EPoint<F>();
        F den = E.k(2) * P.y + E.a1() * P.x + E.a3();
        lam = (E.k(3) * P.x * P.x + E.k(2) * E.a2() * P.x + E.a4() - E.a1() * P.y) / den;
        nu = (-(P.x * P.x * P.x) + E.a4() * P.x + E.k(2) * E.a6() - E.a3() * P.y) / den;
    } else {
        F dx = Q.x - P.x;
        lam = (Q.y - P.y) / dx;
        nu = (P.y * Q.x - Q.y * P.x) / dx;
    }
    F x3 = lam * lam + E.a1() * lam - E.a2() - P.x - Q.x;
    F y3 = -(lam + E.a1()) * x3 - nu - E.a3();
    return EPoint<F>(x3, y3);
}

template <class F>
EPoint<F> ec_mul(const WeierstrassCurve<F>& E, long n, EPoint<F> P)
{
    if (n < 0) {
        n = -n;
        P = ec_neg(E, P);
    }
    EPoint<F> R;
    while (n) {
        if (n & 1)
            R = ec_add(E, R, P);
        n >>= 1;
        if (n)
            P = ec_add(E, P, P);
    }
    return R;
}

/* order of P if it is at most bound, else 0 */
template <class F>
long ec_order(const WeierstrassCurve<F>& E, const EPoint<F>& P, long bound)
{
    EPoint<F> Q = P;
    for (long n = 1; n <= bound; ++n) {
        if (Q.inf)
            return n;
        Q = ec_add(E, Q, P);
    }
    return 0;
}

using ECurve = WeierstrassCurve<FieldElement>;
using EPointK = EPoint<FieldElement>;
using ECurveFF = WeierstrassCurve<FFElement>;
using EPointFF = EPoint<FFElement>;

/* coefficients a1, a2, a3, a4, a6 as element strings of K */
ECurve make_curve(const FieldDescriptor* K, const std::array<std::string, 5>& a);
ECurve make_curve(const FieldDescriptor* K, const std::array<long, 5>& a);
ECurve base_change(const ECurve& E, const FieldDescriptor* big);
inline const FieldDescriptor* base_field(const ECurve& E) { return E.a[0].K; }

EPointK make_point(const FieldDescriptor* K, const std::string& x, const std::string& y);

ECurveFF reduce_curve(const ECurve& E, const PrimeIdealData& P);
EPointFF reduce_point(const EPointK& Q, const PrimeIdealData& P);

/* #E(F_q) including O; requires nonzero discriminant */
uint64_t count_points(const ECurveFF& E);
/* curve over Q, good prime p */
uint64_t reduction_count(const ECurve& E, uint64_t p);

enum class Reduction { Good, Multiplicative, Additive };

struct TateResult {
    std::string kodaira;
    int conductor_exponent = 0;
    long v_min_disc = 0;
    ECurve minimal_model;
    Reduction reduction = Reduction::Good;
    bool split = false;
    int tamagawa = 1;
    std::vector<std::string> steps;
};

TateResult tate_local(const ECurve& E, const PrimeIdealData& P);
/* rational prime; over Q or when p has a single prime above it */
TateResult tate_local(const ECurve& E, uint64_t p);
/* curve over Q */
Int conductor(const ECurve& E);

/* univariate division polynomials: psi_n for odd n, psi_n / psi_2 for even n */
KPoly division_poly(const ECurve& E, int n);
/* psi_n^2 and phi_n, x(nP) = phi_n / psi_n^2 */
KPoly division_psi_sq(const ECurve& E, int n);
KPoly division_phi(const ECurve& E, int n);

struct DivisionCheck {
    int ell = 0;
    std::vector<FieldElement> x_roots;
    std::vector<EPointK> points; // nonzero ell-torsion
};
DivisionCheck division_poly_check(const ECurve& E, int ell);

struct TorsionResult {
    std::vector<long> invariants; // n1 | n2, trivial factors dropped
    long order = 1;
    std::vector<EPointK> generators;
    std::vector<EPointK> points;
    long gcd_bound = 0;
    std::vector<uint64_t> primes_used;
};
/* curve over Q or a quadratic field */
TorsionResult torsion_subgroup(const ECurve& E);

/* all points with x = (sum n_i e_i) / c, |n_i| <= H, 1 <= c <= H over the
 * power basis; includes O */
std::vector<EPointK> point_search(const ECurve& E, long H);

struct CurveFixture {
    std::string label;
    std::array<std::string, 5> a;
    long conductor;
};
const std::vector<CurveFixture>& curve_fixtures();
std::vector<CurveFixture> parse_fixtures_json(const std::string& text);
const char* fixtures_json();
ECurve fixture_curve(const std::string& label, const FieldDescriptor* K = nullptr);

} // namespace qf

#endif
