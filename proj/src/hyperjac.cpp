#include "qf/hyperjac.hpp"

#include "qf/factor.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace qf {

Poly<Rat> parse_rat_poly(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    if (s.empty())
        throw domain_error("empty polynomial");
    std::vector<Rat> c;
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw domain_error("bad polynomial: " + text);
        }
        size_t j = i;
        while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/'))
            ++j;
        Rat coef = j > i ? parse_rat(s.substr(i, j - i)) : Rat(1);
        i = j;
        if (i < s.size() && s[i] == '*')
            ++i;
        int d = 0;
        if (i < s.size() && s[i] == 'x') {
            d = 1;
            ++i;
            if (i < s.size() && s[i] == '^') {
                size_t k = ++i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                    ++i;
                if (k == i)
                    throw domain_error("bad exponent: " + text);
                d = std::stoi(s.substr(k, i - k));
            }
        } else if (j == i && s[i - 1] == '*') {
            throw domain_error("bad polynomial: " + text);
        }
        if (static_cast<int>(c.size()) <= d)
            c.resize(d + 1, Rat(0));
        c[d] += sign * coef;
    }
    return Poly<Rat>(std::move(c), Rat(0));
}

std::string rat_poly_str(const Poly<Rat>& f)
{
    if (f.is_zero())
        return "0";
    std::string s;
    for (int i = f.deg(); i >= 0; --i) {
        Rat a = f[i];
        if (a == 0)
            continue;
        bool neg = a < 0;
        Rat m = neg ? Rat(-a) : a;
        if (!s.empty())
            s += neg ? " - " : " + ";
        else if (neg)
            s += "-";
        if (i == 0 || m != 1)
            s += to_string(m);
        if (i >= 1)
            s += i == 1 ? "x" : "x^" + std::to_string(i);
    }
    return s;
}

int hyper_genus(int deg)
{
    if (deg < 3)
        throw domain_error("hyperelliptic model needs degree at least 3");
    return (deg - 1) / 2;
}

HyperCurve::HyperCurve(Poly<Rat> f_) : f(std::move(f_)), g(hyper_genus(f.deg())) {}

std::string HyperCurve::str() const { return "y^2 = " + rat_poly_str(f); }

void check_good_reduction(const HyperCurve& C, uint64_t p)
{
    if (p == 2 || !is_prime_u64(p))
        throw domain_error("reduction needs an odd prime, got " + std::to_string(p));
    for (const Rat& a : C.f.coeffs())
        if (a.get_den() % p == 0)
            throw domain_error("bad reduction at p = " + std::to_string(p) + ": denominator");
    const FFDescriptor* F = ff_field(p, 1);
    FFPoly fp = ff_poly_from_rat(F, C.f);
    if (fp.deg() != C.f.deg() || !ff_poly_squarefree(fp))
        throw domain_error("bad reduction at p = " + std::to_string(p));
}

uint64_t count_points(const HyperCurve& C, uint64_t p, int k, uint64_t cap)
{
    check_good_reduction(C, p);
    const FFDescriptor* F = ff_field(p, k);
    if (F->q > cap)
        throw resource_error("enumeration cap exceeded for F_" + std::to_string(F->q));
    FFPoly f = ff_poly_from_rat(F, C.f);
    uint64_t n = f.deg() % 2 ? 1 : 1 + ff_chi(f.lc());
    for (uint64_t i = 0; i < F->q; ++i)
        n += 1 + ff_chi(f.eval(F->from_index(i)));
    return n;
}

Int LPolynomial::eval(const Int& t) const
{
    Int v = 0;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        v = v * t + a[i];
    return v;
}

bool LPolynomial::functional_equation_holds() const
{
    if (static_cast<int>(a.size()) != 2 * g + 1 || a[0] != 1)
        return false;
    for (int i = 0; i <= g; ++i)
        if (a[2 * g - i] != ipow(q, g - i) * a[i])
            return false;
    return true;
}

std::string LPolynomial::str() const
{
    Poly<Rat> P(std::vector<Rat>(a.begin(), a.end()), Rat(0));
    std::string s = rat_poly_str(P);
    for (auto& ch : s)
        if (ch == 'x')
            ch = 'T';
    return s;
}

bool hasse_weil_holds(const Int& count, const Int& q, int g)
{
    // (N - q - 1)^2 <= 4 g^2 q
    Int d = count - q - 1;
    return d * d <= 4 * g * g * q;
}

LPolynomial lpolynomial_from_counts(uint64_t p, int r, int g, const std::vector<Int>& counts)
{
    if (static_cast<int>(counts.size()) < g)
        throw domain_error("L-polynomial needs " + std::to_string(g) + " counts");
    LPolynomial L;
    L.p = p;
    L.r = r;
    L.q = ipow(Int(static_cast<unsigned long>(p)), r);
    L.g = g;
    L.counts.assign(counts.begin(), counts.begin() + g);
    std::vector<Int> P(g + 1);
    for (int j = 1; j <= g; ++j)
        P[j] = ipow(L.q, j) + 1 - counts[j - 1];
    L.a.assign(2 * g + 1, Int(0));
    L.a[0] = 1;
    for (int j = 1; j <= g; ++j) {
        Int s = 0;
        for (int i = 1; i <= j; ++i)
            s += P[i] * L.a[j - i];
        if (s % j != 0)
            throw internal_error("point counts admit no integral L-polynomial");
        L.a[j] = -s / j;
    }
    for (int i = 0; i < g; ++i)
        L.a[2 * g - i] = ipow(L.q, g - i) * L.a[i];
    return L;
}

LPolynomial lpolynomial(const HyperCurve& C, uint64_t p, int r)
{
    std::vector<Int> counts;
    for (int k = 1; k <= C.g; ++k)
        counts.push_back(Int(static_cast<unsigned long>(count_points(C, p, r * k))));
    return lpolynomial_from_counts(p, r, C.g, counts);
}

LPolynomial lpolynomial_extend(const LPolynomial& L, int k)
{
    if (k < 1)
        throw domain_error("extension degree must be positive");
    int n = L.g * k;
    std::vector<Int> P(n + 1);
    for (int j = 1; j <= n; ++j) {
        Int s = j <= 2 * L.g ? Int(j * L.a[j]) : Int(0);
        for (int i = 1; i < j; ++i)
            if (j - i <= 2 * L.g)
                s += P[i] * L.a[j - i];
        P[j] = -s;
    }
    Int qk = ipow(L.q, k);
    std::vector<Int> counts;
    for (int j = 1; j <= L.g; ++j)
        counts.push_back(ipow(qk, j) + 1 - P[j * k]);
    return lpolynomial_from_counts(L.p, L.r * k, L.g, counts);
}

namespace {

int rsign(const Rat& a) { return mpq_sgn(a.get_mpq_t()); }

/* sign of a + b sqrt(q) */
int sign_sqrt(const Rat& a, const Rat& b, const Int& q)
{
    int sa = rsign(a), sb = rsign(b);
    if (sb == 0)
        return sa;
    if (sa == 0 || sa == sb)
        return sb;
    Rat lhs = a * a, rhs = b * b * Rat(q);
    if (lhs == rhs)
        return 0;
    return lhs > rhs ? sa : sb;
}

/* sign of h(c sqrt(q)) */
int sign_at(const Poly<Rat>& h, const Rat& c, const Int& q)
{
    Rat A = 0, B = 0;
    Rat pa = 1, pb = 0; // (c sqrt q)^k = pa + pb sqrt q
    for (int k = 0; k <= h.deg(); ++k) {
        A += h[k] * pa;
        B += h[k] * pb;
        Rat na = pb * c * Rat(q), nb = pa * c;
        pa = na;
        pb = nb;
    }
    return sign_sqrt(A, B, q);
}

int variations(const std::vector<Poly<Rat>>& seq, const Rat& c, const Int& q)
{
    int v = 0, last = 0;
    for (const auto& s : seq) {
        int sg = sign_at(s, c, q);
        if (sg == 0)
            continue;
        if (last && sg != last)
            ++v;
        last = sg;
    }
    return v;
}

} // namespace

bool weil_bound_holds(const LPolynomial& L)
{
    if (!L.functional_equation_holds())
        return false;
    int g = L.g;
    // h(t) = a_g + sum_{i<g} a_i D_{g-i}(t), t = T^{-1} + q T
    std::vector<Poly<Rat>> D;
    Poly<Rat> t = Poly<Rat>::x(Rat(0));
    D.push_back(Poly<Rat>::constant(Rat(2)));
    D.push_back(t);
    for (int k = 1; k < g; ++k)
        D.push_back(t * D[k] - Rat(L.q) * D[k - 1]);
    Poly<Rat> h = Poly<Rat>::constant(Rat(L.a[g]));
    for (int i = 0; i < g; ++i)
        h = h + Rat(L.a[i]) * D[g - i];
    Poly<Rat> sq = exact_div(h, poly_gcd(h, h.derivative()));
    std::vector<Poly<Rat>> seq{sq, sq.derivative()};
    while (seq.back().deg() > 0) {
        Poly<Rat> r = seq[seq.size() - 2] % seq.back();
        if (r.is_zero())
            break;
        seq.push_back(Rat(-1) * r);
    }
    int roots = variations(seq, Rat(-2), L.q) - variations(seq, Rat(2), L.q);
    if (sign_at(sq, Rat(-2), L.q) == 0)
        ++roots;
    return roots == sq.deg();
}

std::string MumfordDivisor::str() const { return "(" + u.str() + ", " + v.str() + ")"; }

namespace {

/* X^n f(x0 + 1/X), n = deg f */
FFPoly move_to_infinity(const FFPoly& f, const FFElement& x0)
{
    const FFElement one = x0.F->one();
    FFPoly lin(std::vector<FFElement>{one, x0}, x0.F->zero()); // x0 X + 1
    FFPoly out(x0.F->zero()), pw = FFPoly::constant(one);
    int n = f.deg();
    for (int i = 0; i <= n; ++i) {
        out = out + f[i] * pw * FFPoly::monomial(one, n - i);
        pw = pw * lin;
    }
    return out;
}

FFPoly random_poly(const FFDescriptor* F, int deg_bound, std::mt19937_64& rng)
{
    std::uniform_int_distribution<uint64_t> d(0, F->p - 1);
    std::vector<FFElement> c;
    for (int i = 0; i < deg_bound; ++i)
        c.push_back(F->from_int(static_cast<int64_t>(d(rng))));
    return FFPoly(std::move(c), F->zero());
}

bool is_irreducible(const FFPoly& u)
{
    if (u.deg() <= 1)
        return true;
    FFPoly x = FFPoly::x(u.lc().F->one());
    FFPoly X = x;
    Int p(static_cast<unsigned long>(u.lc().F->p));
    for (int i = 1; i <= u.deg() / 2; ++i) {
        X = poly_powmod(X, p, u);
        if (poly_gcd(u, X - x).deg() > 0)
            return false;
    }
    return true;
}

bool is_one(const FFPoly& a) { return a.deg() == 0 && a[0] == a[0].F->one(); }

/* square root of s in F_p[x]/(u), u irreducible, s a nonzero square */
FFPoly sqrt_mod(const FFPoly& s, const FFPoly& u, std::mt19937_64& rng)
{
    const FFDescriptor* F = u.lc().F;
    Int Q = ipow(Int(static_cast<unsigned long>(F->p)), u.deg());
    Int T = Q - 1;
    int S = 0;
    while (mpz_even_p(T.get_mpz_t())) {
        T >>= 1;
        ++S;
    }
    FFPoly z(F->zero());
    for (;;) {
        z = random_poly(F, u.deg(), rng);
        if (!z.is_zero() && !is_one(poly_powmod(z, (Q - 1) / 2, u)))
            break;
    }
    int M = S;
    FFPoly c = poly_powmod(z, T, u);
    FFPoly t = poly_powmod(s, T, u);
    FFPoly R = poly_powmod(s, (T + 1) / 2, u);
    while (!is_one(t)) {
        int i = 0;
        FFPoly t2 = t;
        while (!is_one(t2)) {
            t2 = (t2 * t2) % u;
            if (++i >= M)
                throw internal_error("sqrt_mod: not a square");
        }
        FFPoly b = c;
        for (int j = 0; j < M - i - 1; ++j)
            b = (b * b) % u;
        M = i;
        c = (b * b) % u;
        t = (t * c) % u;
        R = (R * b) % u;
    }
    return R;
}

} // namespace

Jacobian::Jacobian(const HyperCurve& C, uint64_t p_) : p(p_), g(C.g), F(ff_field(p_, 1)), f(F->zero())
{
    check_good_reduction(C, p);
    FFPoly fp = ff_poly_from_rat(F, C.f);
    if (fp.deg() % 2) {
        f = fp;
        model_note = "odd-degree model";
        return;
    }
    std::vector<FFElement> roots = ff_roots(fp);
    if (!roots.empty()) {
        f = move_to_infinity(fp, roots.front());
        transformed = true;
        model_note = "odd-degree model via x = " + roots.front().str() + " + 1/X";
        return;
    }
    inert = true;
    if (ff_chi(fp.lc()) == -1) {
        f = fp;
        model_note = "inert model";
        return;
    }
    for (uint64_t i = 0; i < p; ++i) {
        FFElement x0 = F->from_index(i);
        if (ff_chi(fp.eval(x0)) == -1) {
            f = move_to_infinity(fp, x0);
            transformed = true;
            model_note = "inert model via x = " + x0.str() + " + 1/X";
            return;
        }
    }
    throw domain_error("no model with a rational or inert point at infinity");
}

MumfordDivisor Jacobian::zero() const { return {FFPoly::constant(F->one()), FFPoly(F->zero())}; }

bool Jacobian::is_valid(const MumfordDivisor& D) const
{
    if (D.u.is_zero() || D.u.lc() != F->one() || D.v.deg() >= D.u.deg())
        return false;
    if (D.u.deg() > (inert ? g + 1 : g) || (inert && D.u.deg() % 2))
        return false;
    return ((D.v * D.v - f) % D.u).is_zero();
}

MumfordDivisor Jacobian::reduce(MumfordDivisor D) const
{
    int limit = inert ? g + 1 : g;
    D.u = make_monic(D.u);
    D.v = D.v % D.u;
    while (D.u.deg() > limit) {
        FFPoly u = make_monic(exact_div(f - D.v * D.v, D.u));
        D.v = (FFElement(F->zero()) - F->one()) * D.v % u;
        D.u = std::move(u);
    }
    return D;
}

MumfordDivisor Jacobian::add(const MumfordDivisor& a, const MumfordDivisor& b) const
{
    if (a.u.lc().F != F || b.u.lc().F != F)
        throw domain_error("divisors on different curves");
    FFPoly e1(F->zero()), e2(F->zero()), c1(F->zero()), c2(F->zero());
    FFPoly d1 = poly_xgcd(a.u, b.u, e1, e2);
    FFPoly d = poly_xgcd(d1, a.v + b.v, c1, c2);
    FFPoly s1 = c1 * e1, s2 = c1 * e2;
    MumfordDivisor r;
    r.u = exact_div(a.u * b.u, d * d);
    r.v = exact_div(s1 * a.u * b.v + s2 * b.u * a.v + c2 * (a.v * b.v + f), d) % r.u;
    return reduce(std::move(r));
}

MumfordDivisor Jacobian::neg(const MumfordDivisor& D) const
{
    return {D.u, (FFElement(F->zero()) - F->one()) * D.v % D.u};
}

MumfordDivisor Jacobian::mul(const Int& n, const MumfordDivisor& D) const
{
    Int e = n;
    MumfordDivisor P = D;
    if (e < 0) {
        e = -e;
        P = neg(P);
    }
    MumfordDivisor R = zero();
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            R = add(R, P);
        e >>= 1;
        if (e > 0)
            P = add(P, P);
    }
    return R;
}

MumfordDivisor Jacobian::random_prime_divisor(int d, std::mt19937_64& rng) const
{
    Int Q = ipow(Int(static_cast<unsigned long>(p)), d);
    for (int tries = 0; tries < 100000; ++tries) {
        FFPoly u = random_poly(F, d, rng) + FFPoly::monomial(F->one(), d);
        if (!is_irreducible(u))
            continue;
        FFPoly s = f % u;
        if (s.is_zero())
            return {u, FFPoly(F->zero())};
        if (!is_one(poly_powmod(s, (Q - 1) / 2, u)))
            continue;
        FFPoly v = sqrt_mod(s, u, rng);
        if (rng() & 1)
            v = (FFElement(F->zero()) - F->one()) * v % u;
        return {u, v};
    }
    throw internal_error("no prime divisor of degree " + std::to_string(d));
}

MumfordDivisor Jacobian::random(std::mt19937_64& rng) const
{
    int total = inert ? 2 * ((g + 1) / 2) : g;
    MumfordDivisor D = zero();
    while (total > 0) {
        int d = std::uniform_int_distribution<int>(1, total)(rng);
        D = add(D, random_prime_divisor(d, rng));
        total -= d;
    }
    return D;
}

Int Jacobian::order(const MumfordDivisor& D, const Int& n) const
{
    if (!is_zero(mul(n, D)))
        throw domain_error("order: " + to_string(n) + " does not annihilate the divisor");
    Int m = n;
    for (const auto& [ell, e] : factor_integer(n).factors)
        for (unsigned i = 0; i < e && is_zero(mul(m / ell, D)); ++i)
            m /= ell;
    return m;
}

std::vector<uint64_t> Jacobian::key(const MumfordDivisor& D) const
{
    std::vector<uint64_t> k{static_cast<uint64_t>(D.u.deg())};
    for (int i = 0; i < D.u.deg(); ++i)
        k.push_back(D.u[i].index());
    for (int i = 0; i < D.u.deg(); ++i)
        k.push_back(D.v[i].index());
    return k;
}

Int GroupStructure::order() const
{
    Int n = 1;
    for (const Int& a : invariants)
        n *= a;
    return n;
}

std::string GroupStructure::str() const
{
    if (invariants.empty())
        return "trivial";
    std::string s;
    for (const Int& a : invariants)
        s += (s.empty() ? "Z/" : " x Z/") + to_string(a);
    return s;
}

GroupStructure canonical_structure(const std::vector<Int>& cyclic_orders)
{
    std::map<Int, std::vector<unsigned>> parts;
    for (const Int& n : cyclic_orders) {
        if (n <= 0)
            throw domain_error("cyclic factor orders must be positive");
        for (const auto& [ell, e] : factor_integer(n).factors)
            parts[ell].push_back(e);
    }
    size_t r = 0;
    for (auto& [ell, es] : parts) {
        std::sort(es.rbegin(), es.rend());
        r = std::max(r, es.size());
    }
    GroupStructure G;
    G.invariants.assign(r, Int(1));
    for (const auto& [ell, es] : parts)
        for (size_t i = 0; i < es.size(); ++i)
            G.invariants[r - 1 - i] *= ipow(ell, es[i]);
    return G;
}

const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Verified:
        return "verified";
    case Verdict::Refuted:
        return "refuted";
    default:
        return "inconclusive";
    }
}

namespace {

int valuation(Int n, const Int& ell)
{
    int v = 0;
    while (n != 0 && n % ell == 0) {
        n /= ell;
        ++v;
    }
    return v;
}

/* grow the subgroup elems by x */
void close_with(const Jacobian& J, std::vector<MumfordDivisor>& elems, std::set<std::vector<uint64_t>>& keys,
                const MumfordDivisor& x, uint64_t cap)
{
    std::vector<MumfordDivisor> base = elems;
    MumfordDivisor y = x;
    while (!keys.count(J.key(y))) {
        for (const auto& h : base) {
            MumfordDivisor z = J.add(h, y);
            if (keys.insert(J.key(z)).second)
                elems.push_back(std::move(z));
        }
        if (elems.size() > cap)
            throw internal_error("subgroup exceeds its expected size");
        y = J.add(y, x);
    }
}

} // namespace

SylowData sylow_subgroup(const Jacobian& J, const Int& n, const Int& ell, std::mt19937_64& rng, int draws,
                         uint64_t cap, std::vector<MumfordDivisor>* elements)
{
    SylowData S;
    S.ell = ell;
    S.valuation = valuation(n, ell);
    Int target = ipow(ell, S.valuation);
    if (target > Int(static_cast<unsigned long>(cap)))
        return S;
    uint64_t size = target.get_ui();
    Int m = n / target;
    std::vector<MumfordDivisor> elems{J.zero()};
    std::set<std::vector<uint64_t>> keys{J.key(J.zero())};
    for (int i = 0; i < draws && elems.size() < size; ++i) {
        MumfordDivisor x = J.mul(m, J.random(rng));
        if (!keys.count(J.key(x)))
            close_with(J, elems, keys, x, size);
    }
    S.size = elems.size();
    S.complete = S.size == size;

    // c_j = #{h : ell^j h = 0}
    std::vector<uint64_t> c(S.valuation + 1, 0);
    std::vector<MumfordDivisor> tors;
    for (const auto& h : elems) {
        MumfordDivisor y = h;
        int e = 0;
        while (!J.is_zero(y)) {
            y = J.mul(ell, y);
            ++e;
        }
        for (int j = e; j <= S.valuation; ++j)
            ++c[j];
        if (e == 1)
            tors.push_back(h);
    }
    uint64_t l = ell.get_ui();
    std::vector<int> rank(S.valuation + 2, 0);
    for (int j = 1; j <= S.valuation; ++j) {
        uint64_t ratio = c[j] / c[j - 1];
        while (ratio > 1) {
            ratio /= l;
            ++rank[j];
        }
    }
    for (int j = S.valuation; j >= 1; --j)
        for (int k = 0; k < rank[j] - rank[j + 1]; ++k)
            S.exponents.push_back(j);

    std::vector<MumfordDivisor> span{J.zero()};
    std::set<std::vector<uint64_t>> span_keys{J.key(J.zero())};
    for (const auto& h : tors) {
        if (span_keys.count(J.key(h)))
            continue;
        S.torsion_basis.push_back(h);
        close_with(J, span, span_keys, h, size);
    }
    if (elements)
        *elements = std::move(elems);
    return S;
}

StructureReport verify_group_structure(const HyperCurve& C, uint64_t p, const GroupStructure& claimed,
                                       const StructureOptions& opt)
{
    StructureReport rep;
    rep.claimed = canonical_structure(claimed.invariants);
    LPolynomial L = lpolynomial(C, p);
    rep.order = L.jacobian_order();
    if (rep.claimed.order() != rep.order) {
        rep.verdict = Verdict::Refuted;
        rep.note = "order mismatch: L(1) = " + to_string(rep.order) + ", claim " + to_string(rep.claimed.order());
        return rep;
    }
    Jacobian J(C, p);
    rep.model_note = J.model_note;
    std::mt19937_64 rng(opt.seed);
    Int exponent = rep.claimed.invariants.empty() ? Int(1) : rep.claimed.invariants.back();
    for (int i = 0; i < opt.samples; ++i) {
        MumfordDivisor D = J.random(rng);
        if (!J.is_zero(J.mul(exponent, D)))
            ++rep.annihilation_failures;
        ++rep.samples;
    }
    std::string killed;
    if (rep.annihilation_failures)
        killed = std::to_string(rep.annihilation_failures) + " sampled classes not killed by " + to_string(exponent);
    bool complete = true;
    std::vector<Int> cyclic;
    for (const Int& ell : factor_integer(rep.order).primes()) {
        SylowData S = sylow_subgroup(J, rep.order, ell, rng, opt.sylow_draws, opt.sylow_cap);
        complete = complete && S.complete;
        for (int e : S.exponents)
            cyclic.push_back(ipow(ell, e));
        rep.sylow.push_back(std::move(S));
    }
    rep.computed = canonical_structure(cyclic);
    if (!killed.empty()) {
        rep.verdict = Verdict::Refuted;
        rep.note = killed + (complete ? "; computed structure " + rep.computed.str() : "");
        if (!complete)
            rep.computed = GroupStructure{};
        return rep;
    }
    if (!complete) {
        rep.verdict = Verdict::Inconclusive;
        rep.note = "Sylow enumeration incomplete";
        return rep;
    }
    if (rep.computed == rep.claimed) {
        rep.verdict = Verdict::Verified;
        rep.note = "structure " + rep.computed.str();
    } else {
        rep.verdict = Verdict::Refuted;
        rep.note = "computed structure " + rep.computed.str();
    }
    return rep;
}

MumfordDivisor pullback_class(const Jacobian& J, const Rat& c, int m, const Rat& xQ, const Rat& yQ)
{
    if (J.inert || J.transformed)
        throw domain_error("pullback needs the original odd-degree model");
    for (const Rat* a : {&c, &xQ, &yQ})
        if (a->get_den() % J.p == 0)
            throw domain_error("pullback data not integral at p = " + std::to_string(J.p));
    FFElement cc = J.F->from_rat(c);
    if (cc.is_zero())
        throw domain_error("degenerate covering map");
    MumfordDivisor D;
    D.u = FFPoly::monomial(J.F->one(), m) - FFPoly::constant(J.F->from_rat(xQ) / cc);
    D.v = FFPoly::constant(J.F->from_rat(yQ)) % D.u;
    if (!((D.v * D.v - J.f) % D.u).is_zero())
        throw domain_error("fiber of the point does not lie on the curve");
    return J.reduce(D);
}

bool in_ell_multiple(const Jacobian& J, const MumfordDivisor& D, const Int& n, const Int& ell,
                     std::mt19937_64& rng, int draws)
{
    int v = valuation(n, ell);
    if (v == 0)
        return true;
    MumfordDivisor x = J.mul(n / ipow(ell, v), D);
    std::vector<MumfordDivisor> elems;
    SylowData S = sylow_subgroup(J, n, ell, rng, draws, 1ULL << 20, &elems);
    if (!S.complete)
        throw resource_error("Sylow enumeration incomplete");
    for (const auto& s : elems)
        if (J.mul(ell, s) == x)
            return true;
    return false;
}

} // namespace qf
