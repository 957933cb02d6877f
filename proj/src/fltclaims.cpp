#include "qf/fltclaims.hpp"

#include "qf/factor.hpp"

#include <algorithm>
#include <cctype>
#include <random>

namespace qf {

bool all_verified(const std::vector<CheckResult>& v)
{
    for (const auto& c : v)
        if (c.verdict != Verdict::Verified)
            return false;
    return true;
}

/* ---- Frey curve ---- */

FreyData frey_curve(const FieldElement& a, const FieldElement& b, const FieldElement& c, int p)
{
    if (p < 2)
        throw domain_error("exponent must be at least 2");
    if (a.is_zero() || b.is_zero() || c.is_zero())
        throw domain_error("trivial solution: abc = 0");
    for (const FieldElement* e : {&a, &b, &c})
        if (!is_integral(*e))
            throw domain_error("Frey curve needs integral a, b, c; got " + e->str());
    const FieldDescriptor* K = a.K;
    FreyData D;
    D.a = a;
    D.b = b;
    D.c = c;
    D.p = p;
    FieldElement A = a.pow(p), B = b.pow(p), C = c.pow(p);
    D.curve.a = {K->zero(), B - A, K->zero(), -(A * B), K->zero()};
    D.delta = K->from_rat(16) * (a * b * c).pow(2 * p);
    D.model_disc = D.curve.disc();
    D.on_fermat = A + B == C;
    FieldElement s = A * B * (A + B);
    if (D.model_disc != K->from_rat(16) * s * s)
        throw internal_error("discriminant of x(x-A)(x+B) is not 16(AB(A+B))^2");
    return D;
}

/* ---- polynomial parsing ---- */

namespace {

struct MParser {
    const std::string& s;
    const std::vector<std::string>& vars;
    size_t i = 0;

    void ws()
    {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }
    [[noreturn]] void fail(const std::string& what)
    {
        throw domain_error("cannot parse polynomial '" + s + "': " + what + " at " + std::to_string(i));
    }
    QPoly constant(const Rat& r) { return QPoly::constant(static_cast<int>(vars.size()), r); }

    QPoly expr()
    {
        ws();
        QPoly acc = constant(0);
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            neg = s[i] == '-';
            ++i;
        }
        QPoly t = term();
        acc = neg ? acc - t : acc + t;
        for (;;) {
            ws();
            if (i >= s.size() || (s[i] != '+' && s[i] != '-'))
                break;
            bool minus = s[i] == '-';
            ++i;
            t = term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }
    QPoly term()
    {
        QPoly acc = power();
        for (;;) {
            ws();
            if (i < s.size() && s[i] == '*') {
                ++i;
                acc = acc * power();
                continue;
            }
            /* implicit product: "2x", "3(x+1)" */
            if (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '(')) {
                acc = acc * power();
                continue;
            }
            return acc;
        }
    }
    QPoly power()
    {
        QPoly b = atom();
        ws();
        if (i < s.size() && s[i] == '^') {
            ++i;
            ws();
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            if (j == i)
                fail("exponent expected");
            unsigned e = static_cast<unsigned>(std::stoul(s.substr(i, j - i)));
            i = j;
            return b.pow(e);
        }
        return b;
    }
    QPoly atom()
    {
        ws();
        if (i >= s.size())
            fail("unexpected end");
        if (s[i] == '(') {
            ++i;
            QPoly e = expr();
            ws();
            if (i >= s.size() || s[i] != ')')
                fail("')' expected");
            ++i;
            return e;
        }
        if (s[i] == '-') {
            ++i;
            return -power();
        }
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            Int num(s.substr(i, j - i));
            Int den = 1;
            if (j < s.size() && s[j] == '/' && j + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
                size_t k = j + 1;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])))
                    ++k;
                den = Int(s.substr(j + 1, k - j - 1));
                j = k;
            }
            i = j;
            return constant(make_rat(num, den));
        }
        size_t best = std::string::npos, len = 0;
        for (size_t v = 0; v < vars.size(); ++v)
            if (s.compare(i, vars[v].size(), vars[v]) == 0 && vars[v].size() > len) {
                best = v;
                len = vars[v].size();
            }
        if (best == std::string::npos)
            fail("unknown symbol");
        i += len;
        return QPoly::var(static_cast<int>(vars.size()), static_cast<int>(best), Rat(0));
    }
};

uint64_t eval_mod(const QPoly& f, const std::vector<uint64_t>& x, uint64_t p)
{
    uint64_t acc = 0;
    for (auto& [m, c] : f.terms()) {
        uint64_t t = rat_mod(c, p);
        for (size_t i = 0; i < m.size(); ++i)
            t = mulmod(t, powmod(x[i], static_cast<uint64_t>(m[i]), p), p);
        acc = (acc + t) % p;
    }
    return acc;
}

bool denominators_prime_to(const QPoly& f, uint64_t p)
{
    for (auto& [m, c] : f.terms())
        if (mpz_divisible_ui_p(c.get_den_mpz_t(), p))
            return false;
    return true;
}

} // namespace

QPoly parse_mpoly(const std::string& s, const std::vector<std::string>& vars)
{
    MParser P{s, vars};
    QPoly r = P.expr();
    P.ws();
    if (P.i != s.size())
        P.fail("trailing input");
    return r;
}

/* ---- map checks ---- */

namespace {

QPoly pulled_back_numerator(const CurveMapCheck& m)
{
    int n = static_cast<int>(m.source_vars.size());
    size_t k = m.map.size();
    if (k != static_cast<size_t>(m.target.nvars()))
        throw domain_error(m.name + ": map arity does not match the target");
    std::vector<int> D(k);
    for (size_t i = 0; i < k; ++i)
        D[i] = std::max(m.target.deg(static_cast<int>(i)), 0);
    std::vector<std::vector<QPoly>> np(k), dp(k);
    for (size_t i = 0; i < k; ++i) {
        np[i].push_back(QPoly::constant(n, Rat(1)));
        dp[i].push_back(QPoly::constant(n, Rat(1)));
        for (int e = 1; e <= D[i]; ++e) {
            np[i].push_back(np[i].back() * m.map[i].num);
            dp[i].push_back(dp[i].back() * m.map[i].den);
        }
    }
    QPoly N(n, Rat(0));
    for (auto& [mono, c] : m.target.terms()) {
        QPoly t = QPoly::constant(n, c);
        for (size_t i = 0; i < k; ++i)
            t = t * np[i][mono[i]] * dp[i][D[i] - mono[i]];
        N += t;
    }
    return N;
}

} // namespace

bool map_check_exact(const CurveMapCheck& m, std::string* residue)
{
    for (const auto& r : m.map)
        if (r.den.is_zero())
            throw domain_error(m.name + ": zero denominator in the map");
    QPoly N = pulled_back_numerator(m);
    std::vector<QPoly> G = groebner_lex(m.source);
    QPoly r = normal_form(N, G);
    if (residue)
        *residue = r.str(m.source_vars);
    return r.is_zero();
}

SampleReport map_check_sampled(const CurveMapCheck& m, int nprimes, int points_per_prime, uint64_t seed)
{
    if (m.source.size() != 1)
        throw domain_error(m.name + ": sampled checks need a single source equation");
    const QPoly& g = m.source[0];
    int n = g.nvars();
    int last = n - 1;
    if (g.deg(last) < 1)
        throw domain_error(m.name + ": source equation does not involve its last variable");
    SampleReport R;
    std::mt19937_64 rng(seed);
    uint64_t p = 1000000;
    while (static_cast<int>(R.primes.size()) < nprimes) {
        p = next_prime(p + 1);
        bool ok = denominators_prime_to(g, p);
        for (const auto& r : m.map)
            ok = ok && denominators_prime_to(r.num, p) && denominators_prime_to(r.den, p);
        ok = ok && denominators_prime_to(m.target, p);
        if (!ok)
            continue;
        R.primes.push_back(p);
        const FFDescriptor* F = ff_field(p, 1);
        std::vector<QPoly> gc = g.coeffs_in(last);
        int found = 0;
        for (int attempt = 0; found < points_per_prime && attempt < 100 * points_per_prime; ++attempt) {
            std::vector<uint64_t> x(n, 0);
            for (int i = 0; i < last; ++i)
                x[i] = rng() % p;
            std::vector<FFElement> cc;
            for (const auto& c : gc)
                cc.push_back(F->from_int(static_cast<int64_t>(eval_mod(c, x, p))));
            FFPoly up(cc, F->zero());
            if (up.deg() < 1)
                continue;
            for (const FFElement& r : ff_roots(up)) {
                x[last] = r.c[0];
                std::vector<uint64_t> y;
                bool defined = true;
                for (const auto& rf : m.map) {
                    uint64_t d = eval_mod(rf.den, x, p);
                    if (d == 0) {
                        defined = false;
                        break;
                    }
                    y.push_back(mulmod(eval_mod(rf.num, x, p), invmod(d, p), p));
                }
                if (!defined)
                    continue;
                ++R.points_checked;
                ++found;
                if (eval_mod(m.target, y, p) != 0) {
                    R.ok = false;
                    R.failure = m.name + ": target equation fails at a point mod " + std::to_string(p);
                    return R;
                }
            }
        }
        if (found < points_per_prime) {
            R.ok = false;
            R.failure = m.name + ": too few sample points mod " + std::to_string(p);
            return R;
        }
    }
    return R;
}

/* ---- quartic t-values ---- */

bool TValue::operator<(const TValue& o) const
{
    if (inf != o.inf)
        return o.inf;
    if (inf)
        return false;
    double a = t.approx(), b = o.t.approx();
    if (a != b)
        return a < b;
    return t.str() < o.t.str();
}

std::vector<TValue> quartic_t_values_for_map(int which)
{
    if (which < 0 || which > 2)
        throw domain_error("quartic map index must be 0, 1 or 2");
    const FieldDescriptor* L = quadratic_field(2);
    ECurve E = fixture_curve(which == 2 ? "64a1" : "32a1", L);
    TorsionResult T = torsion_subgroup(E);
    std::vector<TValue> out;
    FieldElement two = L->from_rat(2);
    for (const EPointK& P : T.points) {
        TValue v;
        if (which == 0) {
            /* X = (2t+2)/(1-t); O <-> t = 1 */
            if (P.inf)
                v.t = L->one();
            else if (P.x == -two)
                v.inf = true;
            else
                v.t = (P.x - two) / (P.x + two);
        } else if (which == 1) {
            if (P.inf)
                v.inf = true;
            else
                v.t = P.x / two;
        } else {
            if (P.inf)
                v.inf = true;
            else
                v.t = -(P.x / two);
        }
        if (std::find(out.begin(), out.end(), v) == out.end())
            out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TValue> quartic_t_values(const std::string& label)
{
    std::vector<TValue> out;
    std::vector<int> maps;
    if (label == "32a1")
        maps = {0, 1};
    else if (label == "64a1")
        maps = {2};
    else
        throw domain_error("quartic t-values are defined for 32a1 and 64a1, not " + label);
    for (int w : maps)
        for (const TValue& v : quartic_t_values_for_map(w))
            if (std::find(out.begin(), out.end(), v) == out.end())
                out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

Rat quartic_map_u_factor(int which)
{
    /* k^2 = (X^3 + a4 X) / (h(t) d(t)^2) must be a constant square */
    std::vector<std::string> v{"t"};
    QPoly h, X, dd;
    long a4 = which == 2 ? -4 : 4;
    if (which == 0) {
        h = parse_mpoly("(1-t^2)(1+t^2)", v);
        /* X = (2t+2)/(1-t), d = 1/(1-t)^2: k^2 h = X^3 + 4X times (1-t)^4 */
        QPoly num = parse_mpoly("2t+2", v), den = parse_mpoly("1-t", v);
        QPoly lhs = num.pow(3) * den + Rat(a4) * num * den.pow(3);
        QPoly q = exact_div(lhs, h);
        if (!q.is_constant())
            throw internal_error("quartic map 0 is not a scaled isomorphism");
        Rat r;
        if (!is_rat_square(q.constant_term(), &r))
            throw internal_error("quartic map 0 needs an irrational scale");
        return r;
    }
    h = which == 1 ? parse_mpoly("2t(1+t^2)", v) : parse_mpoly("2t(1-t^2)", v);
    X = which == 1 ? parse_mpoly("2t", v) : parse_mpoly("-2t", v);
    QPoly lhs = X.pow(3) + Rat(a4) * X;
    QPoly q = exact_div(lhs, h);
    Rat r;
    if (!q.is_constant() || !is_rat_square(q.constant_term(), &r))
        throw internal_error("quartic map is not a scaled isomorphism");
    return r;
}

QuarticParam quartic_parametrization_check(const FieldElement& t)
{
    const FieldDescriptor* K = t.K;
    FieldElement d = K->one() + t * t;
    if (d.is_zero())
        throw domain_error("1 + t^2 = 0");
    QuarticParam q;
    q.x2 = (K->one() - t * t) / d;
    q.y2 = (K->from_rat(2) * t) / d;
    q.identity = q.x2 * q.x2 + q.y2 * q.y2 == K->one();
    return q;
}

/* ---- Fermat points ---- */

KPoly TowerField::pow(const KPoly& a, unsigned n) const
{
    KPoly r = from(L->one()), b = reduce(a);
    while (n) {
        if (n & 1)
            r = mul(r, b);
        n >>= 1;
        if (n)
            b = mul(b, b);
    }
    return r;
}

KPoly TowerField::inv(const KPoly& a) const
{
    KPoly s, t;
    KPoly g = poly_xgcd(reduce(a), F, s, t);
    if (g.deg() != 0)
        throw domain_error("element not invertible in " + name);
    return reduce(s);
}

bool fermat_point_check(int n, const FieldDescriptor* K, const std::array<std::string, 3>& point)
{
    if (n < 1)
        throw domain_error("Fermat exponent must be positive");
    std::array<FieldElement, 3> v;
    for (int i = 0; i < 3; ++i) {
        try {
            v[i] = parse_element(K, point[i]);
        } catch (const std::exception& e) {
            throw domain_error("coordinate '" + point[i] + "' is not in " + K->name);
        }
    }
    return v[0].pow(n) + v[1].pow(n) == v[2].pow(n);
}

bool fermat_point_check(int n, const TowerField& K, const std::array<KPoly, 3>& point)
{
    if (n < 1)
        throw domain_error("Fermat exponent must be positive");
    if (K.F.deg() < 1)
        throw domain_error("tower modulus must have positive degree");
    for (const KPoly& c : point) {
        if (c.deg() >= K.F.deg())
            throw domain_error("coordinate not reduced modulo the tower polynomial");
        for (const FieldElement& e : c.coeffs())
            if (e.K != K.L)
                throw domain_error("coordinate outside " + K.name);
    }
    KPoly lhs = K.reduce(K.pow(point[0], n) + K.pow(point[1], n));
    return lhs == K.pow(point[2], n);
}

} // namespace qf
