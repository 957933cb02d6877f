#ifndef QF_MPOLY_HPP
#define QF_MPOLY_HPP

#include "qf/poly.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace qf {

using Mono = std::vector<int>;

/* Sparse polynomial in a fixed number of variables, lex order with
 * variable 0 most significant. */
template <class R>
class MPoly {
    std::map<Mono, R> t_;
    int n_ = 0;
    R zero_;

public:
    MPoly() : zero_() {}
    MPoly(int nvars, const R& zero) : n_(nvars), zero_(ring<R>::zero(zero)) {}

    static MPoly constant(int nvars, const R& a)
    {
        MPoly p(nvars, a);
        if (!ring<R>::is_zero(a))
            p.t_[Mono(nvars, 0)] = a;
        return p;
    }
    static MPoly var(int nvars, int i, const R& like)
    {
        MPoly p(nvars, like);
        Mono m(nvars, 0);
        m[i] = 1;
        p.t_[m] = ring<R>::one(like);
        return p;
    }
    static MPoly term(const Mono& m, const R& a)
    {
        MPoly p(static_cast<int>(m.size()), a);
        if (!ring<R>::is_zero(a))
            p.t_[m] = a;
        return p;
    }

    int nvars() const { return n_; }
    const R& zero() const { return zero_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<Mono, R>& terms() const { return t_; }
    size_t size() const { return t_.size(); }

    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == Mono(n_, 0)); }
    R constant_term() const
    {
        auto it = t_.find(Mono(n_, 0));
        return it == t_.end() ? zero_ : it->second;
    }
    const Mono& lead_mono() const { return t_.rbegin()->first; }
    const R& lead_coeff() const { return t_.rbegin()->second; }

    int deg(int v) const
    {
        int d = t_.empty() ? -1 : 0;
        for (auto& [m, c] : t_)
            d = std::max(d, m[v]);
        return d;
    }
    int total_deg() const
    {
        int d = t_.empty() ? -1 : 0;
        for (auto& [m, c] : t_) {
            int s = 0;
            for (int e : m)
                s += e;
            d = std::max(d, s);
        }
        return d;
    }
    bool uses(int v) const { return deg(v) > 0; }

    void add_term(const Mono& m, const R& a)
    {
        auto it = t_.find(m);
        if (it == t_.end()) {
            if (!ring<R>::is_zero(a))
                t_.emplace(m, a);
            return;
        }
        it->second = it->second + a;
        if (ring<R>::is_zero(it->second))
            t_.erase(it);
    }

    bool operator==(const MPoly& o) const
    {
        if (t_.size() != o.t_.size())
            return false;
        auto a = t_.begin();
        auto b = o.t_.begin();
        for (; a != t_.end(); ++a, ++b)
            if (a->first != b->first || !(a->second == b->second))
                return false;
        return true;
    }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly operator-() const
    {
        MPoly r(n_, zero_);
        for (auto& [m, c] : t_)
            r.t_.emplace(m, -c);
        return r;
    }
    MPoly& operator+=(const MPoly& o)
    {
        for (auto& [m, c] : o.t_)
            add_term(m, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o)
    {
        for (auto& [m, c] : o.t_)
            add_term(m, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b)
    {
        MPoly r(a.n_, a.zero_);
        Mono m(a.n_);
        for (auto& [ma, ca] : a.t_)
            for (auto& [mb, cb] : b.t_) {
                for (int i = 0; i < a.n_; ++i)
                    m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    friend MPoly operator*(const R& s, const MPoly& a)
    {
        MPoly r(a.n_, a.zero_);
        if (ring<R>::is_zero(s))
            return r;
        for (auto& [m, c] : a.t_)
            r.add_term(m, s * c);
        return r;
    }

    MPoly pow(unsigned e) const
    {
        MPoly r = constant(n_, ring<R>::one(zero_)), b = *this;
        while (e) {
            if (e & 1)
                r = r * b;
            e >>= 1;
            if (e)
                b = b * b;
        }
        return r;
    }

    /* replace variable v by the polynomial g */
    MPoly subst(int v, const MPoly& g) const
    {
        std::vector<MPoly> pw{constant(n_, ring<R>::one(zero_))};
        MPoly r(n_, zero_);
        for (auto& [m, c] : t_) {
            while (static_cast<int>(pw.size()) <= m[v])
                pw.push_back(pw.back() * g);
            Mono mm = m;
            mm[v] = 0;
            r += term(mm, c) * pw[m[v]];
        }
        return r;
    }

    R eval(const std::vector<R>& x) const
    {
        R acc = zero_;
        for (auto& [m, c] : t_) {
            R t = c;
            for (int i = 0; i < n_; ++i)
                for (int e = 0; e < m[i]; ++e)
                    t = t * x[i];
            acc = acc + t;
        }
        return acc;
    }

    /* coefficients with respect to variable v (lowest first) */
    std::vector<MPoly> coeffs_in(int v) const
    {
        std::vector<MPoly> out(std::max(deg(v) + 1, 0), MPoly(n_, zero_));
        for (auto& [m, c] : t_) {
            Mono mm = m;
            mm[v] = 0;
            out[m[v]].add_term(mm, c);
        }
        return out;
    }

    /* map coefficients through f */
    template <class S, class F>
    MPoly<S> map(const S& szero, F f) const
    {
        MPoly<S> r(n_, szero);
        for (auto& [m, c] : t_)
            r.add_term(m, f(c));
        return r;
    }

    std::string str(const std::vector<std::string>& names) const
    {
        if (t_.empty())
            return "0";
        std::string s;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            if (!s.empty())
                s += " + ";
            s += "(" + ring<R>::str(it->second) + ")";
            for (int i = 0; i < n_; ++i) {
                if (it->first[i] == 0)
                    continue;
                s += "*" + names[i];
                if (it->first[i] > 1)
                    s += "^" + std::to_string(it->first[i]);
            }
        }
        return s;
    }
};

/* exact multivariate division (lex); throws if b does not divide a */
template <class R>
MPoly<R> exact_div(const MPoly<R>& a, const MPoly<R>& b)
{
    if (b.is_zero())
        throw domain_error("multivariate division by zero");
    MPoly<R> q(a.nvars(), a.zero()), r = a;
    const Mono& lb = b.lead_mono();
    const R& cb = b.lead_coeff();
    while (!r.is_zero()) {
        Mono lr = r.lead_mono();
        Mono d(a.nvars());
        for (int i = 0; i < a.nvars(); ++i) {
            d[i] = lr[i] - lb[i];
            if (d[i] < 0)
                throw domain_error("inexact multivariate division");
        }
        MPoly<R> t = MPoly<R>::term(d, ring<R>::div(r.lead_coeff(), cb));
        q += t;
        r -= t * b;
    }
    return q;
}

template <class R>
struct ring<MPoly<R>> {
    static MPoly<R> zero(const MPoly<R>& like) { return MPoly<R>(like.nvars(), like.zero()); }
    static MPoly<R> one(const MPoly<R>& like) { return MPoly<R>::constant(like.nvars(), ring<R>::one(like.zero())); }
    static bool is_zero(const MPoly<R>& a) { return a.is_zero(); }
    static MPoly<R> div(const MPoly<R>& a, const MPoly<R>& b) { return exact_div(a, b); }
    static std::string str(const MPoly<R>& a)
    {
        std::vector<std::string> names;
        for (int i = 0; i < a.nvars(); ++i)
            names.push_back("v" + std::to_string(i));
        return a.str(names);
    }
};

/* view a as a polynomial in variable v with multivariate coefficients */
template <class R>
Poly<MPoly<R>> as_poly_in(const MPoly<R>& a, int v)
{
    MPoly<R> z(a.nvars(), a.zero());
    return Poly<MPoly<R>>(a.coeffs_in(v), z);
}

template <class R>
MPoly<R> from_poly_in(const Poly<MPoly<R>>& p, int v, int nvars, const R& zero)
{
    MPoly<R> r(nvars, zero);
    for (int i = 0; i <= p.deg(); ++i) {
        Mono m(nvars, 0);
        m[v] = i;
        r += MPoly<R>::term(m, ring<R>::one(zero)) * p[i];
    }
    return r;
}

template <class R>
MPoly<R> resultant_in(const MPoly<R>& a, const MPoly<R>& b, int v)
{
    return poly_resultant(as_poly_in(a, v), as_poly_in(b, v));
}

/* univariate polynomial in x_v from an MPoly that only uses v */
template <class R>
Poly<R> to_univariate(const MPoly<R>& a, int v)
{
    std::vector<R> c(std::max(a.deg(v) + 1, 0), a.zero());
    for (auto& [m, k] : a.terms()) {
        for (int i = 0; i < a.nvars(); ++i)
            if (i != v && m[i] != 0)
                throw domain_error("polynomial is not univariate");
        c[m[v]] = k;
    }
    return Poly<R>(std::move(c), a.zero());
}

/* full reduction of a modulo G (lex); coefficients in a field */
template <class R>
MPoly<R> normal_form(MPoly<R> a, const std::vector<MPoly<R>>& G)
{
    MPoly<R> r(a.nvars(), a.zero());
    while (!a.is_zero()) {
        const Mono lm = a.lead_mono();
        const R lc = a.lead_coeff();
        bool hit = false;
        for (const auto& g : G) {
            const Mono& lg = g.lead_mono();
            Mono d(a.nvars());
            bool ok = true;
            for (int i = 0; i < a.nvars() && ok; ++i) {
                d[i] = lm[i] - lg[i];
                ok = d[i] >= 0;
            }
            if (!ok)
                continue;
            a -= MPoly<R>::term(d, ring<R>::div(lc, g.lead_coeff())) * g;
            hit = true;
            break;
        }
        if (!hit) {
            r.add_term(lm, lc);
            a.add_term(lm, -lc);
        }
    }
    return r;
}

/* reduced lex Groebner basis, monic, sorted by leading monomial; {1} for
 * the unit ideal */
template <class R>
std::vector<MPoly<R>> groebner_lex(std::vector<MPoly<R>> F, size_t max_basis = 200)
{
    std::vector<MPoly<R>> G;
    for (auto& f : F)
        if (!f.is_zero())
            G.push_back(f);
    if (G.empty())
        return G;
    auto lcm = [](const Mono& a, const Mono& b) {
        Mono m(a.size());
        for (size_t i = 0; i < a.size(); ++i)
            m[i] = std::max(a[i], b[i]);
        return m;
    };
    auto spoly = [&](const MPoly<R>& f, const MPoly<R>& g) {
        Mono l = lcm(f.lead_mono(), g.lead_mono());
        Mono df(l.size()), dg(l.size());
        for (size_t i = 0; i < l.size(); ++i) {
            df[i] = l[i] - f.lead_mono()[i];
            dg[i] = l[i] - g.lead_mono()[i];
        }
        R one = ring<R>::one(f.zero());
        return MPoly<R>::term(df, ring<R>::div(one, f.lead_coeff())) * f -
               MPoly<R>::term(dg, ring<R>::div(one, g.lead_coeff())) * g;
    };
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < G.size(); ++i)
        for (size_t j = i + 1; j < G.size(); ++j)
            pairs.emplace_back(i, j);
    while (!pairs.empty()) {
        auto [i, j] = pairs.back();
        pairs.pop_back();
        const Mono& a = G[i].lead_mono();
        const Mono& b = G[j].lead_mono();
        bool coprime = true;
        for (size_t k = 0; k < a.size(); ++k)
            if (a[k] && b[k])
                coprime = false;
        if (coprime)
            continue;
        MPoly<R> h = normal_form(spoly(G[i], G[j]), G);
        if (h.is_zero())
            continue;
        if (G.size() >= max_basis)
            throw resource_error("Groebner basis exceeds " + std::to_string(max_basis) + " elements");
        for (size_t k = 0; k < G.size(); ++k)
            pairs.emplace_back(k, G.size());
        G.push_back(h);
    }
    /* minimalize, then interreduce */
    std::vector<MPoly<R>> M;
    for (size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j)
                continue;
            const Mono& a = G[i].lead_mono();
            const Mono& b = G[j].lead_mono();
            bool div = true;
            for (size_t k = 0; k < a.size(); ++k)
                div = div && b[k] <= a[k];
            if (div && (a != b || j < i))
                redundant = true;
        }
        if (!redundant)
            M.push_back(G[i]);
    }
    std::vector<MPoly<R>> out;
    for (size_t i = 0; i < M.size(); ++i) {
        std::vector<MPoly<R>> rest;
        for (size_t j = 0; j < M.size(); ++j)
            if (j != i)
                rest.push_back(M[j]);
        MPoly<R> h = normal_form(M[i], rest);
        out.push_back(ring<R>::div(ring<R>::one(h.zero()), h.lead_coeff()) * h);
    }
    std::sort(out.begin(), out.end(),
              [](const MPoly<R>& a, const MPoly<R>& b) { return a.lead_mono() < b.lead_mono(); });
    return out;
}

template <class R>
bool in_ideal(const MPoly<R>& f, const std::vector<MPoly<R>>& G)
{
    return normal_form(f, G).is_zero();
}

} // namespace qf

#endif
