#ifndef QF_POLY_HPP
#define QF_POLY_HPP

#include "qf/arith.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qf {

/* Ring glue. zero/one take a sample element so that elements carrying a
 * descriptor (number field, finite field) can build constants. */
template <class R>
struct ring;

template <>
struct ring<Rat> {
    static Rat zero(const Rat&) { return 0; }
    static Rat one(const Rat&) { return 1; }
    static bool is_zero(const Rat& a) { return a == 0; }
    static Rat div(const Rat& a, const Rat& b)
    {
        if (b == 0)
            throw domain_error("division by zero");
        return a / b;
    }
    static std::string str(const Rat& a) { return to_string(a); }
};

template <>
struct ring<Int> {
    static Int zero(const Int&) { return 0; }
    static Int one(const Int&) { return 1; }
    static bool is_zero(const Int& a) { return a == 0; }
    static Int div(const Int& a, const Int& b)
    {
        if (b == 0)
            throw domain_error("division by zero");
        if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
            throw domain_error("inexact integer division");
        Int q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
    static std::string str(const Int& a) { return to_string(a); }
};

template <class R>
class Poly {
    std::vector<R> c_;
    R zero_;

    void trim()
    {
        while (!c_.empty() && ring<R>::is_zero(c_.back()))
            c_.pop_back();
    }

public:
    Poly() : zero_() {}
    explicit Poly(const R& zero) : zero_(ring<R>::zero(zero)) {}
    Poly(std::vector<R> c, const R& zero) : c_(std::move(c)), zero_(ring<R>::zero(zero)) { trim(); }
    /* convenience for default-constructible rings */
    Poly(std::initializer_list<R> c) : c_(c), zero_() { trim(); }

    static Poly constant(const R& a)
    {
        Poly p(a);
        if (!ring<R>::is_zero(a))
            p.c_.push_back(a);
        return p;
    }
    static Poly monomial(const R& a, int d)
    {
        Poly p(a);
        if (!ring<R>::is_zero(a)) {
            p.c_.assign(d + 1, p.zero_);
            p.c_[d] = a;
        }
        return p;
    }
    static Poly x(const R& like) { return monomial(ring<R>::one(like), 1); }

    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const R& operator[](int i) const
    {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : zero_;
    }
    const R& lc() const { return c_.empty() ? zero_ : c_.back(); }
    const std::vector<R>& coeffs() const { return c_; }
    const R& zero() const { return zero_; }
    R one() const { return ring<R>::one(zero_); }

    void set(int i, const R& a)
    {
        if (i >= static_cast<int>(c_.size()))
            c_.resize(i + 1, zero_);
        c_[i] = a;
        trim();
    }

    bool operator==(const Poly& o) const
    {
        if (c_.size() != o.c_.size())
            return false;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == o.c_[i]))
                return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const
    {
        Poly r(zero_);
        r.c_.reserve(c_.size());
        for (auto& a : c_)
            r.c_.push_back(-a);
        return r;
    }
    Poly& operator+=(const Poly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), zero_);
        for (size_t i = 0; i < o.c_.size(); ++i)
            c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), zero_);
        for (size_t i = 0; i < o.c_.size(); ++i)
            c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        Poly r(a.zero_);
        if (a.is_zero() || b.is_zero())
            return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, a.zero_);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (ring<R>::is_zero(a.c_[i]))
                continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator*(const R& s, const Poly& a)
    {
        Poly r(a.zero_);
        if (ring<R>::is_zero(s))
            return r;
        r.c_.reserve(a.c_.size());
        for (auto& x : a.c_)
            r.c_.push_back(s * x);
        r.trim();
        return r;
    }

    R eval(const R& x) const
    {
        R acc = zero_;
        for (int i = deg(); i >= 0; --i)
            acc = acc * x + c_[i];
        return acc;
    }
    /* evaluation into an extension ring S (S must accept R coefficients) */
    template <class S, class Embed>
    S eval_in(const S& x, Embed emb) const
    {
        S acc = ring<S>::zero(x);
        for (int i = deg(); i >= 0; --i)
            acc = acc * x + emb(c_[i]);
        return acc;
    }
    Poly compose(const Poly& g) const
    {
        Poly acc(zero_);
        for (int i = deg(); i >= 0; --i)
            acc = acc * g + constant(c_[i]);
        return acc;
    }
    Poly derivative() const
    {
        Poly r(zero_);
        for (int i = 1; i <= deg(); ++i) {
            R k = zero_;
            R one = ring<R>::one(zero_);
            for (int j = 0; j < i; ++j)
                k = k + one;
            r.c_.push_back(k * c_[i]);
        }
        r.trim();
        return r;
    }
    Poly shift(int k) const
    {
        Poly r(zero_);
        if (is_zero())
            return r;
        r.c_.assign(k, zero_);
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }

    std::string str(const std::string& var = "x") const
    {
        if (is_zero())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = deg(); i >= 0; --i) {
            if (ring<R>::is_zero(c_[i]))
                continue;
            if (!first)
                os << " + ";
            first = false;
            os << "(" << ring<R>::str(c_[i]) << ")";
            if (i >= 1)
                os << "*" << var;
            if (i > 1)
                os << "^" << i;
        }
        return os.str();
    }
};

template <class R>
struct ring<Poly<R>> {
    static Poly<R> zero(const Poly<R>& like) { return Poly<R>(like.zero()); }
    static Poly<R> one(const Poly<R>& like) { return Poly<R>::constant(ring<R>::one(like.zero())); }
    static bool is_zero(const Poly<R>& a) { return a.is_zero(); }
    static Poly<R> div(const Poly<R>& a, const Poly<R>& b);
    static std::string str(const Poly<R>& a) { return a.str("t"); }
};

/* Division with remainder; lc(b) must be invertible under ring<R>::div. */
template <class R>
std::pair<Poly<R>, Poly<R>> divmod(const Poly<R>& a, const Poly<R>& b)
{
    if (b.is_zero())
        throw domain_error("polynomial division by zero");
    Poly<R> q(a.zero()), r = a;
    const R& l = b.lc();
    while (!r.is_zero() && r.deg() >= b.deg()) {
        int k = r.deg() - b.deg();
        R c = ring<R>::div(r.lc(), l);
        Poly<R> t = Poly<R>::monomial(c, k);
        q += t;
        r -= t * b;
    }
    return {q, r};
}

template <class R>
Poly<R> operator%(const Poly<R>& a, const Poly<R>& b)
{
    return divmod(a, b).second;
}

/* Exact division in an integral domain; throws when b does not divide a. */
template <class R>
Poly<R> exact_div(const Poly<R>& a, const Poly<R>& b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero())
        throw domain_error("inexact polynomial division");
    return q;
}

template <class R>
Poly<R> ring<Poly<R>>::div(const Poly<R>& a, const Poly<R>& b)
{
    return exact_div(a, b);
}

/* lc(b)^(deg a - deg b + 1) a = q b + r */
template <class R>
Poly<R> prem(const Poly<R>& a, const Poly<R>& b)
{
    if (b.is_zero())
        throw domain_error("pseudo-remainder by zero");
    Poly<R> r = a;
    int e = a.deg() - b.deg() + 1;
    if (e <= 0)
        return r;
    const R& l = b.lc();
    while (!r.is_zero() && r.deg() >= b.deg()) {
        Poly<R> t = Poly<R>::monomial(r.lc(), r.deg() - b.deg());
        r = l * r - t * b;
        --e;
    }
    R f = ring<R>::one(a.zero());
    for (; e > 0; --e)
        f = f * l;
    return f * r;
}

template <class R>
Poly<R> make_monic(const Poly<R>& f)
{
    if (f.is_zero())
        return f;
    return ring<R>::div(ring<R>::one(f.zero()), f.lc()) * f;
}

template <class R>
Poly<R> poly_gcd(Poly<R> a, Poly<R> b)
{
    if (a.is_zero() && b.is_zero())
        throw domain_error("gcd of two zero polynomials");
    while (!b.is_zero()) {
        Poly<R> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

/* s a + t b = g, g monic */
template <class R>
Poly<R> poly_xgcd(const Poly<R>& a, const Poly<R>& b, Poly<R>& s, Poly<R>& t)
{
    if (a.is_zero() && b.is_zero())
        throw domain_error("gcd of two zero polynomials");
    Poly<R> r0 = a, r1 = b;
    Poly<R> s0 = Poly<R>::constant(a.one()), s1(a.zero());
    Poly<R> t0(a.zero()), t1 = Poly<R>::constant(a.one());
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<R> ns = s0 - q * s1, nt = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(ns);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    R inv = ring<R>::div(a.one(), r0.lc());
    s = inv * s0;
    t = inv * t0;
    return inv * r0;
}

template <class R>
Poly<R> poly_pow(Poly<R> b, unsigned long e)
{
    Poly<R> r = Poly<R>::constant(b.one());
    while (e) {
        if (e & 1)
            r = r * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

template <class R>
Poly<R> poly_powmod(Poly<R> b, Int e, const Poly<R>& m)
{
    Poly<R> r = Poly<R>::constant(b.one()) % m;
    b = b % m;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = (r * b) % m;
        e >>= 1;
        if (e > 0)
            b = (b * b) % m;
    }
    return r;
}

template <class R>
R ring_pow(R b, unsigned long e)
{
    R r = ring<R>::one(b);
    while (e) {
        if (e & 1)
            r = r * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

/* Subresultant PRS (Collins/Brown), valid over any integral domain with
 * exact division. */
template <class R>
R poly_resultant(Poly<R> a, Poly<R> b)
{
    if (a.is_zero() || b.is_zero())
        throw domain_error("resultant of a zero polynomial");
    R one = a.one();
    R s = one;
    if (a.deg() < b.deg()) {
        std::swap(a, b);
        if ((a.deg() & 1) && (b.deg() & 1))
            s = -s;
    }
    if (b.deg() == 0)
        return s * ring_pow(b.lc(), a.deg());
    R g = one, h = one;
    for (;;) {
        int delta = a.deg() - b.deg();
        if ((a.deg() & 1) && (b.deg() & 1))
            s = -s;
        Poly<R> r = prem(a, b);
        if (r.is_zero())
            return ring<R>::zero(one);
        a = std::move(b);
        R d = g * ring_pow(h, delta);
        std::vector<R> c;
        for (auto& x : r.coeffs())
            c.push_back(ring<R>::div(x, d));
        b = Poly<R>(std::move(c), one);
        g = a.lc();
        if (delta == 0) {
        } else if (delta == 1) {
            h = g;
        } else {
            h = ring<R>::div(ring_pow(g, delta), ring_pow(h, delta - 1));
        }
        if (b.deg() == 0) {
            int da = a.deg();
            R lb = ring_pow(b.lc(), da);
            R res = da >= 1 ? ring<R>::div(lb, ring_pow(h, da - 1)) : lb;
            return s * res;
        }
    }
}

} // namespace qf

#endif
