#include "qf/arith.hpp"

namespace qf {

std::string to_string(const Int& x) { return x.get_str(); }

std::string to_string(const Rat& x)
{
    if (x.get_den() == 1)
        return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat parse_rat(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(Int(s));
        Int n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (d <= 0)
            throw domain_error("bad denominator in '" + s + "'");
        return make_rat(n, d);
    } catch (const std::invalid_argument&) {
        throw domain_error("bad rational '" + s + "'");
    }
}

Int ipow(const Int& b, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Rat rpow(const Rat& b, long e)
{
    if (e < 0) {
        if (b == 0)
            throw domain_error("0 to a negative power");
        return rpow(1 / b, -e);
    }
    Rat r(ipow(b.get_num(), e), ipow(b.get_den(), e));
    return r;
}

long val_p(const Int& x, const Int& p)
{
    if (x == 0)
        return VAL_INF;
    Int t = x;
    long v = 0;
    while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

long val_p(const Rat& x, const Int& p)
{
    if (x == 0)
        return VAL_INF;
    return val_p(x.get_num(), p) - val_p(x.get_den(), p);
}

bool is_perfect_square(const Int& x, Int* root)
{
    if (x < 0)
        return false;
    if (!mpz_perfect_square_p(x.get_mpz_t()))
        return false;
    if (root)
        mpz_sqrt(root->get_mpz_t(), x.get_mpz_t());
    return true;
}

bool is_rat_square(const Rat& x, Rat* root)
{
    Int a, b;
    if (!is_perfect_square(x.get_num(), &a) || !is_perfect_square(x.get_den(), &b))
        return false;
    if (root)
        *root = Rat(a, b);
    return true;
}

uint64_t rat_mod(const Rat& x, uint64_t p)
{
    Int P(static_cast<unsigned long>(p));
    Int n = x.get_num() % P, d = x.get_den() % P;
    if (n < 0)
        n += P;
    if (d == 0)
        throw domain_error("denominator divisible by " + std::to_string(p));
    uint64_t nn = n.get_ui(), dd = d.get_ui();
    return mulmod(nn, invmod(dd, p), p);
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m)
{
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m)
{
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

uint64_t invmod(uint64_t a, uint64_t m)
{
    int64_t t = 0, nt = 1;
    int64_t r = static_cast<int64_t>(m), nr = static_cast<int64_t>(a % m);
    while (nr) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1)
        throw domain_error("not invertible mod " + std::to_string(m));
    return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(m) : t);
}

/* Euler's criterion */
int legendre(const Int& a, uint64_t p)
{
    Int P(static_cast<unsigned long>(p));
    Int r = a % P;
    if (r < 0)
        r += P;
    uint64_t x = r.get_ui();
    if (x == 0)
        return 0;
    return powmod(x, (p - 1) / 2, p) == 1 ? 1 : -1;
}

} // namespace qf
