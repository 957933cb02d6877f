#include "qf/factor.hpp"

#include <algorithm>
#include <map>

namespace qf {

namespace {

const unsigned MR_BASES[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
const Int MR_LIMIT("3317044064679887385961981");

bool mr_round(const Int& n, const Int& a, const Int& d, unsigned s)
{
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Int nm1 = n - 1;
    if (x == 1 || x == nm1)
        return true;
    for (unsigned r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == nm1)
            return true;
    }
    return false;
}

Int brent_rho(const Int& n, unsigned long c)
{
    Int y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1, m = 128;
    auto f = [&](const Int& v) -> Int { return (v * v + c) % n; };
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i)
            y = f(y);
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                Int d = x - y;
                q = q * abs(d) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            Int d = x - ys;
            d = abs(d);
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

void split(const Int& n, std::map<Int, unsigned>& out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    for (unsigned long c = 1;; ++c) {
        Int d = brent_rho(n, c);
        if (d != n && d != 1) {
            split(d, out);
            split(n / d, out);
            return;
        }
    }
}

} // namespace

bool is_prime(const Int& n)
{
    if (n < 2)
        return false;
    for (unsigned p : MR_BASES) {
        if (n == p)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return false;
    }
    if (n >= MR_LIMIT)
        throw domain_error("primality outside the proven Miller-Rabin range");
    Int d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    for (unsigned a : MR_BASES)
        if (!mr_round(n, Int(a), d, s))
            return false;
    return true;
}

bool is_prime_u64(uint64_t n)
{
    return is_prime(Int(static_cast<unsigned long>(n)));
}

Factorization factor_integer(const Int& n)
{
    if (n == 0)
        throw domain_error("factor_integer(0)");
    Factorization F;
    F.sign = n < 0 ? -1 : 1;
    Int m = abs(n);
    std::map<Int, unsigned> out;
    for (unsigned long p = 2; p < 10000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            m /= p;
            ++out[Int(p)];
        }
    }
    if (m > 1) {
        if (m < Int(10000) * 10000)
            ++out[m];
        else
            split(m, out);
    }
    for (auto& [p, e] : out)
        F.factors.emplace_back(p, e);
    return F;
}

Int Factorization::value() const
{
    Int v = sign;
    for (auto& [p, e] : factors)
        v *= ipow(p, e);
    return v;
}

std::vector<Int> Factorization::primes() const
{
    std::vector<Int> v;
    for (auto& pe : factors)
        v.push_back(pe.first);
    return v;
}

std::string Factorization::str() const
{
    std::string s = sign < 0 ? "-" : "";
    if (factors.empty())
        return s + "1";
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i)
            s += "*";
        s += factors[i].first.get_str();
        if (factors[i].second > 1)
            s += "^" + std::to_string(factors[i].second);
    }
    return s;
}

std::vector<uint64_t> primes_up_to(uint64_t n)
{
    std::vector<uint64_t> out;
    if (n < 2)
        return out;
    std::vector<bool> sieve(n + 1, true);
    for (uint64_t i = 2; i <= n; ++i) {
        if (!sieve[i])
            continue;
        out.push_back(i);
        for (uint64_t j = i * i; j <= n; j += i)
            sieve[j] = false;
    }
    return out;
}

uint64_t next_prime(uint64_t n)
{
    for (uint64_t c = n + 1;; ++c)
        if (is_prime_u64(c))
            return c;
}

} // namespace qf
