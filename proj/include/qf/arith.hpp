#ifndef QF_ARITH_HPP
#define QF_ARITH_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qf {

using Int = mpz_class;
using Rat = mpq_class;

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline Rat make_rat(const Int& n, const Int& d)
{
    if (d == 0)
        throw domain_error("zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

/* "n" or "n/d" */
std::string to_string(const Int& x);
std::string to_string(const Rat& x);
Rat parse_rat(const std::string& s);

Int ipow(const Int& b, unsigned long e);
Rat rpow(const Rat& b, long e);

/* p-adic valuation; v_p(0) is reported as a large sentinel */
constexpr long VAL_INF = 1L << 40;
long val_p(const Int& x, const Int& p);
long val_p(const Rat& x, const Int& p);

bool is_perfect_square(const Int& x, Int* root = nullptr);
bool is_rat_square(const Rat& x, Rat* root = nullptr);

/* residue of a p-integral rational mod p */
uint64_t rat_mod(const Rat& x, uint64_t p);

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod(uint64_t a, uint64_t e, uint64_t m);
uint64_t invmod(uint64_t a, uint64_t m);
int legendre(const Int& a, uint64_t p);

} // namespace qf

#endif
