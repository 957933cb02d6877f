#ifndef QF_FINFIELD_HPP
#define QF_FINFIELD_HPP

#include "qf/poly.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace qf {

constexpr int FF_MAX_DEGREE = 4;

class FFElement;

class FFDescriptor {
public:
    uint64_t p;
    int k;
    uint64_t q;
    std::vector<uint64_t> modulus; // monic, length k+1, lowest first

    /* present when q <= 2^16 */
    std::vector<uint32_t> exp_table, log_table;
    std::vector<int8_t> chi_table;

    FFElement zero() const;
    FFElement one() const;
    FFElement from_int(int64_t a) const;
    FFElement from_rat(const Rat& a) const;
    FFElement from_index(uint64_t i) const;
    FFElement gen() const; // the class of x
    bool has_tables() const { return !exp_table.empty(); }

    std::string modulus_str() const;

private:
    FFDescriptor() = default;
    friend const FFDescriptor* ff_field(uint64_t, int);
};

/* interned descriptor for F_{p^k}; lexicographically least monic
 * irreducible modulus (coefficient vector read as the base-p integer
 * c_0 + c_1 p + ... + c_{k-1} p^{k-1}) */
const FFDescriptor* ff_field(uint64_t p, int k);

/* verifies irreducibility through gcd(m, x^{p^i} - x) for i <= k/2 */
bool ff_modulus_irreducible(uint64_t p, const std::vector<uint64_t>& modulus);

class FFElement {
public:
    const FFDescriptor* F = nullptr;
    std::array<uint64_t, FF_MAX_DEGREE> c{};

    FFElement() = default;
    FFElement(const FFDescriptor* f) : F(f) {}

    bool is_zero() const
    {
        for (auto v : c)
            if (v)
                return false;
        return true;
    }
    uint64_t index() const;
    bool in_prime_field() const;

    FFElement operator+(const FFElement& o) const;
    FFElement operator-(const FFElement& o) const;
    FFElement operator-() const;
    FFElement operator*(const FFElement& o) const;
    FFElement operator/(const FFElement& o) const;
    FFElement& operator+=(const FFElement& o) { return *this = *this + o; }
    FFElement& operator-=(const FFElement& o) { return *this = *this - o; }
    FFElement& operator*=(const FFElement& o) { return *this = *this * o; }
    bool operator==(const FFElement& o) const { return c == o.c; }
    bool operator!=(const FFElement& o) const { return c != o.c; }
    bool operator<(const FFElement& o) const { return index() < o.index(); }

    FFElement inv() const;
    FFElement pow(const Int& e) const;
    FFElement pow(uint64_t e) const;
    FFElement frobenius() const { return pow(F->p); }

    std::string str() const;

    const FFDescriptor* field() const { return F; }
};

FFElement ff_scalar(const FFDescriptor* F, uint64_t a);

/* Euler criterion; witness is the lexicographically smaller root */
bool ff_is_square(const FFElement& x, FFElement* root = nullptr);
int ff_chi(const FFElement& x);
/* x^{(q-1)/(p-1)} */
FFElement ff_norm_to_prime(const FFElement& x);

/* every element once, index order */
std::vector<FFElement> ff_enumerate(const FFDescriptor* F, uint64_t cap = 1ULL << 32);

template <>
struct ring<FFElement> {
    static FFElement zero(const FFElement& like) { return like.F ? like.F->zero() : FFElement(); }
    static FFElement one(const FFElement& like)
    {
        if (!like.F)
            throw domain_error("finite field element without descriptor");
        return like.F->one();
    }
    static bool is_zero(const FFElement& a) { return a.is_zero(); }
    static FFElement div(const FFElement& a, const FFElement& b) { return a / b; }
    static std::string str(const FFElement& a) { return a.str(); }
};

using FFPoly = Poly<FFElement>;

/* roots in the coefficient field, sorted by index */
std::vector<FFElement> ff_roots(const FFPoly& f);
bool ff_poly_squarefree(const FFPoly& f);
FFPoly ff_poly_from_rat(const FFDescriptor* F, const Poly<Rat>& f);

} // namespace qf

#endif
