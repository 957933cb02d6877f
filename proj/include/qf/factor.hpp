#ifndef QF_FACTOR_HPP
#define QF_FACTOR_HPP

#include "qf/arith.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qf {

struct Factorization {
    int sign = 1;
    std::vector<std::pair<Int, unsigned>> factors; // primes increasing

    Int value() const;
    std::vector<Int> primes() const;
    std::string str() const;
};

/* deterministic Miller-Rabin, bases 2..41; proven below 3.3e24 */
bool is_prime(const Int& n);
bool is_prime_u64(uint64_t n);

Factorization factor_integer(const Int& n);

std::vector<uint64_t> primes_up_to(uint64_t n);
uint64_t next_prime(uint64_t n);

} // namespace qf

#endif
