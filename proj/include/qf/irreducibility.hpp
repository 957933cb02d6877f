#ifndef QF_IRREDUCIBILITY_HPP
#define QF_IRREDUCIBILITY_HPP

#include "qf/numfield.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace qf {

/* (1 + 3^{d/2})^2, d even */
Int oesterle_bound(int d);
/* (1 + 3^{6 d h})^2 */
Int freitas_siksek_bound(int d, int h);

/* prime divisors of N(u^m + sign), sign = -1 or +1 */
std::vector<Int> unit_power_residue_primes(const FieldElement& u, int m, int sign = -1);

struct UnitTableCell {
    char split;  // 'a': two primes of degree 2, 'b': four of degree 1
    int subcase; // 1, 2, 3
    FieldElement u;
    int m;
    int sign;
    std::string label; // "u^3-1"
    std::vector<Int> primes;
};
/* the a-rows use u^2 -+ 1, the b-rows u^m - 1 for m = 1..4 */
std::vector<UnitTableCell> unit_table(const FieldDescriptor* K);
/* union over the row's cells */
std::set<Int> unit_table_row_primes(const FieldDescriptor* K, char split, int subcase);

struct KrausCase {
    char split = 'a';
    int subcase = 1;
    FieldElement u;
    long radicand = 2;
};

struct EscapeReport {
    uint64_t p = 0;
    KrausCase kcase;
    std::set<int> surviving_subset_sizes;
    /* per square root s, -s of the radicand */
    std::set<int> surviving_by_root[2];
    bool survives() const { return !surviving_subset_sizes.empty(); }
    const char* verdict() const { return survives() ? "survives" : "eliminated"; }
};

/* case from the Legendre symbols of the two radicands */
EscapeReport kraus_check_prime(uint64_t p, const FieldDescriptor* K);
/* the residue test with a prescribed case; the radicand must be a square mod p */
EscapeReport kraus_check_forced(uint64_t p, const FieldDescriptor* K, char split, int subcase);

/* S(8), primes up to 23 */
const std::vector<uint64_t>& torsion_primes_degree8();

struct PrimeWindow {
    const FieldDescriptor* K = nullptr;
    uint64_t p_min = 0, p_max = 0;
    std::vector<uint64_t> survivors;
    std::vector<uint64_t> fixture_primes; // S(8) inside the window
    std::vector<uint64_t> ramified;
    std::vector<uint64_t> exceptions;     // sorted union
    uint64_t primes_checked = 0;
    bool root_choice_consistent = true;   // eliminated for one root iff for both
};

PrimeWindow prime_window_report(const FieldDescriptor* K, uint64_t p_min, uint64_t p_max, int threads = 1);

} // namespace qf

#endif
