#ifndef QF_HYPERJAC_HPP
#define QF_HYPERJAC_HPP

#include "qf/finfield.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qf {

/* "x^6 - 8x^5 + 2*x^4 - 7", rational coefficients */
Poly<Rat> parse_rat_poly(const std::string& s);
std::string rat_poly_str(const Poly<Rat>& f);

/* y^2 = f(x) over Q, reduced at odd primes */
struct HyperCurve {
    Poly<Rat> f;
    int g = 0;

    explicit HyperCurve(Poly<Rat> f_);
    std::string str() const;
};

int hyper_genus(int deg);

/* throws domain_error naming p when f mod p is not squarefree or drops degree */
void check_good_reduction(const HyperCurve& C, uint64_t p);

/* projective smooth model over F_{p^k}, points at infinity included */
uint64_t count_points(const HyperCurve& C, uint64_t p, int k, uint64_t cap = 1ULL << 24);

/* L(T) = sum a_i T^i over F_q, q = p^r */
struct LPolynomial {
    uint64_t p = 0;
    int r = 1;
    Int q;
    int g = 0;
    std::vector<Int> a;
    std::vector<Int> counts; // #C(F_{q^k}), k = 1..g

    Int eval(const Int& t) const;
    Int jacobian_order() const { return eval(Int(1)); }
    bool functional_equation_holds() const;
    std::string str() const;
};

/* from the counts over F_{q^k}, k = 1..g; throws internal_error when the
 * counts admit no integral solution */
LPolynomial lpolynomial(const HyperCurve& C, uint64_t p, int r = 1);
LPolynomial lpolynomial_from_counts(uint64_t p, int r, int g, const std::vector<Int>& counts);
/* L-polynomial of the same curve over F_{q^k} */
LPolynomial lpolynomial_extend(const LPolynomial& L, int k);
/* every reciprocal root has absolute value sqrt(q); exact Sturm count */
bool weil_bound_holds(const LPolynomial& L);
bool hasse_weil_holds(const Int& count, const Int& q, int g);

struct MumfordDivisor {
    FFPoly u, v;

    bool operator==(const MumfordDivisor& o) const { return u == o.u && v == o.v; }
    bool operator!=(const MumfordDivisor& o) const { return !(*this == o); }
    std::string str() const;
};

/* Jacobian of C over F_p. Even-degree f is replaced by an isomorphic model:
 * a rational root r moved to infinity (x = r + 1/X) gives odd degree; without
 * roots the model is made inert at infinity (non-square leading coefficient)
 * and classes are represented by even-degree u with deg u <= g + 1. */
class Jacobian {
public:
    Jacobian(const HyperCurve& C, uint64_t p);

    uint64_t p;
    int g;
    const FFDescriptor* F;
    FFPoly f; // working model
    bool inert = false;
    bool transformed = false;
    std::string model_note;

    MumfordDivisor zero() const;
    bool is_zero(const MumfordDivisor& D) const { return D.u.deg() == 0; }
    bool is_valid(const MumfordDivisor& D) const;
    MumfordDivisor reduce(MumfordDivisor D) const;
    MumfordDivisor add(const MumfordDivisor& a, const MumfordDivisor& b) const;
    MumfordDivisor neg(const MumfordDivisor& D) const;
    MumfordDivisor mul(const Int& n, const MumfordDivisor& D) const;
    MumfordDivisor random(std::mt19937_64& rng) const;
    /* order of D given a multiple n of it */
    Int order(const MumfordDivisor& D, const Int& n) const;
    std::vector<uint64_t> key(const MumfordDivisor& D) const;

    /* random monic irreducible of degree d with f a square modulo it, and a root */
    MumfordDivisor random_prime_divisor(int d, std::mt19937_64& rng) const;
};

struct GroupStructure {
    std::vector<Int> invariants; // n1 | n2 | ..., trivial factors dropped

    Int order() const;
    bool operator==(const GroupStructure& o) const { return invariants == o.invariants; }
    std::string str() const;
};

/* invariant factor form of a product of cyclic groups */
GroupStructure canonical_structure(const std::vector<Int>& cyclic_orders);

enum class Verdict { Verified, Refuted, Inconclusive };
const char* verdict_name(Verdict v);

struct SylowData {
    Int ell;
    int valuation = 0;
    std::vector<int> exponents; // cyclic factors ell^e, decreasing
    uint64_t size = 0;
    bool complete = false;
    std::vector<MumfordDivisor> torsion_basis; // independent, order ell
};

struct StructureOptions {
    uint64_t seed = 1;
    int samples = 100;
    int sylow_draws = 400;
    uint64_t sylow_cap = 1ULL << 20;
};

struct StructureReport {
    Verdict verdict = Verdict::Inconclusive;
    Int order;
    GroupStructure claimed, computed;
    std::vector<SylowData> sylow;
    int annihilation_failures = 0;
    int samples = 0;
    std::string model_note;
    std::string note;
};

StructureReport verify_group_structure(const HyperCurve& C, uint64_t p, const GroupStructure& claimed,
                                       const StructureOptions& opt = {});

/* Sylow ell-subgroup of J(F_p), |J| = n, by closure of projected random
 * elements; stops early when the draws run out */
SylowData sylow_subgroup(const Jacobian& J, const Int& n, const Int& ell, std::mt19937_64& rng,
                         int draws, uint64_t cap, std::vector<MumfordDivisor>* elements = nullptr);

/* class of pi^*(Q) - deg(pi) oo for pi(x, y) = (c x^m, y) onto y^2 = g(x);
 * needs an odd-degree untransformed model */
MumfordDivisor pullback_class(const Jacobian& J, const Rat& c, int m, const Rat& xQ, const Rat& yQ);

/* whether D lies in ell J(F_p), |J| = n */
bool in_ell_multiple(const Jacobian& J, const MumfordDivisor& D, const Int& n, const Int& ell,
                     std::mt19937_64& rng, int draws = 400);

} // namespace qf

#endif
