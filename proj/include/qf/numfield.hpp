#ifndef QF_NUMFIELD_HPP
#define QF_NUMFIELD_HPP

#include "qf/finfield.hpp"
#include "qf/poly.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qf {

class FieldElement;

/* Q, Q(sqrt d) or Q(sqrt a, sqrt b). Internal coordinates are over the
 * power basis {1, sqrt a, sqrt b, sqrt a * sqrt b} (truncated to the
 * degree). */
class FieldDescriptor {
public:
    enum Kind { Rational, Quadratic, Biquadratic };
    Kind kind;
    int n;                    // degree
    std::array<long, 4> rad;  // squares of the power basis: 1, a, b, ab
    std::string name;         // "Q", "Q(r3)", "Q(r2,r3)"

    std::vector<FieldElement> integral_basis() const;
    Int discriminant() const { return disc_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_rat(const Rat& x) const;
    /* basis element sqrt(r); r must be one of the radicands */
    FieldElement sqrt_of(long r) const;
    FieldElement coords(std::array<Rat, 4> c) const;
    bool has_radicand(long r) const;
    int radicand_index(long r) const;
    std::string basis_name(int i) const;

    /* integral-basis coordinates */
    std::vector<Rat> ib_coords(const FieldElement& x) const;
    FieldElement from_ib(const std::vector<Int>& c) const;

    /* subfields tags: 1 for Q, otherwise a radicand */
    std::vector<long> quadratic_subfields() const;

private:
    FieldDescriptor() = default;
    std::vector<std::vector<Rat>> ib_;      // rows in power coordinates
    std::vector<std::vector<Rat>> ib_inv_;  // inverse matrix
    Int disc_;
    friend const FieldDescriptor* make_field(FieldDescriptor::Kind, long, long);
    friend void finish_descriptor(FieldDescriptor*);
};

const FieldDescriptor* rational_field();
const FieldDescriptor* quadratic_field(long d);
const FieldDescriptor* biquadratic_field(long a, long b);
/* "q2q3" -> Q(r2,r3); also "Q", "Q(r3)", "Q(r2,r11)" */
const FieldDescriptor* field_by_name(const std::string& tag);

class FieldElement {
public:
    const FieldDescriptor* K = nullptr;
    std::array<Rat, 4> x{};

    FieldElement() = default;
    explicit FieldElement(const FieldDescriptor* k) : K(k) {}

    bool is_zero() const
    {
        for (auto& v : x)
            if (v != 0)
                return false;
        return true;
    }
    bool is_rational() const { return x[1] == 0 && x[2] == 0 && x[3] == 0; }
    const Rat& rational_part() const { return x[0]; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    bool operator==(const FieldElement& o) const { return x == o.x; }
    bool operator!=(const FieldElement& o) const { return x != o.x; }

    FieldElement inv() const;
    FieldElement pow(long e) const;

    /* canonical grammar form, e.g. "3-2*r2", "1/2*r2+1/2*r6" */
    std::string str() const;
    double approx(int s1 = 1, int s2 = 1) const;
};

FieldElement operator*(const Rat& s, const FieldElement& a);

FieldElement parse_element(const FieldDescriptor* K, const std::string& s);

/* move between a field and one of its subfields (same power basis names) */
FieldElement embed(const FieldElement& x, const FieldDescriptor* big);
FieldElement restrict_to(const FieldElement& x, const FieldDescriptor* sub);
bool lies_in(const FieldElement& x, const FieldDescriptor* sub);

struct Automorphism {
    int s1 = 1, s2 = 1;
    FieldElement apply(const FieldElement& x) const;
    bool is_identity() const { return s1 == 1 && s2 == 1; }
};
std::vector<Automorphism> automorphisms(const FieldDescriptor* K);

/* norm to Q (target = 1) or to the quadratic subfield Q(sqrt target) */
Rat field_norm(const FieldElement& x);
FieldElement field_norm_to(const FieldElement& x, long target);
Rat field_trace(const FieldElement& x);

bool is_integral(const FieldElement& x);
bool is_unit(const FieldElement& x);

/* exact sign of the real embedding sqrt a -> s1 sqrt a, sqrt b -> s2 sqrt b */
int embedding_sign(const FieldElement& x, int s1 = 1, int s2 = 1);
bool is_totally_positive(const FieldElement& x);

/* square root in the same field */
std::optional<FieldElement> field_sqrt(const FieldElement& x);
inline bool is_square(const FieldElement& x, FieldElement* w = nullptr)
{
    auto r = field_sqrt(x);
    if (r && w)
        *w = *r;
    return r.has_value();
}

FieldElement fundamental_unit(long d);
/* case: 1 -> sqrt 2 subfield, 2 -> second radicand, 3 -> product */
FieldElement totally_positive_unit_for_case(const FieldDescriptor* K, int subcase);

struct PrimeIdealData {
    uint64_t p = 0;
    int e = 1, f = 1, g = 1;
    const FieldDescriptor* K = nullptr;
    const FFDescriptor* residue_field = nullptr;
    std::vector<FFElement> ib_images; // residue of each integral basis element
    FieldElement uniformizer;
    FieldElement helper;              // in every other prime above p, not in this one
    std::vector<FieldElement> lift_basis;
    std::string label;

    FFElement residue(const FieldElement& x) const;
    long valuation(const FieldElement& x) const;
    FieldElement lift(const FFElement& r) const;
    bool contains(const FieldElement& x) const { return valuation(x) > 0; }
};

struct SplittingData {
    int g, e, f;
    std::vector<PrimeIdealData> primes;
};

SplittingData splitting_type(uint64_t p, const FieldDescriptor* K);
/* 𝔭^σ == 𝔭 */
bool prime_stable(const PrimeIdealData& P, const Automorphism& s);

/* roots in K of a polynomial over K; K rational or quadratic */
std::vector<FieldElement> roots_in_field(const Poly<FieldElement>& f);

template <>
struct ring<FieldElement> {
    static FieldElement zero(const FieldElement& like) { return FieldElement(like.K); }
    static FieldElement one(const FieldElement& like)
    {
        if (!like.K)
            throw domain_error("field element without descriptor");
        return like.K->one();
    }
    static bool is_zero(const FieldElement& a) { return a.is_zero(); }
    static FieldElement div(const FieldElement& a, const FieldElement& b) { return a / b; }
    static std::string str(const FieldElement& a) { return a.str(); }
};

using KPoly = Poly<FieldElement>;
KPoly kpoly(const FieldDescriptor* K, const std::vector<Rat>& c);
KPoly kpoly(const std::vector<FieldElement>& c);

/* F_p-linear algebra helper: basis of the nullspace of the rows x cols
 * matrix M (acting on column vectors) */
std::vector<std::vector<uint64_t>> nullspace_mod(const std::vector<std::vector<uint64_t>>& M, size_t cols, uint64_t p);

/* a/b with |a|, b <= sqrt(m/2); nullopt when none exists */
std::optional<Rat> rational_reconstruct(const Int& r, const Int& m);

} // namespace qf

#endif
