#include "qf/numfield.hpp"

#include "qf/factor.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <algorithm>
#include <tuple>

namespace qf {

namespace {

std::mutex nf_mutex;
std::map<std::tuple<int, long, long>, std::unique_ptr<FieldDescriptor>> nf_cache;

bool squarefree(long d)
{
    if (d <= 1)
        return false;
    for (long q = 2; q * q <= d; ++q)
        if (d % (q * q) == 0)
            return false;
    return true;
}

int rsgn(const Rat& a) { return mpq_sgn(a.get_mpq_t()); }

/* sign of u + v sqrt(a), a > 0 not a square */
int sign_quad(const Rat& u, const Rat& v, long a)
{
    int su = rsgn(u), sv = rsgn(v);
    if (sv == 0)
        return su;
    if (su == 0 || su == sv)
        return sv;
    Rat lhs = u * u, rhs = v * v * a;
    return lhs > rhs ? su : sv;
}

Rat det(std::vector<std::vector<Rat>> M)
{
    size_t n = M.size();
    Rat d = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && M[piv][c] == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != c) {
            std::swap(M[piv], M[c]);
            d = -d;
        }
        d *= M[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            Rat k = M[r][c] / M[c][c];
            for (size_t j = c; j < n; ++j)
                M[r][j] -= k * M[c][j];
        }
    }
    return d;
}

std::vector<std::vector<Rat>> inverse(std::vector<std::vector<Rat>> M)
{
    size_t n = M.size();
    std::vector<std::vector<Rat>> I(n, std::vector<Rat>(n, 0));
    for (size_t i = 0; i < n; ++i)
        I[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && M[piv][c] == 0)
            ++piv;
        if (piv == n)
            throw domain_error("singular basis matrix");
        std::swap(M[piv], M[c]);
        std::swap(I[piv], I[c]);
        Rat k = M[c][c];
        for (size_t j = 0; j < n; ++j) {
            M[c][j] /= k;
            I[c][j] /= k;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || M[r][c] == 0)
                continue;
            Rat t = M[r][c];
            for (size_t j = 0; j < n; ++j) {
                M[r][j] -= t * M[c][j];
                I[r][j] -= t * I[c][j];
            }
        }
    }
    return I;
}

/* echelon basis of the Z-span of integer rows, pivots taken from the last
 * column backwards; result ordered by pivot column */
std::vector<std::vector<Int>> hnf_rows(std::vector<std::vector<Int>> rows, size_t n)
{
    std::vector<std::vector<Int>> out(n);
    std::vector<bool> have(n, false);
    for (size_t cc = n; cc-- > 0;) {
        for (;;) {
            size_t best = rows.size();
            for (size_t r = 0; r < rows.size(); ++r)
                if (rows[r][cc] != 0 && (best == rows.size() || abs(rows[r][cc]) < abs(rows[best][cc])))
                    best = r;
            if (best == rows.size())
                break;
            bool done = true;
            for (size_t r = 0; r < rows.size(); ++r) {
                if (r == best || rows[r][cc] == 0)
                    continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), rows[r][cc].get_mpz_t(), rows[best][cc].get_mpz_t());
                for (size_t j = 0; j < n; ++j)
                    rows[r][j] -= q * rows[best][j];
                if (rows[r][cc] != 0)
                    done = false;
            }
            if (done) {
                auto row = rows[best];
                rows.erase(rows.begin() + best);
                if (row[cc] < 0)
                    for (auto& v : row)
                        v = -v;
                out[cc] = row;
                have[cc] = true;
                break;
            }
        }
    }
    std::vector<std::vector<Int>> res;
    for (size_t c = 0; c < n; ++c)
        if (have[c])
            res.push_back(out[c]);
    return res;
}

bool charpoly_integral(const FieldElement& x)
{
    const FieldDescriptor* K = x.K;
    KPoly acc = KPoly::constant(K->one());
    for (auto& s : automorphisms(K)) {
        KPoly lin(std::vector<FieldElement>{-s.apply(x), K->one()}, K->zero());
        acc = acc * lin;
    }
    for (auto& c : acc.coeffs()) {
        if (!c.is_rational() || !is_integer(c.x[0]))
            return false;
    }
    return true;
}

} // namespace

void finish_descriptor(FieldDescriptor* F)
{
    int n = F->n;
    std::vector<std::vector<Rat>> B;
    auto unit_row = [&](int i) {
        std::vector<Rat> r(n, 0);
        r[i] = 1;
        return r;
    };
    if (F->kind == FieldDescriptor::Rational) {
        B = {unit_row(0)};
    } else if (F->kind == FieldDescriptor::Quadratic) {
        long d = F->rad[1];
        if (((d % 4) + 4) % 4 == 1)
            B = {unit_row(0), {Rat(1, 2), Rat(1, 2)}};
        else
            B = {unit_row(0), unit_row(1)};
    } else if (F->rad[1] == 2 && F->rad[2] == 3) {
        B = {unit_row(0), unit_row(1), unit_row(2), {0, Rat(1, 2), 0, Rat(1, 2)}};
    } else {
        /* enlarge Z[sqrt a, sqrt b] by integral half-sums until stable */
        B = {unit_row(0), unit_row(1), unit_row(2), unit_row(3)};
        F->ib_ = B;
        for (bool grew = true; grew;) {
            grew = false;
            for (int mask = 1; mask < 16 && !grew; ++mask) {
                std::vector<Rat> cand(4, 0);
                for (int i = 0; i < 4; ++i)
                    if (mask >> i & 1)
                        for (int j = 0; j < 4; ++j)
                            cand[j] += B[i][j] / 2;
                FieldElement e(F);
                for (int j = 0; j < 4; ++j)
                    e.x[j] = cand[j];
                if (!charpoly_integral(e))
                    continue;
                Int D = 1;
                for (auto& r : B)
                    for (auto& v : r)
                        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), v.get_den_mpz_t());
                for (auto& v : cand)
                    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), v.get_den_mpz_t());
                std::vector<std::vector<Int>> rows;
                for (auto& r : B) {
                    std::vector<Int> ir;
                    for (auto& v : r) {
                        Rat t = v * D;
                        ir.push_back(t.get_num());
                    }
                    rows.push_back(ir);
                }
                std::vector<Int> ic;
                for (auto& v : cand) {
                    Rat t = v * D;
                    ic.push_back(t.get_num());
                }
                rows.push_back(ic);
                auto H = hnf_rows(rows, 4);
                std::vector<std::vector<Rat>> nb;
                for (auto& r : H) {
                    std::vector<Rat> rr;
                    for (auto& v : r)
                        rr.push_back(make_rat(v, D));
                    nb.push_back(rr);
                }
                if (det(nb) != det(B)) {
                    B = nb;
                    grew = true;
                }
            }
        }
        /* multiplication table must stay integral */
        for (auto& r1 : B)
            for (auto& r2 : B) {
                FieldElement a(F), b(F);
                for (int j = 0; j < 4; ++j) {
                    a.x[j] = r1[j];
                    b.x[j] = r2[j];
                }
                FieldElement c = a * b;
                std::vector<Rat> cc(c.x.begin(), c.x.end());
                auto inv = inverse(B);
                for (int j = 0; j < 4; ++j) {
                    Rat s = 0;
                    for (int i = 0; i < 4; ++i)
                        s += cc[i] * inv[i][j];
                    if (!is_integer(s))
                        throw domain_error("integral basis not closed under multiplication");
                }
            }
    }
    F->ib_ = B;
    F->ib_inv_ = inverse(B);
    std::vector<std::vector<Rat>> T(n, std::vector<Rat>(n, 0));
    auto basis = F->integral_basis();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            T[i][j] = field_trace(basis[i] * basis[j]);
    F->disc_ = det(T).get_num();
}

const FieldDescriptor* make_field(FieldDescriptor::Kind kind, long a, long b)
{
    std::lock_guard<std::mutex> lock(nf_mutex);
    auto key = std::make_tuple(static_cast<int>(kind), a, b);
    auto it = nf_cache.find(key);
    if (it != nf_cache.end())
        return it->second.get();
    std::unique_ptr<FieldDescriptor> F(new FieldDescriptor());
    F->kind = kind;
    F->rad = {1, 0, 0, 0};
    switch (kind) {
    case FieldDescriptor::Rational:
        F->n = 1;
        F->name = "Q";
        break;
    case FieldDescriptor::Quadratic:
        F->n = 2;
        F->rad = {1, a, 0, 0};
        F->name = "Q(r" + std::to_string(a) + ")";
        break;
    case FieldDescriptor::Biquadratic:
        F->n = 4;
        F->rad = {1, a, b, a * b};
        F->name = "Q(r" + std::to_string(a) + ",r" + std::to_string(b) + ")";
        break;
    }
    FieldDescriptor* raw = F.get();
    finish_descriptor(raw);
    nf_cache.emplace(key, std::move(F));
    return raw;
}

const FieldDescriptor* rational_field() { return make_field(FieldDescriptor::Rational, 0, 0); }

const FieldDescriptor* quadratic_field(long d)
{
    if (!squarefree(d))
        throw domain_error("quadratic_field: radicand must be squarefree and > 1");
    return make_field(FieldDescriptor::Quadratic, d, 0);
}

const FieldDescriptor* biquadratic_field(long a, long b)
{
    if (a > b)
        std::swap(a, b);
    if (!squarefree(a) || !squarefree(b) || a == b)
        throw domain_error("biquadratic_field: radicands must be distinct squarefree > 1");
    if (std::gcd(a, b) != 1)
        throw domain_error("biquadratic_field: coprime radicands required");
    return make_field(FieldDescriptor::Biquadratic, a, b);
}

const FieldDescriptor* field_by_name(const std::string& tag)
{
    if (tag == "q2q3")
        return biquadratic_field(2, 3);
    if (tag == "q2q11")
        return biquadratic_field(2, 11);
    if (tag == "Q" || tag == "q")
        return rational_field();
    std::vector<long> r;
    size_t i = 0;
    while ((i = tag.find('r', i)) != std::string::npos) {
        size_t j = i + 1;
        while (j < tag.size() && isdigit(static_cast<unsigned char>(tag[j])))
            ++j;
        if (j > i + 1)
            r.push_back(std::stol(tag.substr(i + 1, j - i - 1)));
        i = j;
    }
    if (r.size() == 1)
        return quadratic_field(r[0]);
    if (r.size() == 2)
        return biquadratic_field(r[0], r[1]);
    throw domain_error("unknown field tag '" + tag + "'");
}

std::vector<FieldElement> FieldDescriptor::integral_basis() const
{
    std::vector<FieldElement> out;
    for (auto& row : ib_) {
        FieldElement e(this);
        for (int j = 0; j < n; ++j)
            e.x[j] = row[j];
        out.push_back(e);
    }
    return out;
}

FieldElement FieldDescriptor::zero() const { return FieldElement(this); }

FieldElement FieldDescriptor::one() const
{
    FieldElement e(this);
    e.x[0] = 1;
    return e;
}

FieldElement FieldDescriptor::from_rat(const Rat& v) const
{
    FieldElement e(this);
    e.x[0] = v;
    e.x[0].canonicalize();
    return e;
}

bool FieldDescriptor::has_radicand(long r) const { return radicand_index(r) >= 0; }

int FieldDescriptor::radicand_index(long r) const
{
    for (int i = 0; i < n; ++i)
        if (rad[i] == r)
            return i;
    return -1;
}

FieldElement FieldDescriptor::sqrt_of(long r) const
{
    int i = radicand_index(r);
    if (i < 0)
        throw domain_error("sqrt(" + std::to_string(r) + ") is not a basis element of " + name);
    FieldElement e(this);
    e.x[i] = 1;
    return e;
}

FieldElement FieldDescriptor::coords(std::array<Rat, 4> c) const
{
    FieldElement e(this);
    for (int i = 0; i < n; ++i)
        e.x[i] = c[i];
    for (int i = n; i < 4; ++i)
        if (c[i] != 0)
            throw domain_error("coordinate outside " + name);
    return e;
}

std::string FieldDescriptor::basis_name(int i) const
{
    return i == 0 ? "1" : "r" + std::to_string(rad[i]);
}

std::vector<Rat> FieldDescriptor::ib_coords(const FieldElement& x) const
{
    std::vector<Rat> c(n, 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            c[j] += x.x[i] * ib_inv_[i][j];
    return c;
}

FieldElement FieldDescriptor::from_ib(const std::vector<Int>& c) const
{
    FieldElement e(this);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            e.x[j] += c[i] * ib_[i][j];
    return e;
}

std::vector<long> FieldDescriptor::quadratic_subfields() const
{
    std::vector<long> out;
    for (int i = 1; i < n; ++i)
        out.push_back(rad[i]);
    return out;
}

static const FieldDescriptor* pickK(const FieldElement& a, const FieldElement& b)
{
    if (a.K && b.K && a.K != b.K)
        throw domain_error("mixing elements of " + a.K->name + " and " + b.K->name);
    return a.K ? a.K : b.K;
}

FieldElement FieldElement::operator+(const FieldElement& o) const
{
    FieldElement r(pickK(*this, o));
    for (int i = 0; i < 4; ++i)
        r.x[i] = x[i] + o.x[i];
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const
{
    FieldElement r(pickK(*this, o));
    for (int i = 0; i < 4; ++i)
        r.x[i] = x[i] - o.x[i];
    return r;
}

FieldElement FieldElement::operator-() const
{
    FieldElement r(K);
    for (int i = 0; i < 4; ++i)
        r.x[i] = -x[i];
    return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const
{
    const FieldDescriptor* D = pickK(*this, o);
    FieldElement r(D);
    if (!D)
        return r;
    const auto& y = o.x;
    if (D->n == 1) {
        r.x[0] = x[0] * y[0];
        return r;
    }
    const long a = D->rad[1];
    if (D->n == 2) {
        r.x[0] = x[0] * y[0] + a * (x[1] * y[1]);
        r.x[1] = x[0] * y[1] + x[1] * y[0];
        return r;
    }
    const long b = D->rad[2], ab = D->rad[3];
    r.x[0] = x[0] * y[0] + a * (x[1] * y[1]) + b * (x[2] * y[2]) + ab * (x[3] * y[3]);
    r.x[1] = x[0] * y[1] + x[1] * y[0] + b * (x[2] * y[3] + x[3] * y[2]);
    r.x[2] = x[0] * y[2] + x[2] * y[0] + a * (x[1] * y[3] + x[3] * y[1]);
    r.x[3] = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] + x[2] * y[1];
    return r;
}

FieldElement operator*(const Rat& s, const FieldElement& a)
{
    FieldElement r(a.K);
    for (int i = 0; i < 4; ++i)
        r.x[i] = s * a.x[i];
    return r;
}

FieldElement FieldElement::inv() const
{
    if (is_zero())
        throw domain_error("division by zero in a number field");
    if (K->n == 1) {
        FieldElement r(K);
        r.x[0] = 1 / x[0];
        return r;
    }
    FieldElement P = K->one();
    for (auto& s : automorphisms(K))
        if (!s.is_identity())
            P = P * s.apply(*this);
    FieldElement N = *this * P;
    return (1 / N.x[0]) * P;
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inv(); }

FieldElement FieldElement::pow(long e) const
{
    if (e < 0)
        return inv().pow(-e);
    FieldElement r = K->one(), b = *this;
    while (e) {
        if (e & 1)
            r = r * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

std::string FieldElement::str() const
{
    std::string s;
    int n = K ? K->n : 1;
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0)
            continue;
        std::string c = to_string(x[i]);
        if (!s.empty() && c[0] != '-')
            s += "+";
        s += c;
        if (i > 0)
            s += "*" + K->basis_name(i);
    }
    return s.empty() ? "0" : s;
}

double FieldElement::approx(int s1, int s2) const
{
    double r = x[0].get_d();
    if (!K || K->n == 1)
        return r;
    r += s1 * x[1].get_d() * std::sqrt(static_cast<double>(K->rad[1]));
    if (K->n == 2)
        return r;
    r += s2 * x[2].get_d() * std::sqrt(static_cast<double>(K->rad[2]));
    r += s1 * s2 * x[3].get_d() * std::sqrt(static_cast<double>(K->rad[3]));
    return r;
}

FieldElement parse_element(const FieldDescriptor* K, const std::string& in)
{
    std::string s;
    for (char ch : in)
        if (!isspace(static_cast<unsigned char>(ch)))
            s += ch;
    if (s.empty())
        throw domain_error("empty element string");
    FieldElement r(K);
    size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw domain_error("bad element '" + in + "': " + why);
    };
    auto read_digits = [&]() {
        size_t j = i;
        while (j < s.size() && isdigit(static_cast<unsigned char>(s[j])))
            ++j;
        if (j == i)
            fail("expected digits at position " + std::to_string(i));
        std::string d = s.substr(i, j - i);
        i = j;
        return d;
    };
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (first && s[i] == '+')
                fail("leading '+'");
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        Int num(read_digits());
        Int den = 1;
        if (i < s.size() && s[i] == '/') {
            ++i;
            den = Int(read_digits());
            if (den == 0)
                fail("zero denominator");
        }
        Rat c = make_rat(sign * num, den);
        int idx = 0;
        if (i < s.size() && s[i] == '*') {
            ++i;
            if (i >= s.size() || s[i] != 'r')
                fail("expected basis name");
            ++i;
            long rv = std::stol(read_digits());
            idx = K->radicand_index(rv);
            if (idx <= 0)
                fail("r" + std::to_string(rv) + " is not in " + K->name);
        }
        r.x[idx] += c;
    }
    return r;
}

FieldElement embed(const FieldElement& x, const FieldDescriptor* big)
{
    FieldElement r(big);
    for (int i = 0; i < x.K->n; ++i) {
        if (x.x[i] == 0)
            continue;
        int j = big->radicand_index(x.K->rad[i]);
        if (j < 0)
            throw domain_error(x.K->name + " is not a subfield of " + big->name);
        r.x[j] = x.x[i];
    }
    return r;
}

bool lies_in(const FieldElement& x, const FieldDescriptor* sub)
{
    for (int i = 0; i < x.K->n; ++i)
        if (x.x[i] != 0 && sub->radicand_index(x.K->rad[i]) < 0)
            return false;
    return true;
}

FieldElement restrict_to(const FieldElement& x, const FieldDescriptor* sub)
{
    if (!lies_in(x, sub))
        throw domain_error(x.str() + " does not lie in " + sub->name);
    FieldElement r(sub);
    for (int i = 0; i < x.K->n; ++i)
        if (x.x[i] != 0)
            r.x[sub->radicand_index(x.K->rad[i])] = x.x[i];
    return r;
}

FieldElement Automorphism::apply(const FieldElement& v) const
{
    FieldElement r = v;
    r.x[1] *= s1;
    r.x[2] *= s2;
    r.x[3] *= s1 * s2;
    return r;
}

std::vector<Automorphism> automorphisms(const FieldDescriptor* K)
{
    if (K->n == 1)
        return {{1, 1}};
    if (K->n == 2)
        return {{1, 1}, {-1, 1}};
    return {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
}

Rat field_norm(const FieldElement& x)
{
    FieldElement P = x.K->one();
    for (auto& s : automorphisms(x.K))
        P = P * s.apply(x);
    return P.x[0];
}

FieldElement field_norm_to(const FieldElement& x, long target)
{
    if (target == 1)
        return x.K->from_rat(field_norm(x));
    if (x.K->n != 4 || !x.K->has_radicand(target))
        throw domain_error("Q(r" + std::to_string(target) + ") is not a proper subfield of " + x.K->name);
    int idx = x.K->radicand_index(target);
    Automorphism t = idx == 1 ? Automorphism{1, -1} : idx == 2 ? Automorphism{-1, 1} : Automorphism{-1, -1};
    return x * t.apply(x);
}

Rat field_trace(const FieldElement& x) { return x.K->n * x.x[0]; }

bool is_integral(const FieldElement& x)
{
    for (auto& c : x.K->ib_coords(x))
        if (!is_integer(c))
            return false;
    return true;
}

bool is_unit(const FieldElement& x)
{
    if (x.is_zero() || !is_integral(x))
        return false;
    Rat n = field_norm(x);
    return n == 1 || n == -1;
}

int embedding_sign(const FieldElement& v, int s1, int s2)
{
    const FieldDescriptor* K = v.K;
    if (K->n == 1)
        return rsgn(v.x[0]);
    long a = K->rad[1];
    if (K->n == 2)
        return sign_quad(v.x[0], s1 * v.x[1], a);
    long b = K->rad[2];
    Rat A0 = v.x[0], A1 = s1 * v.x[1];
    Rat B0 = s2 * v.x[2], B1 = s1 * s2 * v.x[3];
    int sA = sign_quad(A0, A1, a), sB = sign_quad(B0, B1, a);
    if (sB == 0)
        return sA;
    if (sA == 0 || sA == sB)
        return sB;
    /* A^2 - b B^2 */
    Rat C0 = A0 * A0 + a * (A1 * A1) - b * (B0 * B0 + a * (B1 * B1));
    Rat C1 = 2 * A0 * A1 - 2 * b * B0 * B1;
    return sign_quad(C0, C1, a) > 0 ? sA : sB;
}

bool is_totally_positive(const FieldElement& x)
{
    for (auto& s : automorphisms(x.K))
        if (embedding_sign(x, s.s1, s.s2) <= 0)
            return false;
    return true;
}

namespace {

std::optional<FieldElement> sqrt_quadratic(const FieldElement& v)
{
    const FieldDescriptor* K = v.K;
    long d = K->rad[1];
    Rat r;
    if (v.is_rational()) {
        if (is_rat_square(v.x[0], &r))
            return K->from_rat(r);
        if (is_rat_square(v.x[0] / d, &r)) {
            FieldElement w(K);
            w.x[1] = r;
            return w;
        }
        return std::nullopt;
    }
    Rat N = v.x[0] * v.x[0] - d * (v.x[1] * v.x[1]);
    Rat n;
    if (!is_rat_square(N, &n))
        return std::nullopt;
    for (int sgnn : {1, -1}) {
        Rat s2 = (v.x[0] + sgnn * n) / 2;
        Rat s;
        if (s2 == 0 || !is_rat_square(s2, &s))
            continue;
        FieldElement w(K);
        w.x[0] = s;
        w.x[1] = v.x[1] / (2 * s);
        if (w * w == v)
            return w;
    }
    return std::nullopt;
}

} // namespace

std::optional<FieldElement> field_sqrt(const FieldElement& v)
{
    const FieldDescriptor* K = v.K;
    if (v.is_zero())
        return K->zero();
    if (K->n == 1) {
        Rat r;
        if (is_rat_square(v.x[0], &r))
            return K->from_rat(r);
        return std::nullopt;
    }
    if (K->n == 2)
        return sqrt_quadratic(v);
    /* K = F(sqrt b), F = Q(sqrt a) */
    const FieldDescriptor* F = quadratic_field(K->rad[1]);
    FieldElement A(F), B(F);
    A.x[0] = v.x[0];
    A.x[1] = v.x[1];
    B.x[0] = v.x[2];
    B.x[1] = v.x[3];
    FieldElement sb = K->sqrt_of(K->rad[2]);
    if (B.is_zero()) {
        if (auto r = sqrt_quadratic(A))
            return embed(*r, K);
        FieldElement Ab = (Rat(1) / K->rad[2]) * A;
        if (auto r = sqrt_quadratic(Ab))
            return embed(*r, K) * sb;
        return std::nullopt;
    }
    FieldElement N = A * A - K->rad[2] * (B * B);
    auto n = sqrt_quadratic(N);
    if (!n)
        return std::nullopt;
    for (int sg : {1, -1}) {
        FieldElement C2 = Rat(1, 2) * (A + sg * *n);
        if (C2.is_zero())
            continue;
        auto C = sqrt_quadratic(C2);
        if (!C)
            continue;
        FieldElement D = B / (Rat(2) * *C);
        FieldElement w = embed(*C, K) + embed(D, K) * sb;
        if (w * w == v)
            return w;
    }
    return std::nullopt;
}

FieldElement fundamental_unit(long d)
{
    if (!squarefree(d))
        throw domain_error("fundamental_unit: " + std::to_string(d) + " is not squarefree > 1");
    const FieldDescriptor* K = quadratic_field(d);
    Int P = (d % 4 == 1) ? 1 : 0, Q = (d % 4 == 1) ? 2 : 1;
    const Int P0 = P, Q0 = Q, D = d;
    Int sq;
    mpz_sqrt(sq.get_mpz_t(), D.get_mpz_t());
    Int h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    for (int it = 0; it < 100000; ++it) {
        Int a;
        mpz_fdiv_q(a.get_mpz_t(), Int(P + sq).get_mpz_t(), Q.get_mpz_t());
        Int h = a * h1 + h2, k = a * k1 + k2;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        /* h - k * conj(xi) */
        FieldElement e(K);
        e.x[0] = Rat(h) - Rat(k * P0, Q0);
        e.x[1] = Rat(k, Q0);
        Rat N = field_norm(e);
        if (k >= 1 && (N == 1 || N == -1))
            return e;
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    throw domain_error("fundamental_unit: continued fraction did not close");
}

FieldElement totally_positive_unit_for_case(const FieldDescriptor* K, int subcase)
{
    if (K->n != 4 || subcase < 1 || subcase > 3)
        throw domain_error("totally_positive_unit_for_case needs a biquadratic field and case 1..3");
    if (K->rad[1] == 2 && K->rad[2] == 3) {
        static const char* tbl[] = {"3-2*r2", "2+1*r3", "5-2*r6"};
        return parse_element(K, tbl[subcase - 1]);
    }
    long r = K->rad[subcase];
    FieldElement u = fundamental_unit(r);
    if (field_norm(u) == -1)
        u = u * u;
    return embed(u, K);
}

std::vector<std::vector<uint64_t>> nullspace_mod(const std::vector<std::vector<uint64_t>>& M0, size_t cols, uint64_t p)
{
    auto M = M0;
    std::vector<int> pivcol;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < M.size(); ++c) {
        size_t piv = r;
        while (piv < M.size() && M[piv][c] % p == 0)
            ++piv;
        if (piv == M.size())
            continue;
        std::swap(M[piv], M[r]);
        uint64_t iv = invmod(M[r][c] % p, p);
        for (auto& v : M[r])
            v = mulmod(v % p, iv, p);
        for (size_t i = 0; i < M.size(); ++i) {
            if (i == r || M[i][c] % p == 0)
                continue;
            uint64_t t = M[i][c] % p;
            for (size_t j = 0; j < cols; ++j)
                M[i][j] = (M[i][j] % p + p - mulmod(t, M[r][j], p)) % p;
        }
        pivcol.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<bool> isp(cols, false);
    for (int c : pivcol)
        isp[c] = true;
    std::vector<std::vector<uint64_t>> out;
    for (size_t f = 0; f < cols; ++f) {
        if (isp[f])
            continue;
        std::vector<uint64_t> v(cols, 0);
        v[f] = 1;
        for (size_t i = 0; i < pivcol.size(); ++i)
            v[pivcol[i]] = (p - M[i][f] % p) % p;
        out.push_back(v);
    }
    return out;
}

std::optional<Rat> rational_reconstruct(const Int& r0, const Int& m)
{
    Int T;
    Int half = m / 2;
    mpz_sqrt(T.get_mpz_t(), half.get_mpz_t());
    Int a0 = m, a1 = r0 % m;
    if (a1 < 0)
        a1 += m;
    Int t0 = 0, t1 = 1;
    while (a1 > T) {
        Int q = a0 / a1;
        Int a2 = a0 - q * a1, t2 = t0 - q * t1;
        a0 = a1;
        a1 = a2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0 || abs(t1) > T)
        return std::nullopt;
    Int g;
    mpz_gcd(g.get_mpz_t(), a1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1)
        return std::nullopt;
    if (t1 < 0) {
        t1 = -t1;
        a1 = -a1;
    }
    return Rat(a1, t1);
}

/* ---- primes ---- */

namespace {

PrimeIdealData make_prime(const FieldDescriptor* K, uint64_t p, int e, int f, int g, const FFDescriptor* R,
                          const std::vector<FFElement>& power_images, const std::string& label)
{
    PrimeIdealData P;
    P.p = p;
    P.e = e;
    P.f = f;
    P.g = g;
    P.K = K;
    P.residue_field = R;
    P.label = label;
    for (auto& w : K->integral_basis()) {
        FFElement acc = R->zero();
        for (int j = 0; j < K->n; ++j)
            if (w.x[j] != 0)
                acc = acc + R->from_rat(w.x[j]) * power_images[j];
        P.ib_images.push_back(acc);
    }
    return P;
}

PrimeIdealData make_prime_by_norm(const FieldDescriptor* K, uint64_t p, int e, const std::string& label)
{
    PrimeIdealData P;
    P.p = p;
    P.e = e;
    P.f = 1;
    P.g = 1;
    P.K = K;
    P.residue_field = ff_field(p, 1);
    P.label = label;
    for (auto& w : K->integral_basis())
        P.ib_images.push_back(P.residue_field->from_rat(field_norm(w)));
    return P;
}

void complete_prime(PrimeIdealData& P, const std::vector<PrimeIdealData>& all, size_t self)
{
    const FieldDescriptor* K = P.K;
    const uint64_t p = P.p;
    const int n = K->n;
    /* lift basis: preimages of a^j */
    const FFDescriptor* R = P.residue_field;
    for (int j = 0; j < P.f; ++j) {
        FFElement target = R->gen().pow(static_cast<uint64_t>(j));
        if (P.f == 1)
            target = R->one();
        /* solve sum c_i img_i = target: nullspace of [img | -target] */
        std::vector<std::vector<uint64_t>> M(P.f, std::vector<uint64_t>(n + 1));
        for (int r = 0; r < P.f; ++r) {
            for (int i = 0; i < n; ++i)
                M[r][i] = P.ib_images[i].c[r];
            M[r][n] = (p - target.c[r]) % p;
        }
        bool found = false;
        for (auto& v : nullspace_mod(M, n + 1, p)) {
            if (v[n] == 0)
                continue;
            uint64_t iv = invmod(v[n], p);
            std::vector<Int> c(n);
            for (int i = 0; i < n; ++i)
                c[i] = Int(static_cast<unsigned long>(mulmod(v[i], iv, p)));
            P.lift_basis.push_back(K->from_ib(c));
            found = true;
            break;
        }
        if (!found)
            throw domain_error("residue map is not surjective for " + P.label);
    }
    /* helper element */
    if (P.g > 1) {
        std::vector<std::vector<uint64_t>> M;
        for (size_t q = 0; q < all.size(); ++q) {
            if (q == self)
                continue;
            for (int r = 0; r < all[q].f; ++r) {
                std::vector<uint64_t> row(n);
                for (int i = 0; i < n; ++i)
                    row[i] = all[q].ib_images[i].c[r];
                M.push_back(row);
            }
        }
        for (auto& v : nullspace_mod(M, n, p)) {
            std::vector<Int> c(n);
            FFElement acc = R->zero();
            for (int i = 0; i < n; ++i) {
                c[i] = Int(static_cast<unsigned long>(v[i]));
                acc = acc + ff_scalar(R, v[i]) * P.ib_images[i];
            }
            if (!acc.is_zero()) {
                P.helper = K->from_ib(c);
                break;
            }
        }
        if (!P.helper.K)
            throw domain_error("no valuation helper for " + P.label);
    } else {
        P.helper = K->one();
    }
    /* uniformizer */
    if (P.e == 1) {
        P.uniformizer = K->from_rat(Rat(Int(static_cast<unsigned long>(p))));
        return;
    }
    std::vector<std::vector<Int>> cands;
    for (int h = 1; h <= 3 && cands.empty(); ++h) {
        std::vector<int> c(n, -h);
        for (;;) {
            int mx = 0;
            for (int v : c)
                mx = std::max(mx, std::abs(v));
            if (mx == h) {
                std::vector<Int> ci(c.begin(), c.end());
                FieldElement x = K->from_ib(ci);
                Rat N = field_norm(x);
                if (N != 0 && val_p(N, Int(static_cast<unsigned long>(p))) == P.f && P.residue(x).is_zero()) {
                    cands.push_back(ci);
                    break;
                }
            }
            int i = 0;
            while (i < n && c[i] == h) {
                c[i] = -h;
                ++i;
            }
            if (i == n)
                break;
            ++c[i];
        }
    }
    if (cands.empty())
        throw domain_error("uniformizer search failed for " + P.label);
    P.uniformizer = K->from_ib(cands.front());
}

} // namespace

FFElement PrimeIdealData::residue(const FieldElement& x) const
{
    const FFDescriptor* R = residue_field;
    Int P(static_cast<unsigned long>(p));
    auto c = K->ib_coords(x);
    long k = 0;
    for (auto& v : c)
        k = std::max(k, -val_p(v, P));
    if (k > 0) {
        if (g == 1)
            throw domain_error("residue: negative valuation at " + label + " for " + x.str());
        FieldElement z = x * helper.pow(k);
        auto cz = K->ib_coords(z);
        for (auto& v : cz)
            if (v != 0 && val_p(v, P) < 0)
                throw domain_error("residue: negative valuation at " + label + " for " + x.str());
        return residue(z) / residue(helper).pow(static_cast<uint64_t>(k));
    }
    FFElement acc = R->zero();
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0)
            acc = acc + R->from_rat(c[i]) * ib_images[i];
    return acc;
}

long PrimeIdealData::valuation(const FieldElement& x) const
{
    if (x.is_zero())
        return VAL_INF;
    Int P(static_cast<unsigned long>(p));
    if (g == 1) {
        long v = val_p(field_norm(x), P);
        if (v % f != 0)
            throw domain_error("valuation: norm exponent not divisible by f");
        return v / f;
    }
    if (e != 1)
        throw domain_error("valuation at a ramified prime with g > 1 is not supported");
    auto c = K->ib_coords(x);
    long k = 0;
    for (auto& v : c)
        k = std::max(k, -val_p(v, P));
    FieldElement y = x * K->from_rat(Rat(ipow(P, k)));
    long v = -k;
    FieldElement step = helper * K->from_rat(Rat(1, P));
    while (residue(y).is_zero()) {
        y = y * step;
        ++v;
    }
    return v;
}

FieldElement PrimeIdealData::lift(const FFElement& r) const
{
    FieldElement acc = K->zero();
    for (int j = 0; j < f; ++j)
        if (r.c[j])
            acc = acc + Rat(Int(static_cast<unsigned long>(r.c[j]))) * lift_basis[j];
    return acc;
}

SplittingData splitting_type(uint64_t p, const FieldDescriptor* K)
{
    if (!is_prime_u64(p))
        throw domain_error("splitting_type: " + std::to_string(p) + " is not prime");
    SplittingData S;
    std::vector<PrimeIdealData> primes;
    const std::string tag = "P" + std::to_string(p);
    if (K->n == 1) {
        const FFDescriptor* R = ff_field(p, 1);
        primes.push_back(make_prime(K, p, 1, 1, 1, R, {R->one()}, tag));
    } else if (p == 2) {
        bool all_ram = true;
        for (long r : K->quadratic_subfields())
            if (((r % 4) + 4) % 4 == 1)
                all_ram = false;
        if (!all_ram)
            throw domain_error("splitting of 2 is only supported when 2 is totally ramified");
        primes.push_back(make_prime_by_norm(K, 2, K->n, tag));
    } else if (K->n == 2) {
        long d = K->rad[1];
        int chi = legendre(Int(d), p);
        if (chi == 0) {
            const FFDescriptor* R = ff_field(p, 1);
            primes.push_back(make_prime(K, p, 2, 1, 1, R, {R->one(), R->zero()}, tag));
        } else if (chi == 1) {
            const FFDescriptor* R = ff_field(p, 1);
            FFElement s;
            ff_is_square(R->from_int(d), &s);
            primes.push_back(make_prime(K, p, 1, 1, 2, R, {R->one(), s}, tag + "a"));
            primes.push_back(make_prime(K, p, 1, 1, 2, R, {R->one(), -s}, tag + "b"));
        } else {
            const FFDescriptor* R = ff_field(p, 2);
            FFElement s;
            ff_is_square(R->from_int(d), &s);
            primes.push_back(make_prime(K, p, 1, 2, 1, R, {R->one(), s}, tag));
        }
    } else {
        long a = K->rad[1], b = K->rad[2];
        int ca = legendre(Int(a), p), cb = legendre(Int(b), p);
        if (ca == 0 || cb == 0) {
            /* ramified in exactly one of the generators */
            bool pa = ca == 0;
            long other = pa ? b : a;
            int co = pa ? cb : ca;
            int f = co == 1 ? 1 : 2;
            const FFDescriptor* R = ff_field(p, f);
            FFElement s;
            ff_is_square(R->from_int(other), &s);
            int g = co == 1 ? 2 : 1;
            std::vector<FFElement> signs = g == 2 ? std::vector<FFElement>{s, -s} : std::vector<FFElement>{s};
            int idx = 0;
            for (auto& t : signs) {
                FFElement ia = pa ? R->zero() : t, ib = pa ? t : R->zero();
                std::string lb = tag + (g > 1 ? std::string(1, char('a' + idx++)) : "");
                primes.push_back(make_prime(K, p, 2, f, g, R, {R->one(), ia, ib, ia * ib}, lb));
            }
        } else {
            int f = (ca == 1 && cb == 1) ? 1 : 2;
            int g = 4 / f;
            const FFDescriptor* R = ff_field(p, f);
            FFElement sa, sb;
            ff_is_square(R->from_int(a), &sa);
            ff_is_square(R->from_int(b), &sb);
            std::vector<std::pair<FFElement, FFElement>> homs = {{sa, sb}, {sa, -sb}, {-sa, sb}, {-sa, -sb}};
            std::vector<bool> used(4, false);
            int idx = 0;
            for (int i = 0; i < 4; ++i) {
                if (used[i])
                    continue;
                used[i] = true;
                FFElement fa = homs[i].first.frobenius(), fb = homs[i].second.frobenius();
                for (int j = 0; j < 4; ++j)
                    if (homs[j].first == fa && homs[j].second == fb)
                        used[j] = true;
                auto [ia, ib] = homs[i];
                primes.push_back(make_prime(K, p, 1, f, g, R, {R->one(), ia, ib, ia * ib},
                                            tag + std::string(1, char('a' + idx++))));
            }
        }
    }
    for (size_t i = 0; i < primes.size(); ++i)
        complete_prime(primes[i], primes, i);
    S.g = primes.front().g;
    S.e = primes.front().e;
    S.f = primes.front().f;
    S.primes = std::move(primes);
    return S;
}

bool prime_stable(const PrimeIdealData& P, const Automorphism& s)
{
    const int n = P.K->n;
    std::vector<std::vector<uint64_t>> M;
    for (int r = 0; r < P.f; ++r) {
        std::vector<uint64_t> row(n);
        for (int i = 0; i < n; ++i)
            row[i] = P.ib_images[i].c[r];
        M.push_back(row);
    }
    for (auto& v : nullspace_mod(M, n, P.p)) {
        std::vector<Int> c(v.begin(), v.end());
        FieldElement gen = P.K->from_ib(c);
        if (!P.residue(s.apply(gen)).is_zero())
            return false;
    }
    return true;
}

KPoly kpoly(const FieldDescriptor* K, const std::vector<Rat>& c)
{
    std::vector<FieldElement> v;
    for (auto& r : c)
        v.push_back(K->from_rat(r));
    return KPoly(std::move(v), K->zero());
}

KPoly kpoly(const std::vector<FieldElement>& c)
{
    if (c.empty())
        throw domain_error("kpoly needs at least one coefficient");
    return KPoly(c, c.front().K->zero());
}

/* ---- roots over Q or a quadratic field ---- */

namespace {

Int mod_pos(const Int& a, const Int& m)
{
    Int r = a % m;
    if (r < 0)
        r += m;
    return r;
}

Int rat_mod_big(const Rat& x, const Int& m)
{
    Int inv;
    if (!mpz_invert(inv.get_mpz_t(), x.get_den_mpz_t(), m.get_mpz_t()))
        throw domain_error("denominator not invertible");
    return mod_pos(x.get_num() * inv, m);
}

Int eval_mod(const std::vector<Int>& c, const Int& x, const Int& m)
{
    Int acc = 0;
    for (size_t i = c.size(); i-- > 0;)
        acc = mod_pos(acc * x + c[i], m);
    return acc;
}

Int newton_lift(const std::vector<Int>& c, Int r, const Int& m)
{
    std::vector<Int> dc;
    for (size_t i = 1; i < c.size(); ++i)
        dc.push_back(mod_pos(c[i] * Int(static_cast<unsigned long>(i)), m));
    for (int it = 0; it < 200; ++it) {
        Int fv = eval_mod(c, r, m);
        if (fv == 0)
            return r;
        Int dv = eval_mod(dc, r, m), inv;
        if (!mpz_invert(inv.get_mpz_t(), dv.get_mpz_t(), m.get_mpz_t()))
            throw domain_error("Hensel lift hit a singular root");
        r = mod_pos(r - fv * inv, m);
    }
    return r;
}

} // namespace

std::vector<FieldElement> roots_in_field(const KPoly& f0)
{
    if (f0.is_zero())
        throw domain_error("roots of the zero polynomial");
    const FieldDescriptor* K = f0.lc().K;
    if (K->n > 2)
        throw domain_error("roots_in_field supports Q and quadratic fields");
    std::vector<FieldElement> out;
    if (f0.deg() <= 0)
        return out;
    KPoly f = f0;
    KPoly d = f.derivative();
    if (!d.is_zero()) {
        KPoly g = poly_gcd(f, d);
        if (g.deg() > 0)
            f = exact_div(f, g);
    }
    f = make_monic(f);
    if (f.deg() == 1) {
        out.push_back(-f[0]);
        return out;
    }
    long dd = K->n == 2 ? K->rad[1] : 1;
    Int D = 1;
    for (auto& c : f.coeffs())
        for (int i = 0; i < K->n; ++i)
            mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.x[i].get_den_mpz_t());
    /* norm polynomial over Q, for the coefficient bound */
    KPoly nf = f;
    if (K->n == 2) {
        std::vector<FieldElement> cc;
        for (auto& c : f.coeffs())
            cc.push_back(Automorphism{-1, 1}.apply(c));
        nf = f * KPoly(cc, K->zero());
    }
    Int L = 1;
    for (auto& c : nf.coeffs())
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.x[0].get_den_mpz_t());
    Int norm2 = 0;
    for (auto& c : nf.coeffs()) {
        Rat t = c.x[0] * L;
        norm2 += t.get_num() * t.get_num();
    }
    Int M;
    mpz_sqrt(M.get_mpz_t(), norm2.get_mpz_t());
    M = (M + 1) * ipow(Int(2), nf.deg()) * L;
    Int target = 64 * M * M * (dd + 1);

    for (uint64_t p = 10007;; p = next_prime(p)) {
        if (mpz_divisible_ui_p(D.get_mpz_t(), p) || dd % static_cast<long>(p) == 0)
            continue;
        const FFDescriptor* R = ff_field(p, 1);
        FFElement s = R->one();
        if (K->n == 2) {
            if (legendre(Int(dd), p) != 1)
                continue;
            ff_is_square(R->from_int(dd), &s);
        }
        std::vector<int> signs = K->n == 2 ? std::vector<int>{1, -1} : std::vector<int>{1};
        std::vector<std::vector<FFElement>> rts;
        bool ok = true;
        for (int sg : signs) {
            std::vector<FFElement> cc;
            for (auto& c : f.coeffs()) {
                FFElement v = R->from_rat(c.x[0]);
                if (K->n == 2)
                    v = v + R->from_rat(c.x[1]) * (sg == 1 ? s : -s);
                cc.push_back(v);
            }
            FFPoly fp(cc, R->zero());
            if (fp.deg() != f.deg() || !ff_poly_squarefree(fp)) {
                ok = false;
                break;
            }
            rts.push_back(ff_roots(fp));
        }
        if (!ok)
            continue;
        Int P(static_cast<unsigned long>(p)), m = P;
        while (m < target)
            m *= m;
        Int sN = s.c[0];
        if (K->n == 2)
            sN = newton_lift({Int(-dd), Int(0), Int(1)}, sN, m);
        std::vector<std::vector<Int>> lifted;
        for (size_t e = 0; e < signs.size(); ++e) {
            std::vector<Int> cc;
            for (auto& c : f.coeffs()) {
                Int v = rat_mod_big(c.x[0], m);
                if (K->n == 2)
                    v = mod_pos(v + signs[e] * rat_mod_big(c.x[1], m) * sN, m);
                cc.push_back(v);
            }
            std::vector<Int> L1;
            for (auto& r : rts[e])
                L1.push_back(newton_lift(cc, Int(static_cast<unsigned long>(r.c[0])), m));
            lifted.push_back(L1);
        }
        auto consider = [&](const FieldElement& x) {
            if (!f.eval(x).is_zero())
                return;
            for (auto& y : out)
                if (y == x)
                    return;
            out.push_back(x);
        };
        if (K->n == 1) {
            for (auto& r : lifted[0])
                if (auto u = rational_reconstruct(r, m))
                    consider(K->from_rat(*u));
        } else {
            Int inv2, inv2s;
            mpz_invert(inv2.get_mpz_t(), Int(2).get_mpz_t(), m.get_mpz_t());
            Int twos = mod_pos(2 * sN, m);
            mpz_invert(inv2s.get_mpz_t(), twos.get_mpz_t(), m.get_mpz_t());
            for (auto& r1 : lifted[0])
                for (auto& r2 : lifted[1]) {
                    auto u = rational_reconstruct(mod_pos((r1 + r2) * inv2, m), m);
                    auto v = rational_reconstruct(mod_pos((r1 - r2) * inv2s, m), m);
                    if (!u || !v)
                        continue;
                    FieldElement x(K);
                    x.x[0] = *u;
                    x.x[1] = *v;
                    consider(x);
                }
        }
        std::sort(out.begin(), out.end(), [](const FieldElement& a, const FieldElement& b) {
            for (int i = 0; i < 4; ++i)
                if (a.x[i] != b.x[i])
                    return a.x[i] < b.x[i];
            return false;
        });
        return out;
    }
}

} // namespace qf
