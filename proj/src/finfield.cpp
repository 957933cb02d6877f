#include "qf/finfield.hpp"

#include "qf/factor.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace qf {

namespace {

std::mutex ff_mutex;
std::map<std::pair<uint64_t, int>, std::unique_ptr<FFDescriptor>> ff_cache;

/* polynomials over F_p as plain coefficient vectors, used only while
 * searching for the modulus */
using PV = std::vector<uint64_t>;

void pv_trim(PV& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

PV pv_mulmod(const PV& a, const PV& b, const PV& m, uint64_t p)
{
    if (a.empty() || b.empty())
        return {};
    PV r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    int dm = static_cast<int>(m.size()) - 1;
    uint64_t li = invmod(m.back(), p);
    for (int d = static_cast<int>(r.size()) - 1; d >= dm; --d) {
        uint64_t t = mulmod(r[d], li, p);
        if (!t)
            continue;
        for (int j = 0; j <= dm; ++j)
            r[d - dm + j] = (r[d - dm + j] + p - mulmod(t, m[j], p)) % p;
    }
    r.resize(std::min<size_t>(r.size(), dm));
    pv_trim(r);
    return r;
}

PV pv_mod(PV a, const PV& m, uint64_t p)
{
    int dm = static_cast<int>(m.size()) - 1;
    uint64_t li = invmod(m.back(), p);
    for (int d = static_cast<int>(a.size()) - 1; d >= dm; --d) {
        uint64_t t = mulmod(a[d], li, p);
        if (!t)
            continue;
        for (int j = 0; j <= dm; ++j)
            a[d - dm + j] = (a[d - dm + j] + p - mulmod(t, m[j], p)) % p;
    }
    pv_trim(a);
    return a;
}

PV pv_gcd(PV a, PV b, uint64_t p)
{
    pv_trim(a);
    pv_trim(b);
    while (!b.empty()) {
        PV r = pv_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

PV pv_powmod(PV b, uint64_t e, const PV& m, uint64_t p)
{
    PV r{1};
    while (e) {
        if (e & 1)
            r = pv_mulmod(r, b, m, p);
        e >>= 1;
        if (e)
            b = pv_mulmod(b, b, m, p);
    }
    return r;
}

} // namespace

bool ff_modulus_irreducible(uint64_t p, const std::vector<uint64_t>& modulus)
{
    int k = static_cast<int>(modulus.size()) - 1;
    if (k <= 1)
        return k == 1;
    PV xp{0, 1};
    for (int i = 1; i <= k / 2; ++i) {
        xp = pv_powmod(xp, p, modulus, p);
        PV t = xp;
        if (t.size() < 2)
            t.resize(2, 0);
        t[1] = (t[1] + p - 1) % p;
        pv_trim(t);
        PV g = pv_gcd(modulus, t, p);
        if (g.size() > 1)
            return false;
    }
    return true;
}

const FFDescriptor* ff_field(uint64_t p, int k)
{
    if (k < 1 || k > FF_MAX_DEGREE)
        throw domain_error("extension degree out of range");
    std::lock_guard<std::mutex> lock(ff_mutex);
    auto key = std::make_pair(p, k);
    auto it = ff_cache.find(key);
    if (it != ff_cache.end())
        return it->second.get();
    if (!is_prime_u64(p))
        throw domain_error("ff_field: " + std::to_string(p) + " is not prime");
    std::unique_ptr<FFDescriptor> F(new FFDescriptor());
    F->p = p;
    F->k = k;
    F->q = 1;
    for (int i = 0; i < k; ++i) {
        if (F->q > (1ULL << 62) / p)
            throw resource_error("field too large");
        F->q *= p;
    }
    if (k == 1) {
        F->modulus = {0, 1};
    } else {
        for (uint64_t idx = 0; idx < F->q; ++idx) {
            PV m(k + 1);
            uint64_t t = idx;
            for (int i = 0; i < k; ++i) {
                m[i] = t % p;
                t /= p;
            }
            m[k] = 1;
            if (m[0] == 0)
                continue;
            if (ff_modulus_irreducible(p, m)) {
                F->modulus = m;
                break;
            }
        }
    }
    const FFDescriptor* raw = F.get();
    if (F->q <= (1ULL << 16)) {
        /* generator search by order test on q-1 */
        auto fac = factor_integer(Int(static_cast<unsigned long>(F->q - 1)));
        FFElement g(raw);
        for (uint64_t idx = 1; idx < F->q; ++idx) {
            g = raw->from_index(idx);
            bool ok = true;
            for (auto& pe : fac.factors) {
                uint64_t l = pe.first.get_ui();
                if (g.pow((F->q - 1) / l) == raw->one()) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                break;
        }
        std::vector<uint32_t> ex(F->q - 1), lg(F->q, 0);
        FFElement a = raw->one();
        for (uint64_t i = 0; i + 1 < F->q; ++i) {
            uint64_t id = a.index();
            ex[i] = static_cast<uint32_t>(id);
            lg[id] = static_cast<uint32_t>(i);
            a = a * g;
        }
        std::vector<int8_t> chi(F->q, 0);
        for (uint64_t i = 1; i < F->q; ++i)
            chi[i] = (p == 2 || (lg[i] % 2 == 0)) ? 1 : -1;
        F->chi_table = std::move(chi);
        F->log_table = std::move(lg);
        F->exp_table = std::move(ex);
    }
    ff_cache.emplace(key, std::move(F));
    return raw;
}

FFElement FFDescriptor::zero() const { return FFElement(this); }

FFElement FFDescriptor::one() const
{
    FFElement e(this);
    e.c[0] = 1 % p;
    return e;
}

FFElement FFDescriptor::from_int(int64_t a) const
{
    FFElement e(this);
    int64_t r = a % static_cast<int64_t>(p);
    if (r < 0)
        r += static_cast<int64_t>(p);
    e.c[0] = static_cast<uint64_t>(r);
    return e;
}

FFElement FFDescriptor::from_rat(const Rat& a) const
{
    FFElement e(this);
    e.c[0] = rat_mod(a, p);
    return e;
}

FFElement FFDescriptor::from_index(uint64_t i) const
{
    FFElement e(this);
    for (int j = 0; j < k; ++j) {
        e.c[j] = i % p;
        i /= p;
    }
    return e;
}

FFElement FFDescriptor::gen() const
{
    if (k == 1)
        return from_int(0);
    FFElement e(this);
    e.c[1] = 1;
    return e;
}

std::string FFDescriptor::modulus_str() const
{
    std::string s;
    for (int i = k; i >= 0; --i) {
        if (modulus[i] == 0)
            continue;
        if (!s.empty())
            s += "+";
        if (modulus[i] != 1 || i == 0)
            s += std::to_string(modulus[i]);
        if (i >= 1)
            s += (modulus[i] != 1 ? "*x" : "x");
        if (i > 1)
            s += "^" + std::to_string(i);
    }
    return s;
}

FFElement ff_scalar(const FFDescriptor* F, uint64_t a)
{
    FFElement e(F);
    e.c[0] = a % F->p;
    return e;
}

uint64_t FFElement::index() const
{
    if (!F)
        return 0;
    uint64_t r = 0;
    for (int j = F->k - 1; j >= 0; --j)
        r = r * F->p + c[j];
    return r;
}

bool FFElement::in_prime_field() const
{
    for (int j = 1; j < FF_MAX_DEGREE; ++j)
        if (c[j])
            return false;
    return true;
}

static const FFDescriptor* pick(const FFElement& a, const FFElement& b)
{
    if (a.F && b.F && a.F != b.F)
        throw domain_error("mixing elements of different finite fields");
    return a.F ? a.F : b.F;
}

FFElement FFElement::operator+(const FFElement& o) const
{
    const FFDescriptor* D = pick(*this, o);
    FFElement r(D);
    if (!D)
        return r;
    for (int j = 0; j < D->k; ++j) {
        uint64_t s = c[j] + o.c[j];
        r.c[j] = s >= D->p ? s - D->p : s;
    }
    return r;
}

FFElement FFElement::operator-(const FFElement& o) const
{
    const FFDescriptor* D = pick(*this, o);
    FFElement r(D);
    if (!D)
        return r;
    for (int j = 0; j < D->k; ++j)
        r.c[j] = c[j] >= o.c[j] ? c[j] - o.c[j] : c[j] + D->p - o.c[j];
    return r;
}

FFElement FFElement::operator-() const
{
    FFElement r(F);
    if (!F)
        return r;
    for (int j = 0; j < F->k; ++j)
        r.c[j] = c[j] ? F->p - c[j] : 0;
    return r;
}

FFElement FFElement::operator*(const FFElement& o) const
{
    const FFDescriptor* D = pick(*this, o);
    FFElement r(D);
    if (!D || is_zero() || o.is_zero())
        return r;
    const uint64_t p = D->p;
    const int k = D->k;
    if (k == 1) {
        r.c[0] = mulmod(c[0], o.c[0], p);
        return r;
    }
    if (D->has_tables()) {
        uint64_t l = uint64_t(D->log_table[index()]) + D->log_table[o.index()];
        if (l >= D->q - 1)
            l -= D->q - 1;
        return D->from_index(D->exp_table[l]);
    }
    uint64_t t[2 * FF_MAX_DEGREE] = {};
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            t[i + j] = (t[i + j] + mulmod(c[i], o.c[j], p)) % p;
    const auto& m = D->modulus;
    for (int d = 2 * k - 2; d >= k; --d) {
        uint64_t v = t[d];
        if (!v)
            continue;
        for (int j = 0; j < k; ++j)
            t[d - k + j] = (t[d - k + j] + p - mulmod(v, m[j], p)) % p;
        t[d] = 0;
    }
    for (int j = 0; j < k; ++j)
        r.c[j] = t[j];
    return r;
}

FFElement FFElement::inv() const
{
    if (!F || is_zero())
        throw domain_error("inverse of zero in a finite field");
    if (F->k == 1) {
        FFElement r(F);
        r.c[0] = invmod(c[0], F->p);
        return r;
    }
    if (F->has_tables()) {
        uint64_t l = F->log_table[index()];
        return F->from_index(F->exp_table[l ? F->q - 1 - l : 0]);
    }
    return pow(F->q - 2);
}

FFElement FFElement::operator/(const FFElement& o) const
{
    if (o.is_zero())
        throw domain_error("division by zero in a finite field");
    return *this * o.inv();
}

FFElement FFElement::pow(uint64_t e) const
{
    FFElement r = F->one(), b = *this;
    while (e) {
        if (e & 1)
            r = r * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

FFElement FFElement::pow(const Int& e0) const
{
    Int e = e0;
    if (e < 0)
        return inv().pow(Int(-e));
    FFElement r = F->one(), b = *this;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = r * b;
        e >>= 1;
        if (e > 0)
            b = b * b;
    }
    return r;
}

std::string FFElement::str() const
{
    if (!F)
        return "0";
    if (F->k == 1)
        return std::to_string(c[0]);
    std::string s;
    for (int j = F->k - 1; j >= 0; --j) {
        if (!c[j])
            continue;
        if (!s.empty())
            s += "+";
        if (c[j] != 1 || j == 0)
            s += std::to_string(c[j]);
        if (j >= 1)
            s += (c[j] != 1 ? "*a" : "a");
        if (j > 1)
            s += "^" + std::to_string(j);
    }
    return s.empty() ? "0" : s;
}

int ff_chi(const FFElement& x)
{
    if (x.is_zero())
        return 0;
    const FFDescriptor* F = x.F;
    if (F->p == 2)
        return 1;
    if (F->has_tables())
        return F->chi_table[x.index()];
    return x.pow((F->q - 1) / 2) == F->one() ? 1 : -1;
}

bool ff_is_square(const FFElement& x, FFElement* root)
{
    const FFDescriptor* F = x.F;
    if (x.is_zero()) {
        if (root)
            *root = F ? F->zero() : FFElement();
        return true;
    }
    if (F->p == 2) {
        if (root)
            *root = x.pow(F->q / 2);
        return true;
    }
    if (ff_chi(x) != 1)
        return false;
    if (!root)
        return true;
    /* Tonelli-Shanks */
    uint64_t q1 = F->q - 1, t = q1;
    int s = 0;
    while (t % 2 == 0) {
        t /= 2;
        ++s;
    }
    FFElement z(F);
    for (uint64_t i = 2; i < F->q; ++i) {
        z = F->from_index(i);
        if (ff_chi(z) == -1)
            break;
    }
    FFElement c = z.pow(t), r = x.pow((t + 1) / 2), u = x.pow(t);
    int m = s;
    while (u != F->one()) {
        int i = 0;
        FFElement w = u;
        while (w != F->one()) {
            w = w * w;
            ++i;
        }
        FFElement b = c;
        for (int j = 0; j < m - i - 1; ++j)
            b = b * b;
        r = r * b;
        c = b * b;
        u = u * c;
        m = i;
    }
    FFElement nr = -r;
    *root = nr.index() < r.index() ? nr : r;
    return true;
}

FFElement ff_norm_to_prime(const FFElement& x)
{
    const FFDescriptor* F = x.F;
    if (x.is_zero())
        return F->zero();
    return x.pow((F->q - 1) / (F->p - 1));
}

std::vector<FFElement> ff_enumerate(const FFDescriptor* F, uint64_t cap)
{
    if (F->q > cap)
        throw resource_error("enumeration cap exceeded for F_" + std::to_string(F->q));
    std::vector<FFElement> out;
    out.reserve(F->q);
    for (uint64_t i = 0; i < F->q; ++i)
        out.push_back(F->from_index(i));
    return out;
}

namespace {

void split_roots(const FFPoly& g, std::vector<FFElement>& out)
{
    if (g.deg() <= 0)
        return;
    if (g.deg() == 1) {
        out.push_back(-(g[0] / g[1]));
        return;
    }
    const FFDescriptor* F = g.lc().F;
    FFPoly x = FFPoly::x(F->one());
    if (F->p == 2) {
        /* trace map splitting for characteristic 2 */
        for (uint64_t a = 1; a < F->q; ++a) {
            FFPoly ax = FFPoly::constant(F->from_index(a)) * x;
            FFPoly tr = ax % g, acc = tr;
            for (int i = 1; i < F->k * 1; ++i) {
                acc = (acc * acc) % g;
                tr = tr + acc;
            }
            FFPoly h = poly_gcd(g, tr);
            if (h.deg() > 0 && h.deg() < g.deg()) {
                split_roots(h, out);
                split_roots(exact_div(g, h), out);
                return;
            }
        }
        for (uint64_t i = 0; i < F->q; ++i)
            if (g.eval(F->from_index(i)).is_zero())
                out.push_back(F->from_index(i));
        return;
    }
    Int e(static_cast<unsigned long>((F->q - 1) / 2));
    for (uint64_t a = 0;; ++a) {
        FFPoly b = x + FFPoly::constant(F->from_index(a % F->q));
        if (a >= F->q)
            b = x * x + FFPoly::constant(F->from_index(a % F->q));
        FFPoly h = poly_powmod(b, e, g) - FFPoly::constant(F->one());
        if (h.is_zero())
            continue;
        FFPoly d = poly_gcd(g, h);
        if (d.deg() > 0 && d.deg() < g.deg()) {
            split_roots(d, out);
            split_roots(exact_div(g, d), out);
            return;
        }
    }
}

} // namespace

std::vector<FFElement> ff_roots(const FFPoly& f)
{
    if (f.is_zero())
        throw domain_error("roots of the zero polynomial");
    std::vector<FFElement> out;
    if (f.deg() <= 0)
        return out;
    const FFDescriptor* F = f.lc().F;
    FFPoly x = FFPoly::x(F->one());
    FFPoly xq = poly_powmod(x, Int(static_cast<unsigned long>(F->q)), f);
    FFPoly g = poly_gcd(f, xq - x);
    split_roots(g, out);
    std::sort(out.begin(), out.end());
    return out;
}

bool ff_poly_squarefree(const FFPoly& f)
{
    if (f.deg() <= 0)
        return true;
    FFPoly d = f.derivative();
    if (d.is_zero())
        return false;
    return poly_gcd(f, d).deg() == 0;
}

FFPoly ff_poly_from_rat(const FFDescriptor* F, const Poly<Rat>& f)
{
    std::vector<FFElement> c;
    for (int i = 0; i <= f.deg(); ++i)
        c.push_back(F->from_rat(f[i]));
    return FFPoly(std::move(c), F->zero());
}

} // namespace qf
