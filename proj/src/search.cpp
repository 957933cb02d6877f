#include "qf/fltclaims.hpp"

#include "qf/factor.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace qf {

namespace {

/* |x| <= R in every real embedding whenever f(x) >= 0; infinity if f is
 * positive at infinity */
double real_bound(const std::vector<long>& f)
{
    if (f.back() > 0)
        return INFINITY;
    auto ev = [&](long double x) {
        long double s = 0;
        for (size_t i = f.size(); i-- > 0;)
            s = s * x + static_cast<long double>(f[i]);
        return s;
    };
    long double B = 1;
    for (size_t i = 0; i + 1 < f.size(); ++i)
        B = std::max(B, 1 + std::fabs(static_cast<long double>(f[i]) / f.back()));
    long double R = 0;
    const int steps = 1 << 20;
    for (int side : {1, -1}) {
        long double h = B / steps;
        for (int k = steps; k >= 0; --k) {
            long double x = side * k * h;
            if (ev(x) >= 0) {
                long double lo = k * h, hi = std::min(B, (k + 1) * h);
                for (int it = 0; it < 100; ++it) {
                    long double mid = (lo + hi) / 2;
                    (ev(side * mid) >= 0 ? lo : hi) = mid;
                }
                R = std::max(R, hi);
                break;
            }
        }
    }
    return static_cast<double>(R) * (1 + 1e-9) + 1e-9;
}

/* one sieve condition: a degree-one prime of Z[sqrt d] above p */
struct Condition {
    uint64_t p;
    uint64_t s; // image of sqrt d
    size_t stride;
    std::vector<uint64_t> bits; // (c mod p, n1 mod p) -> p + 128 periodic bits in n0
    std::vector<uint64_t> wmod; // 64 w mod p
    const uint64_t* pattern(uint64_t cm, uint64_t n1m) const { return bits.data() + (cm * p + n1m) * stride; }
};

Condition make_condition(uint64_t p, uint64_t s, const std::vector<long>& f, size_t max_words)
{
    Condition C{p, s, (p + 128) / 64 + 1, {}, {}};
    C.bits.assign(p * p * C.stride, 0);
    std::vector<char> sq(p, 0);
    for (uint64_t v = 0; v < p; ++v)
        sq[mulmod(v, v, p)] = 1;
    int n = static_cast<int>(f.size()) - 1;
    std::vector<uint64_t> fc(f.size());
    for (size_t i = 0; i < f.size(); ++i)
        fc[i] = static_cast<uint64_t>(((f[i] % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p));
    for (uint64_t cm = 0; cm < p; ++cm)
        for (uint64_t X = 0; X < p; ++X) {
            /* F(X, c) = sum f_i X^i c^(n-i) */
            uint64_t v = 0, xp = 1;
            std::vector<uint64_t> cp(n + 1, 1);
            for (int i = 1; i <= n; ++i)
                cp[i] = mulmod(cp[i - 1], cm, p);
            for (int i = 0; i <= n; ++i) {
                v = (v + mulmod(fc[i], mulmod(xp, cp[n - i], p), p)) % p;
                xp = mulmod(xp, X, p);
            }
            if (!sq[v])
                continue;
            /* bit j of pattern n1 is set when j + n1 s = X mod p */
            for (uint64_t n1 = 0; n1 < p; ++n1) {
                uint64_t j0 = (X + p - mulmod(n1, s, p)) % p;
                uint64_t* w = C.bits.data() + (cm * p + n1) * C.stride;
                for (uint64_t j = j0; j < p + 128; j += p)
                    w[j >> 6] |= uint64_t(1) << (j & 63);
            }
        }
    C.wmod.resize(max_words + 1);
    for (size_t w = 0; w <= max_words; ++w)
        C.wmod[w] = (64 * w) % p;
    return C;
}

inline uint64_t window(const uint64_t* pat, uint64_t off)
{
    uint64_t q = off >> 6, r = off & 63;
    return r ? (pat[q] >> r) | (pat[q + 1] << (64 - r)) : pat[q];
}

uint64_t sqrt_mod(uint64_t d, uint64_t p)
{
    for (uint64_t s = 0; s < p; ++s)
        if (mulmod(s, s, p) == d % p)
            return s;
    return p;
}

struct Candidate {
    long n0, n1, c;
};

bool fe_less(const FieldElement& a, const FieldElement& b) { return a.x < b.x; }

} // namespace

SearchReport sextic_search(const std::vector<long>& f, long d, long H, int threads)
{
    if (H < 1)
        throw domain_error("search height must be >= 1");
    if (f.size() < 3 || f.back() == 0 || (f.size() - 1) % 2)
        throw domain_error("sextic_search needs f of even degree >= 2");
    if (d < 1)
        throw domain_error("only real fields are searched");
    const FieldDescriptor* K = d == 1 ? rational_field() : quadratic_field(d);
    FieldElement rd = d == 1 ? K->zero() : K->sqrt_of(d);
    bool even = true;
    for (size_t i = 1; i < f.size(); i += 2)
        even = even && f[i] == 0;

    SearchReport R;
    R.height = H;
    R.infinite_points = f.back() > 0 && is_rat_square(Rat(f.back()));

    double Rb = real_bound(f);
    double sd = std::sqrt(static_cast<double>(d));
    auto n0_max_for = [&](long c, long n1) -> long {
        if (std::isinf(Rb))
            return H;
        double m = Rb * static_cast<double>(c) - static_cast<double>(n1) * sd;
        return m < 0 ? -1 : std::min<long>(H, static_cast<long>(std::floor(m)));
    };
    auto n1_max_for = [&](long c) -> long {
        if (d == 1)
            return 0;
        if (std::isinf(Rb))
            return H;
        return std::min<long>(H, static_cast<long>(std::floor(Rb * static_cast<double>(c) / sd)));
    };

    size_t max_words = static_cast<size_t>((2 * H + 1) / 64 + 2);
    std::vector<Condition> conds;
    const int want = d == 1 ? 14 : 24;
    for (uint64_t p = 5; static_cast<int>(conds.size()) < want; p = next_prime(p)) {
        if (!is_prime_u64(p) || static_cast<uint64_t>(d) % p == 0)
            continue;
        bool bad = static_cast<long>(f.back() % static_cast<long>(p)) == 0;
        if (bad)
            continue;
        if (d == 1) {
            conds.push_back(make_condition(p, 0, f, max_words));
            continue;
        }
        uint64_t s = sqrt_mod(static_cast<uint64_t>(d) % p, p);
        if (s == p || s == 0)
            continue;
        conds.push_back(make_condition(p, s, f, max_words));
        conds.push_back(make_condition(p, p - s, f, max_words));
    }

    std::vector<Candidate> found;
    std::mutex mu;
    uint64_t total = 0;
    auto work = [&](long c0, long step) {
        std::vector<Candidate> local;
        uint64_t cnt = 0;
        std::vector<uint64_t> base(conds.size());
        std::vector<const uint64_t*> pats(conds.size());
        std::vector<uint64_t> tk(conds.size());
        std::vector<const uint64_t*> rowbase(conds.size());
        for (long c = c0; c <= H; c += step) {
            long n1max = n1_max_for(c);
            for (size_t k = 0; k < conds.size(); ++k) {
                rowbase[k] = conds[k].pattern(static_cast<uint64_t>(c) % conds[k].p, 0);
                tk[k] = 0;
            }
            for (long n1 = 0; n1 <= n1max; ++n1) {
                long hi = n0_max_for(c, n1);
                if (hi < 0)
                    break;
                long lo = even ? 0 : -hi;
                for (size_t k = 0; k < conds.size(); ++k) {
                    const Condition& C = conds[k];
                    pats[k] = rowbase[k] + tk[k] * C.stride;
                    if (++tk[k] == C.p)
                        tk[k] = 0;
                    long p = static_cast<long>(C.p);
                    base[k] = even ? 0 : static_cast<uint64_t>(((lo % p) + p) % p);
                }
                long len = hi - lo + 1;
                long nw = (len + 63) / 64;
                for (long w = 0; w < nw; ++w) {
                    long rem = len - 64 * w;
                    uint64_t m = rem >= 64 ? ~uint64_t(0) : ((uint64_t(1) << rem) - 1);
                    for (size_t k = 0; k < conds.size() && m; ++k) {
                        uint64_t off = base[k] + conds[k].wmod[static_cast<size_t>(w)];
                        if (off >= conds[k].p)
                            off -= conds[k].p;
                        m &= window(pats[k], off);
                    }
                    while (m) {
                        int b = __builtin_ctzll(m);
                        m &= m - 1;
                        long n0 = lo + 64 * w + b;
                        ++cnt;
                        if (std::gcd(std::gcd(std::labs(n0), n1), c) == 1)
                            local.push_back({n0, n1, c});
                    }
                }
            }
        }
        std::lock_guard<std::mutex> g(mu);
        found.insert(found.end(), local.begin(), local.end());
        total += cnt;
    };
    long nt = std::max(1, threads);
    if (nt == 1) {
        work(1, 1);
    } else {
        std::vector<std::thread> pool;
        for (long t = 0; t < nt; ++t)
            pool.emplace_back(work, 1 + t, nt);
        for (auto& th : pool)
            th.join();
    }
    R.candidates = total;

    /* exact check; the images under x -> -x and conjugation are added */
    auto fx = [&](const FieldElement& x) {
        FieldElement v = K->zero();
        for (size_t i = f.size(); i-- > 0;)
            v = v * x + K->from_rat(Rat(f[i]));
        return v;
    };
    auto less = [](const std::pair<FieldElement, FieldElement>& a, const std::pair<FieldElement, FieldElement>& b) {
        if (a.first.x != b.first.x)
            return fe_less(a.first, b.first);
        return fe_less(a.second, b.second);
    };
    std::set<std::pair<FieldElement, FieldElement>, decltype(less)> pts(less);
    for (const Candidate& q : found) {
        FieldElement x = (K->from_rat(Rat(q.n0)) + K->from_rat(Rat(q.n1)) * rd) * K->from_rat(Rat(1, q.c));
        FieldElement y;
        if (!is_square(fx(x), &y))
            continue;
        std::vector<FieldElement> xs = {x};
        if (d != 1)
            xs.push_back(K->from_rat(Rat(q.n0)) * K->from_rat(Rat(1, q.c)) -
                         K->from_rat(Rat(q.n1, q.c)) * rd);
        if (even) {
            size_t m = xs.size();
            for (size_t i = 0; i < m; ++i)
                xs.push_back(-xs[i]);
        }
        for (const FieldElement& xx : xs) {
            FieldElement yy;
            if (!is_square(fx(xx), &yy))
                throw internal_error("search symmetry failed at " + xx.str());
            pts.insert({xx, yy});
            pts.insert({xx, -yy});
        }
    }
    for (const auto& [x, y] : pts)
        R.points.push_back({x, y});
    return R;
}

} // namespace qf
